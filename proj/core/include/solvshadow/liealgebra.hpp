#ifndef SOLVSHADOW_LIEALGEBRA_HPP
#define SOLVSHADOW_LIEALGEBRA_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "solvshadow/jordan.hpp"
#include "solvshadow/matrix.hpp"

namespace solvshadow {

/// Extension policy for triangularization (the CLI --field flag).
enum class FieldPolicy {
  Auto,      // rationals, then quadratic fields, then primitive-element towers
  Rational,  // fail if any extension is required
  Gaussian,  // allow only quadratic extensions of Q
  Extend,    // same machinery as Auto, spelled out for the CLI
};

/// Finite-dimensional Lie algebra presented by structure constants over an
/// exact scalar field: [e_i, e_j] = sum_k c[i][j][k] e_k.  Antisymmetry and
/// the Jacobi identity are verified at construction.  Values are immutable
/// and cheap to copy; lazily computed data (weights, series) is cached
/// per value.
class LieAlgebra {
public:
  LieAlgebra() = default;

  /// Sparse construction: entries only for i < j; antisymmetry is implied.
  static LieAlgebra create(int dim, std::vector<std::string> labels,
                           const std::vector<std::tuple<int, int, Vec>>& brackets,
                           FieldPtr field = nullptr);

  int dim() const;
  const std::vector<std::string>& labels() const;
  FieldPtr field() const;
  /// Structure constant c[i][j][k].
  const Scalar& c(int i, int j, int k) const;

  Matrix ad_basis(int i) const;

  bool operator==(const LieAlgebra& o) const;

  struct Caches;
  Caches& caches() const;

private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Subspace of a Lie algebra's coordinate space, with closure flags computed
/// at construction.
class Subspace {
public:
  Subspace() = default;
  Subspace(LieAlgebra ambient, Matrix basis_columns);
  static Subspace span(const LieAlgebra& g, const std::vector<Vec>& vectors);
  static Subspace whole(const LieAlgebra& g);
  static Subspace zero(const LieAlgebra& g);

  const LieAlgebra& ambient() const { return ambient_; }
  const Matrix& basis() const { return basis_; }
  int dim() const { return basis_.cols(); }
  bool is_subalgebra() const { return is_subalgebra_; }
  bool is_ideal() const { return is_ideal_; }

  /// Canonical (reduced-echelon) basis, used for equality and containment.
  const Matrix& canonical() const { return canonical_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const;

  /// Reassembles a subspace from previously verified parts (used by the
  /// per-algebra caches, which must not hold Subspace values to avoid
  /// ownership cycles).
  static Subspace from_cached(LieAlgebra ambient, Matrix basis, Matrix canonical,
                              bool is_subalgebra, bool is_ideal);

private:
  LieAlgebra ambient_;
  Matrix basis_;
  Matrix canonical_;
  bool is_subalgebra_ = false;
  bool is_ideal_ = false;
};

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
/// Span of the brackets [a_i, b_j] over all basis pairs.
Subspace bracket_span(const Subspace& a, const Subspace& b);

/// Simultaneous triangularization data for a solvable algebra: an invertible
/// flag basis over an extension field and the weight functionals appearing on
/// the diagonal.  weights[j][i] = lambda_j(e_i).
struct WeightData {
  Matrix flag;
  std::vector<Vec> weights;
  FieldPtr field;            // extension field of the weights/flag
  FieldHom base_embedding;   // algebra field -> extension field
};

/// Positive-definite symmetric bilinear form with rational entries.
class InnerProduct {
public:
  InnerProduct() = default;  // empty; assign from create/standard before use
  static InnerProduct create(Matrix m);
  static InnerProduct standard(int n);
  const Matrix& matrix() const { return m_; }

private:
  Matrix m_;
};

// ----------------------------------------------------------- operations ----

Vec bracket(const LieAlgebra& g, const Vec& x, const Vec& y);
Matrix ad(const LieAlgebra& g, const Vec& x);

std::vector<Subspace> derived_series(const LieAlgebra& g);
std::vector<Subspace> lower_central_series(const LieAlgebra& g);
bool is_solvable(const LieAlgebra& g);
bool is_nilpotent(const LieAlgebra& g);
bool is_abelian(const LieAlgebra& g);
bool is_unimodular(const LieAlgebra& g);
Subspace center(const LieAlgebra& g);

/// Constructive Lie's theorem; requires solvable input.
WeightData triangularize(const LieAlgebra& g, FieldPolicy policy = FieldPolicy::Auto);

bool is_completely_solvable(const LieAlgebra& g);

/// Intersection of the kernels of all weight functionals (the set of
/// ad-nilpotent elements); verified nilpotent ideal containing [g, g].
Subspace nilradical(const LieAlgebra& g);

/// Intersection of the kernels of the imaginary parts of the weights:
/// all X whose ad-eigenvalues are real (solvable input only).
Subspace max_completely_solvable_ideal(const LieAlgebra& g);

/// A Cartan subalgebra found by Fitting-null descent from non-nilpotent
/// elements; the variant seed changes the search order, which can reach
/// different Cartan subalgebras.  Postconditions (nilpotent, self-
/// normalizing, h + nilradical = g) are verified.
Subspace cartan_subalgebra(const LieAlgebra& g, std::uint64_t variant = 0);

Subspace normalizer(const LieAlgebra& g, const Subspace& s);

/// Basis of the derivation algebra Der(g); commutator closure verified.
std::vector<Matrix> derivations(const LieAlgebra& g);

Matrix killing_form(const LieAlgebra& g);

/// Derivations skew-symmetric with respect to the inner product; every
/// output has purely imaginary spectrum (verified).
std::vector<Matrix> orthogonal_derivations(const LieAlgebra& g, const InnerProduct& ip);

/// r extended by a family of derivations acting as new generators:
/// [D, X] = D X, [D, D'] = matrix commutator (must stay in the span).
struct SemidirectSum {
  LieAlgebra algebra;      // dimension r.dim() + k.size()
  int base_dim;            // r embeds as coordinates 0..base_dim-1
  std::vector<Matrix> torus;  // the derivations, promoted to the common field
};
SemidirectSum semidirect_sum(const LieAlgebra& r, const std::vector<Matrix>& k);

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// Structure constants of a bracket-closed subspace in its own basis.
LieAlgebra subalgebra_structure(const Subspace& s);

/// The same algebra in the basis given by the columns of p (invertible).
LieAlgebra change_basis(const LieAlgebra& g, const Matrix& p);

/// Kernel over the base field of a stack of row functionals with values in an
/// extension field; the row space must be defined over the base field.
std::vector<Vec> kernel_rows_over_base(const std::vector<Vec>& rows, const LieAlgebra& g,
                                       const FieldHom& base_to_ext);

} // namespace solvshadow

#endif
