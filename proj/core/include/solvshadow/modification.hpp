#ifndef SOLVSHADOW_MODIFICATION_HPP
#define SOLVSHADOW_MODIFICATION_HPP

#include <optional>
#include <variant>

#include "solvshadow/liealgebra.hpp"

namespace solvshadow {

/// A modification of a completely solvable algebra s: an abelian family t of
/// skew-symmetric derivations, a map phi : s -> span(t), and the subspace
/// r = { X + phi(X) } of s x| t, which must be bracket-closed.
struct Modification {
  LieAlgebra base;            // s, completely solvable (verified)
  InnerProduct ip;
  std::vector<Matrix> torus;  // t
  Matrix phi;                 // torus.size() x dim(s); column j = coords of phi(e_j)
  SemidirectSum ambient;      // s x| t
  Subspace modified;          // r
  LieAlgebra modified_algebra;
};

/// Witness of a failed closure check: a basis pair of r whose bracket
/// escapes r.
struct ClosureFailure {
  int i, j;          // base indices of the offending pair
  Vec bracket_value; // ambient coordinates of [v_i, v_j]
};

std::variant<Modification, ClosureFailure> try_apply_modification(
    const LieAlgebra& s, const InnerProduct& ip, const std::vector<Matrix>& torus,
    const Matrix& phi);

/// As above but throws math_error("NotClosed") carrying the witness text.
Modification apply_modification(const LieAlgebra& s, const InnerProduct& ip,
                                const std::vector<Matrix>& torus, const Matrix& phi);

/// phi annihilates [s, s].
bool is_normal_modification(const Modification& m);

/// [s, r] contained in s intersect r (for subalgebras of a common ambient).
bool check_mutual_bracket(const LieAlgebra& g, const Subspace& s, const Subspace& r);

/// dim(l + r2) == dim g.
bool check_transitivity_analogue(const LieAlgebra& g, const Subspace& l, const Subspace& r2);

/// Seeded search for a valid modification: abelian subfamilies of the
/// orthogonal derivations and small rational phi candidates (entries from
/// {-2..2} scaled by 1 or 1/2), at most 500 attempts.  Deterministic per
/// seed.  When no orthogonal derivations exist the trivial modification is
/// returned.
std::optional<Modification> random_modification(const LieAlgebra& s, const InnerProduct& ip,
                                                std::uint64_t seed);

} // namespace solvshadow

#endif
