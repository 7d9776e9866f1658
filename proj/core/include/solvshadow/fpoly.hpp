#ifndef SOLVSHADOW_FPOLY_HPP
#define SOLVSHADOW_FPOLY_HPP

#include <vector>

#include "solvshadow/scalar.hpp"

namespace solvshadow {

/// Dense univariate polynomial with Scalar coefficients over a common field
/// (rationals mix freely with any field).
class FPoly {
public:
  FPoly() = default;
  explicit FPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  static FPoly constant(const Scalar& a);
  static FPoly from_qpoly(const QPoly& p);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& operator[](int k) const;
  Scalar leading() const;
  FieldPtr field() const;  // first field tag among coefficients; null if all rational

  FPoly operator-() const;
  FPoly operator+(const FPoly& o) const;
  FPoly operator-(const FPoly& o) const;
  FPoly operator*(const FPoly& o) const;
  FPoly operator*(const Scalar& a) const;
  bool operator==(const FPoly& o) const;

  Scalar eval(const Scalar& x) const;
  FPoly derivative() const;
  FPoly monic() const;

  std::string str(const std::string& var = "x") const;

private:
  void trim();
  std::vector<Scalar> c_;
};

std::pair<FPoly, FPoly> divmod(const FPoly& a, const FPoly& b);
FPoly operator/(const FPoly& a, const FPoly& b);
FPoly operator%(const FPoly& a, const FPoly& b);
FPoly gcd(const FPoly& a, const FPoly& b);
/// g = gcd(a,b) monic together with u, v such that u*a + v*b = g.
struct XgcdResult {
  FPoly g, u, v;
};
XgcdResult xgcd(const FPoly& a, const FPoly& b);

FPoly squarefree_part(const FPoly& p);
bool is_squarefree(const FPoly& p);

/// All-rational polynomial back to QPoly; requires rational values.
QPoly to_qpoly(const FPoly& p);

FPoly map_poly(const FPoly& p, const FieldHom& hom);
FPoly promote_poly(const FPoly& p, const FieldPtr& f);

/// Distinct real roots of p (coefficients in a real-embedded field), counted
/// by a Sturm chain with exact sign evaluation.
int count_real_roots_field(const FPoly& p);

/// True iff the squarefree part of p splits over R (as many distinct real
/// roots as its degree).
bool all_roots_real(const FPoly& p);

/// Monic irreducible factors of a nonzero polynomial over its field
/// (Trager's norm method on number fields, Zassenhaus over Q), with
/// multiplicities, canonically ordered.
std::vector<std::pair<FPoly, int>> factor_over_field(const FPoly& p);

/// CRT idempotents for pairwise coprime monic factors of mu = prod(ps):
/// e_i = 1 mod ps[i], e_i = 0 mod ps[j].
std::vector<FPoly> crt_idempotents(const std::vector<FPoly>& ps);

/// Result of adjoining a root of an irreducible polynomial to a field: the
/// extension presented on a primitive element, the embedding of the old
/// field, and the adjoined root.
struct Extension {
  FieldPtr field;
  FieldHom embed;
  Scalar root;
};

/// Adjoins the root_index-th root (canonical order) of p, a monic polynomial
/// irreducible over base_field of degree >= 2.  base_field may be null
/// (extension of Q).  The default picks the canonically-first root, which is
/// the leftmost real root whenever p has real roots.
Extension extend_by_root(const FieldPtr& base_field, const FPoly& p, int root_index = 0);

/// Smallest common field containing two fields (as embedded subfields of C),
/// with the embeddings of both.
struct FieldJoin {
  FieldPtr field;  // null when both inputs are null
  FieldHom h1, h2;
};
FieldJoin join_fields(const FieldPtr& a, const FieldPtr& b);

} // namespace solvshadow

#endif
