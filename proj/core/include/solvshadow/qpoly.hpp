#ifndef SOLVSHADOW_QPOLY_HPP
#define SOLVSHADOW_QPOLY_HPP

#include <utility>
#include <vector>

#include "solvshadow/rational.hpp"

namespace solvshadow {

/// Dense univariate polynomial over the rationals.  coeffs[k] is the
/// coefficient of x^k; the zero polynomial has an empty coefficient list,
/// otherwise the leading coefficient is nonzero.
class QPoly {
public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  static QPoly constant(const Rational& a);
  static QPoly x();                      // the monomial x
  static QPoly monomial(int k, const Rational& a);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& operator[](int k) const;
  Rational leading() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }

  QPoly operator-() const;
  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const Rational& a) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }

  Rational eval(const Rational& x) const;
  QPoly derivative() const;
  QPoly monic() const;

  /// p(x + a)
  QPoly shift(const Rational& a) const;
  /// p(a * x)
  QPoly scale_arg(const Rational& a) const;
  /// p(-x)
  QPoly negate_arg() const;

  std::string str(const std::string& var = "x") const;

private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator/(const QPoly& a, const QPoly& b);  // exact or truncating division
QPoly operator%(const QPoly& a, const QPoly& b);

bool divides(const QPoly& d, const QPoly& a);

/// Monic gcd.
QPoly gcd(const QPoly& a, const QPoly& b);

/// Squarefree part: p / gcd(p, p'), monic.
QPoly squarefree_part(const QPoly& p);

bool is_squarefree(const QPoly& p);

/// Number of distinct real roots of p in (a, b]; p nonzero.  Uses a Sturm
/// chain; endpoints may be +/-infinity via the count_real_roots overload.
int count_real_roots_interval(const QPoly& p, const Rational& a, const Rational& b);
int count_real_roots(const QPoly& p);

/// All coefficients bound: every complex root z of p has |Re z|, |Im z| < bound.
Rational root_bound(const QPoly& p);

/// Sturm chain of (p, q); shared by the real-root and winding-number code.
std::vector<QPoly> sturm_chain(const QPoly& p, const QPoly& q);
int sign_variations_at(const std::vector<QPoly>& chain, const Rational& x);
int sign_variations_at_inf(const std::vector<QPoly>& chain, int dir);

/// Bivariate polynomial in (x, y) as a dense vector in y whose entries are
/// polynomials in x: b[k] is the x-polynomial coefficient of y^k.
using BiPoly = std::vector<QPoly>;

void bipoly_trim(BiPoly& b);
BiPoly bipoly_add(const BiPoly& a, const BiPoly& b);
BiPoly bipoly_mul(const BiPoly& a, const BiPoly& b);

/// Resultant with respect to y of two bivariate polynomials (Sylvester
/// determinant over Q[x], fraction-free elimination).
QPoly resultant_y(const BiPoly& a, const BiPoly& b);

/// Pair-sum resolvent: vanishes at the half-sums (a_i + a_j)/2 of the roots
/// of p; the real parts of the roots of a real polynomial are among its real
/// roots.
QPoly half_sum_resolvent(const QPoly& p);

/// Pair-product resolvent: vanishes at the products a_i * a_j.
QPoly product_resolvent(const QPoly& p);

} // namespace solvshadow

#endif
