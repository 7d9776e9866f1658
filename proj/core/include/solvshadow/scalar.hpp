#ifndef SOLVSHADOW_SCALAR_HPP
#define SOLVSHADOW_SCALAR_HPP

#include <string>
#include <vector>

#include "solvshadow/numberfield.hpp"
#include "solvshadow/rational.hpp"

namespace solvshadow {

/// Exact scalar: either a rational number or an element of a NumberField,
/// stored as the canonical polynomial in the generator of degree less than
/// the field degree.  All arithmetic and all predicates are exact.
class Scalar {
public:
  Scalar() : c_{Rational(0)} {}
  Scalar(const Rational& q) : c_{q} {}
  Scalar(long n) : c_{Rational(n)} {}
  static Scalar of_field(FieldPtr f, std::vector<Rational> coeffs);
  static Scalar generator(FieldPtr f);

  bool is_rational() const { return field_ == nullptr; }
  /// True also for field elements whose higher coefficients vanish.
  bool is_rational_value() const;
  Rational rational_value() const;  // requires is_rational_value
  const FieldPtr& field() const { return field_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar inverse() const;

  /// Enclosing box from the current generator box (exact interval Horner).
  Box approx_box() const;

  std::string str() const;

private:
  void normalize();
  FieldPtr field_;           // null for rationals
  std::vector<Rational> c_;  // degree < field degree; size 1 when rational
};

/// Minimal polynomial over Q (monic; degree 1 for rationals).
QPoly minimal_polynomial(const Scalar& s);

/// Canonical form of an algebraic number: its minimal polynomial over Q plus
/// the index of its root in the canonical root order.  Two scalars (possibly
/// from unrelated fields) are equal as complex numbers iff their canonical
/// forms coincide.
struct AlgebraicCanon {
  QPoly minpoly;
  int root_index;
  bool operator==(const AlgebraicCanon& o) const {
    return root_index == o.root_index && minpoly == o.minpoly;
  }
};
AlgebraicCanon canonical_algebraic(const Scalar& s);

/// Decides exact numeric equality across unrelated fields.
bool algebraic_equal(const Scalar& a, const Scalar& b);

/// Total order by (Re ascending, Im descending); works across fields.
int algebraic_compare(const Scalar& a, const Scalar& b);

/// Exact predicates decided by box refinement plus rational root counting.
bool is_real_value(const Scalar& s);
bool is_purely_imaginary_value(const Scalar& s);  // zero counts as imaginary

/// Sign of a real scalar (requires is_real_value).
int sign_real(const Scalar& s);

/// True iff b equals the complex conjugate of a (same field).
bool is_conjugate_pair(const Scalar& a, const Scalar& b);

/// Rational retraction, if the value is rational.
std::optional<Rational> retract_rational(const Scalar& s);

/// Promotes a rational-valued scalar into a field (identity for elements
/// already in f).
Scalar promote(const Scalar& s, const FieldPtr& f);

/// Field homomorphism determined by the image of the source generator.
struct FieldHom {
  FieldPtr from;     // null: trivial (rationals embed everywhere)
  Scalar gen_image;  // image of the generator of `from`
  Scalar apply(const Scalar& s) const;
};

} // namespace solvshadow

#endif
