#include <doctest.h>

#include "solvshadow/fpoly.hpp"
#include "test_helpers.hpp"

using namespace solvshadow;
using solvshadow::testing::qp;

namespace {

FieldPtr gaussian() { return NumberField::from_root(qp({1, 0, 1}), 0); }
FieldPtr sqrt2_field() { return NumberField::from_root(qp({-2, 0, 1}), 1); }

} // namespace

TEST_CASE("field element arithmetic in Q(i)") {
  FieldPtr qi = gaussian();
  CHECK(!qi->generator_is_real());
  Scalar i = Scalar::generator(qi);
  CHECK((i * i) == Scalar(Rational(-1)));
  Scalar z = (i + Scalar(1)) * (i - Scalar(1));
  CHECK(z == Scalar(Rational(-2)));
  CHECK(z.is_rational_value());
  Scalar inv = i.inverse();
  CHECK((inv * i) == Scalar(Rational(1)));
  CHECK(inv == -i);
}

TEST_CASE("real field predicates and signs") {
  FieldPtr f = sqrt2_field();
  CHECK(f->generator_is_real());
  Scalar s2 = Scalar::generator(f);
  CHECK(is_real_value(s2));
  CHECK(sign_real(s2) == 1);
  CHECK(sign_real(s2 - Scalar(2)) == -1);     // sqrt2 < 2
  CHECK(sign_real(s2 - Scalar(1)) == 1);      // sqrt2 > 1
  CHECK(sign_real(s2 * s2 - Scalar(2)) == 0); // exactly zero
  CHECK(!is_purely_imaginary_value(s2));
}

TEST_CASE("imaginary predicates and conjugate pairing") {
  FieldPtr qi = gaussian();
  Scalar i = Scalar::generator(qi);
  Scalar z = Scalar(Rational(2)) + i * Scalar(3);
  CHECK(!is_real_value(z));
  CHECK(!is_purely_imaginary_value(z));
  CHECK(is_purely_imaginary_value(i * Scalar(5)));
  CHECK(is_purely_imaginary_value(Scalar(0)));
  Scalar zbar = Scalar(Rational(2)) - i * Scalar(3);
  CHECK(is_conjugate_pair(z, zbar));
  CHECK(!is_conjugate_pair(z, z));
  CHECK(is_conjugate_pair(i, -i));
}

TEST_CASE("minimal polynomials of field elements") {
  FieldPtr qi = gaussian();
  Scalar i = Scalar::generator(qi);
  CHECK(minimal_polynomial(i) == qp({1, 0, 1}).monic());
  CHECK(minimal_polynomial(i + Scalar(1)) == qp({2, -2, 1}).monic());
  CHECK(minimal_polynomial(Scalar(Rational(7, 2))) == QPoly(std::vector<Rational>{Rational(-7, 2), Rational(1)}));
}

TEST_CASE("canonical algebraic form decides cross-field equality") {
  // sqrt2 constructed in two unrelated fields.
  FieldPtr a = sqrt2_field();
  // Q(2^(1/4)): sqrt2 = gen^2.
  FieldPtr b = NumberField::from_root(qp({-2, 0, 0, 0, 1}), 1);  // the positive real root
  Scalar s2a = Scalar::generator(a);
  Scalar gb = Scalar::generator(b);
  Scalar s2b = gb * gb;
  CHECK(algebraic_equal(s2a, s2b));
  CHECK(!algebraic_equal(s2a, -s2b));
  CHECK(algebraic_compare(-s2b, s2a) < 0);
  AlgebraicCanon ca = canonical_algebraic(s2a);
  AlgebraicCanon cb = canonical_algebraic(s2b);
  CHECK(ca == cb);
  CHECK(ca.minpoly == qp({-2, 0, 1}).monic());
}

TEST_CASE("field homomorphisms preserve arithmetic") {
  FieldPtr f = sqrt2_field();
  FPoly x2p1 = promote_poly(FPoly::from_qpoly(qp({1, 0, 1})), f);
  Extension ext = extend_by_root(f, x2p1);
  Scalar s2 = Scalar::generator(f);
  Scalar img = ext.embed.apply(s2);
  CHECK((img * img) == promote(Scalar(2), ext.field));
  CHECK((ext.root * ext.root) == promote(Scalar(-1), ext.field));
  // The tower contains sqrt2 * i, a root of x^2 + 2.
  Scalar prod = img * ext.root;
  CHECK(minimal_polynomial(prod) == qp({2, 0, 1}).monic());
  CHECK(is_purely_imaginary_value(prod));
}

TEST_CASE("join_fields finds a common field") {
  FieldPtr a = sqrt2_field();
  FieldPtr b = NumberField::from_root(qp({-3, 0, 1}), 1);  // sqrt3
  FieldJoin j = join_fields(a, b);
  REQUIRE(j.field != nullptr);
  CHECK(j.field->degree() == 4);
  Scalar s2 = j.h1.apply(Scalar::generator(a));
  Scalar s3 = j.h2.apply(Scalar::generator(b));
  CHECK((s2 * s2) == promote(Scalar(2), j.field));
  CHECK((s3 * s3) == promote(Scalar(3), j.field));
  CHECK(minimal_polynomial(s2 * s3) == qp({-6, 0, 1}).monic());
  CHECK(sign_real(s2 * s3) == 1);  // both positive roots were joined
}

TEST_CASE("trager factorization over number fields") {
  FieldPtr qi = gaussian();
  auto f = factor_over_field(promote_poly(FPoly::from_qpoly(qp({1, 0, 1})), qi));
  CHECK(f.size() == 2);
  auto g = factor_over_field(promote_poly(FPoly::from_qpoly(qp({-2, 0, 1})), qi));
  CHECK(g.size() == 1);  // x^2 - 2 stays irreducible over Q(i)
  // Multiplicities survive.
  FPoly sq = promote_poly(FPoly::from_qpoly(qp({1, 0, 1}) * qp({1, 0, 1}) * qp({-1, 1})), qi);
  auto h = factor_over_field(sq);
  int total = 0;
  for (auto& [p, m] : h) total += p.degree() * m;
  CHECK(total == 5);
}
