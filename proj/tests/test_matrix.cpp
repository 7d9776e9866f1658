#include <doctest.h>

#include "solvshadow/matrix.hpp"
#include "test_helpers.hpp"

using namespace solvshadow;
using solvshadow::testing::mat;
using solvshadow::testing::qp;

TEST_CASE("kernel basis on the worked examples") {
  // Invertible matrix: empty kernel.
  CHECK(kernel_basis(Matrix::identity(3)).empty());
  // Zero 2x2: the standard basis.
  auto k0 = kernel_basis(Matrix(2, 2));
  REQUIRE(k0.size() == 2);
  CHECK(k0[0] == Vec{Scalar(1), Scalar(0)});
  CHECK(k0[1] == Vec{Scalar(0), Scalar(1)});
  // [[1,1],[1,1]]: kernel spanned by (1, -1) after normalization.
  auto k1 = kernel_basis(mat({{1, 1}, {1, 1}}));
  REQUIRE(k1.size() == 1);
  CHECK(k1[0] == Vec{Scalar(1), Scalar(-1)});
}

TEST_CASE("kernel vectors are exact and deterministic") {
  Matrix m = mat({{2, 4, 6}, {1, 2, 3}, {0, 0, 0}});
  auto a = kernel_basis(m);
  auto b = kernel_basis(m);
  REQUIRE(a.size() == 2);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  for (const auto& v : a) CHECK(vec_is_zero(m.apply(v)));
}

TEST_CASE("minimal polynomials of small matrices") {
  CHECK(min_poly(Matrix::identity(2)) == FPoly::from_qpoly(qp({-1, 1})));
  CHECK(min_poly(mat({{0, -1}, {1, 0}})) == FPoly::from_qpoly(qp({1, 0, 1})));
  Matrix j3 = mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(min_poly(j3) == FPoly::from_qpoly(qp({0, 0, 0, 1})));
}

TEST_CASE("characteristic polynomial and divisibility") {
  Matrix m = mat({{1, 1, 0}, {0, 1, 0}, {0, 0, 2}});
  FPoly chi = char_poly(m);
  CHECK(chi.degree() == 3);
  CHECK(chi.eval(Scalar(1)).is_zero());
  CHECK(chi.eval(Scalar(2)).is_zero());
  CHECK((chi % min_poly(m)).is_zero());
}

TEST_CASE("solve, inverse and determinant") {
  Matrix a = mat({{2, 1}, {1, 1}});
  auto x = solve(a, Vec{Scalar(3), Scalar(2)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Scalar(1));
  CHECK((*x)[1] == Scalar(1));
  CHECK(det(a) == Scalar(1));
  auto inv = inverse(a);
  REQUIRE(inv.has_value());
  CHECK((*inv * a) == Matrix::identity(2));
  CHECK(!solve(mat({{1, 1}, {1, 1}}), Vec{Scalar(1), Scalar(0)}).has_value());
  CHECK(!inverse(mat({{1, 1}, {1, 1}})).has_value());
}

TEST_CASE("rational retraction of matrices") {
  Matrix a = mat({{1, 2}, {3, 4}});
  auto r = retract_matrix_rational(a);
  REQUIRE(r.has_value());
  CHECK(*r == a);
}
