#include <doctest.h>

#include "solvshadow/jordan.hpp"
#include "solvshadow/prng.hpp"
#include "test_helpers.hpp"

using namespace solvshadow;
using solvshadow::testing::mat;
using solvshadow::testing::qp;

TEST_CASE("jordan-chevalley on the worked examples") {
  // Single eigenvalue with a nilpotent part.
  auto a = jordan_chevalley(mat({{1, 1}, {0, 1}}));
  CHECK(a.semisimple == Matrix::identity(2));
  CHECK(a.nilpotent == mat({{0, 1}, {0, 0}}));
  // Distinct eigenvalues: already semisimple.
  auto b = jordan_chevalley(mat({{1, 1}, {0, 2}}));
  CHECK(b.nilpotent.is_zero());
  CHECK(b.semisimple == mat({{1, 1}, {0, 2}}));
  // Nilpotent input.
  auto c = jordan_chevalley(mat({{0, 1}, {0, 0}}));
  CHECK(c.semisimple.is_zero());
}

TEST_CASE("jordan-chevalley postconditions on random matrices") {
  Prng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng.below(4));
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Scalar(Rational(rng.range(-3, 3)));
    JordanParts jp = jordan_chevalley(m);
    CHECK(jp.semisimple + jp.nilpotent == m);
    CHECK(jp.semisimple * jp.nilpotent == jp.nilpotent * jp.semisimple);
    CHECK(mat_pow(jp.nilpotent, n).is_zero());
    CHECK(is_squarefree(min_poly(jp.semisimple)));
    CHECK(eval_poly_at(jp.semisimple_witness, m) == jp.semisimple);
  }
}

TEST_CASE("split_real_imag on the worked examples") {
  // Real spectrum: the input itself.
  auto a = split_real_imag(mat({{1, 0}, {0, 2}}));
  CHECK(a.real_part == mat({{1, 0}, {0, 2}}));
  CHECK(a.imag_part.is_zero());
  // Purely imaginary spectrum: zero real part.
  auto b = split_real_imag(mat({{0, -1}, {1, 0}}));
  CHECK(b.real_part.is_zero());
  CHECK(b.imag_part == mat({{0, -1}, {1, 0}}));
  // Eigenvalues 1 +- i.
  auto c = split_real_imag(mat({{1, -1}, {1, 1}}));
  CHECK(c.real_part == Matrix::identity(2));
  CHECK(c.imag_part == mat({{0, -1}, {1, 0}}));
}

TEST_CASE("split_real_imag rejects non-semisimple input") {
  CHECK_THROWS_AS(split_real_imag(mat({{1, 1}, {0, 1}})), Error);
}

TEST_CASE("split over an extension: companion of x^4 - 2") {
  Matrix c4 = mat({{0, 0, 0, 2}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  SplitParts sp = split_real_imag(c4);
  REQUIRE(sp.real_part.field() != nullptr);
  CHECK(sp.real_part.field()->degree() == 2);  // lands in Q(sqrt2)
  CHECK(all_eigenvalues_real(sp.real_part));
  CHECK(has_purely_imaginary_spectrum(sp.imag_part));
  auto sum = retract_matrix_rational(sp.real_part + sp.imag_part);
  REQUIRE(sum.has_value());
  CHECK(*sum == c4);
}

TEST_CASE("split of a totally complex quartic") {
  // x^4 + x + 1: two conjugate pairs, no real roots.
  Matrix c = mat({{0, 0, 0, -1}, {1, 0, 0, -1}, {0, 1, 0, 0}, {0, 0, 1, 0}});
  SplitParts sp = split_real_imag(c);
  CHECK(all_eigenvalues_real(sp.real_part));
  CHECK(has_purely_imaginary_spectrum(sp.imag_part));
  CHECK(sp.real_part * sp.imag_part == sp.imag_part * sp.real_part);
  // x^4 + 3x^2 + 1: all roots purely imaginary.
  Matrix ci = mat({{0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, -3}, {0, 0, 1, 0}});
  SplitParts spi = split_real_imag(ci);
  CHECK(spi.real_part.is_zero());
  CHECK(has_purely_imaginary_spectrum(ci));
}

TEST_CASE("all_eigenvalues_real on the worked examples") {
  CHECK(!all_eigenvalues_real(mat({{0, -1}, {1, 0}})));
  CHECK(all_eigenvalues_real(mat({{3, 5, -1}, {0, -2, 7}, {0, 0, 1}})));
  CHECK(!all_eigenvalues_real(mat({{1, -1}, {1, 1}})));
}
