#include <doctest.h>

#include "solvshadow/catalog.hpp"
#include "solvshadow/prng.hpp"
#include "solvshadow/randomgen.hpp"
#include "solvshadow/shadow.hpp"
#include "test_helpers.hpp"

using namespace solvshadow;
using solvshadow::testing::coef;
using solvshadow::testing::mat;

namespace {

Vec e(int n, int i) {
  Vec v(n);
  v[i] = Scalar(Rational(1));
  return v;
}

} // namespace

TEST_CASE("construction rejects a Jacobi violation with the offending triple") {
  // [X,Y]=Z, [X,Z]=Y, [Y,Z]=X is so(3)-like and passes Jacobi; flip one sign
  // structure to break it.
  CHECK_THROWS_WITH_AS(
      LieAlgebra::create(3, {"X", "Y", "Z"},
                         {{0, 1, coef({0, 0, 1})}, {0, 2, coef({0, 1, 0})},
                          {1, 2, coef({0, 1, 0})}}),
      doctest::Contains("Jacobi"), Error);
}

TEST_CASE("bracket is bilinear and antisymmetric") {
  LieAlgebra e2 = make_e2tilde();
  Vec t = e(3, 0), x = e(3, 1), y = e(3, 2);
  CHECK(bracket(e2, t, x) == y);
  CHECK(bracket(e2, t, y) == vec_scale(x, Scalar(-1)));
  CHECK(vec_is_zero(bracket(e2, x, x)));
  CHECK(bracket(e2, x, t) == vec_scale(y, Scalar(-1)));
  LieAlgebra h3 = make_heisenberg3();
  CHECK(bracket(h3, e(3, 0), e(3, 1)) == e(3, 2));
  CHECK_THROWS_AS(bracket(h3, Vec(2), Vec(3)), Error);
}

TEST_CASE("ad matrices") {
  LieAlgebra ab = make_abelian(3);
  CHECK(ad(ab, e(3, 0)).is_zero());
  LieAlgebra e2 = make_e2tilde();
  Matrix adt = ad(e2, e(3, 0));
  CHECK(adt.column(1) == e(3, 2));
  CHECK(adt.column(2) == vec_scale(e(3, 1), Scalar(-1)));
  LieAlgebra h3 = make_heisenberg3();
  CHECK(rank(ad(h3, e(3, 0))) == 1);
}

TEST_CASE("series and solvability") {
  LieAlgebra h3 = make_heisenberg3();
  auto ds = derived_series(h3);
  REQUIRE(ds.size() == 3);
  CHECK(ds[0].dim() == 3);
  CHECK(ds[1].dim() == 1);
  CHECK(ds[2].dim() == 0);
  CHECK(is_solvable(h3));
  CHECK(is_nilpotent(h3));
  LieAlgebra ab = make_abelian(4);
  CHECK(derived_series(ab).size() == 2);
  // A simple 3-dimensional algebra is not solvable.
  LieAlgebra sl2 = LieAlgebra::create(
      3, {"H", "E", "F"},
      {{0, 1, coef({0, 2, 0})}, {0, 2, coef({0, 0, -2})}, {1, 2, coef({1, 0, 0})}});
  CHECK(!is_solvable(sl2));
  CHECK(derived_series(sl2).back().dim() == 3);
  CHECK_THROWS_AS(triangularize(sl2), Error);
}

TEST_CASE("unimodularity") {
  CHECK(is_unimodular(make_e2tilde()));
  CHECK(!is_unimodular(make_affine()));
  CHECK(is_unimodular(make_heisenberg3()));
  CHECK(is_unimodular(make_oscillator()));
  CHECK(is_unimodular(make_blockdiag5()));
}

TEST_CASE("triangularize the worked examples") {
  // Abelian: identity flag, zero weights.
  WeightData ab = triangularize(make_abelian(3));
  CHECK(ab.field == nullptr);
  for (const auto& lam : ab.weights) CHECK(vec_is_zero(lam));

  // e2tilde: weights 0, +-i as functionals supported on T.
  WeightData wd = triangularize(make_e2tilde());
  REQUIRE(wd.field != nullptr);
  CHECK(wd.field->degree() == 2);
  int zero_rows = 0, imag_rows = 0;
  for (const auto& lam : wd.weights) {
    CHECK(lam[1].is_zero());
    CHECK(lam[2].is_zero());
    if (lam[0].is_zero()) ++zero_rows;
    else if (is_purely_imaginary_value(lam[0])) ++imag_rows;
  }
  CHECK(zero_rows == 1);
  CHECK(imag_rows == 2);

  // Affine algebra: weights 0 and 1 on X.
  WeightData wa = triangularize(make_affine());
  CHECK(wa.field == nullptr);
  std::vector<Rational> vals;
  for (const auto& lam : wa.weights) vals.push_back(lam[0].rational_value());
  std::sort(vals.begin(), vals.end());
  CHECK(vals == std::vector<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("weight multiset is closed under conjugation") {
  for (const auto& entry : catalog()) {
    if (!is_solvable(entry.algebra)) continue;
    WeightData wd = triangularize(entry.algebra);
    int n = entry.algebra.dim();
    for (const auto& lam : wd.weights) {
      bool found = false;
      for (const auto& mu : wd.weights) {
        bool conj = true;
        for (int i = 0; i < n && conj; ++i)
          if (!is_conjugate_pair(lam[i], mu[i])) conj = false;
        if (conj) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("complete solvability on the worked examples") {
  CHECK(is_completely_solvable(make_heisenberg3()));
  CHECK(!is_completely_solvable(make_e2tilde()));
  CHECK(is_completely_solvable(make_affine()));
  CHECK(is_completely_solvable(make_split_diag3()));
  CHECK(!is_completely_solvable(make_oscillator()));
}

TEST_CASE("nilradical on the worked examples") {
  Subspace n1 = nilradical(make_e2tilde());
  CHECK(n1.dim() == 2);
  CHECK(n1.contains(e(3, 1)));
  CHECK(n1.contains(e(3, 2)));
  CHECK(nilradical(make_heisenberg3()).dim() == 3);
  Subspace n2 = nilradical(make_affine());
  CHECK(n2.dim() == 1);
  CHECK(n2.contains(e(2, 1)));
}

TEST_CASE("every derivation maps into the nilradical") {
  for (const auto& entry : catalog()) {
    const LieAlgebra& g = entry.algebra;
    Subspace nil = nilradical(g);
    for (const auto& d : derivations(g)) {
      for (int j = 0; j < g.dim(); ++j) CHECK(nil.contains(d.column(j)));
    }
  }
}

TEST_CASE("maximal completely solvable ideal") {
  // Completely solvable algebras are their own maximal ideal.
  CHECK(max_completely_solvable_ideal(make_split_diag3()).dim() == 3);
  // e2tilde: the T direction is excluded.
  Subspace s = max_completely_solvable_ideal(make_e2tilde());
  CHECK(s.dim() == 2);
  CHECK(s.contains(e(3, 1)));
  // Weights concatenate across direct sums.
  LieAlgebra mix = direct_sum(make_e2tilde(), make_affine());
  Subspace sm = max_completely_solvable_ideal(mix);
  CHECK(sm.dim() == 4);
  CHECK(sm.contains(e(5, 3)));
  CHECK(sm.contains(e(5, 4)));
  CHECK(!sm.contains(e(5, 0)));
}

TEST_CASE("maximal ideal dominates random completely solvable ideals") {
  Prng rng(11);
  for (const auto& entry : catalog()) {
    const LieAlgebra& g = entry.algebra;
    Subspace s = max_completely_solvable_ideal(g);
    for (int trial = 0; trial < 5; ++trial) {
      Vec x(g.dim());
      for (auto& c : x) c = Scalar(Rational(rng.range(-2, 2)));
      // Ideal closure of x.
      Subspace ideal = Subspace::span(g, {x});
      for (int iter = 0; iter < g.dim(); ++iter) {
        Subspace next = subspace_sum(ideal, bracket_span(Subspace::whole(g), ideal));
        if (next.dim() == ideal.dim()) break;
        ideal = next;
      }
      if (ideal.dim() == 0) continue;
      LieAlgebra sub = subalgebra_structure(ideal);
      if (!is_completely_solvable(sub)) continue;
      CHECK(s.contains(ideal));
    }
  }
}

TEST_CASE("cartan subalgebras satisfy their postconditions") {
  CHECK(cartan_subalgebra(make_abelian(3)).dim() == 3);
  CHECK(cartan_subalgebra(make_heisenberg3()).dim() == 3);
  Subspace h = cartan_subalgebra(make_e2tilde());
  CHECK(h.dim() == 1);
  CHECK(normalizer(make_e2tilde(), h) == h);
  Subspace ho = cartan_subalgebra(make_oscillator());
  CHECK(ho.dim() == 2);
  // The affine algebra has many Cartan subalgebras; variants reach several.
  std::vector<Subspace> distinct;
  for (std::uint64_t v = 0; v < 12; ++v) {
    Subspace c = cartan_subalgebra(make_affine(), v);
    bool seen = false;
    for (const auto& old : distinct)
      if (old == c) seen = true;
    if (!seen) distinct.push_back(c);
  }
  CHECK(distinct.size() >= 2);
}

TEST_CASE("derivation algebras") {
  CHECK(derivations(make_heisenberg3()).size() == 6);
  CHECK(derivations(make_abelian(3)).size() == 9);
  auto da = derivations(make_affine());
  REQUIRE(da.size() == 2);
  Subspace nil = nilradical(make_affine());
  for (const auto& d : da)
    for (int j = 0; j < 2; ++j) CHECK(nil.contains(d.column(j)));
}

TEST_CASE("killing form values and invariance") {
  CHECK(killing_form(make_abelian(4)).is_zero());
  CHECK(killing_form(make_heisenberg3()).is_zero());
  Matrix b = killing_form(make_e2tilde());
  CHECK(b(0, 0) == Scalar(-2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != 0 || j != 0) CHECK(b(i, j).is_zero());
  // Invariance: B([x,y],z) + B(y,[x,z]) = 0 on all basis triples.
  for (const auto& entry : catalog()) {
    const LieAlgebra& g = entry.algebra;
    Matrix bk = killing_form(g);
    int n = g.dim();
    auto bform = [&](const Vec& u, const Vec& v) {
      Scalar acc;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc = acc + u[i] * bk(i, j) * v[j];
      return acc;
    };
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          Scalar lhs = bform(bracket(g, e(n, x), e(n, y)), e(n, z)) +
                       bform(e(n, y), bracket(g, e(n, x), e(n, z)));
          CHECK(lhs.is_zero());
        }
  }
}

TEST_CASE("orthogonal derivations") {
  auto od = orthogonal_derivations(make_abelian(2), InnerProduct::standard(2));
  REQUIRE(od.size() == 1);
  CHECK(has_purely_imaginary_spectrum(od[0]));
  CHECK(orthogonal_derivations(make_affine(), InnerProduct::standard(2)).empty());
  auto oh = orthogonal_derivations(make_heisenberg3(), InnerProduct::standard(3));
  REQUIRE(oh.size() == 1);
  // Skewness in orthonormal coordinates.
  CHECK((oh[0] + oh[0].transpose()).is_zero());
}

TEST_CASE("semidirect sums") {
  LieAlgebra r = make_heisenberg3();
  // Empty torus: same structure constants.
  auto sd0 = semidirect_sum(r, {});
  CHECK(sd0.algebra == r);
  // Rotation on the abelian plane gives the motion algebra.
  Matrix j = mat({{0, -1}, {1, 0}});
  auto sd1 = semidirect_sum(make_abelian(2), {j});
  CHECK(sd1.algebra.dim() == 3);
  CHECK(is_solvable(sd1.algebra));
  CHECK(fingerprint(sd1.algebra) == fingerprint(make_e2tilde()));
  // A diagonal-type derivation of h3.
  Matrix d = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  auto sd2 = semidirect_sum(r, {d});
  CHECK(sd2.algebra.dim() == 4);
  CHECK(is_solvable(sd2.algebra));
  // Non-derivations are rejected.
  Matrix bad = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK_THROWS_AS(semidirect_sum(r, {bad}), Error);
}

TEST_CASE("inner product validation") {
  CHECK_THROWS_AS(InnerProduct::create(mat({{1, 2}, {3, 1}})), Error);   // not symmetric
  CHECK_THROWS_AS(InnerProduct::create(mat({{0, 0}, {0, 1}})), Error);   // not definite
  CHECK_THROWS_AS(InnerProduct::create(mat({{-1, 0}, {0, 1}})), Error);  // negative direction
  InnerProduct ok = InnerProduct::create(mat({{2, 1}, {1, 1}}));
  CHECK(ok.matrix()(0, 0) == Scalar(2));
}

TEST_CASE("degenerate dimensions short-circuit") {
  LieAlgebra zero = make_abelian(0);
  CHECK(is_solvable(zero));
  CHECK(is_nilpotent(zero));
  CHECK(triangularize(zero).weights.empty());
  LieAlgebra line = make_abelian(1);
  CHECK(nilradical(line).dim() == 1);
  CHECK(cartan_subalgebra(line).dim() == 1);
  CHECK(derivations(line).size() == 1);
}

TEST_CASE("random scrambles preserve structure") {
  Prng rng(3);
  for (int t = 0; t < 6; ++t) {
    LieAlgebra g = random_solvable_algebra(100 + t);
    LieAlgebra s = random_basis_scramble(g, rng.next());
    CHECK(is_solvable(s));
    CHECK(is_completely_solvable(g) == is_completely_solvable(s));
    CHECK(nilradical(g).dim() == nilradical(s).dim());
  }
}
