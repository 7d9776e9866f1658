#include <doctest.h>

#include <algorithm>

#include "solvshadow/prng.hpp"
#include "solvshadow/zfactor.hpp"
#include "test_helpers.hpp"

using namespace solvshadow;
using solvshadow::testing::qp;

TEST_CASE("factorization of known products") {
  QPoly p = qp({-2, 0, 1}) * qp({1, 0, 1}) * qp({-3, 1}) * qp({-3, 1});
  auto f = factor_rational(p);
  REQUIRE(f.size() == 3);
  CHECK(f[0].first == qp({-3, 1}));
  CHECK(f[0].second == 2);
  CHECK(f[1].first == qp({-2, 0, 1}));
  CHECK(f[2].first == qp({1, 0, 1}));
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(qp({1, 0, 1})));
  CHECK(is_irreducible(qp({-2, 0, 0, 0, 1})));      // x^4 - 2
  CHECK(is_irreducible(qp({1, 1, 0, 0, 1})));       // x^4 + x + 1
  CHECK(!is_irreducible(qp({-4, 0, 0, 0, 1})));     // x^4 - 4
  CHECK(is_irreducible(qp({7, -3, 1})));
}

TEST_CASE("non-monic and rational-coefficient inputs") {
  QPoly p = qp({-2, 0, 4});  // 4x^2 - 2 = 4(x^2 - 1/2)
  auto f = factor_rational(p);
  REQUIRE(f.size() == 1);
  CHECK(f[0].first.is_monic());
  CHECK(f[0].first.eval(Rational(0)) == Rational(-1, 2));
}

TEST_CASE("random products against the known factor list") {
  // Brute-force oracle: assemble polynomials from a pool of linear and
  // irreducible quadratic factors, then factor and compare multisets.
  std::vector<QPoly> pool = {
      qp({-1, 1}), qp({2, 1}),  qp({0, 1}),  qp({-5, 1}),
      qp({1, 0, 1}), qp({1, 1, 1}), qp({3, -2, 1}), qp({2, 0, 1}),
  };
  Prng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<QPoly> chosen;
    int parts = 2 + static_cast<int>(rng.below(3));
    QPoly prod = QPoly::constant(1);
    for (int t = 0; t < parts; ++t) {
      const QPoly& pick = pool[rng.below(pool.size())];
      chosen.push_back(pick);
      prod = prod * pick;
    }
    auto factored = factor_rational(prod);
    std::vector<QPoly> back;
    for (const auto& [g, mult] : factored)
      for (int i = 0; i < mult; ++i) back.push_back(g);
    auto key = [](const QPoly& q) { return q.coeffs(); };
    std::sort(chosen.begin(), chosen.end(),
              [&](const QPoly& a, const QPoly& b) { return key(a) < key(b); });
    std::sort(back.begin(), back.end(),
              [&](const QPoly& a, const QPoly& b) { return key(a) < key(b); });
    REQUIRE(chosen.size() == back.size());
    for (size_t i = 0; i < chosen.size(); ++i) CHECK(chosen[i] == back[i]);
  }
}
