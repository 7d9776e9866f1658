#include <doctest.h>

#include "solvshadow/qpoly.hpp"
#include "solvshadow/rootbox.hpp"
#include "test_helpers.hpp"

using namespace solvshadow;
using solvshadow::testing::qp;

TEST_CASE("rational parsing and canonical form") {
  CHECK(*parse_rational("3/6") == Rational(1, 2));
  CHECK(*parse_rational("-4/2") == Rational(-2));
  CHECK(to_string(*parse_rational("10/4")) == "5/2");
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("x"));
  CHECK(!parse_rational(""));
  CHECK(!parse_rational("1.5"));
}

TEST_CASE("polynomial arithmetic and division") {
  QPoly a = qp({-2, 0, 1});  // x^2 - 2
  QPoly b = qp({1, 1});      // x + 1
  CHECK((a * b).degree() == 3);
  auto [q, r] = divmod(a, b);
  CHECK(q == qp({-1, 1}));
  CHECK(r == qp({-1}));
  CHECK(a.eval(Rational(3)) == 7);
  CHECK(a.shift(Rational(1)) == qp({-1, 2, 1}));  // (x+1)^2 - 2
  CHECK(gcd(a * b, b) == b.monic());
}

TEST_CASE("squarefree part and Sturm counting") {
  QPoly p = qp({-2, 0, 1}) * qp({-2, 0, 1}) * qp({3, 1});
  CHECK(squarefree_part(p) == (qp({-2, 0, 1}) * qp({3, 1})).monic());
  CHECK(count_real_roots(qp({-2, 0, 1})) == 2);
  CHECK(count_real_roots(qp({1, 0, 1})) == 0);
  CHECK(count_real_roots(qp({0, 0, 0, 1})) == 1);        // x^3
  CHECK(count_real_roots_interval(qp({-2, 0, 1}), 0, 2) == 1);
  CHECK(count_real_roots_interval(qp({-2, 0, 1}), -2, 0) == 1);
}

TEST_CASE("real root isolation") {
  // x^2 - 2: two disjoint intervals enclosing -sqrt2 and sqrt2.
  auto iv = isolate_real_roots_q(qp({-2, 0, 1}));
  REQUIRE(iv.size() == 2);
  CHECK(iv_disjoint(iv[0], iv[1]));
  QPoly p = qp({-2, 0, 1});
  for (const auto& i : iv) {
    CHECK(count_real_roots_interval(p, i.lo, i.hi) == 1);
  }
  CHECK(iv[0].hi < 0);
  CHECK(iv[1].lo > 0);

  // x^2 + 1: no real roots.
  CHECK(isolate_real_roots_q(qp({1, 0, 1})).empty());

  // x^3: one interval containing 0.
  auto iv3 = isolate_real_roots_q(qp({0, 0, 0, 1}));
  REQUIRE(iv3.size() == 1);
  CHECK(iv3[0].contains(0));
}

TEST_CASE("isolation interval count matches known factor structure") {
  // Products of linear and irreducible quadratic factors: interval count
  // equals degree minus twice the number of complex pairs.
  struct Case {
    QPoly p;
    int linear_roots;
    int complex_pairs;
  };
  std::vector<Case> cases = {
      {qp({-1, 1}) * qp({-3, 1}) * qp({1, 0, 1}), 2, 1},
      {qp({2, 1}) * qp({5, -2, 1}) * qp({1, 1, 1}), 1, 2},
      {qp({0, 1}) * qp({-5, 1}) * qp({-7, 1}), 3, 0},
      {qp({2, 0, 1}) * qp({3, 0, 1}), 0, 2},
  };
  for (const auto& c : cases) {
    auto iv = isolate_real_roots_q(c.p);
    CHECK(static_cast<int>(iv.size()) == c.linear_roots);
    CHECK(squarefree_part(c.p).degree() == c.linear_roots + 2 * c.complex_pairs);
  }
}

TEST_CASE("bivariate resultant eliminates the vector variable") {
  // Res_y(y^2 - 2, x - y) = x^2 - 2.
  BiPoly f1{qp({-2}), QPoly(), qp({1})};
  BiPoly f2{qp({0, 1}), qp({-1})};
  QPoly r = resultant_y(f1, f2);
  CHECK(r.monic() == qp({-2, 0, 1}).monic());
}

TEST_CASE("deterministic outputs") {
  QPoly p = qp({-2, 0, 1}) * qp({1, 0, 1}) * qp({-3, 1});
  auto a = isolate_real_roots_q(p);
  auto b = isolate_real_roots_q(p);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lo == b[i].lo);
    CHECK(a[i].hi == b[i].hi);
  }
}
