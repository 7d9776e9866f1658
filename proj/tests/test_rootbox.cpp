#include <doctest.h>

#include "solvshadow/rootbox.hpp"
#include "test_helpers.hpp"

using namespace solvshadow;
using solvshadow::testing::qp;

TEST_CASE("winding count around known roots") {
  QPoly p = qp({1, 0, 1});  // roots +-i
  Box around_i{{rat(-1, 2), rat(1, 2)}, {rat(1, 2), rat(3, 2)}};
  Box around_minus_i = box_conj(around_i);
  Box both{{rat(-1, 2), rat(1, 2)}, {rat(-2), rat(2)}};
  Box none{{rat(2), rat(3)}, {rat(2), rat(3)}};
  CHECK(*count_roots_in_box(p, around_i) == 1);
  CHECK(*count_roots_in_box(p, around_minus_i) == 1);
  CHECK(*count_roots_in_box(p, both) == 2);
  CHECK(*count_roots_in_box(p, none) == 0);
}

TEST_CASE("boundary roots are detected, not miscounted") {
  QPoly p = qp({1, 0, 1});
  Box edge{{rat(0), rat(1)}, {rat(0), rat(1)}};  // root i on the corner path
  auto c = count_roots_in_box(p, edge);
  CHECK(!c.has_value());  // i sits on the boundary
}

TEST_CASE("real segments count only real roots") {
  QPoly p = qp({-2, 0, 1}) * qp({1, 0, 1});  // roots +-sqrt2, +-i
  Box seg{{rat(-2), rat(2)}, {rat(0), rat(0)}};
  CHECK(*count_roots_in_box(p, seg) == 2);
}

TEST_CASE("complex isolation finds every distinct root once") {
  QPoly p = qp({-2, 0, 1}) * qp({1, 0, 1}) * qp({-3, 1});
  auto boxes = isolate_complex_roots(p);
  REQUIRE(boxes.size() == 5);
  // Real roots first, ascending.
  CHECK(boxes[0].is_real_segment());
  CHECK(boxes[1].is_real_segment());
  CHECK(boxes[2].is_real_segment());
  CHECK(boxes[0].x.hi < boxes[1].x.lo);
  CHECK(boxes[1].x.hi < boxes[2].x.lo);
  // Then the conjugate pair, upper root first.
  CHECK(boxes[3].y.lo > 0);
  CHECK(boxes[4].y.hi < 0);
  for (const auto& b : boxes) CHECK(*count_roots_in_box(p, b) == 1);
}

TEST_CASE("box refinement keeps the root and shrinks") {
  QPoly p = qp({1, 0, 1});
  Box b{{rat(-1, 2), rat(1, 2)}, {rat(1, 2), rat(3, 2)}};
  for (int i = 0; i < 6; ++i) {
    Box r = refine_box(p, b);
    CHECK(*count_roots_in_box(p, r) == 1);
    CHECK(r.x.width() + r.y.width() < b.x.width() + b.y.width());
    b = r;
  }
}

TEST_CASE("root comparison orders by real part then imaginary") {
  QPoly p = qp({1, 0, 1});        // +-i
  QPoly q = qp({-2, 0, 1});       // +-sqrt2
  auto pi = isolate_complex_roots(p);
  auto qi = isolate_complex_roots(q);
  CHECK(compare_roots(q, qi[0], q, qi[1]) < 0);   // -sqrt2 < sqrt2
  CHECK(compare_roots(p, pi[0], p, pi[1]) < 0);   // i before -i (Im descending)
  CHECK(compare_roots(q, qi[0], p, pi[0]) < 0);   // -sqrt2 before i
}
