#ifndef SOLVSHADOW_ROOTBOX_HPP
#define SOLVSHADOW_ROOTBOX_HPP

#include <optional>
#include <utility>
#include <vector>

#include "solvshadow/qpoly.hpp"

namespace solvshadow {

/// Closed rational interval.
struct Interval {
  Rational lo, hi;
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool is_point() const { return lo == hi; }
  Rational mid() const { return (lo + hi) / 2; }
  Rational width() const { return hi - lo; }
};

Interval iv_add(const Interval& a, const Interval& b);
Interval iv_sub(const Interval& a, const Interval& b);
Interval iv_mul(const Interval& a, const Interval& b);
Interval iv_neg(const Interval& a);
Interval iv_scale(const Interval& a, const Rational& c);
bool iv_disjoint(const Interval& a, const Interval& b);

/// Closed rational rectangle in the complex plane.  A degenerate rectangle
/// with y = [0,0] represents a segment of the real axis, used for real
/// algebraic numbers (root counting then only sees real roots, which is the
/// intended semantics).
struct Box {
  Interval x, y;
  bool is_real_segment() const { return y.lo == 0 && y.hi == 0; }
  bool contains_origin() const { return x.contains(0) && y.contains(0); }
};

Box box_add(const Box& a, const Box& b);
Box box_sub(const Box& a, const Box& b);
Box box_mul(const Box& a, const Box& b);
Box box_neg(const Box& a);
Box box_conj(const Box& a);
Box box_scale(const Box& a, const Rational& c);
bool box_disjoint(const Box& a, const Box& b);

/// p evaluated at the rational complex point x + iy.
std::pair<Rational, Rational> complex_eval(const QPoly& p, const Rational& x, const Rational& y);

/// Horner evaluation of a rational-coefficient polynomial over a box.
Box box_eval(const QPoly& p, const Box& z);

/// Number of distinct roots of p inside the box.  For a real segment this is
/// the number of real roots in the closed interval.  For a proper rectangle
/// the count is over the open box via the winding number of p along the
/// boundary; returns nullopt when a root lies on (or too close to) the
/// boundary to certify, in which case the caller must perturb the box.
std::optional<int> count_roots_in_box(const QPoly& p, const Box& b);

/// Disjoint closed isolating intervals, one per distinct real root,
/// ordered ascending.  Interval endpoints are never roots except for
/// degenerate [r, r] intervals at rational roots.
std::vector<Interval> isolate_real_roots_q(const QPoly& p);

/// Isolating boxes for all distinct complex roots, in the canonical order:
/// real roots ascending, then non-real roots by (Re ascending, Im
/// descending).  Real roots get degenerate boxes.
std::vector<Box> isolate_complex_roots(const QPoly& p);

/// Shrinks an isolating box (count must be 1 and stays 1).
Box refine_box(const QPoly& p, const Box& b);

/// Refine two isolating boxes of distinct numbers until the x-projections or
/// the y-projections are disjoint; returns the comparison of the underlying
/// algebraic numbers by (Re, Im descending) order: -1, 0 never, +1.
int compare_roots(const QPoly& pa, Box a, const QPoly& pb, Box b);

} // namespace solvshadow

#endif
