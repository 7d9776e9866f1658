#include "solvshadow/rootbox.hpp"

#include <algorithm>

#include "solvshadow/errors.hpp"

namespace solvshadow {

Interval iv_add(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval iv_sub(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval iv_neg(const Interval& a) { return {-a.hi, -a.lo}; }

Interval iv_mul(const Interval& a, const Interval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {lo, hi};
}

Interval iv_scale(const Interval& a, const Rational& c) {
  if (c >= 0) return {a.lo * c, a.hi * c};
  return {a.hi * c, a.lo * c};
}

bool iv_disjoint(const Interval& a, const Interval& b) { return a.hi < b.lo || b.hi < a.lo; }

Box box_add(const Box& a, const Box& b) { return {iv_add(a.x, b.x), iv_add(a.y, b.y)}; }
Box box_sub(const Box& a, const Box& b) { return {iv_sub(a.x, b.x), iv_sub(a.y, b.y)}; }

Box box_mul(const Box& a, const Box& b) {
  return {iv_sub(iv_mul(a.x, b.x), iv_mul(a.y, b.y)), iv_add(iv_mul(a.x, b.y), iv_mul(a.y, b.x))};
}

Box box_neg(const Box& a) { return {iv_neg(a.x), iv_neg(a.y)}; }
Box box_conj(const Box& a) { return {a.x, iv_neg(a.y)}; }
Box box_scale(const Box& a, const Rational& c) { return {iv_scale(a.x, c), iv_scale(a.y, c)}; }

bool box_disjoint(const Box& a, const Box& b) {
  return iv_disjoint(a.x, b.x) || iv_disjoint(a.y, b.y);
}

std::pair<Rational, Rational> complex_eval(const QPoly& p, const Rational& x, const Rational& y) {
  Rational re(0), im(0);
  for (int k = p.degree(); k >= 0; --k) {
    Rational nre = re * x - im * y + p[k];
    Rational nim = re * y + im * x;
    re = nre;
    im = nim;
  }
  return {re, im};
}

Box box_eval(const QPoly& p, const Box& z) {
  Box acc{{Rational(0), Rational(0)}, {Rational(0), Rational(0)}};
  for (int k = p.degree(); k >= 0; --k) {
    acc = box_mul(acc, z);
    acc.x = iv_add(acc.x, Interval{p[k], p[k]});
  }
  return acc;
}

namespace {

// ------------------------------------------------------- real isolation ----

/// Isolating intervals for the roots of squarefree f in the open interval
/// (a, b), strictly inside it, with non-root endpoints (degenerate [r, r]
/// intervals for rational roots).  Requires all chain data for f.
void isolate_open(const QPoly& f, const std::vector<QPoly>& chain, const Rational& a,
                  const Rational& b, std::vector<Interval>& out) {
  int count = sign_variations_at(chain, a) - sign_variations_at(chain, b);
  if (f.eval(b) == 0) count -= 1;  // Sturm counts roots in (a, b]
  if (count <= 0) return;
  Rational m = (a + b) / 2;
  if (f.eval(m) == 0) {
    out.push_back({m, m});
    isolate_open(f, chain, a, m, out);
    isolate_open(f, chain, m, b, out);
    return;
  }
  if (count == 1) {
    // Shrink until strictly inside (a, b).
    Rational lo = a, hi = b;
    while (true) {
      Rational mid = (lo + hi) / 2;
      if (f.eval(mid) == 0) {
        out.push_back({mid, mid});
        return;
      }
      int left = sign_variations_at(chain, lo) - sign_variations_at(chain, mid);
      if (left == 1)
        hi = mid;
      else
        lo = mid;
      if (lo > a && hi < b && f.eval(lo) != 0 && f.eval(hi) != 0) {
        out.push_back({lo, hi});
        return;
      }
    }
  }
  isolate_open(f, chain, a, m, out);
  isolate_open(f, chain, m, b, out);
}

/// Bisect an isolating interval of squarefree f once.
Interval shrink_interval(const QPoly& f, const std::vector<QPoly>& chain, const Interval& iv) {
  if (iv.is_point()) return iv;
  Rational m = iv.mid();
  if (f.eval(m) == 0) return {m, m};
  int left = sign_variations_at(chain, iv.lo) - sign_variations_at(chain, m);
  return left == 1 ? Interval{iv.lo, m} : Interval{m, iv.hi};
}

// ------------------------------------------------------ winding numbers ----

struct EdgeData {
  QPoly u, v;  // p(z(t)) = u(t) + i v(t) for t in [0, 1]
};

EdgeData edge_polys(const QPoly& p, const Rational& ax, const Rational& ay, const Rational& bx,
                    const Rational& by) {
  QPoly zre(std::vector<Rational>{ax, bx - ax});
  QPoly zim(std::vector<Rational>{ay, by - ay});
  QPoly u, v;
  for (int k = p.degree(); k >= 0; --k) {
    QPoly nu = u * zre - v * zim + QPoly::constant(p[k]);
    QPoly nv = u * zim + v * zre;
    u = std::move(nu);
    v = std::move(nv);
  }
  return {u, v};
}

/// Octant of a nonzero point with sign data (su, sv), at most one of them 0.
int octant(int su, int sv) {
  static const int table[3][3] = {
      // sv = -1, 0, +1  (index sv+1); su rows
      {5, 4, 3},  // su = -1
      {6, -1, 2}, // su = 0
      {7, 0, 1},  // su = +1
  };
  int o = table[su + 1][sv + 1];
  check_internal(o >= 0, "octant of origin");
  return o;
}

/// Quadrant-walk winding count for squarefree p along the rectangle boundary.
/// Returns nullopt if a root of p lies on the boundary.
std::optional<int> winding_count(const QPoly& p, const Box& b) {
  struct Pt {
    Rational x, y;
  };
  Pt c[4] = {{b.x.lo, b.y.lo}, {b.x.hi, b.y.lo}, {b.x.hi, b.y.hi}, {b.x.lo, b.y.hi}};
  for (auto& pt : c) {
    auto [re, im] = complex_eval(p, pt.x, pt.y);
    if (re == 0 && im == 0) return std::nullopt;
  }
  std::vector<int> states;  // cyclic octant sequence over all edges
  for (int e = 0; e < 4; ++e) {
    const Pt& A = c[e];
    const Pt& B = c[(e + 1) % 4];
    EdgeData ed = edge_polys(p, A.x, A.y, B.x, B.y);
    check_internal(!(ed.u.is_zero() && ed.v.is_zero()), "edge image identically zero");
    // A root of p on the open edge shows up as a common root of u and v.
    QPoly g;
    if (ed.u.is_zero())
      g = ed.v;
    else if (ed.v.is_zero())
      g = ed.u;
    else
      g = gcd(ed.u, ed.v);
    if (g.degree() > 0 && count_real_roots_interval(g, 0, 1) > 0) return std::nullopt;

    auto isolate_edge = [](const QPoly& f) -> std::vector<Interval> {
      if (f.is_zero() || f.degree() == 0) return {};
      QPoly sf = squarefree_part(f);
      if (sf.degree() == 0) return {};
      auto chain = sturm_chain(sf, sf.derivative());
      std::vector<Interval> iv;
      isolate_open(sf, chain, 0, 1, iv);
      return iv;
    };
    std::vector<Interval> iu = isolate_edge(ed.u);
    std::vector<Interval> ivv = isolate_edge(ed.v);
    // Refine until the two interval families are pairwise disjoint (distinct
    // roots, so this terminates).
    {
      QPoly su = ed.u.is_zero() ? QPoly() : squarefree_part(ed.u);
      QPoly sv = ed.v.is_zero() ? QPoly() : squarefree_part(ed.v);
      std::vector<QPoly> cu, cv;
      if (!su.is_zero() && su.degree() > 0) cu = sturm_chain(su, su.derivative());
      if (!sv.is_zero() && sv.degree() > 0) cv = sturm_chain(sv, sv.derivative());
      bool again = true;
      while (again) {
        again = false;
        for (auto& a : iu)
          for (auto& bb : ivv) {
            if (!iv_disjoint(a, bb)) {
              a = shrink_interval(su, cu, a);
              bb = shrink_interval(sv, cv, bb);
              again = true;
            }
          }
      }
    }
    std::vector<Interval> all = iu;
    all.insert(all.end(), ivv.begin(), ivv.end());
    std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    // Gap sample points: before, between, and after the isolating intervals.
    std::vector<Rational> samples;
    Rational prev(0);
    for (const auto& iv : all) {
      samples.push_back((prev + iv.lo) / 2);
      prev = iv.hi;
    }
    samples.push_back((prev + 1) / 2);
    for (const auto& t : samples) {
      int su = sign(ed.u.eval(t));
      int sv = sign(ed.v.eval(t));
      check_internal(su != 0 || sv != 0, "winding sample at origin");
      states.push_back(octant(su, sv));
    }
  }
  long total = 0;
  int n = static_cast<int>(states.size());
  for (int i = 0; i < n; ++i) {
    int d = (states[(i + 1) % n] - states[i]) % 8;
    if (d < 0) d += 8;
    if (d > 4) d -= 8;
    check_internal(d >= -2 && d <= 2, "winding step too large (missed crossing)");
    total += d;
  }
  check_internal(total % 8 == 0, "winding total not divisible by 8");
  return static_cast<int>(total / 8);
}

int count_segment(const QPoly& sf, const std::vector<QPoly>& chain, const Interval& x) {
  if (x.is_point()) return sf.eval(x.lo) == 0 ? 1 : 0;
  int c = sign_variations_at(chain, x.lo) - sign_variations_at(chain, x.hi);
  if (sf.eval(x.lo) == 0) c += 1;  // closed on the left too
  return c;
}

} // namespace

std::optional<int> count_roots_in_box(const QPoly& p, const Box& b) {
  check_internal(!p.is_zero(), "root count of zero polynomial");
  QPoly sf = squarefree_part(p);
  if (sf.degree() == 0) return 0;
  if (b.is_real_segment()) {
    auto chain = sturm_chain(sf, sf.derivative());
    return count_segment(sf, chain, b.x);
  }
  return winding_count(sf, b);
}

std::vector<Interval> isolate_real_roots_q(const QPoly& p) {
  check_internal(!p.is_zero(), "isolating roots of zero polynomial");
  QPoly sf = squarefree_part(p);
  if (sf.degree() == 0) return {};
  Rational m = root_bound(sf);
  auto chain = sturm_chain(sf, sf.derivative());
  std::vector<Interval> out;
  isolate_open(sf, chain, -m, m, out);
  std::sort(out.begin(), out.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  // Separate any touching neighbours.
  bool again = true;
  while (again) {
    again = false;
    for (size_t i = 0; i + 1 < out.size(); ++i) {
      if (!iv_disjoint(out[i], out[i + 1])) {
        out[i] = shrink_interval(sf, chain, out[i]);
        out[i + 1] = shrink_interval(sf, chain, out[i + 1]);
        again = true;
      }
    }
  }
  return out;
}

Box refine_box(const QPoly& p, const Box& b) {
  QPoly sf = squarefree_part(p);
  if (b.is_real_segment()) {
    if (b.x.is_point()) return b;
    auto chain = sturm_chain(sf, sf.derivative());
    // Maintain non-root endpoints.
    Rational m = b.x.mid();
    if (sf.eval(m) == 0) return {{m, m}, {Rational(0), Rational(0)}};
    Interval half{b.x.lo, m};
    if (count_segment(sf, chain, half) == 1) return {half, b.y};
    return {{m, b.x.hi}, b.y};
  }
  static const std::pair<int, int> fractions[] = {{1, 2}, {7, 16}, {9, 16}, {3, 8},
                                                  {5, 8}, {13, 32}, {19, 32}};
  bool cut_x = b.x.width() >= b.y.width();
  for (int attempt = 0; attempt < 2; ++attempt, cut_x = !cut_x) {
    const Interval& axis = cut_x ? b.x : b.y;
    for (auto [num, den] : fractions) {
      Rational cut = axis.lo + axis.width() * Rational(num, den);
      Box lo = b, hi = b;
      if (cut_x) {
        lo.x.hi = cut;
        hi.x.lo = cut;
      } else {
        lo.y.hi = cut;
        hi.y.lo = cut;
      }
      auto clo = count_roots_in_box(sf, lo);
      if (clo && *clo == 1) return lo;
      if (clo && *clo == 0) {
        auto chi = count_roots_in_box(sf, hi);
        if (chi && *chi == 1) return hi;
      }
    }
  }
  throw internal_error("refine_box: could not find a clean cut");
}

namespace {

/// The isolated root of a squarefree p inside an isolating box is real iff a
/// real root of p falls inside the box.
bool root_is_real(const QPoly& p, const Box& b) {
  if (b.is_real_segment()) return true;
  if (!b.y.contains(0)) return false;
  QPoly sf = squarefree_part(p);
  if (sf.eval(b.x.lo) == 0) return true;
  return count_real_roots_interval(sf, b.x.lo, b.x.hi) > 0;
}

/// Exact comparison of the real parts of two isolated roots.  The real part
/// of a root of a real polynomial is a real root of its half-sum resolvent,
/// which makes equality decidable.
int compare_re(const QPoly& pa, Box& a, const QPoly& pb, Box& b) {
  QPoly sa = squarefree_part(half_sum_resolvent(squarefree_part(pa)));
  QPoly sb = squarefree_part(half_sum_resolvent(squarefree_part(pb)));
  QPoly g;
  if (sa == sb)
    g = sa;
  else
    g = gcd(sa, sb);
  for (int iter = 0; iter < 256; ++iter) {
    if (iv_disjoint(a.x, b.x)) return a.x.hi < b.x.lo ? -1 : 1;
    // Equality proof: once each x-interval isolates a single root of its
    // resolvent, any common root inside the overlap identifies both.
    if (g.degree() > 0) {
      bool a_iso = count_real_roots_interval(sa, a.x.lo, a.x.hi) +
                       (sa.eval(a.x.lo) == 0 ? 1 : 0) ==
                   1;
      bool b_iso = count_real_roots_interval(sb, b.x.lo, b.x.hi) +
                       (sb.eval(b.x.lo) == 0 ? 1 : 0) ==
                   1;
      if (a_iso && b_iso) {
        Interval meet{std::max(a.x.lo, b.x.lo), std::min(a.x.hi, b.x.hi)};
        if (meet.lo <= meet.hi) {
          int common = count_real_roots_interval(g, meet.lo, meet.hi) +
                       (g.eval(meet.lo) == 0 ? 1 : 0);
          if (common >= 1) return 0;
        }
      }
    }
    a = refine_box(pa, a);
    b = refine_box(pb, b);
  }
  throw internal_error("compare_re: real parts failed to separate");
}

} // namespace

int compare_roots(const QPoly& pa, Box a, const QPoly& pb, Box b) {
  // Total order: real roots first (ascending); non-real roots by exact real
  // part, then by imaginary part descending.  Callers guarantee the two
  // underlying numbers are distinct.
  bool ra = root_is_real(pa, a), rb = root_is_real(pb, b);
  if (ra != rb) return ra ? -1 : 1;
  if (ra && rb) {
    for (int iter = 0; iter < 256; ++iter) {
      if (iv_disjoint(a.x, b.x)) return a.x.hi < b.x.lo ? -1 : 1;
      a = refine_box(pa, a);
      b = refine_box(pb, b);
    }
    throw internal_error("compare_roots: real roots failed to separate (equal numbers?)");
  }
  int rc = compare_re(pa, a, pb, b);
  if (rc != 0) return rc;
  for (int iter = 0; iter < 256; ++iter) {
    if (iv_disjoint(a.y, b.y)) return a.y.lo > b.y.hi ? -1 : 1;  // Im descending
    a = refine_box(pa, a);
    b = refine_box(pb, b);
  }
  throw internal_error("compare_roots: imaginary parts failed to separate (equal numbers?)");
}

std::vector<Box> isolate_complex_roots(const QPoly& p) {
  check_internal(!p.is_zero(), "isolating roots of zero polynomial");
  QPoly sf = squarefree_part(p);
  std::vector<Box> out;
  if (sf.degree() == 0) return out;
  std::vector<Interval> reals = isolate_real_roots_q(sf);
  for (const auto& iv : reals) out.push_back({iv, {Rational(0), Rational(0)}});
  int pairs = (sf.degree() - static_cast<int>(reals.size())) / 2;
  check_internal(sf.degree() - static_cast<int>(reals.size()) == 2 * pairs,
                 "real/complex root count mismatch");
  if (pairs == 0) return out;

  // Lower bound on |Im| of non-real roots via the root-difference polynomial
  // D(x) = Res_y(sf(y), sf(x + y)), whose roots are differences of roots;
  // a non-real root r gives the purely imaginary difference r - conj(r).
  BiPoly f1, f2;
  for (int k = 0; k <= sf.degree(); ++k) f1.push_back(QPoly::constant(sf[k]));
  f2.assign(sf.degree() + 1, QPoly());
  {
    // sf(x + y) = sum_k a_k (x + y)^k; coefficient of y^j is sum_k a_k C(k,j) x^(k-j).
    std::vector<std::vector<Rational>> binom(sf.degree() + 1,
                                             std::vector<Rational>(sf.degree() + 1, Rational(0)));
    for (int i = 0; i <= sf.degree(); ++i) {
      binom[i][0] = 1;
      for (int j = 1; j <= i; ++j)
        binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Rational(0));
    }
    for (int j = 0; j <= sf.degree(); ++j) {
      std::vector<Rational> cx(sf.degree() - j + 1, Rational(0));
      for (int k = j; k <= sf.degree(); ++k) cx[k - j] = sf[k] * binom[k][j];
      f2[j] = QPoly(std::move(cx));
    }
    bipoly_trim(f2);
  }
  QPoly diff = resultant_y(f1, f2);
  check_internal(!diff.is_zero(), "root-difference resultant vanished");
  // Strip the x^k factor (diagonal differences).
  std::vector<Rational> dc = diff.coeffs();
  size_t strip = 0;
  while (strip < dc.size() && dc[strip] == 0) ++strip;
  QPoly d0(std::vector<Rational>(dc.begin() + strip, dc.end()));
  check_internal(d0.degree() > 0, "nonzero root differences expected");
  // Nonzero roots z of d0 satisfy |z| >= 1 / root_bound(reverse(d0)), and a
  // non-real root r of sf gives the difference r - conj(r) = 2i Im(r).
  std::vector<Rational> rev(d0.coeffs().rbegin(), d0.coeffs().rend());
  QPoly drev(std::move(rev));
  Rational inv_bound = root_bound(drev);
  Rational ylb = Rational(1) / (4 * inv_bound);

  Rational m = root_bound(sf);
  std::vector<Box> upper;
  Box initial{{-m, m}, {ylb, m}};
  auto cinit = count_roots_in_box(sf, initial);
  check_internal(cinit.has_value() && *cinit == pairs, "upper region count mismatch");
  std::vector<std::pair<Box, int>> queue{{initial, pairs}};
  while (!queue.empty()) {
    auto [cur, c] = queue.back();
    queue.pop_back();
    if (c == 0) continue;
    if (c == 1) {
      upper.push_back(cur);
      continue;
    }
    static const std::pair<int, int> fractions[] = {{1, 2}, {7, 16}, {9, 16}, {3, 8}, {5, 8}};
    bool cut_x = cur.x.width() >= cur.y.width();
    bool done = false;
    for (int attempt = 0; attempt < 2 && !done; ++attempt, cut_x = !cut_x) {
      for (auto [num, den] : fractions) {
        const Interval& axis = cut_x ? cur.x : cur.y;
        Rational cut = axis.lo + axis.width() * Rational(num, den);
        Box lo = cur, hi = cur;
        if (cut_x) {
          lo.x.hi = cut;
          hi.x.lo = cut;
        } else {
          lo.y.hi = cut;
          hi.y.lo = cut;
        }
        auto clo = count_roots_in_box(sf, lo);
        auto chi = count_roots_in_box(sf, hi);
        if (clo && chi) {
          check_internal(*clo + *chi == c, "subdivision lost roots");
          queue.push_back({lo, *clo});
          queue.push_back({hi, *chi});
          done = true;
          break;
        }
      }
    }
    check_internal(done, "could not subdivide box cleanly");
  }
  check_internal(static_cast<int>(upper.size()) == pairs, "upper half-plane root count mismatch");
  std::vector<Box> nonreal;
  for (const auto& ub : upper) {
    nonreal.push_back(ub);
    nonreal.push_back(box_conj(ub));
  }
  std::sort(nonreal.begin(), nonreal.end(),
            [&](const Box& a, const Box& b) { return compare_roots(sf, a, sf, b) < 0; });
  out.insert(out.end(), nonreal.begin(), nonreal.end());
  return out;
}

} // namespace solvshadow
