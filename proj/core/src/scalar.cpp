#include "solvshadow/scalar.hpp"

#include <sstream>

#include "solvshadow/errors.hpp"

namespace solvshadow {

void Scalar::normalize() {
  if (!field_) {
    c_.resize(1, Rational(0));
    return;
  }
  c_.resize(field_->degree(), Rational(0));
}

Scalar Scalar::of_field(FieldPtr f, std::vector<Rational> coeffs) {
  check_internal(f != nullptr, "of_field needs a field");
  Scalar s;
  s.field_ = std::move(f);
  s.c_ = std::move(coeffs);
  check_internal(static_cast<int>(s.c_.size()) <= s.field_->degree(),
                 "field element coefficient vector too long");
  s.normalize();
  return s;
}

Scalar Scalar::generator(FieldPtr f) {
  std::vector<Rational> c(f->degree(), Rational(0));
  c[1] = 1;
  return of_field(std::move(f), std::move(c));
}

bool Scalar::is_rational_value() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational Scalar::rational_value() const {
  check_internal(is_rational_value(), "not a rational value");
  return c_[0];
}

bool Scalar::is_zero() const {
  for (const auto& a : c_)
    if (a != 0) return false;
  return true;
}

bool Scalar::operator==(const Scalar& o) const {
  if (field_ == o.field_) return c_ == o.c_;
  if (!field_ && o.is_rational_value()) return c_[0] == o.c_[0];
  if (!o.field_ && is_rational_value()) return c_[0] == o.c_[0];
  check_internal(!field_ || !o.field_, "comparing elements of unrelated fields");
  return false;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  for (auto& a : r.c_) a = -a;
  return r;
}

namespace {

/// Common field of two operands (rationals are compatible with everything).
FieldPtr join_field(const Scalar& a, const Scalar& b) {
  if (a.field() && b.field()) {
    check_internal(a.field() == b.field(), "arithmetic across unrelated fields");
    return a.field();
  }
  return a.field() ? a.field() : b.field();
}

std::vector<Rational> lift(const Scalar& s, const FieldPtr& f) {
  if (s.field()) return s.coeffs();
  std::vector<Rational> c(f ? f->degree() : 1, Rational(0));
  c[0] = s.coeffs()[0];
  return c;
}

/// Reduce a rational coefficient vector modulo the field minimal polynomial.
std::vector<Rational> reduce_mod(std::vector<Rational> c, const QPoly& m) {
  int d = m.degree();
  for (int k = static_cast<int>(c.size()) - 1; k >= d; --k) {
    Rational lead = c[k];
    if (lead == 0) continue;
    c[k] = 0;
    for (int j = 0; j < d; ++j) c[k - d + j] -= lead * m[j];
  }
  c.resize(d, Rational(0));
  return c;
}

} // namespace

Scalar Scalar::operator+(const Scalar& o) const {
  FieldPtr f = join_field(*this, o);
  if (!f) return Scalar(c_[0] + o.c_[0]);
  std::vector<Rational> a = lift(*this, f), b = lift(o, f);
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return of_field(f, std::move(a));
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  FieldPtr f = join_field(*this, o);
  if (!f) return Scalar(c_[0] * o.c_[0]);
  std::vector<Rational> a = lift(*this, f), b = lift(o, f);
  std::vector<Rational> prod(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  return of_field(f, reduce_mod(std::move(prod), f->min_poly()));
}

Scalar Scalar::inverse() const {
  check_internal(!is_zero(), "inverse of zero");
  if (!field_) return Scalar(Rational(1) / c_[0]);
  // Solve (multiplication by this) * x = 1 over Q.  Rational Gaussian
  // elimination keeps the coefficients far smaller than a remainder
  // sequence would.
  const QPoly& m = field_->min_poly();
  int d = m.degree();
  // Columns: coordinates of this * y^j, built by shifting and reducing.
  std::vector<std::vector<Rational>> a(d, std::vector<Rational>(d + 1, Rational(0)));
  std::vector<Rational> col(c_);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) a[i][j] = col[i];
    if (j + 1 < d) {
      // col <- y * col mod m.
      Rational top = col[d - 1];
      for (int i = d - 1; i > 0; --i) col[i] = col[i - 1];
      col[0] = 0;
      if (top != 0)
        for (int i = 0; i < d; ++i) col[i] -= top * m[i];
    }
  }
  a[0][d] = 1;  // right-hand side e_0
  for (int colv = 0, row = 0; colv < d && row < d; ++colv) {
    int piv = -1;
    for (int i = row; i < d; ++i)
      if (a[i][colv] != 0) {
        piv = i;
        break;
      }
    check_internal(piv >= 0, "inverse: multiplication matrix singular");
    std::swap(a[piv], a[row]);
    Rational inv = 1 / a[row][colv];
    for (int k = colv; k <= d; ++k) a[row][k] *= inv;
    for (int i = 0; i < d; ++i) {
      if (i == row || a[i][colv] == 0) continue;
      Rational f = a[i][colv];
      for (int k = colv; k <= d; ++k) a[i][k] -= f * a[row][k];
    }
    ++row;
  }
  std::vector<Rational> x(d);
  for (int i = 0; i < d; ++i) x[i] = a[i][d];
  return of_field(field_, std::move(x));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Box Scalar::approx_box() const {
  if (!field_) return Box{{c_[0], c_[0]}, {Rational(0), Rational(0)}};
  return box_eval(QPoly{std::vector<Rational>(c_)}, field_->box());
}

std::string Scalar::str() const {
  if (is_rational_value()) return to_string(c_[0]);
  QPoly rep{std::vector<Rational>(c_)};
  std::ostringstream os;
  os << rep.str("a");
  return os.str();
}

QPoly minimal_polynomial(const Scalar& s) {
  if (s.is_rational()) return QPoly(std::vector<Rational>{-s.coeffs()[0], Rational(1)});
  if (s.is_rational_value()) return QPoly(std::vector<Rational>{-s.coeffs()[0], Rational(1)});
  int d = s.field()->degree();
  // Row-reduce the powers 1, s, s^2, ... until the first linear dependency.
  std::vector<std::vector<Rational>> rows;    // echelon rows
  std::vector<std::vector<Rational>> combos;  // expression in terms of powers
  std::vector<int> pivots;
  Scalar pw(Rational(1));
  pw = promote(pw, s.field());
  for (int k = 0;; ++k) {
    check_internal(k <= d, "minimal polynomial exceeds field degree");
    std::vector<Rational> v = pw.coeffs();
    std::vector<Rational> combo(k + 1, Rational(0));
    combo[k] = 1;
    for (size_t r = 0; r < rows.size(); ++r) {
      Rational factor = v[pivots[r]];
      if (factor == 0) continue;
      for (int j = 0; j < d; ++j) v[j] -= factor * rows[r][j];
      for (size_t j = 0; j < combos[r].size() && j < combo.size(); ++j)
        combo[j] -= factor * combos[r][j];
    }
    int piv = -1;
    for (int j = 0; j < d; ++j)
      if (v[j] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) {
      // combo gives sum combo[i] * s^i = 0 with combo[k] == 1.
      return QPoly(std::move(combo)).monic();
    }
    Rational inv = 1 / v[piv];
    for (auto& x : v) x *= inv;
    for (auto& x : combo) x *= inv;
    combo.resize(k + 1, Rational(0));
    rows.push_back(std::move(v));
    combos.push_back(std::move(combo));
    pivots.push_back(piv);
    pw = pw * s;
  }
}

namespace {

struct Located {
  QPoly minpoly;
  Box box;  // isolates the value among the roots of minpoly
};

Located locate(const Scalar& s) {
  QPoly q = minimal_polynomial(s);
  if (q.degree() == 1) {
    Rational v = -q[0];
    return {q, Box{{v, v}, {Rational(0), Rational(0)}}};
  }
  for (int iter = 0; iter < 512; ++iter) {
    Box b = s.approx_box();
    auto c = count_roots_in_box(q, b);
    if (!c) {
      // Boundary hit: pad by an off-center amount and retry once.
      Rational padx = b.x.width() / 23 + Rational(1, 1000 + 7 * iter);
      Rational pady = b.y.width() / 23 + Rational(1, 1000 + 7 * iter);
      b.x.lo -= padx;
      b.x.hi += padx;
      b.y.lo -= pady;
      b.y.hi += pady;
      c = count_roots_in_box(q, b);
    }
    if (c && *c == 1) return {q, b};
    s.field()->refine();
  }
  throw internal_error("locate: failed to isolate scalar value");
}

} // namespace

AlgebraicCanon canonical_algebraic(const Scalar& s) {
  Located loc = locate(s);
  if (loc.minpoly.degree() == 1) return {loc.minpoly, 0};
  auto boxes = isolate_complex_roots(loc.minpoly);
  // Shrink our enclosure until it meets exactly one canonical box.
  Box mine = loc.box;
  for (int iter = 0; iter < 512; ++iter) {
    int candidate = -1, overlaps = 0;
    for (size_t i = 0; i < boxes.size(); ++i) {
      if (!box_disjoint(mine, boxes[i])) {
        ++overlaps;
        candidate = static_cast<int>(i);
      }
    }
    check_internal(overlaps >= 1, "canonical box lost the value");
    if (overlaps == 1) return {loc.minpoly, candidate};
    s.field()->refine();
    mine = s.approx_box();
  }
  throw internal_error("canonical_algebraic: failed to separate boxes");
}

bool algebraic_equal(const Scalar& a, const Scalar& b) {
  if (a.field() == b.field()) return a == b;
  if (a.is_rational_value() && b.is_rational_value())
    return a.rational_value() == b.rational_value();
  AlgebraicCanon ca = canonical_algebraic(a), cb = canonical_algebraic(b);
  return ca == cb;
}

int algebraic_compare(const Scalar& a, const Scalar& b) {
  if (a.is_rational_value() && b.is_rational_value()) {
    Rational x = a.rational_value(), y = b.rational_value();
    return x < y ? -1 : (x == y ? 0 : 1);
  }
  if (algebraic_equal(a, b)) return 0;
  Located la = locate(a), lb = locate(b);
  return compare_roots(la.minpoly, la.box, lb.minpoly, lb.box);
}

bool is_real_value(const Scalar& s) {
  if (s.is_rational_value()) return true;
  if (s.field()->generator_is_real()) return true;
  Located loc = locate(s);
  if (loc.minpoly.degree() == 1) return true;
  if (!loc.box.y.contains(0)) return false;
  // The box holds exactly one root; it is real iff a real root of the
  // minimal polynomial lies in the x-range (any such root must be the one).
  if (loc.minpoly.eval(loc.box.x.lo) == 0) return true;
  return count_real_roots_interval(loc.minpoly, loc.box.x.lo, loc.box.x.hi) > 0;
}

bool is_purely_imaginary_value(const Scalar& s) {
  if (s.is_zero()) return true;
  if (s.is_rational_value()) return false;
  Located loc = locate(s);
  if (loc.minpoly.degree() == 1) return (-loc.minpoly[0]) == 0;
  if (!loc.box.x.contains(0)) return false;
  // Roots on the imaginary axis: q(iy) = P(y) + i Q(y); they are the common
  // real roots of P and Q.
  const QPoly& q = loc.minpoly;
  std::vector<Rational> pc(q.degree() + 1, Rational(0)), qc(q.degree() + 1, Rational(0));
  for (int k = 0; k <= q.degree(); ++k) {
    switch (k % 4) {
      case 0: pc[k] = q[k]; break;
      case 1: qc[k] = q[k]; break;
      case 2: pc[k] = -q[k]; break;
      case 3: qc[k] = -q[k]; break;
    }
  }
  QPoly P(std::move(pc)), Q(std::move(qc));
  QPoly g;
  if (P.is_zero())
    g = Q;
  else if (Q.is_zero())
    g = P;
  else
    g = gcd(P, Q);
  if (g.is_zero() || g.degree() == 0) return false;
  if (g.eval(loc.box.y.lo) == 0) return true;
  return count_real_roots_interval(g, loc.box.y.lo, loc.box.y.hi) > 0;
}

int sign_real(const Scalar& s) {
  if (s.is_rational_value()) return sign(s.rational_value());
  check_internal(is_real_value(s), "sign of a non-real value");
  if (s.is_zero()) return 0;
  for (int iter = 0; iter < 512; ++iter) {
    Box b = s.approx_box();
    if (b.x.lo > 0) return 1;
    if (b.x.hi < 0) return -1;
    s.field()->refine();
  }
  throw internal_error("sign_real: failed to separate from zero");
}

bool is_conjugate_pair(const Scalar& a, const Scalar& b) {
  return is_real_value(a + b) && is_purely_imaginary_value(a - b);
}

std::optional<Rational> retract_rational(const Scalar& s) {
  if (s.is_rational_value()) return s.rational_value();
  return std::nullopt;
}

Scalar promote(const Scalar& s, const FieldPtr& f) {
  if (!f) {
    check_internal(s.is_rational(), "cannot demote field element");
    return s;
  }
  if (s.field()) {
    check_internal(s.field() == f, "promote: element of a different field");
    return s;
  }
  std::vector<Rational> c(f->degree(), Rational(0));
  c[0] = s.coeffs()[0];
  return Scalar::of_field(f, std::move(c));
}

Scalar FieldHom::apply(const Scalar& s) const {
  if (s.is_rational()) return s;
  check_internal(s.field() == from, "hom applied to element of a different field");
  Scalar acc(Rational(0));
  for (int k = static_cast<int>(s.coeffs().size()) - 1; k >= 0; --k) {
    acc = acc * gen_image + Scalar(s.coeffs()[k]);
  }
  return acc;
}

} // namespace solvshadow
