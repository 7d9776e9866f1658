#include "solvshadow/qpoly.hpp"

#include <algorithm>
#include <sstream>

namespace solvshadow {

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::constant(const Rational& a) {
  QPoly p;
  if (a != 0) p.c_ = {a};
  return p;
}

QPoly QPoly::x() { return monomial(1, 1); }

QPoly QPoly::monomial(int k, const Rational& a) {
  QPoly p;
  if (a != 0) {
    p.c_.assign(k + 1, Rational(0));
    p.c_[k] = a;
  }
  return p;
}

const Rational& QPoly::operator[](int k) const {
  static const Rational zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

Rational QPoly::leading() const { return c_.empty() ? Rational(0) : c_.back(); }

QPoly QPoly::operator-() const {
  QPoly r(*this);
  for (auto& a : r.c_) a = -a;
  return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return QPoly(std::move(r));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return QPoly(std::move(r));
}

QPoly QPoly::operator*(const Rational& a) const {
  if (a == 0) return QPoly();
  QPoly r(*this);
  for (auto& x : r.c_) x *= a;
  return r;
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return QPoly();
  std::vector<Rational> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return QPoly(std::move(r));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading();
  return *this * inv;
}

QPoly QPoly::shift(const Rational& a) const {
  // Horner in (x + a).
  QPoly acc;
  QPoly lin(std::vector<Rational>{a, Rational(1)});
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + QPoly::constant(*it);
  return acc;
}

QPoly QPoly::scale_arg(const Rational& a) const {
  QPoly r(*this);
  Rational pw(1);
  for (size_t i = 0; i < r.c_.size(); ++i) {
    r.c_[i] *= pw;
    pw *= a;
  }
  r.trim();
  return r;
}

QPoly QPoly::negate_arg() const {
  QPoly r(*this);
  for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  return r;
}

std::string QPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& a = (*this)[k];
    if (a == 0) continue;
    if (!first) os << (a > 0 ? " + " : " - ");
    else if (a < 0) os << "-";
    Rational mag = rat_abs(a);
    if (k == 0 || mag != 1) os << to_string(mag) << (k > 0 ? "*" : "");
    if (k > 0) os << var;
    if (k > 1) os << "^" << k;
    first = false;
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  check_internal(!b.is_zero(), "QPoly division by zero");
  std::vector<Rational> rem(a.coeffs());
  int db = b.degree();
  Rational lb = b.leading();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> quo(a.degree() - db + 1, Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    Rational c = rem[k] / lb;
    if (c == 0) continue;
    quo[k - db] = c;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= c * b[j];
  }
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }
QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

bool divides(const QPoly& d, const QPoly& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

namespace {

/// Primitive integer form: the polynomial times a positive rational, with
/// coprime integer coefficients.  Signs are unchanged everywhere.
QPoly primitive_integer(const QPoly& p) {
  if (p.is_zero()) return p;
  Integer den(1);
  for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
  Integer content(0);
  std::vector<Rational> out(p.coeffs().size());
  for (size_t i = 0; i < out.size(); ++i) {
    Rational scaled = p.coeffs()[i] * Rational(den);
    content = gcd(content, scaled.get_num());
  }
  if (content == 0) content = 1;
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = p.coeffs()[i] * Rational(den) / Rational(content);
  return QPoly(std::move(out));
}

/// Pseudo-remainder scaled by a positive power of |lc(b)|; the remainder is a
/// positive multiple of the true remainder, so Sturm sign data survives.
QPoly positive_prem(const QPoly& a, const QPoly& b) {
  int db = b.degree();
  Rational scale = rat_abs(b.leading());
  QPoly r = a;
  while (r.degree() >= db && !r.is_zero()) {
    // r <- |lc(b)| * r - sign-adjusted multiple of b.
    Rational c = r.leading();
    QPoly shift = b * QPoly::monomial(r.degree() - db, c * (b.leading() > 0 ? 1 : -1));
    r = r * scale - shift;
  }
  return r;
}

} // namespace

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly f = primitive_integer(a), g = primitive_integer(b);
  while (!g.is_zero()) {
    QPoly r = primitive_integer(positive_prem(f, g));
    f = g;
    g = r;
  }
  return f.monic();
}

QPoly squarefree_part(const QPoly& p) {
  check_internal(!p.is_zero(), "squarefree_part of zero polynomial");
  if (p.degree() == 0) return QPoly::constant(1);
  QPoly g = gcd(p, p.derivative());
  return (p / g).monic();
}

bool is_squarefree(const QPoly& p) {
  if (p.is_zero()) return false;
  if (p.degree() == 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

std::vector<QPoly> sturm_chain(const QPoly& p, const QPoly& q) {
  // Generalized Sturm chain with primitive pseudo-remainders: every element
  // is a positive multiple of the classical one, so sign variations agree,
  // while the integer coefficients stay small.
  std::vector<QPoly> chain;
  chain.push_back(primitive_integer(p));
  chain.push_back(primitive_integer(q));
  while (!chain.back().is_zero()) {
    const QPoly& a = chain[chain.size() - 2];
    const QPoly& b = chain.back();
    chain.push_back(primitive_integer(-positive_prem(a, b)));
  }
  chain.pop_back();
  return chain;
}

static int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int sign_variations_at(const std::vector<QPoly>& chain, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(sign(p.eval(x)));
  return variations(signs);
}

int sign_variations_at_inf(const std::vector<QPoly>& chain, int dir) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) {
    if (p.is_zero()) {
      signs.push_back(0);
      continue;
    }
    int s = sign(p.leading());
    if (dir < 0 && p.degree() % 2 == 1) s = -s;
    signs.push_back(s);
  }
  return variations(signs);
}

int count_real_roots_interval(const QPoly& p, const Rational& a, const Rational& b) {
  check_internal(!p.is_zero(), "root count of zero polynomial");
  QPoly f = squarefree_part(p);
  if (f.degree() == 0) return 0;
  auto chain = sturm_chain(f, f.derivative());
  return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

int count_real_roots(const QPoly& p) {
  check_internal(!p.is_zero(), "root count of zero polynomial");
  QPoly f = squarefree_part(p);
  if (f.degree() == 0) return 0;
  auto chain = sturm_chain(f, f.derivative());
  return sign_variations_at_inf(chain, -1) - sign_variations_at_inf(chain, +1);
}

Rational root_bound(const QPoly& p) {
  check_internal(p.degree() >= 1, "root bound needs degree >= 1");
  Rational lead = rat_abs(p.leading());
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, Rational(rat_abs(p[k]) / lead));
  return m + 1;
}

void bipoly_trim(BiPoly& b) {
  while (!b.empty() && b.back().is_zero()) b.pop_back();
}

BiPoly bipoly_add(const BiPoly& a, const BiPoly& b) {
  BiPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  bipoly_trim(r);
  return r;
}

BiPoly bipoly_mul(const BiPoly& a, const BiPoly& b) {
  if (a.empty() || b.empty()) return {};
  BiPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  bipoly_trim(r);
  return r;
}

/// Bareiss fraction-free determinant over Q[x].  Entries stay polynomials;
/// every division is exact.
static QPoly poly_matrix_det(std::vector<std::vector<QPoly>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return QPoly::constant(1);
  QPoly prev = QPoly::constant(1);
  int swaps = 0;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return QPoly();
      std::swap(m[k], m[piv]);
      ++swaps;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        QPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto [q, r] = divmod(num, prev);
        check_internal(r.is_zero(), "Bareiss division not exact");
        m[i][j] = q;
      }
      m[i][k] = QPoly();
    }
    prev = m[k][k];
  }
  QPoly det = m[n - 1][n - 1];
  return (swaps % 2) ? -det : det;
}

QPoly resultant_y(const BiPoly& a, const BiPoly& b) {
  BiPoly f = a, g = b;
  bipoly_trim(f);
  bipoly_trim(g);
  check_internal(!f.empty() && !g.empty(), "resultant of zero polynomial");
  int da = static_cast<int>(f.size()) - 1;
  int db = static_cast<int>(g.size()) - 1;
  if (da == 0 && db == 0) return QPoly::constant(1);
  // Sylvester matrix: db rows of f-coefficients, da rows of g-coefficients.
  int n = da + db;
  std::vector<std::vector<QPoly>> s(n, std::vector<QPoly>(n));
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) s[r][r + k] = f[da - k];
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) s[db + r][r + k] = g[db - k];
  return poly_matrix_det(std::move(s));
}


QPoly half_sum_resolvent(const QPoly& np) {
  BiPoly f1;
  for (int k = 0; k <= np.degree(); ++k) f1.push_back(QPoly::constant(np[k]));
  // np(2t - x): coefficient of x^j is sum_k np_k C(k,j) (-1)^j (2t)^(k-j).
  BiPoly f2(np.degree() + 1);
  std::vector<std::vector<Rational>> binom(np.degree() + 1,
                                           std::vector<Rational>(np.degree() + 1, Rational(0)));
  for (int i = 0; i <= np.degree(); ++i) {
    binom[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Rational(0));
  }
  for (int j = 0; j <= np.degree(); ++j) {
    std::vector<Rational> ct(np.degree() - j + 1, Rational(0));
    for (int k = j; k <= np.degree(); ++k) {
      Rational c = np[k] * binom[k][j];
      if (j % 2 == 1) c = -c;
      Rational p2(1);
      for (int e = 0; e < k - j; ++e) p2 *= 2;
      ct[k - j] += c * p2;
    }
    f2[j] = QPoly(std::move(ct));
  }
  bipoly_trim(f2);
  return resultant_y(f1, f2);
}

QPoly product_resolvent(const QPoly& np) {
  BiPoly f1;
  for (int k = 0; k <= np.degree(); ++k) f1.push_back(QPoly::constant(np[k]));
  // x^n np(t/x): coefficient of x^j is np_{n-j} t^{n-j}.
  int n = np.degree();
  BiPoly f2(n + 1);
  for (int j = 0; j <= n; ++j) f2[j] = QPoly::monomial(n - j, np[n - j]);
  bipoly_trim(f2);
  return resultant_y(f1, f2);
}

} // namespace solvshadow

