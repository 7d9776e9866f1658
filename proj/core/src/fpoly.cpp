#include "solvshadow/fpoly.hpp"

#include <algorithm>
#include <sstream>

#include "solvshadow/errors.hpp"
#include "solvshadow/zfactor.hpp"

namespace solvshadow {

void FPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FPoly FPoly::constant(const Scalar& a) {
  FPoly p;
  if (!a.is_zero()) p.c_ = {a};
  return p;
}

FPoly FPoly::from_qpoly(const QPoly& p) {
  std::vector<Scalar> c;
  c.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) c.emplace_back(a);
  return FPoly(std::move(c));
}

const Scalar& FPoly::operator[](int k) const {
  static const Scalar zero;
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

Scalar FPoly::leading() const { return c_.empty() ? Scalar() : c_.back(); }

FieldPtr FPoly::field() const {
  for (const auto& a : c_)
    if (a.field()) return a.field();
  return nullptr;
}

FPoly FPoly::operator-() const {
  FPoly r(*this);
  for (auto& a : r.c_) a = -a;
  return r;
}

FPoly FPoly::operator+(const FPoly& o) const {
  std::vector<Scalar> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] = r[i] + c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
  return FPoly(std::move(r));
}

FPoly FPoly::operator-(const FPoly& o) const { return *this + (-o); }

FPoly FPoly::operator*(const FPoly& o) const {
  if (is_zero() || o.is_zero()) return FPoly();
  std::vector<Scalar> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
  }
  return FPoly(std::move(r));
}

FPoly FPoly::operator*(const Scalar& a) const {
  if (a.is_zero()) return FPoly();
  FPoly r(*this);
  for (auto& x : r.c_) x = x * a;
  return r;
}

bool FPoly::operator==(const FPoly& o) const {
  if (c_.size() != o.c_.size()) return false;
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

Scalar FPoly::eval(const Scalar& x) const {
  Scalar acc;
  for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k];
  return acc;
}

FPoly FPoly::derivative() const {
  if (c_.size() <= 1) return FPoly();
  std::vector<Scalar> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Scalar(Rational(static_cast<long>(i)));
  return FPoly(std::move(r));
}

FPoly FPoly::monic() const {
  if (is_zero()) return *this;
  return *this * leading().inverse();
}

std::string FPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Scalar& a = (*this)[k];
    if (a.is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << a.str() << ")";
    if (k > 0) os << "*" << var;
    if (k > 1) os << "^" << k;
    first = false;
  }
  return os.str();
}

std::pair<FPoly, FPoly> divmod(const FPoly& a, const FPoly& b) {
  check_internal(!b.is_zero(), "FPoly division by zero");
  std::vector<Scalar> rem(a.coeffs());
  int db = b.degree();
  Scalar linv = b.leading().inverse();
  if (a.degree() < db) return {FPoly(), a};
  std::vector<Scalar> quo(a.degree() - db + 1);
  for (int k = a.degree(); k >= db; --k) {
    Scalar c = rem[k] * linv;
    if (c.is_zero()) continue;
    quo[k - db] = c;
    for (int j = 0; j <= db; ++j) rem[k - db + j] = rem[k - db + j] - c * b[j];
  }
  return {FPoly(std::move(quo)), FPoly(std::move(rem))};
}

FPoly operator/(const FPoly& a, const FPoly& b) { return divmod(a, b).first; }
FPoly operator%(const FPoly& a, const FPoly& b) { return divmod(a, b).second; }

FPoly gcd(const FPoly& a, const FPoly& b) {
  FPoly f = a, g = b;
  while (!g.is_zero()) {
    FPoly r = f % g;
    f = g;
    g = r;
  }
  return f.monic();
}

XgcdResult xgcd(const FPoly& a, const FPoly& b) {
  FPoly r0 = a, r1 = b;
  FPoly s0 = FPoly::constant(Scalar(Rational(1))), s1;
  FPoly t0, t1 = FPoly::constant(Scalar(Rational(1)));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    FPoly ns = s0 - q * s1;
    FPoly nt = t0 - q * t1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = ns;
    t0 = t1;
    t1 = nt;
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Scalar linv = r0.leading().inverse();
  return {r0 * linv, s0 * linv, t0 * linv};
}

FPoly squarefree_part(const FPoly& p) {
  check_internal(!p.is_zero(), "squarefree_part of zero");
  if (p.degree() == 0) return FPoly::constant(Scalar(Rational(1)));
  FPoly g = gcd(p, p.derivative());
  return (p / g).monic();
}

bool is_squarefree(const FPoly& p) {
  if (p.is_zero()) return false;
  if (p.degree() == 0) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

QPoly to_qpoly(const FPoly& p) {
  std::vector<Rational> c(p.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i) {
    auto r = retract_rational(p.coeffs()[i]);
    check_internal(r.has_value(), "to_qpoly: non-rational coefficient");
    c[i] = *r;
  }
  return QPoly(std::move(c));
}

FPoly map_poly(const FPoly& p, const FieldHom& hom) {
  std::vector<Scalar> c(p.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = hom.apply(p.coeffs()[i]);
  return FPoly(std::move(c));
}

FPoly promote_poly(const FPoly& p, const FieldPtr& f) {
  std::vector<Scalar> c(p.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = promote(p.coeffs()[i], f);
  return FPoly(std::move(c));
}

namespace {

int sign_at_inf(const FPoly& p, int dir) {
  if (p.is_zero()) return 0;
  int s = sign_real(p.leading());
  if (dir < 0 && p.degree() % 2 == 1) s = -s;
  return s;
}

int variations(const std::vector<int>& signs) {
  int v = 0, prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

} // namespace

int count_real_roots_field(const FPoly& p) {
  check_internal(!p.is_zero(), "root count of zero polynomial");
  if (p.field() == nullptr) return count_real_roots(to_qpoly(p));
  check_internal(p.field()->generator_is_real(), "Sturm needs a real-embedded field");
  FPoly f = squarefree_part(p);
  if (f.degree() == 0) return 0;
  std::vector<FPoly> chain{f, f.derivative()};
  while (!chain.back().is_zero()) {
    const FPoly& a = chain[chain.size() - 2];
    const FPoly& b = chain.back();
    chain.push_back(-(a % b));
  }
  chain.pop_back();
  std::vector<int> neg, pos;
  for (const auto& q : chain) {
    neg.push_back(sign_at_inf(q, -1));
    pos.push_back(sign_at_inf(q, +1));
  }
  return variations(neg) - variations(pos);
}

bool all_roots_real(const FPoly& p) {
  FPoly f = squarefree_part(p);
  if (f.degree() == 0) return true;
  return count_real_roots_field(f) == f.degree();
}

namespace {

bool rep_less(const FPoly& a, const FPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int k = a.degree(); k >= 0; --k) {
    const auto& ca = a[k].coeffs();
    const auto& cb = b[k].coeffs();
    if (ca != cb) return ca < cb;
  }
  return false;
}

/// Bivariate presentation of q (coefficients in F = Q(theta)) with theta
/// replaced by the variable y and x shifted by -s*y:
///   P(x, y) = sum_j rep(c_j)(y) * (x - s y)^j.
BiPoly shifted_bivariate(const FPoly& q, long s) {
  BiPoly acc;  // in y, coefficients QPoly in x
  BiPoly xm{QPoly(std::vector<Rational>{Rational(0), Rational(1)}),
            QPoly::constant(Rational(-s))};  // x - s*y
  // Horner over j from the top coefficient down.
  for (int j = q.degree(); j >= 0; --j) {
    acc = bipoly_mul(acc, xm);
    const auto& rep = q[j].coeffs();
    BiPoly cj(rep.size());
    for (size_t k = 0; k < rep.size(); ++k) cj[k] = QPoly::constant(rep[k]);
    bipoly_trim(cj);
    acc = bipoly_add(acc, cj);
  }
  return acc;
}

/// Trager: factors a monic squarefree q over the number field F.
std::vector<FPoly> factor_squarefree_number_field(const FPoly& q, const FieldPtr& F) {
  if (q.degree() == 1) return {q};
  for (long s = 0; s < 64; ++s) {
    BiPoly m_bi;
    for (int k = 0; k <= F->min_poly().degree(); ++k)
      m_bi.push_back(QPoly::constant(F->min_poly()[k]));
    QPoly norm = resultant_y(m_bi, shifted_bivariate(q, s));
    if (norm.is_zero() || !is_squarefree(norm)) continue;
    auto nf = factor_rational(norm);
    if (nf.size() == 1) return {q};
    std::vector<FPoly> out;
    Scalar stheta = Scalar::generator(F) * Scalar(Rational(s));
    for (const auto& [ni, mult] : nf) {
      check_internal(mult == 1, "norm must be squarefree");
      // gcd(q(x), N_i(x + s*theta)) over F.
      FPoly shifted;
      FPoly lin(std::vector<Scalar>{stheta, Scalar(Rational(1))});
      for (int k = ni.degree(); k >= 0; --k)
        shifted = shifted * lin + FPoly::constant(promote(Scalar(ni[k]), F));
      FPoly g = gcd(q, shifted);
      if (g.degree() >= 1) out.push_back(g.monic());
    }
    int total = 0;
    for (const auto& g : out) total += g.degree();
    check_internal(total == q.degree(), "Trager factors do not multiply up");
    std::sort(out.begin(), out.end(), rep_less);
    return out;
  }
  throw internal_error("Trager: no squarefree norm found");
}

} // namespace

std::vector<std::pair<FPoly, int>> factor_over_field(const FPoly& p) {
  check_internal(!p.is_zero(), "factoring zero polynomial");
  std::vector<std::pair<FPoly, int>> out;
  if (p.degree() == 0) return out;
  FieldPtr F = p.field();
  if (!F) {
    for (auto& [g, m] : factor_rational(to_qpoly(p))) out.push_back({FPoly::from_qpoly(g), m});
    return out;
  }
  // Squarefree split by repeated gcd, then Trager on each part.
  FPoly rest = p.monic();
  int mult = 1;
  std::vector<std::pair<FPoly, int>> parts;
  while (rest.degree() > 0) {
    FPoly g = gcd(rest, rest.derivative());
    FPoly sf = (rest / g).monic();
    if (sf.degree() > 0) parts.push_back({sf, mult});
    // Remove one power of every factor: divide by sf once.
    rest = g;
    ++mult;
    if (g.degree() == 0) break;
  }
  // parts[i] holds factors of multiplicity >= i+1; convert to exact multiplicities.
  // With the loop above, sf at level i is the product of factors of
  // multiplicity >= i+1, so exact multiplicity m factor appears in levels
  // 0..m-1; recover exact lists by dividing consecutive levels.
  std::vector<std::pair<FPoly, int>> exact;
  for (size_t i = 0; i < parts.size(); ++i) {
    FPoly cur = parts[i].first;
    FPoly next = (i + 1 < parts.size()) ? parts[i + 1].first : FPoly::constant(Scalar(Rational(1)));
    FPoly only = (cur / next).monic();  // factors of multiplicity exactly i+1
    if (only.degree() > 0) exact.push_back({only, static_cast<int>(i) + 1});
  }
  for (const auto& [sf, m] : exact) {
    for (const auto& g : factor_squarefree_number_field(sf, F)) out.push_back({g, m});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return rep_less(a.first, b.first);
  });
  // Verification: the product reassembles p.
  FPoly prod = FPoly::constant(Scalar(Rational(1)));
  for (const auto& [g, m] : out)
    for (int i = 0; i < m; ++i) prod = prod * g;
  check_internal(prod == p.monic(), "field factorization product check failed");
  return out;
}

std::vector<FPoly> crt_idempotents(const std::vector<FPoly>& ps) {
  FPoly mu = FPoly::constant(Scalar(Rational(1)));
  for (const auto& p : ps) mu = mu * p;
  std::vector<FPoly> es;
  es.reserve(ps.size());
  for (const auto& p : ps) {
    FPoly qi = mu / p;
    auto [g, a, b] = xgcd(qi, p);
    check_internal(g.degree() == 0 && !g.is_zero(), "idempotent factors not coprime");
    FPoly e = (a * qi) % mu;
    es.push_back(e);
  }
  return es;
}

Extension extend_by_root(const FieldPtr& base_field, const FPoly& p, int root_index) {
  check_internal(p.degree() >= 2, "extension needs degree >= 2");
  check_internal(p.leading() == Scalar(Rational(1)), "extension polynomial must be monic");
  check_internal(root_index >= 0 && root_index < p.degree(), "root index out of range");

  if (!base_field) {
    QPoly q = to_qpoly(p);
    FieldPtr e = NumberField::from_root(q, root_index);
    Extension ext;
    ext.field = e;
    ext.embed = FieldHom{nullptr, Scalar(Rational(0))};
    ext.root = Scalar::generator(e);
    return ext;
  }

  const QPoly& m = base_field->min_poly();
  check_internal(m.degree() * p.degree() <= 64, "field tower degree exceeds supported bound");

  // Candidate roots of p: among the roots of Norm(p), keep those where the
  // interval evaluation of p cannot exclude zero; that set stabilizes to
  // exactly deg(p) boxes as the generator box shrinks.
  BiPoly m_bi;
  for (int k = 0; k <= m.degree(); ++k) m_bi.push_back(QPoly::constant(m[k]));
  QPoly norm0 = resultant_y(m_bi, shifted_bivariate(p, 0));
  QPoly norm_sf = squarefree_part(norm0);
  std::vector<Box> cand = isolate_complex_roots(norm_sf);
  std::vector<FPoly> pc;  // p's coefficients as rational rep polys evaluated over boxes
  Box rho_box;
  {
    std::vector<char> alive(cand.size(), 1);
    for (int iter = 0;; ++iter) {
      check_internal(iter < 256, "could not separate candidate roots");
      Box gen = base_field->box();
      int live = 0;
      for (size_t i = 0; i < cand.size(); ++i) {
        if (!alive[i]) continue;
        // Evaluate p over the box of candidate root i.
        Box acc{{Rational(0), Rational(0)}, {Rational(0), Rational(0)}};
        for (int k = p.degree(); k >= 0; --k) {
          acc = box_mul(acc, cand[i]);
          Box ck = box_eval(QPoly(std::vector<Rational>(p[k].coeffs())), gen);
          acc = box_add(acc, ck);
        }
        if (!acc.x.contains(0) || !acc.y.contains(0)) alive[i] = 0;
        else ++live;
      }
      if (live == p.degree()) break;
      check_internal(live > p.degree(), "candidate roots dropped below degree");
      base_field->refine();
      for (size_t i = 0; i < cand.size(); ++i)
        if (alive[i]) cand[i] = refine_box(norm_sf, cand[i]);
    }
    // root_index-th surviving box in canonical order.
    int chosen = -1, seen = 0;
    for (size_t i = 0; i < cand.size(); ++i) {
      if (!alive[i]) continue;
      if (seen == root_index) {
        chosen = static_cast<int>(i);
        break;
      }
      ++seen;
    }
    check_internal(chosen >= 0, "surviving root index not found");
    rho_box = cand[chosen];
  }

  // Tight starting boxes make the primitive-element isolation cheap.
  for (int pre = 0; pre < 3; ++pre) {
    base_field->refine();
    rho_box = refine_box(norm_sf, rho_box);
  }
  for (long s = 1; s < 64; ++s) {
    QPoly r = resultant_y(m_bi, shifted_bivariate(p, s));
    if (r.is_zero() || !is_squarefree(r)) continue;
    r = r.monic();
    // gamma = rho + s*theta; isolate it among the roots of r.
    Box gamma = box_add(rho_box, box_scale(base_field->box(), Rational(s)));
    for (int iter = 0;; ++iter) {
      check_internal(iter < 256, "could not isolate primitive element");
      auto c = count_roots_in_box(r, gamma);
      if (c && *c == 1) break;
      base_field->refine();
      rho_box = refine_box(norm_sf, rho_box);
      gamma = box_add(rho_box, box_scale(base_field->box(), Rational(s)));
    }
    FieldPtr E = NumberField::create(r, gamma);
    // Express theta in E: the unique common root y of m(y) and P(gamma, y).
    FPoly m_in_E = promote_poly(FPoly::from_qpoly(m), E);
    FPoly p_at_gamma;
    {
      Scalar g = Scalar::generator(E);
      FPoly lin(std::vector<Scalar>{g, promote(Scalar(Rational(-s)), E)});  // gamma - s*y
      for (int j = p.degree(); j >= 0; --j) {
        FPoly cj;
        const auto& rep = p[j].coeffs();
        std::vector<Scalar> cjc(rep.size());
        for (size_t k = 0; k < rep.size(); ++k) cjc[k] = promote(Scalar(rep[k]), E);
        cj = FPoly(std::move(cjc));
        p_at_gamma = p_at_gamma * lin + cj;
      }
    }
    FPoly lin_gcd = gcd(m_in_E, p_at_gamma);
    if (lin_gcd.degree() != 1) continue;  // bad s despite squarefree resultant
    Scalar theta_img = -(lin_gcd[0] * lin_gcd[1].inverse());
    check_internal(m_in_E.eval(theta_img).is_zero(), "theta image is not a root");
    Extension ext;
    ext.field = E;
    ext.embed = FieldHom{base_field, theta_img};
    ext.root = Scalar::generator(E) - theta_img * Scalar(Rational(s));
    check_internal(map_poly(p, ext.embed).eval(ext.root).is_zero(),
                   "adjoined root fails its polynomial");
    return ext;
  }
  throw internal_error("extend_by_root: no squarefree resultant found");
}

FieldJoin join_fields(const FieldPtr& a, const FieldPtr& b) {
  FieldJoin out;
  auto trivial = [](const FieldPtr& f) {
    return FieldHom{f, f ? Scalar::generator(f) : Scalar(Rational(0))};
  };
  if (!a && !b) {
    out.field = nullptr;
    out.h1 = trivial(nullptr);
    out.h2 = trivial(nullptr);
    return out;
  }
  if (!a || a == b) {
    out.field = b ? b : a;
    out.h1 = trivial(a);
    out.h2 = trivial(b);
    if (!a) out.h1 = trivial(nullptr);
    return out;
  }
  if (!b) {
    out.field = a;
    out.h1 = trivial(a);
    out.h2 = trivial(nullptr);
    return out;
  }
  // Find b's generator inside extensions of a: factor its minimal polynomial
  // over a and locate the factor/root whose value equals the generator.
  Scalar beta = Scalar::generator(b);
  FPoly mb = promote_poly(FPoly::from_qpoly(b->min_poly()), a);
  auto factors = factor_over_field(mb);
  // Linear factors: the generator may already lie in a.
  for (const auto& [f, m] : factors) {
    if (f.degree() != 1) continue;
    Scalar cand = -(f[0] * f[1].inverse());
    if (algebraic_equal(cand, beta)) {
      out.field = a;
      out.h1 = trivial(a);
      out.h2 = FieldHom{b, cand};
      return out;
    }
  }
  for (const auto& [f, m] : factors) {
    if (f.degree() < 2) continue;
    for (int idx = 0; idx < f.degree(); ++idx) {
      Extension ext = extend_by_root(a, f, idx);
      if (algebraic_equal(ext.root, beta)) {
        out.field = ext.field;
        out.h1 = ext.embed;
        out.h2 = FieldHom{b, ext.root};
        return out;
      }
    }
  }
  throw internal_error("join_fields: generator not located among factor roots");
}

} // namespace solvshadow
