#include "solvshadow/zfactor.hpp"

#include <algorithm>
#include <cstdint>

#include "solvshadow/errors.hpp"

namespace solvshadow {

namespace {

// ---------------------------------------------------------------- mod p ----

using ModPoly = std::vector<std::uint64_t>;  // coeff of x^k at index k, < p

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  check_internal(r == 1, "inv_mod: not invertible");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

void mp_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int mp_deg(const ModPoly& a) { return static_cast<int>(a.size()) - 1; }

ModPoly mp_mul(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  mp_trim(r);
  return r;
}

ModPoly mp_sub(const ModPoly& a, const ModPoly& b, std::uint64_t p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  mp_trim(r);
  return r;
}

ModPoly mp_mod(ModPoly a, const ModPoly& b, std::uint64_t p) {
  int db = mp_deg(b);
  check_internal(db >= 0, "mp_mod by zero");
  std::uint64_t linv = inv_mod(b.back(), p);
  while (mp_deg(a) >= db) {
    int k = mp_deg(a);
    std::uint64_t c = (a.back() * linv) % p;
    for (int j = 0; j <= db; ++j) {
      std::uint64_t sub = (c * b[j]) % p;
      a[k - db + j] = (a[k - db + j] + p - sub) % p;
    }
    mp_trim(a);
  }
  return a;
}

ModPoly mp_gcd(ModPoly a, ModPoly b, std::uint64_t p) {
  while (!b.empty()) {
    ModPoly r = mp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    std::uint64_t linv = inv_mod(a.back(), p);
    for (auto& c : a) c = (c * linv) % p;
  }
  return a;
}

ModPoly mp_deriv(const ModPoly& a, std::uint64_t p) {
  if (a.size() <= 1) return {};
  ModPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = (a[i] * (i % p)) % p;
  mp_trim(r);
  return r;
}

ModPoly mp_powmod_x(std::uint64_t e, const ModPoly& f, std::uint64_t p) {
  // x^e mod f
  ModPoly result{1};
  ModPoly base{0, 1};
  base = mp_mod(base, f, p);
  while (e > 0) {
    if (e & 1) result = mp_mod(mp_mul(result, base, p), f, p);
    base = mp_mod(mp_mul(base, base, p), f, p);
    e >>= 1;
  }
  return result;
}

ModPoly mp_powmod(ModPoly b, std::uint64_t e, const ModPoly& f, std::uint64_t p) {
  ModPoly result{1};
  b = mp_mod(b, f, p);
  while (e > 0) {
    if (e & 1) result = mp_mod(mp_mul(result, b, p), f, p);
    b = mp_mod(mp_mul(b, b, p), f, p);
    e >>= 1;
  }
  return result;
}

/// Berlekamp factorization of a monic squarefree polynomial mod p.
/// Deterministic: splits with gcd(f, v - c) for every c in F_p.
std::vector<ModPoly> berlekamp(const ModPoly& f, std::uint64_t p) {
  int n = mp_deg(f);
  if (n <= 1) return {f};
  // Petr-Berlekamp matrix: columns are x^(p*i) mod f.
  std::vector<ModPoly> pows(n);
  for (int i = 0; i < n; ++i) pows[i] = mp_powmod_x(p * static_cast<std::uint64_t>(i), f, p);
  // Kernel of (Q - I) over F_p, row-reduced on the n x n system.
  std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n, 0));
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      std::uint64_t v = (row < static_cast<int>(pows[col].size())) ? pows[col][row] : 0;
      if (row == col) v = (v + p - 1) % p;
      m[row][col] = v;
    }
  }
  // Gauss elimination.
  std::vector<int> pivot_col(n, -1);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int row = rank; row < n; ++row)
      if (m[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    std::uint64_t linv = inv_mod(m[rank][col], p);
    for (int j = 0; j < n; ++j) m[rank][j] = (m[rank][j] * linv) % p;
    for (int row = 0; row < n; ++row) {
      if (row == rank || m[row][col] == 0) continue;
      std::uint64_t c = m[row][col];
      for (int j = 0; j < n; ++j) {
        std::uint64_t sub = (c * m[rank][j]) % p;
        m[row][j] = (m[row][j] + p - sub) % p;
      }
    }
    pivot_col[rank] = col;
    ++rank;
  }
  // Kernel basis.
  std::vector<ModPoly> basis;
  std::vector<bool> is_pivot(n, false);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    ModPoly v(n, 0);
    v[col] = 1;
    for (int r = 0; r < rank; ++r) {
      std::uint64_t c = m[r][col];
      if (c != 0) v[pivot_col[r]] = (p - c) % p;
    }
    mp_trim(v);
    basis.push_back(std::move(v));
  }
  size_t target = basis.size();  // number of irreducible factors
  std::vector<ModPoly> factors{f};
  if (target <= 1) return factors;
  for (const auto& v : basis) {
    if (factors.size() >= target) break;
    if (mp_deg(v) < 1) continue;
    std::vector<ModPoly> next;
    for (const auto& g : factors) {
      if (mp_deg(g) <= 1) {
        next.push_back(g);
        continue;
      }
      ModPoly rest = g;
      for (std::uint64_t c = 0; c < p && mp_deg(rest) > 0; ++c) {
        ModPoly shifted = v;
        if (shifted.empty()) shifted = ModPoly{0};
        shifted[0] = (shifted[0] + p - c) % p;
        mp_trim(shifted);
        ModPoly d = shifted.empty() ? ModPoly{} : mp_gcd(rest, shifted, p);
        if (mp_deg(d) > 0 && mp_deg(d) < mp_deg(rest)) {
          next.push_back(d);
          // rest /= d
          ModPoly q;
          {
            // exact division via repeated leading elimination
            ModPoly a = rest;
            int dd = mp_deg(d);
            std::uint64_t linv = inv_mod(d.back(), p);
            ModPoly quo(mp_deg(a) - dd + 1, 0);
            while (mp_deg(a) >= dd) {
              int k = mp_deg(a);
              std::uint64_t cc = (a.back() * linv) % p;
              quo[k - dd] = cc;
              for (int j = 0; j <= dd; ++j) {
                std::uint64_t sub = (cc * d[j]) % p;
                a[k - dd + j] = (a[k - dd + j] + p - sub) % p;
              }
              mp_trim(a);
            }
            check_internal(a.empty(), "berlekamp split division not exact");
            q = std::move(quo);
          }
          rest = std::move(q);
        }
      }
      if (mp_deg(rest) > 0) next.push_back(rest);
    }
    factors = std::move(next);
  }
  for (auto& g : factors) {
    std::uint64_t linv = inv_mod(g.back(), p);
    for (auto& c : g) c = (c * linv) % p;
  }
  return factors;
}

// ------------------------------------------------------------ lifting ------

using ZPoly = std::vector<Integer>;  // integer polynomial

void zp_trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int zp_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zp_trim(r);
  return r;
}

ZPoly zp_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zp_trim(r);
  return r;
}

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly r(std::max(a.size(), b.size()), Integer(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  zp_trim(r);
  return r;
}

void zp_mod_sym(ZPoly& a, const Integer& m) {
  Integer half = m / 2;
  for (auto& c : a) {
    c = ((c % m) + m) % m;
    if (c > half) c -= m;
  }
  zp_trim(a);
}

/// Division with remainder assuming b is monic.
std::pair<ZPoly, ZPoly> zp_divmod_monic(ZPoly a, const ZPoly& b) {
  int db = zp_deg(b);
  check_internal(db >= 0 && b.back() == 1, "zp_divmod_monic: divisor not monic");
  if (zp_deg(a) < db) return {{}, a};
  ZPoly quo(zp_deg(a) - db + 1, Integer(0));
  while (zp_deg(a) >= db) {
    int k = zp_deg(a);
    Integer c = a.back();
    quo[k - db] = c;
    for (int j = 0; j <= db; ++j) a[k - db + j] -= c * b[j];
    zp_trim(a);
  }
  return {quo, a};
}

struct HenselPair {
  ZPoly g, h, s, t;  // f = g*h, s*g + t*h = 1 (mod the current modulus)
};

/// One quadratic Hensel step, modulus m -> m^2 (von zur Gathen & Gerhard,
/// Alg. 15.10).  f, g, h monic with f = g*h and s*g + t*h = 1 (mod m).
HenselPair hensel_step(const ZPoly& f, HenselPair p, const Integer& m) {
  Integer m2 = m * m;
  auto mod2 = [&](ZPoly a) {
    zp_mod_sym(a, m2);
    return a;
  };
  ZPoly e = mod2(zp_sub(f, zp_mul(p.g, p.h)));
  auto [q, r] = zp_divmod_monic(zp_mul(p.s, e), p.h);
  ZPoly g1 = mod2(zp_add(p.g, zp_add(zp_mul(p.t, e), zp_mul(q, p.g))));
  ZPoly h1 = mod2(zp_add(p.h, r));
  ZPoly b = mod2(zp_sub(zp_add(zp_mul(p.s, g1), zp_mul(p.t, h1)), ZPoly{Integer(1)}));
  auto [c, d] = zp_divmod_monic(zp_mul(p.s, b), h1);
  ZPoly s1 = mod2(zp_sub(p.s, d));
  ZPoly t1 = mod2(zp_sub(p.t, zp_add(zp_mul(p.t, b), zp_mul(c, g1))));
  return {g1, h1, s1, t1};
}

ModPoly zp_to_mod(const ZPoly& a, std::uint64_t p) {
  ModPoly r(a.size());
  Integer pp(static_cast<unsigned long>(p));
  for (size_t i = 0; i < a.size(); ++i) {
    Integer c = ((a[i] % pp) + pp) % pp;
    r[i] = c.get_ui();
  }
  mp_trim(r);
  return r;
}

ZPoly mod_to_zp(const ModPoly& a) {
  ZPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = Integer(static_cast<unsigned long>(a[i]));
  return r;
}

/// Bezout s*g + t*h = 1 mod p, via the extended Euclid over F_p.
std::pair<ModPoly, ModPoly> mp_bezout(const ModPoly& g, const ModPoly& h, std::uint64_t p) {
  ModPoly r0 = g, r1 = h;
  ModPoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    // q = r0 / r1
    ModPoly a = r0;
    int d1 = mp_deg(r1);
    std::uint64_t linv = inv_mod(r1.back(), p);
    ModPoly q(std::max(0, mp_deg(a) - d1) + 1, 0);
    while (mp_deg(a) >= d1) {
      int k = mp_deg(a);
      std::uint64_t c = (a.back() * linv) % p;
      q[k - d1] = c;
      for (int j = 0; j <= d1; ++j) {
        std::uint64_t sub = (c * r1[j]) % p;
        a[k - d1 + j] = (a[k - d1 + j] + p - sub) % p;
      }
      mp_trim(a);
    }
    mp_trim(q);
    ModPoly nr = a;
    ModPoly ns = mp_sub(s0, mp_mul(q, s1, p), p);
    ModPoly nt = mp_sub(t0, mp_mul(q, t1, p), p);
    r0 = r1;
    r1 = nr;
    s0 = s1;
    s1 = ns;
    t0 = t1;
    t1 = nt;
  }
  check_internal(mp_deg(r0) == 0, "mp_bezout: inputs not coprime");
  std::uint64_t linv = inv_mod(r0[0], p);
  for (auto& c : s0) c = (c * linv) % p;
  for (auto& c : t0) c = (c * linv) % p;
  return {s0, t0};
}

/// Lift the factorization f = prod(factors) (mod p) to (mod p^2^k >= bound),
/// recursively splitting the factor list in two.
void hensel_tree(const ZPoly& f, std::vector<ModPoly> factors, std::uint64_t p,
                 const Integer& bound, std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    ZPoly g = f;
    out.push_back(std::move(g));
    return;
  }
  size_t half = factors.size() / 2;
  ModPoly gm{1}, hm{1};
  for (size_t i = 0; i < half; ++i) gm = mp_mul(gm, factors[i], p);
  for (size_t i = half; i < factors.size(); ++i) hm = mp_mul(hm, factors[i], p);
  auto [sm, tm] = mp_bezout(gm, hm, p);
  HenselPair pair{mod_to_zp(gm), mod_to_zp(hm), mod_to_zp(sm), mod_to_zp(tm)};
  zp_mod_sym(pair.g, Integer(static_cast<unsigned long>(p)));
  zp_mod_sym(pair.h, Integer(static_cast<unsigned long>(p)));
  zp_mod_sym(pair.s, Integer(static_cast<unsigned long>(p)));
  zp_mod_sym(pair.t, Integer(static_cast<unsigned long>(p)));
  Integer m(static_cast<unsigned long>(p));
  while (m < bound) {
    pair = hensel_step(f, pair, m);
    m = m * m;
  }
  // Recurse: the halves are factorizations of pair.g and pair.h mod p.
  std::vector<ModPoly> left(factors.begin(), factors.begin() + half);
  std::vector<ModPoly> right(factors.begin() + half, factors.end());
  hensel_tree(pair.g, left, p, bound, out);
  hensel_tree(pair.h, right, p, bound, out);
}

QPoly zp_to_q(const ZPoly& a) {
  std::vector<Rational> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = Rational(a[i]);
  return QPoly(std::move(c));
}

/// Factors a monic squarefree integer polynomial into monic irreducible
/// rational polynomials.
std::vector<QPoly> factor_monic_squarefree(const ZPoly& f) {
  int n = zp_deg(f);
  if (n == 1) return {zp_to_q(f)};
  static const std::uint64_t primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                         43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
                                         101, 103, 107, 109, 113, 127, 131};
  // Try several usable primes and keep the one with the fewest modular
  // factors; this keeps the subset recombination small.
  std::uint64_t p = 0;
  std::vector<ModPoly> modf;
  int usable = 0;
  for (std::uint64_t cand : primes) {
    ModPoly fp = zp_to_mod(f, cand);
    if (mp_deg(fp) != n) continue;
    ModPoly d = mp_deriv(fp, cand);
    if (d.empty()) continue;
    if (mp_deg(mp_gcd(fp, d, cand)) != 0) continue;
    std::vector<ModPoly> factors = berlekamp(fp, cand);
    std::sort(factors.begin(), factors.end());
    if (p == 0 || factors.size() < modf.size()) {
      p = cand;
      modf = std::move(factors);
    }
    if (modf.size() == 1) break;
    if (++usable >= 4 && modf.size() <= 6) break;
    if (usable >= 7) break;
  }
  check_internal(p != 0, "no usable prime for factorization");
  if (modf.size() == 1) return {zp_to_q(f)};

  // Coefficient bound for monic factors: 2^n * (n+1) * height(f).
  Integer height(0);
  for (const auto& c : f) {
    Integer a = abs(c);
    if (a > height) height = a;
  }
  Integer bound = (Integer(1) << n) * Integer(n + 1) * (height + 1) * 2 + 1;

  std::vector<ZPoly> lifted;
  hensel_tree(f, modf, p, bound, lifted);
  Integer modulus(static_cast<unsigned long>(p));
  while (modulus < bound) modulus = modulus * modulus;

  // Subset recombination, with a cheap constant-term divisibility filter
  // before the full trial division.
  std::vector<QPoly> result;
  std::vector<ZPoly> pool = lifted;
  ZPoly rest = f;
  size_t size = 1;
  while (2 * size <= pool.size()) {
    bool found = false;
    std::vector<size_t> idx(size);
    for (size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      Integer c0(1);
      for (size_t i : idx) c0 = (c0 * (pool[i].empty() ? Integer(0) : pool[i][0])) % modulus;
      c0 = ((c0 % modulus) + modulus) % modulus;
      if (c0 > modulus / 2) c0 -= modulus;
      bool plausible = rest[0] == 0 || (c0 != 0 && rest[0] % c0 == 0);
      if (!plausible) {
        int pos0 = static_cast<int>(size) - 1;
        while (pos0 >= 0 && idx[pos0] == pool.size() - size + pos0) --pos0;
        if (pos0 < 0) break;
        ++idx[pos0];
        for (size_t i = pos0 + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
        continue;
      }
      ZPoly cand{Integer(1)};
      for (size_t i : idx) cand = zp_mul(cand, pool[i]);
      zp_mod_sym(cand, modulus);
      auto [q, r] = zp_divmod_monic(rest, cand);
      if (r.empty()) {
        result.push_back(zp_to_q(cand));
        std::vector<ZPoly> np;
        for (size_t i = 0, j = 0; i < pool.size(); ++i) {
          if (j < idx.size() && idx[j] == i) {
            ++j;
            continue;
          }
          np.push_back(pool[i]);
        }
        pool = std::move(np);
        rest = q;
        found = true;
        break;
      }
      // next combination
      int pos = static_cast<int>(size) - 1;
      while (pos >= 0 && idx[pos] == pool.size() - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (size_t i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++size;
  }
  if (zp_deg(rest) > 0) result.push_back(zp_to_q(rest));
  return result;
}

} // namespace

std::vector<std::pair<QPoly, int>> factor_rational(const QPoly& p) {
  check_internal(!p.is_zero(), "factoring the zero polynomial");
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() == 0) return out;

  // Yun squarefree decomposition on the monic normalization.
  QPoly f = p.monic();
  std::vector<std::pair<QPoly, int>> sqf;
  {
    QPoly d = f.derivative();
    QPoly g = gcd(f, d);
    QPoly u = f / g;
    QPoly v = d / g;
    int i = 1;
    while (u.degree() > 0) {
      QPoly t = v - u.derivative();
      QPoly a = gcd(u, t);
      if (a.degree() > 0) sqf.push_back({a.monic(), i});
      u = u / a;
      v = t / a;
      ++i;
    }
  }

  for (auto& [g, mult] : sqf) {
    if (g.degree() == 1) {
      out.push_back({g.monic(), mult});
      continue;
    }
    // Clear denominators, then monicize over Z: h(x) = lc^(n-1) * G(x / lc).
    Integer den(1);
    for (const auto& c : g.coeffs()) den = lcm(den, c.get_den());
    std::vector<Integer> zc(g.coeffs().size());
    for (size_t i = 0; i < zc.size(); ++i) {
      Rational scaled = g.coeffs()[i] * Rational(den);
      check_internal(is_integer(scaled), "denominator clearing failed");
      zc[i] = scaled.get_num();
    }
    Integer cont(0);
    for (const auto& c : zc) cont = gcd(cont, c);
    if (cont > 1)
      for (auto& c : zc) c /= cont;
    Integer lc = zc.back();
    if (lc < 0) {
      for (auto& c : zc) c = -c;
      lc = -lc;
    }
    int n = static_cast<int>(zc.size()) - 1;
    // Monicize over Z: h(x) = lc^(n-1) * g(x/lc), i.e. h_k = zc_k * lc^(n-1-k).
    ZPoly mono(zc.size());
    for (int k = 0; k <= n; ++k) {
      Integer pw(1);
      for (int j = 0; j < n - 1 - k; ++j) pw *= lc;
      mono[k] = (k == n) ? Integer(1) : zc[k] * pw;
    }
    std::vector<QPoly> irr = factor_monic_squarefree(mono);
    for (auto& h : irr) {
      // Undo the substitution x -> lc * x and renormalize to monic.
      QPoly back = h.scale_arg(Rational(lc)).monic();
      out.push_back({back, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.coeffs() < b.first.coeffs();
  });
  // Verify: product of factors equals p up to the leading constant.
  QPoly prod = QPoly::constant(1);
  for (const auto& [g, m] : out)
    for (int i = 0; i < m; ++i) prod = prod * g;
  check_internal(prod == p.monic(), "factorization product check failed");
  return out;
}

bool is_irreducible(const QPoly& p) {
  check_internal(p.degree() >= 1, "irreducibility needs degree >= 1");
  auto f = factor_rational(p);
  return f.size() == 1 && f[0].second == 1;
}

} // namespace solvshadow
