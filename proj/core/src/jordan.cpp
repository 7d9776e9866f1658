#include "solvshadow/jordan.hpp"

#include <algorithm>

#include "solvshadow/errors.hpp"

namespace solvshadow {

namespace {

FPoly compose_mod(const FPoly& f, const FPoly& p, const FPoly& mu) {
  // f(p(x)) mod mu
  FPoly acc;
  for (int k = f.degree(); k >= 0; --k) {
    acc = (acc * p) % mu;
    acc = acc + FPoly::constant(f[k]);
  }
  return acc % mu;
}

} // namespace

JordanParts jordan_chevalley(const Matrix& m) {
  check_internal(m.is_square(), "jordan_chevalley needs a square matrix");
  int n = m.rows();
  JordanParts out;
  out.original = m;
  if (n == 0) {
    out.semisimple = m;
    out.nilpotent = m;
    out.semisimple_witness = FPoly(std::vector<Scalar>{Scalar(0), Scalar(Rational(1))});
    return out;
  }
  FPoly mu = min_poly(m);
  FPoly f = squarefree_part(mu);
  // Bezout: u f + v f' = 1 (f squarefree, characteristic zero).
  auto [g, u, v] = xgcd(f, f.derivative());
  check_internal(g.degree() == 0 && !g.is_zero(), "squarefree part not coprime with derivative");

  // Newton on the witness polynomial p: p <- p - f(p) v(p)  (mod mu).
  FPoly p(std::vector<Scalar>{Scalar(0), Scalar(Rational(1))});  // x
  int iterations = 1;
  while ((1 << iterations) < n + 1) ++iterations;
  ++iterations;
  for (int it = 0; it < iterations; ++it) {
    FPoly fp = compose_mod(f, p, mu);
    if (fp.is_zero()) break;
    FPoly vp = compose_mod(v, p, mu);
    p = (p - (fp * vp) % mu) % mu;
  }
  check_internal(compose_mod(f, p, mu).is_zero(), "Newton iteration did not converge");

  out.semisimple = eval_poly_at(p, m);
  out.nilpotent = m - out.semisimple;
  out.semisimple_witness = p;

  // Verified postconditions rather than trusted loop bounds.
  check_internal(out.semisimple + out.nilpotent == m, "S + N != A");
  check_internal(out.semisimple * out.nilpotent == out.nilpotent * out.semisimple, "S N != N S");
  check_internal(mat_pow(out.nilpotent, n).is_zero(), "N is not nilpotent");
  check_internal(is_squarefree(min_poly(out.semisimple)), "S is not semisimple");
  return out;
}

std::pair<FPoly, FPoly> imaginary_axis_split(const FPoly& p) {
  std::vector<Scalar> pc(p.degree() + 1), qc(p.degree() + 1);
  for (int k = 0; k <= p.degree(); ++k) {
    switch (k % 4) {
      case 0: pc[k] = p[k]; break;
      case 1: qc[k] = p[k]; break;
      case 2: pc[k] = -p[k]; break;
      case 3: qc[k] = -p[k]; break;
    }
  }
  return {FPoly(std::move(pc)), FPoly(std::move(qc))};
}

bool all_eigenvalues_real(const Matrix& m) {
  FieldPtr f = m.field();
  check_internal(!f || f->generator_is_real(), "spectrum test needs a real-embedded field");
  return all_roots_real(min_poly(m));
}

bool has_purely_imaginary_spectrum(const Matrix& m) {
  FieldPtr f = m.field();
  check_internal(!f || f->generator_is_real(), "spectrum test needs a real-embedded field");
  FPoly sf = squarefree_part(min_poly(m));
  if (sf.degree() == 0) return true;
  auto [P, Q] = imaginary_axis_split(sf);
  FPoly G;
  if (P.is_zero())
    G = Q;
  else if (Q.is_zero())
    G = P;
  else
    G = gcd(P, Q);
  if (G.is_zero() || G.degree() == 0) return false;
  return count_real_roots_field(G) == sf.degree();
}

namespace {

/// A real field tower: the current field plus the embedding of the base it
/// started from.  Extensions here only ever adjoin real roots, so the tower
/// stays real-embedded throughout.
struct RealTower {
  FieldPtr base;
  FieldPtr cur;
  FieldHom from_base;  // base -> cur

  static RealTower start(FieldPtr b) {
    RealTower t;
    t.base = b;
    t.cur = b;
    t.from_base = FieldHom{b, b ? Scalar::generator(b) : Scalar(Rational(0))};
    return t;
  }

  /// Commits an extension of cur; returns the step hom for remapping state.
  FieldHom commit(const Extension& ext) {
    FieldHom step = ext.embed;
    if (base) from_base = FieldHom{base, step.apply(from_base.gen_image)};
    cur = ext.field;
    return step;
  }
};

/// The norm of p down to Q: a rational polynomial whose roots include every
/// conjugate of every root of p.
QPoly norm_to_q(const FPoly& p, const FieldPtr& f) {
  if (!f) return to_qpoly(p);
  BiPoly m_bi;
  for (int k = 0; k <= f->min_poly().degree(); ++k)
    m_bi.push_back(QPoly::constant(f->min_poly()[k]));
  // P(x, y) = sum_j rep_j(y) x^j, presented as a vector in y with
  // x-polynomial coefficients.
  int ydeg = f->min_poly().degree() - 1;
  BiPoly P(ydeg + 1);
  for (int yk = 0; yk <= ydeg; ++yk) {
    std::vector<Rational> cx(p.degree() + 1, Rational(0));
    for (int j = 0; j <= p.degree(); ++j) {
      const auto& rep = p[j].coeffs();
      if (yk < static_cast<int>(rep.size())) cx[j] = rep[yk];
    }
    P[yk] = QPoly(std::move(cx));
  }
  bipoly_trim(P);
  return resultant_y(m_bi, P);
}

/// Refines a list of factors of a squarefree polynomial into factors of
/// degree <= 2 (or with all-real spectrum) over a real tower, adjoining only
/// real algebraic numbers: real roots of the factors themselves, else real
/// roots of the rational pair-sum / pair-product resolvents of their norms.
void refine_to_quadratics(RealTower& tower, std::vector<FPoly>& comps) {
  auto remap = [&](const FieldHom& step) {
    for (auto& c : comps) c = map_poly(c, step);
  };
  auto needs_work = [](const FPoly& p) {
    return p.degree() > 2 && !all_roots_real(p);
  };
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < comps.size(); ++i) {
      FPoly p = promote_poly(comps[i], tower.cur);
      if (!needs_work(p)) continue;
      progress = true;
      // The factor may have become reducible over the grown tower.
      {
        auto refs = factor_over_field(p);
        if (refs.size() > 1) {
          comps.erase(comps.begin() + i);
          for (auto& [g, m] : refs) comps.push_back(g);
          break;
        }
      }
      if (count_real_roots_field(p) > 0) {
        // Adjoin the leftmost real root, split it off, refactor the rest.
        Extension ext = extend_by_root(tower.cur, p);
        check_internal(ext.field->generator_is_real(), "expected a real extension");
        FieldHom step = tower.commit(ext);
        remap(step);
        FPoly pm = promote_poly(map_poly(p, step), tower.cur);
        FPoly lin(std::vector<Scalar>{-ext.root, promote(Scalar(Rational(1)), tower.cur)});
        auto [quo, rem] = divmod(pm, lin);
        check_internal(rem.is_zero(), "adjoined real root does not divide factor");
        comps.erase(comps.begin() + i);
        comps.push_back(lin);
        for (auto& [g, m] : factor_over_field(quo)) comps.push_back(g);
        break;
      }
      // Totally complex factor of degree >= 4.  Candidate real generators:
      // real roots of the pair-sum and pair-product resolvents of the norm.
      QPoly np = squarefree_part(norm_to_q(p, tower.cur));
      std::vector<QPoly> resolvents{squarefree_part(half_sum_resolvent(np)),
                                    squarefree_part(product_resolvent(np))};
      auto candidate_factors = [&](const FieldPtr& over, const FPoly& target)
          -> std::vector<FPoly> {
        std::vector<FPoly> cands;
        for (const auto& rq : resolvents) {
          FPoly rp = promote_poly(FPoly::from_qpoly(rq), over);
          for (const auto& [cand, cm] : factor_over_field(rp)) {
            if (cand.degree() < 2) continue;
            if (!over || over->degree() * cand.degree() <= 32) cands.push_back(cand);
          }
        }
        std::sort(cands.begin(), cands.end(),
                  [](const FPoly& a, const FPoly& b) { return a.degree() < b.degree(); });
        (void)target;
        return cands;
      };
      bool split_found = false;
      // Pass 1: a single real extension.
      for (const FPoly& cand : candidate_factors(tower.cur, p)) {
        int nreal = count_real_roots_field(cand);
        for (int ridx = 0; ridx < nreal && !split_found; ++ridx) {
          Extension ext = extend_by_root(tower.cur, cand, ridx);
          if (!ext.field->generator_is_real()) continue;
          FPoly p1 = promote_poly(map_poly(p, ext.embed), ext.field);
          auto fs = factor_over_field(p1);
          if (fs.size() > 1) {
            FieldHom step = tower.commit(ext);
            remap(step);
            comps.erase(comps.begin() + i);
            for (auto& [g, m] : fs) comps.push_back(g);
            split_found = true;
          }
        }
        if (split_found) break;
      }
      // Pass 2: two stacked real extensions (real part, then pair product).
      if (!split_found) {
        for (const FPoly& cand : candidate_factors(tower.cur, p)) {
          int nreal = count_real_roots_field(cand);
          for (int ridx = 0; ridx < nreal && !split_found; ++ridx) {
            Extension ext = extend_by_root(tower.cur, cand, ridx);
            if (!ext.field->generator_is_real()) continue;
            FPoly p1 = promote_poly(map_poly(p, ext.embed), ext.field);
            for (const FPoly& cand2 : candidate_factors(ext.field, p1)) {
              int nreal2 = count_real_roots_field(cand2);
              for (int r2 = 0; r2 < nreal2 && !split_found; ++r2) {
                Extension ext2 = extend_by_root(ext.field, cand2, r2);
                if (!ext2.field->generator_is_real()) continue;
                FPoly p2 = promote_poly(map_poly(p1, ext2.embed), ext2.field);
                auto fs2 = factor_over_field(p2);
                if (fs2.size() > 1) {
                  FieldHom step1 = tower.commit(ext);
                  remap(step1);
                  FieldHom step2 = tower.commit(ext2);
                  remap(step2);
                  comps.erase(comps.begin() + i);
                  for (auto& [g, m] : fs2) comps.push_back(g);
                  split_found = true;
                }
              }
              if (split_found) break;
            }
          }
          if (split_found) break;
        }
      }
      check_internal(split_found, "could not split totally complex factor over a real tower");
      break;
    }
  }
}

} // namespace

SplitParts split_real_imag(const Matrix& s) {
  check_internal(s.is_square(), "split_real_imag needs a square matrix");
  FieldPtr base = s.field();
  if (base && !base->generator_is_real())
    throw math_error("NonRealField", "split_real_imag needs entries in a real-embedded field");
  FPoly mu = min_poly(s);
  if (!is_squarefree(mu))
    throw math_error("NotSemisimple", "split_real_imag rejects non-semisimple input");

  RealTower tower = RealTower::start(base);
  std::vector<FPoly> comps;
  for (auto& [f, m] : factor_over_field(mu)) comps.push_back(f);
  refine_to_quadratics(tower, comps);

  // Per-component real-part polynomials: identity on real-spectrum pieces,
  // the constant -b/2 on complex quadratics x^2 + b x + c.
  std::vector<FPoly> r_polys;
  for (const auto& p : comps) {
    if (all_roots_real(p)) {
      r_polys.push_back(FPoly(std::vector<Scalar>{Scalar(0), Scalar(Rational(1))}));
    } else {
      check_internal(p.degree() == 2, "non-quadratic component after refinement");
      r_polys.push_back(FPoly::constant(-(p[1] * Scalar(Rational(1, 2)))));
    }
  }

  FPoly mu_cur = (tower.cur == base) ? mu : map_poly(mu, tower.from_base);
  {
    FPoly prod = FPoly::constant(Scalar(Rational(1)));
    for (const auto& c : comps) prod = prod * c;
    check_internal(prod.monic() == mu_cur.monic(), "components do not multiply to min poly");
  }
  std::vector<FPoly> idem = crt_idempotents(comps);
  FPoly e_re;
  for (size_t i = 0; i < comps.size(); ++i) e_re = e_re + (r_polys[i] * idem[i]) % mu_cur;
  e_re = e_re % mu_cur;

  Matrix s_cur = (tower.cur == base) ? s : map_matrix(s, tower.from_base);
  Matrix s_re = eval_poly_at(e_re, s_cur);
  Matrix s_im = s_cur - s_re;

  check_internal(s_re + s_im == s_cur, "split parts do not sum");
  check_internal(s_re * s_im == s_im * s_re, "split parts do not commute");
  check_internal(s_re * s_cur == s_cur * s_re, "real part does not commute with input");

  SplitParts out;
  out.embed = tower.from_base;
  if (!base) {
    MatrixDescent d = descend_matrices({s_re, s_im});
    out.real_part = d.mats[0];
    out.imag_part = d.mats[1];
  } else {
    out.real_part = s_re;
    out.imag_part = s_im;
  }

  check_internal(all_eigenvalues_real(out.real_part), "real part has non-real spectrum");
  check_internal(has_purely_imaginary_spectrum(out.imag_part),
                 "imaginary part has non-imaginary spectrum");
  return out;
}

JordanParts full_decomposition(const Matrix& m) {
  JordanParts jp = jordan_chevalley(m);
  SplitParts sp = split_real_imag(jp.semisimple);
  jp.real_part = sp.real_part;
  jp.imag_part = sp.imag_part;
  return jp;
}

} // namespace solvshadow
