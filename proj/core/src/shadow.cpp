#include "solvshadow/shadow.hpp"

#include <algorithm>
#include <sstream>

#include "solvshadow/errors.hpp"

namespace solvshadow {

namespace {

void verify_cartan(const LieAlgebra& r, const Subspace& h) {
  bool ok = h.is_subalgebra();
  if (ok && h.dim() > 0) ok = is_nilpotent(subalgebra_structure(h));
  if (ok) ok = normalizer(r, h) == h;
  if (ok) ok = subspace_sum(h, nilradical(r)).dim() == r.dim();
  if (!ok) throw math_error("NotACartan", "subspace fails the Cartan subalgebra postconditions");
}

LieAlgebra promote_algebra(const LieAlgebra& r, const FieldHom& hom, const FieldPtr& field) {
  if (!hom.from && !field) return r;
  if (r.field() == field) return r;
  int n = r.dim();
  std::vector<std::tuple<int, int, Vec>> brackets;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec v(n);
      bool nonzero = false;
      for (int k = 0; k < n; ++k) {
        v[k] = promote(hom.apply(r.c(i, j, k)), field);
        nonzero = nonzero || !v[k].is_zero();
      }
      if (nonzero) brackets.push_back({i, j, v});
    }
  try {
    return LieAlgebra::create(n, r.labels(), brackets, field);
  } catch (const Error& e) {
    throw internal_error(std::string("field promotion broke Jacobi: ") + e.what());
  }
}

} // namespace

CompactPartMap compact_part_map(const LieAlgebra& r, const Subspace& cartan) {
  require_field_real(r.field());
  if (!is_solvable(r))
    throw math_error("NonSolvableInput", "compact part map requires a solvable algebra");
  verify_cartan(r, cartan);
  int n = r.dim();

  // Weight-adapted complement of the Cartan: the sum of the images of
  // (ad H)^n over the Cartan basis (the nonzero-weight part of r).
  std::vector<Vec> complement_vecs;
  for (int a = 0; a < cartan.dim(); ++a) {
    Matrix p = mat_pow(ad(r, cartan.basis().column(a)), n);
    for (int j = 0; j < n; ++j) complement_vecs.push_back(p.column(j));
  }
  Subspace complement = Subspace::span(r, complement_vecs);
  check_internal(subspace_sum(cartan, complement).dim() == n,
                 "Cartan and weight complement do not span");
  check_internal(nilradical(r).contains(complement), "weight complement escapes the nilradical");

  // Imaginary semisimple parts of ad H over a common field.
  FieldPtr common = r.field();
  FieldHom base_embed{r.field(), r.field() ? Scalar::generator(r.field()) : Scalar(Rational(0))};
  std::vector<Matrix> theta_h;  // per Cartan basis element, over `common`
  for (int a = 0; a < cartan.dim(); ++a) {
    Matrix adh = ad(r, cartan.basis().column(a));
    JordanParts jp = jordan_chevalley(adh);
    SplitParts sp = split_real_imag(jp.semisimple);
    Matrix im = sp.imag_part;
    FieldPtr f = im.field();
    if (!f) {
      theta_h.push_back(im);
      continue;
    }
    FieldJoin join = join_fields(common, f);
    if (join.field != common) {
      // Remap everything gathered so far.
      for (auto& m : theta_h) m = map_matrix(m, join.h1);
      if (base_embed.from) base_embed = FieldHom{base_embed.from, join.h1.apply(base_embed.gen_image)};
      common = join.field;
    }
    theta_h.push_back(map_matrix(im, join.h2));
  }

  // theta on the full basis: decompose e_i = H-part + complement-part.
  Matrix decomp = hstack(cartan.basis(), complement.basis());
  CompactPartMap out;
  out.field = common;
  out.embed = base_embed;
  for (int i = 0; i < n; ++i) {
    Vec e(n);
    e[i] = Scalar(Rational(1));
    auto x = solve(decomp, e);
    check_internal(x.has_value(), "basis vector failed the adapted decomposition");
    Matrix th(n, n);
    for (int a = 0; a < cartan.dim(); ++a) {
      Scalar coeff = base_embed.from ? base_embed.apply((*x)[a]) : (*x)[a];
      if (!coeff.is_zero()) th = th + theta_h[a] * coeff;
    }
    out.theta.push_back(th);
  }

  // Verified postconditions: derivations, pairwise commuting, purely
  // imaginary spectra, vanishing on the nilradical.
  LieAlgebra r_common = promote_algebra(r, base_embed, common);
  for (const auto& th : out.theta) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Vec ei(n), ej(n);
        ei[i] = Scalar(Rational(1));
        ej[j] = Scalar(Rational(1));
        Vec lhs = th.apply(bracket(r_common, ei, ej));
        Vec rhs = vec_add(bracket(r_common, th.column(i), ej), bracket(r_common, ei, th.column(j)));
        check_internal(vec_is_zero(vec_sub(lhs, rhs)), "compact part is not a derivation");
      }
    check_internal(has_purely_imaginary_spectrum(th), "compact part has non-imaginary spectrum");
  }
  for (size_t a = 0; a < out.theta.size(); ++a)
    for (size_t b = a + 1; b < out.theta.size(); ++b)
      check_internal(out.theta[a] * out.theta[b] == out.theta[b] * out.theta[a],
                     "compact parts do not commute");
  Subspace nil = nilradical(r);
  for (int j = 0; j < nil.dim(); ++j) {
    Vec v = nil.basis().column(j);
    Matrix th(n, n);
    for (int i = 0; i < n; ++i) {
      Scalar coeff = base_embed.from ? base_embed.apply(v[i]) : v[i];
      if (!coeff.is_zero()) th = th + out.theta[i] * coeff;
    }
    check_internal(th.is_zero(), "compact part does not vanish on the nilradical");
  }
  return out;
}

ShadowResult shadow(const LieAlgebra& r, std::uint64_t cartan_variant) {
  if (!is_solvable(r))
    throw math_error("NonSolvableInput", "shadow construction requires a solvable algebra");
  int n = r.dim();
  ShadowResult res;
  res.source = r;
  res.cartan = cartan_subalgebra(r, cartan_variant);
  res.theta = compact_part_map(r, res.cartan);

  // Torus basis: canonical span of the theta images.
  {
    std::vector<Vec> flats;
    for (const auto& th : res.theta.theta) {
      if (th.is_zero()) continue;
      Vec v(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) v[i * n + j] = th(i, j);
      flats.push_back(v);
    }
    Matrix cols = flats.empty() ? Matrix(n * n, 0) : Matrix::from_columns(flats);
    Matrix canon = [] (Matrix m) {
      Matrix t = m.transpose();
      std::vector<int> piv;
      Matrix e = rref(std::move(t), &piv);
      Matrix out(m.rows(), static_cast<int>(piv.size()));
      for (int rr = 0; rr < static_cast<int>(piv.size()); ++rr)
        for (int i = 0; i < m.rows(); ++i) out(i, rr) = e(rr, i);
      return out;
    }(cols);
    for (int c = 0; c < canon.cols(); ++c) {
      Matrix d(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d(i, j) = canon(i * n + j, c);
      res.torus.push_back(d);
    }
  }
  int m = static_cast<int>(res.torus.size());

  LieAlgebra r_e = promote_algebra(r, res.theta.embed, res.theta.field);
  res.ambient = semidirect_sum(r_e, res.torus);
  const LieAlgebra& g = res.ambient.algebra;

  // Torus must be abelian.
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      check_internal(res.torus[a] * res.torus[b] == res.torus[b] * res.torus[a],
                     "shadow torus is not abelian");

  // The shadow: span of e_i - theta(e_i).
  Matrix torus_span(n * n, m);
  for (int a = 0; a < m; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) torus_span(i * n + j, a) = res.torus[a](i, j);
  res.correspondence = Matrix(n + m, n);
  for (int i = 0; i < n; ++i) {
    Vec v(n + m);
    v[i] = Scalar(Rational(1));
    const Matrix& th = res.theta.theta[i];
    if (!th.is_zero()) {
      Vec flat(n * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) flat[a * n + b] = th(a, b);
      auto coords = solve(torus_span, flat);
      check_internal(coords.has_value(), "theta image escaped the torus span");
      for (int a = 0; a < m; ++a) v[n + a] = -(*coords)[a];
    }
    res.correspondence.set_column(i, v);
  }
  std::vector<Vec> svecs;
  for (int i = 0; i < n; ++i) svecs.push_back(res.correspondence.column(i));
  res.shadow_subspace = Subspace(g, Matrix::from_columns(svecs));

  // Construction invariants.
  check_internal(res.shadow_subspace.dim() == n, "shadow dimension mismatch");
  check_internal(res.shadow_subspace.is_subalgebra(), "shadow is not a subalgebra");
  {
    // s intersect k = 0 and g = s + k as coordinate spaces.
    std::vector<Vec> kvecs;
    for (int a = 0; a < m; ++a) {
      Vec v(n + m);
      v[n + a] = Scalar(Rational(1));
      kvecs.push_back(v);
    }
    Subspace kspace = Subspace::span(g, kvecs);
    check_internal(subspace_intersect(res.shadow_subspace, kspace).dim() == 0,
                   "shadow meets the torus");
    check_internal(subspace_sum(res.shadow_subspace, kspace).dim() == n + m,
                   "shadow and torus do not span the ambient algebra");
  }
  res.shadow_algebra = subalgebra_structure(res.shadow_subspace);
  check_internal(is_completely_solvable(res.shadow_algebra),
                 "shadow algebra is not completely solvable");
  check_internal(res.shadow_subspace.is_ideal(), "shadow is not an ideal of the ambient algebra");
  return res;
}

Subspace shadow_via_killing(const LieAlgebra& g, const Subspace& k) {
  Matrix b = killing_form(g);
  int n = g.dim();
  if (k.dim() == 0) return Subspace::whole(g);
  std::vector<Vec> rows;
  for (int a = 0; a < k.dim(); ++a) {
    Vec kv = k.basis().column(a);
    Vec row(n);
    for (int j = 0; j < n; ++j) {
      Scalar acc;
      for (int i = 0; i < n; ++i) acc = acc + kv[i] * b(i, j);
      row[j] = acc;
    }
    rows.push_back(row);
  }
  auto ker = kernel_basis(Matrix::from_rows(rows));
  if (static_cast<int>(ker.size()) != n - k.dim()) {
    std::ostringstream os;
    os << "Killing pairing against the torus is degenerate: complement dimension "
       << ker.size() << " != " << (n - k.dim());
    throw math_error("DegeneratePairing", os.str());
  }
  return Subspace::span(g, ker);
}

ShadowReport verify_shadow(const ShadowResult& res) {
  ShadowReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
    rep.checks.push_back({name, pass, detail});
  };
  const LieAlgebra& g = res.ambient.algebra;
  int n = res.source.dim();
  int m = static_cast<int>(res.torus.size());

  add("a_shadow_is_ideal", res.shadow_subspace.is_ideal());
  add("b_shadow_completely_solvable", is_completely_solvable(res.shadow_algebra));
  {
    Subspace maxcs = max_completely_solvable_ideal(g);
    bool eq = maxcs == res.shadow_subspace;
    std::ostringstream os;
    os << "max ideal dim " << maxcs.dim() << ", shadow dim " << res.shadow_subspace.dim();
    add("c_equals_max_completely_solvable_ideal", eq, os.str());
  }
  {
    Subspace nil = nilradical(res.source);
    bool ok = true;
    for (int j = 0; j < nil.dim() && ok; ++j) {
      Vec v = nil.basis().column(j);
      Vec lift(n + m);
      for (int i = 0; i < n; ++i)
        lift[i] = res.theta.embed.from ? res.theta.embed.apply(v[i]) : v[i];
      if (!res.shadow_subspace.contains(lift)) ok = false;
    }
    add("d_contains_nilradical_of_source", ok);
  }
  {
    // [s, r] inside s intersect r, with r embedded on the first coordinates.
    std::vector<Vec> rvecs;
    for (int i = 0; i < n; ++i) {
      Vec v(n + m);
      v[i] = Scalar(Rational(1));
      rvecs.push_back(v);
    }
    Subspace r_emb = Subspace::span(g, rvecs);
    Subspace br = bracket_span(res.shadow_subspace, r_emb);
    Subspace meet = subspace_intersect(res.shadow_subspace, r_emb);
    add("e_mutual_bracket_in_intersection", meet.contains(br));
  }
  {
    bool src_uni = is_unimodular(res.source);
    bool sh_uni = is_unimodular(res.shadow_algebra);
    add("f_unimodularity_preserved", !src_uni || sh_uni,
        src_uni ? (sh_uni ? "both unimodular" : "source unimodular, shadow is not")
                : "source not unimodular");
  }
  {
    std::vector<Vec> kvecs;
    for (int a = 0; a < m; ++a) {
      Vec v(n + m);
      v[n + a] = Scalar(Rational(1));
      kvecs.push_back(v);
    }
    Subspace kspace = Subspace::span(g, kvecs);
    bool ok = subspace_sum(res.shadow_subspace, kspace).dim() == n + m &&
              subspace_intersect(res.shadow_subspace, kspace).dim() == 0;
    add("g_transversal_decomposition", ok);
  }
  return rep;
}

// ------------------------------------------------------------ signature ----

SymmetricSignature symmetric_signature(const Matrix& m) {
  check_internal(m.is_square(), "signature of non-square matrix");
  check_internal(m == m.transpose(), "signature needs a symmetric matrix");
  SymmetricSignature sig;
  int n = m.rows();
  if (n == 0) return sig;
  FPoly chi = char_poly(m);
  // Trailing zero coefficients count the zero eigenvalues.
  int z = 0;
  while (z <= chi.degree() && chi[z].is_zero()) ++z;
  sig.zero = z;
  // Descartes is exact for polynomials with all-real roots: positive roots
  // (with multiplicity) equal the sign variations of the coefficients.
  std::vector<int> signs;
  for (int k = z; k <= chi.degree(); ++k)
    if (!chi[k].is_zero()) signs.push_back(sign_real(chi[k]));
  int pos = 0;
  for (size_t i = 0; i + 1 < signs.size(); ++i)
    if (signs[i] != signs[i + 1]) ++pos;
  sig.positive = pos;
  sig.negative = n - sig.zero - pos;
  return sig;
}

// ----------------------------------------------------------- fingerprint ----

bool Fingerprint::operator==(const Fingerprint& o) const {
  return dim == o.dim && derived_profile == o.derived_profile && lcs_profile == o.lcs_profile &&
         nilradical_dim == o.nilradical_dim && center_dim == o.center_dim &&
         killing_rank == o.killing_rank && killing_positive == o.killing_positive &&
         killing_negative == o.killing_negative && unimodular == o.unimodular &&
         completely_solvable == o.completely_solvable && weight_count == o.weight_count &&
         weight_multiplicities == o.weight_multiplicities && weight_rank == o.weight_rank &&
         real_weight_count == o.real_weight_count && zero_weight_count == o.zero_weight_count &&
         ratio_pattern_defined == o.ratio_pattern_defined &&
         [&] {
           if (ratio_pattern.size() != o.ratio_pattern.size()) return false;
           for (size_t i = 0; i < ratio_pattern.size(); ++i)
             if (!(ratio_pattern[i] == o.ratio_pattern[i])) return false;
           return true;
         }();
}

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "dim=" << dim << " derived=[";
  for (size_t i = 0; i < derived_profile.size(); ++i) os << (i ? "," : "") << derived_profile[i];
  os << "] lcs=[";
  for (size_t i = 0; i < lcs_profile.size(); ++i) os << (i ? "," : "") << lcs_profile[i];
  os << "] nilradical=" << nilradical_dim << " center=" << center_dim << " killing=("
     << killing_positive << "+," << killing_negative << "-,rank " << killing_rank << ")"
     << " unimodular=" << unimodular << " cs=" << completely_solvable
     << " weights{count=" << weight_count << " rank=" << weight_rank << " mult=[";
  for (size_t i = 0; i < weight_multiplicities.size(); ++i)
    os << (i ? "," : "") << weight_multiplicities[i];
  os << "] real=" << real_weight_count << " zero=" << zero_weight_count;
  if (ratio_pattern_defined) {
    os << " ratios=[";
    for (size_t i = 0; i < ratio_pattern.size(); ++i) {
      os << (i ? "," : "") << "(" << ratio_pattern[i].minpoly.str() << "#"
         << ratio_pattern[i].root_index << ")";
    }
    os << "]";
  }
  os << "}";
  return os.str();
}

Fingerprint fingerprint(const LieAlgebra& g) {
  if (!is_solvable(g))
    throw math_error("NonSolvableInput", "fingerprints are defined for solvable algebras");
  Fingerprint fp;
  fp.dim = g.dim();
  for (const auto& s : derived_series(g)) fp.derived_profile.push_back(s.dim());
  for (const auto& s : lower_central_series(g)) fp.lcs_profile.push_back(s.dim());
  fp.nilradical_dim = nilradical(g).dim();
  fp.center_dim = center(g).dim();
  SymmetricSignature sig = symmetric_signature(killing_form(g));
  fp.killing_rank = fp.dim - sig.zero;
  fp.killing_positive = sig.positive;
  fp.killing_negative = sig.negative;
  fp.unimodular = is_unimodular(g);
  fp.completely_solvable = is_completely_solvable(g);

  WeightData wd = triangularize(g);
  // Distinct weights with multiplicities.
  std::vector<Vec> distinct;
  std::vector<int> mult;
  for (const auto& lam : wd.weights) {
    bool found = false;
    for (size_t i = 0; i < distinct.size() && !found; ++i) {
      bool eq = true;
      for (int j = 0; j < fp.dim && eq; ++j)
        if (distinct[i][j] != lam[j]) eq = false;
      if (eq) {
        ++mult[i];
        found = true;
      }
    }
    if (!found) {
      distinct.push_back(lam);
      mult.push_back(1);
    }
  }
  fp.weight_count = static_cast<int>(distinct.size());
  fp.weight_multiplicities = mult;
  std::sort(fp.weight_multiplicities.begin(), fp.weight_multiplicities.end());
  if (!distinct.empty()) fp.weight_rank = rank(Matrix::from_rows(distinct));
  for (const auto& lam : distinct) {
    bool allreal = true, allzero = true;
    for (const auto& v : lam) {
      if (!v.is_zero()) allzero = false;
      if (!is_real_value(v)) allreal = false;
    }
    if (allreal) ++fp.real_weight_count;
    if (allzero) ++fp.zero_weight_count;
  }

  // Ratio pattern for a rank <= 1 weight family: the multiset of ratios to a
  // reference weight, canonicalized over the choice of reference.
  if (fp.weight_rank <= 1) {
    fp.ratio_pattern_defined = true;
    if (fp.weight_rank == 1) {
      // Reference: any nonzero weight; ratios of each weight to it (weights
      // are proportional, so the ratio uses any nonzero coordinate).
      int ref = -1, refcoord = -1;
      for (size_t i = 0; i < distinct.size() && ref < 0; ++i)
        for (int j = 0; j < fp.dim; ++j)
          if (!distinct[i][j].is_zero()) {
            ref = static_cast<int>(i);
            refcoord = j;
            break;
          }
      std::vector<Scalar> ratios;
      for (size_t i = 0; i < distinct.size(); ++i) {
        for (int cnt = 0; cnt < mult[i]; ++cnt)
          ratios.push_back(distinct[i][refcoord] * distinct[ref][refcoord].inverse());
      }
      // Canonical normalization: divide by the nonzero element that makes the
      // sorted multiset lexicographically smallest.
      std::vector<std::vector<Scalar>> candidates;
      for (const auto& d : ratios) {
        if (d.is_zero()) continue;
        std::vector<Scalar> cand;
        Scalar dinv = d.inverse();
        for (const auto& c : ratios) cand.push_back(c * dinv);
        std::sort(cand.begin(), cand.end(),
                  [](const Scalar& a, const Scalar& b) { return algebraic_compare(a, b) < 0; });
        candidates.push_back(std::move(cand));
      }
      auto less_seq = [](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
        for (size_t i = 0; i < a.size() && i < b.size(); ++i) {
          int c = algebraic_compare(a[i], b[i]);
          if (c != 0) return c < 0;
        }
        return a.size() < b.size();
      };
      std::sort(candidates.begin(), candidates.end(), less_seq);
      check_internal(!candidates.empty(), "rank-one family without nonzero ratios");
      for (const auto& v : candidates.front()) fp.ratio_pattern.push_back(canonical_algebraic(v));
    }
  }
  return fp;
}

} // namespace solvshadow
