#include "solvshadow/liealgebra.hpp"

#include <algorithm>
#include <sstream>

#include "solvshadow/errors.hpp"
#include "solvshadow/prng.hpp"

namespace solvshadow {

/// Cached subspace data without the ambient back-reference (a Subspace in
/// the cache would keep its own algebra alive in a cycle).
struct CachedSubspace {
  Matrix basis, canonical;
  bool is_subalgebra = false, is_ideal = false;
};

struct LieAlgebra::Caches {
  std::mutex mu;
  std::optional<std::vector<CachedSubspace>> derived;
  std::optional<std::vector<CachedSubspace>> lower_central;
  std::optional<WeightData> weights;  // FieldPolicy::Auto only
  std::optional<CachedSubspace> nilrad;
};

namespace {

CachedSubspace to_cached(const Subspace& s) {
  return {s.basis(), s.canonical(), s.is_subalgebra(), s.is_ideal()};
}

Subspace from_cached_entry(const LieAlgebra& g, const CachedSubspace& c) {
  return Subspace::from_cached(g, c.basis, c.canonical, c.is_subalgebra, c.is_ideal);
}

} // namespace

struct LieAlgebra::Impl {
  int n = 0;
  std::vector<std::string> labels;
  std::vector<Scalar> c;  // n^3, index (i*n + j)*n + k
  FieldPtr field;
  mutable Caches caches;
};

namespace {

std::string default_label(int i) {
  std::ostringstream os;
  os << "e" << (i + 1);
  return os.str();
}

} // namespace

LieAlgebra LieAlgebra::create(int dim, std::vector<std::string> labels,
                              const std::vector<std::tuple<int, int, Vec>>& brackets,
                              FieldPtr field) {
  check_internal(dim >= 0, "negative dimension");
  auto impl = std::make_shared<Impl>();
  impl->n = dim;
  if (labels.empty())
    for (int i = 0; i < dim; ++i) labels.push_back(default_label(i));
  check_internal(static_cast<int>(labels.size()) == dim, "label count mismatch");
  impl->labels = std::move(labels);
  impl->c.assign(static_cast<size_t>(dim) * dim * dim, Scalar());
  auto at = [&](int i, int j, int k) -> Scalar& {
    return impl->c[(static_cast<size_t>(i) * dim + j) * dim + k];
  };
  for (const auto& [i, j, v] : brackets) {
    if (i < 0 || j < 0 || i >= dim || j >= dim)
      throw input_error("SyntaxError", "bracket index out of range");
    if (i >= j) throw input_error("SyntaxError", "bracket entries must have i < j");
    check_internal(static_cast<int>(v.size()) == dim, "bracket coefficient vector length");
    for (int k = 0; k < dim; ++k) {
      at(i, j, k) = v[k];
      at(j, i, k) = -v[k];
    }
  }
  // Common field.
  FieldPtr f = field;
  for (const auto& s : impl->c) {
    if (s.field()) {
      check_internal(!f || f == s.field(), "mixed fields in structure constants");
      f = s.field();
    }
  }
  impl->field = f;
  // Jacobi identity over all basis triples, exactly.
  LieAlgebra g;
  g.impl_ = impl;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        Vec ei(dim), ej(dim), ek(dim);
        ei[i] = Scalar(Rational(1));
        ej[j] = Scalar(Rational(1));
        ek[k] = Scalar(Rational(1));
        Vec r = vec_add(vec_add(bracket(g, ei, bracket(g, ej, ek)),
                                bracket(g, ej, bracket(g, ek, ei))),
                        bracket(g, ek, bracket(g, ei, ej)));
        if (!vec_is_zero(r)) {
          std::ostringstream os;
          os << "Jacobi identity fails on basis triple (" << impl->labels[i] << ", "
             << impl->labels[j] << ", " << impl->labels[k] << "); residual [";
          for (int t = 0; t < dim; ++t) os << (t ? ", " : "") << r[t].str();
          os << "]";
          throw input_error("JacobiViolation", os.str());
        }
      }
  return g;
}

int LieAlgebra::dim() const { return impl_ ? impl_->n : 0; }
const std::vector<std::string>& LieAlgebra::labels() const { return impl_->labels; }
FieldPtr LieAlgebra::field() const { return impl_ ? impl_->field : nullptr; }

const Scalar& LieAlgebra::c(int i, int j, int k) const {
  return impl_->c[(static_cast<size_t>(i) * impl_->n + j) * impl_->n + k];
}

Matrix LieAlgebra::ad_basis(int i) const {
  int n = dim();
  Matrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(k, j) = c(i, j, k);
  return m;
}

bool LieAlgebra::operator==(const LieAlgebra& o) const {
  if (dim() != o.dim()) return false;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      for (int k = 0; k < dim(); ++k)
        if (c(i, j, k) != o.c(i, j, k)) return false;
  return true;
}

LieAlgebra::Caches& LieAlgebra::caches() const { return impl_->caches; }

Vec bracket(const LieAlgebra& g, const Vec& x, const Vec& y) {
  int n = g.dim();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw input_error("DimensionMismatch", "bracket arguments must match the algebra dimension");
  Vec r(n);
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      Scalar f = x[i] * y[j];
      for (int k = 0; k < n; ++k) {
        const Scalar& cc = g.c(i, j, k);
        if (!cc.is_zero()) r[k] = r[k] + f * cc;
      }
    }
  }
  return r;
}

Matrix ad(const LieAlgebra& g, const Vec& x) {
  int n = g.dim();
  check_internal(static_cast<int>(x.size()) == n, "ad argument dimension");
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) {
    Vec ej(n);
    ej[j] = Scalar(Rational(1));
    Vec col = bracket(g, x, ej);
    m.set_column(j, col);
  }
  return m;
}

// ------------------------------------------------------------- subspace ----

namespace {

/// Canonical column form: RREF computed on the transpose, rows back as
/// columns; basis of the column space in reduced echelon shape.
Matrix canonical_columns(const Matrix& basis_columns) {
  Matrix t = basis_columns.transpose();
  std::vector<int> piv;
  Matrix e = rref(std::move(t), &piv);
  Matrix out(basis_columns.rows(), static_cast<int>(piv.size()));
  for (int r = 0; r < static_cast<int>(piv.size()); ++r)
    for (int i = 0; i < basis_columns.rows(); ++i) out(i, r) = e(r, i);
  return out;
}

} // namespace

Subspace::Subspace(LieAlgebra ambient, Matrix basis_columns)
    : ambient_(std::move(ambient)), basis_(std::move(basis_columns)) {
  canonical_ = canonical_columns(basis_);
  check_internal(rank(basis_) == basis_.cols(), "subspace basis columns must be independent");
  // Closure flags, computed once.
  is_subalgebra_ = true;
  is_ideal_ = true;
  int k = basis_.cols();
  for (int a = 0; a < k && is_subalgebra_; ++a)
    for (int b = a + 1; b < k && is_subalgebra_; ++b) {
      Vec br = bracket(ambient_, basis_.column(a), basis_.column(b));
      if (!contains(br)) is_subalgebra_ = false;
    }
  int n = ambient_.dim();
  for (int i = 0; i < n && is_ideal_; ++i) {
    Vec ei(n);
    ei[i] = Scalar(Rational(1));
    for (int b = 0; b < k && is_ideal_; ++b) {
      Vec br = bracket(ambient_, ei, basis_.column(b));
      if (!contains(br)) is_ideal_ = false;
    }
  }
  if (!is_subalgebra_) is_ideal_ = false;
}

Subspace Subspace::from_cached(LieAlgebra ambient, Matrix basis, Matrix canonical,
                               bool is_subalgebra, bool is_ideal) {
  Subspace s;
  s.ambient_ = std::move(ambient);
  s.basis_ = std::move(basis);
  s.canonical_ = std::move(canonical);
  s.is_subalgebra_ = is_subalgebra;
  s.is_ideal_ = is_ideal;
  return s;
}

Subspace Subspace::span(const LieAlgebra& g, const std::vector<Vec>& vectors) {
  Matrix cols = Matrix::from_columns(vectors);
  if (vectors.empty()) cols = Matrix(g.dim(), 0);
  return Subspace(g, canonical_columns(cols));
}

Subspace Subspace::whole(const LieAlgebra& g) { return Subspace(g, Matrix::identity(g.dim())); }

Subspace Subspace::zero(const LieAlgebra& g) { return Subspace(g, Matrix(g.dim(), 0)); }

bool Subspace::contains(const Vec& v) const {
  if (vec_is_zero(v)) return true;
  if (basis_.cols() == 0) return false;
  return solve(basis_, v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
  for (int j = 0; j < other.basis_.cols(); ++j)
    if (!contains(other.basis_.column(j))) return false;
  return true;
}

bool Subspace::operator==(const Subspace& o) const { return canonical_ == o.canonical_; }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  return Subspace(a.ambient(), canonical_columns(hstack(a.basis(), b.basis())));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  // Columns of [A | B]; kernel vectors give intersection elements A * x.
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(a.ambient());
  Matrix stacked = hstack(a.basis(), b.basis() * Scalar(Rational(-1)));
  auto ker = kernel_basis(stacked);
  std::vector<Vec> vecs;
  for (const auto& k : ker) {
    Vec x(a.dim());
    for (int i = 0; i < a.dim(); ++i) x[i] = k[i];
    vecs.push_back(a.basis().apply(x));
  }
  return Subspace::span(a.ambient(), vecs);
}

Subspace bracket_span(const Subspace& a, const Subspace& b) {
  std::vector<Vec> vecs;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      vecs.push_back(bracket(a.ambient(), a.basis().column(i), b.basis().column(j)));
  return Subspace::span(a.ambient(), vecs);
}

// --------------------------------------------------------------- series ----

std::vector<Subspace> derived_series(const LieAlgebra& g) {
  auto& caches = g.caches();
  std::lock_guard<std::mutex> lock(caches.mu);
  if (caches.derived) {
    std::vector<Subspace> out;
    for (const auto& c : *caches.derived) out.push_back(from_cached_entry(g, c));
    return out;
  }
  std::vector<Subspace> series{Subspace::whole(g)};
  while (series.back().dim() > 0) {
    Subspace next = bracket_span(series.back(), series.back());
    if (next.dim() == series.back().dim()) break;  // stationary, not solvable
    series.push_back(next);
  }
  std::vector<CachedSubspace> cached;
  for (const auto& s : series) cached.push_back(to_cached(s));
  caches.derived = std::move(cached);
  return series;
}

std::vector<Subspace> lower_central_series(const LieAlgebra& g) {
  auto& caches = g.caches();
  std::lock_guard<std::mutex> lock(caches.mu);
  if (caches.lower_central) {
    std::vector<Subspace> out;
    for (const auto& c : *caches.lower_central) out.push_back(from_cached_entry(g, c));
    return out;
  }
  std::vector<Subspace> series{Subspace::whole(g)};
  while (series.back().dim() > 0) {
    Subspace next = bracket_span(series.front(), series.back());
    if (next.dim() == series.back().dim()) break;
    series.push_back(next);
  }
  std::vector<CachedSubspace> cached;
  for (const auto& s : series) cached.push_back(to_cached(s));
  caches.lower_central = std::move(cached);
  return series;
}

bool is_solvable(const LieAlgebra& g) { return derived_series(g).back().dim() == 0; }
bool is_nilpotent(const LieAlgebra& g) { return lower_central_series(g).back().dim() == 0; }

bool is_abelian(const LieAlgebra& g) {
  for (int i = 0; i < g.dim(); ++i)
    if (!g.ad_basis(i).is_zero()) return false;
  return true;
}

bool is_unimodular(const LieAlgebra& g) {
  for (int i = 0; i < g.dim(); ++i)
    if (!g.ad_basis(i).trace().is_zero()) return false;
  return true;
}

Subspace center(const LieAlgebra& g) {
  int n = g.dim();
  if (n == 0) return Subspace::zero(g);
  Matrix stacked(0, n);
  for (int i = 0; i < n; ++i) stacked = (i == 0) ? g.ad_basis(0) : vstack(stacked, g.ad_basis(i));
  auto ker = kernel_basis(stacked);
  return Subspace::span(g, ker);
}

// -------------------------------------------------------- triangularize ----

namespace {

void require_solvable(const LieAlgebra& g) {
  if (!is_solvable(g))
    throw math_error("NonSolvableInput", "operation requires a solvable Lie algebra");
}

/// Ordered basis u_1..u_n adapted to the derived series: the last dim(D_j)
/// vectors span D_j.  Every tail span is then an ideal of the previous one
/// with the bracket landing one step deeper.
std::vector<Vec> solvable_chain_basis(const LieAlgebra& g) {
  auto series = derived_series(g);
  int n = g.dim();
  // Work from the deepest term up, extending echelon bases.
  std::vector<Vec> basis;  // filled bottom-up: deepest vectors first
  Matrix have(n, 0);
  for (int level = static_cast<int>(series.size()) - 1; level >= 0; --level) {
    const Matrix& b = series[level].canonical();
    for (int j = 0; j < b.cols(); ++j) {
      Vec v = b.column(j);
      Matrix test = hstack(have, Matrix::from_columns({v}));
      if (rank(test) > have.cols()) {
        have = canonical_columns(test);
        basis.push_back(v);
      }
    }
  }
  check_internal(static_cast<int>(basis.size()) == n, "chain basis incomplete");
  // basis[0..] currently lists deepest-first; u_1..u_n must have tails
  // spanning the deeper subspaces, so reverse.
  std::reverse(basis.begin(), basis.end());
  return basis;
}

struct TriWork {
  FieldPtr E;
  FieldHom from_base;  // g.field() -> E
  std::vector<Matrix> ad_ops;  // ad of original basis over E
  Matrix P, Pinv;              // over E
  std::vector<Vec> weights;    // rows: values on original basis, over E
  std::vector<Vec> chain;      // chain basis coordinates over E
  Matrix chain_inv;            // inverse of the chain basis matrix, over E

  void extend(const FieldHom& step, const FieldPtr& new_field) {
    auto remap_vec = [&](Vec& v) {
      for (auto& s : v) s = step.apply(s);
    };
    for (auto& m : ad_ops) m = map_matrix(m, step);
    P = map_matrix(P, step);
    Pinv = map_matrix(Pinv, step);
    for (auto& w : weights) remap_vec(w);
    for (auto& u : chain) remap_vec(u);
    chain_inv = map_matrix(chain_inv, step);
    if (from_base.from)
      from_base = FieldHom{from_base.from, step.apply(from_base.gen_image)};
    E = new_field;
  }
};

struct EigenStep {
  Scalar value;                  // an eigenvalue, in the (possibly new) field
  std::optional<FieldHom> step;  // set when the working field was extended
};

/// Finds one eigenvalue of a over the working field, extending it if needed.
EigenStep eigen_step(TriWork& work, const Matrix& a, FieldPolicy policy) {
  FPoly mu = promote_poly(min_poly(a), work.E);
  auto factored = factor_over_field(mu);
  std::vector<FPoly> cands;
  for (auto& [f, m] : factored) cands.push_back(f);
  std::sort(cands.begin(), cands.end(),
            [](const FPoly& x, const FPoly& y) { return x.degree() < y.degree(); });
  const FPoly& pick = cands.front();
  if (pick.degree() == 1) return {-(pick[0] * pick[1].inverse()), std::nullopt};
  if (policy == FieldPolicy::Rational)
    throw math_error("NonRationalSpectrum",
                     "eigenvalues require a field extension but --field rational was given");
  if (policy == FieldPolicy::Gaussian && (work.E != nullptr || pick.degree() != 2))
    throw math_error("NonRationalSpectrum",
                     "eigenvalues require more than a quadratic extension of Q");
  Extension ext = extend_by_root(work.E, pick);
  work.extend(ext.embed, ext.field);
  return {ext.root, ext.embed};
}

} // namespace

WeightData triangularize(const LieAlgebra& g, FieldPolicy policy) {
  require_solvable(g);
  int n = g.dim();
  if (policy == FieldPolicy::Auto || policy == FieldPolicy::Extend) {
    auto& caches = g.caches();
    std::lock_guard<std::mutex> lock(caches.mu);
    if (caches.weights) return *caches.weights;
  }

  TriWork work;
  work.E = g.field();
  work.from_base =
      FieldHom{g.field(), g.field() ? Scalar::generator(g.field()) : Scalar(Rational(0))};
  for (int i = 0; i < n; ++i) work.ad_ops.push_back(g.ad_basis(i));
  work.P = Matrix::identity(n);
  work.Pinv = Matrix::identity(n);
  std::vector<Vec> chain0 = solvable_chain_basis(g);
  work.chain = chain0;
  {
    auto inv = inverse(Matrix::from_columns(chain0));
    check_internal(inv.has_value(), "chain basis not invertible");
    work.chain_inv = *inv;
  }

  for (int k = 0; k < n; ++k) {
    int d = n - k;
    // Module actions of the chain elements on the current quotient.
    // W: current joint weight space, columns in quotient coordinates.
    Matrix W = Matrix::identity(d);
    Vec lambda_chain(n);  // values on chain elements (outer ones filled late)
    for (int t = n - 1; t >= 0; --t) {
      // Action of chain[t] on the quotient.
      Matrix full(d, d);
      {
        Matrix acc(n, n);
        for (int i = 0; i < n; ++i) {
          if (work.chain[t][i].is_zero()) continue;
          acc = acc + work.ad_ops[i] * work.chain[t][i];
        }
        Matrix conj = work.Pinv * acc * work.P;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) full(a, b) = conj(k + a, k + b);
      }
      // Restrict to W (must be invariant; Lie's lemma).
      int wd = W.cols();
      Matrix rest(wd, wd);
      for (int j = 0; j < wd; ++j) {
        Vec img = full.apply(W.column(j));
        auto x = solve(W, img);
        check_internal(x.has_value(), "weight space not invariant (Lie step failed)");
        rest.set_column(j, *x);
      }
      EigenStep es = eigen_step(work, rest, policy);
      Scalar ev = es.value;
      if (es.step) {
        // The working field grew: remap the local state through the step.
        W = map_matrix(W, *es.step);
        rest = map_matrix(rest, *es.step);
        for (auto& s : lambda_chain) s = es.step->apply(s);
      }
      Matrix shifted = rest;
      for (int i = 0; i < wd; ++i) shifted(i, i) = shifted(i, i) - ev;
      auto kv = kernel_basis(shifted);
      check_internal(!kv.empty(), "eigenvalue without eigenvector");
      // New joint space: W * span(kv).
      Matrix newW(d, static_cast<int>(kv.size()));
      for (size_t j = 0; j < kv.size(); ++j) {
        Vec x(wd);
        for (int i = 0; i < wd; ++i) x[i] = kv[j][i];
        newW.set_column(static_cast<int>(j), W.apply(x));
      }
      W = newW;
      lambda_chain[t] = ev;
    }
    // Weight functional on the original basis: lambda(e_i) via the chain
    // change of basis.
    Vec lambda_e(n);
    for (int i = 0; i < n; ++i) {
      Scalar acc;
      for (int t = 0; t < n; ++t) acc = acc + work.chain_inv(t, i) * lambda_chain[t];
      lambda_e[i] = acc;
    }
    work.weights.push_back(lambda_e);
    // Lift the first joint weight vector as the next flag column.
    Vec w = W.column(0);
    Vec lift(n);
    for (int a = 0; a < d; ++a) lift[a + k] = w[a];
    Vec v = work.P.apply(lift);
    // Rebuild P with flag columns 0..k and a deterministic complement.
    std::vector<Vec> flag;
    for (int j = 0; j < k; ++j) flag.push_back(work.P.column(j));
    flag.push_back(v);
    Matrix flag_m = Matrix::from_columns(flag);
    std::vector<int> pivots;
    rref(flag_m.transpose(), &pivots);
    std::vector<bool> used(n, false);
    {
      // Pivot coordinates of the flag rows: keep complement from the standard
      // basis, lowest indices first, skipping directions already dependent.
      Matrix test = flag_m;
      for (int j = 0; j < n && test.cols() < n; ++j) {
        Vec ej(n);
        ej[j] = Scalar(Rational(1));
        Matrix cand = hstack(test, Matrix::from_columns({ej}));
        if (rank(cand) > test.cols()) test = cand;
      }
      check_internal(test.cols() == n, "flag completion failed");
      work.P = test;
    }
    auto inv = inverse(work.P);
    check_internal(inv.has_value(), "flag basis not invertible");
    work.Pinv = *inv;
  }

  WeightData out;
  out.flag = work.P;
  out.weights = work.weights;
  out.field = work.E;
  out.base_embedding = work.from_base;

  // Verify: every conjugated ad is upper triangular with the recorded
  // diagonal.
  for (int i = 0; i < n; ++i) {
    Matrix t = work.Pinv * work.ad_ops[i] * work.P;
    for (int r = 0; r < n; ++r) {
      for (int cidx = 0; cidx < r; ++cidx)
        check_internal(t(r, cidx).is_zero(), "triangularization failed below diagonal");
      check_internal(t(r, r) == promote(out.weights[r][i], work.E),
                     "diagonal does not match weight functional");
    }
  }

  if (policy == FieldPolicy::Auto || policy == FieldPolicy::Extend) {
    auto& caches = g.caches();
    std::lock_guard<std::mutex> lock(caches.mu);
    if (!caches.weights) caches.weights = out;
  }
  return out;
}

bool is_completely_solvable(const LieAlgebra& g) {
  WeightData wd = triangularize(g);
  for (const auto& lam : wd.weights)
    for (const auto& v : lam)
      if (!is_real_value(v)) return false;
  return true;
}

// ------------------------------------------------- weight-kernel ideals ----

std::vector<Vec> kernel_rows_over_base(const std::vector<Vec>& rows, const LieAlgebra& g,
                                       const FieldHom& base_to_ext) {
  int n = g.dim();
  if (rows.empty()) {
    std::vector<Vec> all;
    for (int i = 0; i < n; ++i) {
      Vec e(n);
      e[i] = Scalar(Rational(1));
      all.push_back(e);
    }
    return all;
  }
  Matrix m = Matrix::from_rows(rows);
  auto ker = kernel_basis(m);
  // The row space is defined over the base field, so the canonical kernel
  // basis retracts exactly.
  std::vector<Vec> out;
  FieldPtr base = g.field();
  for (const auto& v : ker) {
    Vec r(n);
    for (int i = 0; i < n; ++i) {
      const Scalar& s = v[i];
      if (s.is_rational() || s.is_rational_value()) {
        r[i] = Scalar(s.is_rational() ? s.coeffs()[0] : s.rational_value());
        continue;
      }
      check_internal(base != nullptr, "kernel entry not rational over a rational algebra");
      // Express s in powers of the base generator's image.
      int d = base->degree();
      FieldPtr ext = s.field();
      int de = ext->degree();
      Matrix basis_m(de, d);
      Scalar pw(Rational(1));
      pw = promote(pw, ext);
      Scalar gi = promote(base_to_ext.gen_image, ext);
      for (int t = 0; t < d; ++t) {
        for (int row = 0; row < de; ++row) basis_m(row, t) = Scalar(pw.coeffs()[row]);
        pw = pw * gi;
      }
      Vec rhs(de);
      for (int row = 0; row < de; ++row) rhs[row] = Scalar(s.coeffs()[row]);
      auto x = solve(basis_m, rhs);
      check_internal(x.has_value(), "kernel entry does not retract to the base field");
      std::vector<Rational> cc(d);
      for (int t = 0; t < d; ++t) cc[t] = (*x)[t].rational_value();
      r[i] = Scalar::of_field(base, std::move(cc));
    }
    out.push_back(r);
  }
  return out;
}

Subspace nilradical(const LieAlgebra& g) {
  {
    auto& caches = g.caches();
    std::lock_guard<std::mutex> lock(caches.mu);
    if (caches.nilrad) return from_cached_entry(g, *caches.nilrad);
  }
  require_solvable(g);
  WeightData wd = triangularize(g);
  std::vector<Vec> rows;
  for (const auto& lam : wd.weights)
    if (!vec_is_zero(lam)) rows.push_back(lam);
  auto vecs = kernel_rows_over_base(rows, g, wd.base_embedding);
  Subspace nr = Subspace::span(g, vecs);
  // Verified postconditions: nilpotent ideal containing [g, g].
  check_internal(nr.is_ideal(), "nilradical is not an ideal");
  if (nr.dim() > 0) {
    LieAlgebra sub = subalgebra_structure(nr);
    check_internal(is_nilpotent(sub), "nilradical is not nilpotent");
  }
  auto der = derived_series(g);
  if (der.size() > 1) check_internal(nr.contains(der[1]), "nilradical misses [g, g]");
  {
    auto& caches = g.caches();
    std::lock_guard<std::mutex> lock(caches.mu);
    if (!caches.nilrad) caches.nilrad = to_cached(nr);
  }
  return nr;
}

Subspace max_completely_solvable_ideal(const LieAlgebra& g) {
  require_solvable(g);
  WeightData wd = triangularize(g);
  // Pair each weight with its complex conjugate among the weights; the
  // kernel of Im(lambda) over the base field is the kernel of
  // (lambda - conjugate partner).
  int m = static_cast<int>(wd.weights.size());
  std::vector<int> partner(m, -1);
  for (int a = 0; a < m; ++a) {
    if (partner[a] >= 0) continue;
    bool real_row = true;
    for (const auto& v : wd.weights[a])
      if (!is_real_value(v)) {
        real_row = false;
        break;
      }
    if (real_row) {
      partner[a] = a;
      continue;
    }
    for (int b = 0; b < m; ++b) {
      if (b == a || partner[b] >= 0) continue;
      bool conj = true;
      for (int i = 0; i < g.dim() && conj; ++i)
        if (!is_conjugate_pair(wd.weights[a][i], wd.weights[b][i])) conj = false;
      if (conj) {
        partner[a] = b;
        partner[b] = a;
        break;
      }
    }
    check_internal(partner[a] >= 0, "weight multiset not closed under conjugation");
  }
  std::vector<Vec> rows;
  for (int a = 0; a < m; ++a) {
    if (partner[a] == a) continue;
    rows.push_back(vec_sub(wd.weights[a], wd.weights[partner[a]]));
  }
  auto vecs = kernel_rows_over_base(rows, g, wd.base_embedding);
  Subspace s = Subspace::span(g, vecs);
  check_internal(s.is_ideal(), "maximal completely solvable ideal is not an ideal");
  check_internal(s.contains(nilradical(g)), "ideal misses the nilradical");
  if (s.dim() > 0) {
    LieAlgebra sub = subalgebra_structure(s);
    check_internal(is_completely_solvable(sub), "ideal is not completely solvable");
  }
  return s;
}

// ----------------------------------------------------------------- misc ----

LieAlgebra subalgebra_structure(const Subspace& s) {
  check_internal(s.is_subalgebra(), "structure constants need a bracket-closed subspace");
  int k = s.dim();
  std::vector<std::tuple<int, int, Vec>> brackets;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      Vec br = bracket(s.ambient(), s.basis().column(a), s.basis().column(b));
      auto x = solve(s.basis(), br);
      check_internal(x.has_value(), "bracket escaped the subspace");
      brackets.push_back({a, b, *x});
    }
  std::vector<std::string> labels;
  for (int a = 0; a < k; ++a) labels.push_back("s" + std::to_string(a + 1));
  try {
    return LieAlgebra::create(k, labels, brackets, s.ambient().field());
  } catch (const Error& e) {
    throw internal_error(std::string("subalgebra structure failed Jacobi: ") + e.what());
  }
}

LieAlgebra change_basis(const LieAlgebra& g, const Matrix& p) {
  int n = g.dim();
  auto pinv = inverse(p);
  check_internal(pinv.has_value(), "change of basis must be invertible");
  std::vector<std::tuple<int, int, Vec>> brackets;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec br = bracket(g, p.column(i), p.column(j));
      brackets.push_back({i, j, pinv->apply(br)});
    }
  try {
    return LieAlgebra::create(n, {}, brackets, g.field());
  } catch (const Error& e) {
    throw internal_error(std::string("change of basis broke Jacobi: ") + e.what());
  }
}

Subspace normalizer(const LieAlgebra& g, const Subspace& s) {
  int n = g.dim();
  if (s.dim() == n) return Subspace::whole(g);
  // Annihilator rows of the subspace.
  auto ann = kernel_basis(s.basis().transpose());
  std::vector<Vec> rows;
  for (int j = 0; j < s.dim(); ++j) {
    Matrix adj = ad(g, s.basis().column(j));
    for (const auto& a : ann) {
      // Row: x -> a . [x, s_j] = -(a . ad(s_j) x)
      Vec row(n);
      for (int col = 0; col < n; ++col) {
        Scalar acc;
        for (int r = 0; r < n; ++r) acc = acc + a[r] * adj(r, col);
        row[col] = acc;
      }
      rows.push_back(row);
    }
  }
  if (rows.empty()) return Subspace::whole(g);
  auto ker = kernel_basis(Matrix::from_rows(rows));
  return Subspace::span(g, ker);
}

Subspace cartan_subalgebra(const LieAlgebra& g, std::uint64_t variant) {
  require_solvable(g);
  int n = g.dim();
  if (n == 0) return Subspace::zero(g);
  if (is_nilpotent(g)) return Subspace::whole(g);

  Subspace nil = nilradical(g);
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    Prng rng(0x5eedULL * 0x9e3779b97f4a7c15ULL + variant * 1315423911ULL + attempt);
    Subspace k = Subspace::whole(g);
    bool dead = false;
    // Fitting-null descent.
    for (int guard = 0; guard <= n + 2 && !dead; ++guard) {
      LieAlgebra kk = subalgebra_structure(k);
      if (is_nilpotent(kk)) break;
      // Non-nilpotent element of kk: basis elements, then pair sums, then
      // seeded small combinations.
      int kd = k.dim();
      std::optional<Vec> found;
      auto try_vec = [&](const Vec& x) {
        if (found) return;
        Matrix a = ad(kk, x);
        if (!mat_pow(a, kd).is_zero()) found = x;
      };
      auto deterministic_scan = [&] {
        for (int i = 0; i < kd && !found; ++i) {
          Vec e(kd);
          e[i] = Scalar(Rational(1));
          try_vec(e);
        }
        for (int i = 0; i < kd && !found; ++i)
          for (int j = i + 1; j < kd && !found; ++j) {
            Vec e(kd);
            e[i] = Scalar(Rational(1));
            e[j] = Scalar(Rational(attempt % 2 ? 1 : -1));
            try_vec(e);
          }
      };
      auto seeded_scan = [&] {
        for (int tries = 0; tries < 32 && !found; ++tries) {
          Vec e(kd);
          for (int i = 0; i < kd; ++i) e[i] = Scalar(Rational(rng.range(-2, 2)));
          if (vec_is_zero(e)) continue;
          try_vec(e);
        }
      };
      // Variant 0 prefers the canonical scan; nonzero variants lead with the
      // seeded scan so different variants can reach different Cartans.
      if (variant == 0) {
        deterministic_scan();
        seeded_scan();
      } else {
        seeded_scan();
        deterministic_scan();
      }
      if (!found) {
        dead = true;
        break;
      }
      // Fitting-null component of ad(x) inside k.
      Matrix a = ad(kk, *found);
      auto ker = kernel_basis(mat_pow(a, kd));
      std::vector<Vec> amb;
      for (const auto& kv : ker) {
        Vec x(kd);
        for (int i = 0; i < kd; ++i) x[i] = kv[i];
        amb.push_back(k.basis().apply(x));
      }
      Subspace next = Subspace::span(g, amb);
      if (next.dim() == k.dim()) {
        dead = true;
        break;
      }
      k = next;
    }
    if (dead) continue;
    // Verify the Cartan postconditions.
    if (k.dim() == 0) continue;
    LieAlgebra kk = subalgebra_structure(k);
    if (!is_nilpotent(kk)) continue;
    if (!(normalizer(g, k) == k)) continue;
    if (subspace_sum(k, nil).dim() != n) continue;
    return k;
  }
  throw internal_error("Cartan subalgebra search exhausted its attempts");
}

std::vector<Matrix> derivations(const LieAlgebra& g) {
  int n = g.dim();
  if (n == 0) return {};
  std::vector<Vec> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // Unknowns D_{rs} flattened as r*n + s.
        Vec row(n * n);
        for (int m = 0; m < n; ++m) {
          if (!g.c(i, j, m).is_zero()) row[k * n + m] = row[k * n + m] + g.c(i, j, m);
        }
        for (int a = 0; a < n; ++a) {
          if (!g.c(a, j, k).is_zero()) row[a * n + i] = row[a * n + i] - g.c(a, j, k);
          if (!g.c(i, a, k).is_zero()) row[a * n + j] = row[a * n + j] - g.c(i, a, k);
        }
        rows.push_back(row);
      }
  std::vector<Matrix> basis;
  if (rows.empty()) {
    // Abelian algebra: every matrix is a derivation.
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) {
        Matrix m(n, n);
        m(r, s) = Scalar(Rational(1));
        basis.push_back(m);
      }
    return basis;
  }
  auto ker = kernel_basis(Matrix::from_rows(rows));
  for (const auto& v : ker) {
    Matrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) m(r, s) = v[r * n + s];
    basis.push_back(m);
  }
  // Commutator closure check on the span.
  if (!basis.empty()) {
    std::vector<Vec> flat;
    for (const auto& m : basis) {
      Vec v(n * n);
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) v[r * n + s] = m(r, s);
      flat.push_back(v);
    }
    Matrix span = Matrix::from_columns(flat);
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = a + 1; b < basis.size(); ++b) {
        Matrix comm = basis[a] * basis[b] - basis[b] * basis[a];
        Vec v(n * n);
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) v[r * n + s] = comm(r, s);
        check_internal(vec_is_zero(v) || solve(span, v).has_value(),
                       "derivation algebra not closed under commutator");
      }
  }
  return basis;
}

Matrix killing_form(const LieAlgebra& g) {
  int n = g.dim();
  Matrix b(n, n);
  std::vector<Matrix> ads;
  for (int i = 0; i < n; ++i) ads.push_back(g.ad_basis(i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Scalar t = (ads[i] * ads[j]).trace();
      b(i, j) = t;
      b(j, i) = t;
    }
  return b;
}

InnerProduct InnerProduct::create(Matrix m) {
  check_internal(m.is_square(), "inner product matrix must be square");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_rational_value())
        throw input_error("NonRationalInnerProduct", "inner products must have rational entries");
      if (m(i, j) != m(j, i))
        throw input_error("NonSymmetric", "inner product matrix must be symmetric");
    }
  // Positive definiteness via leading principal minors.
  for (int k = 1; k <= m.rows(); ++k) {
    Matrix lead(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) lead(i, j) = m(i, j);
    Scalar d = det(lead);
    if (sign_real(d) <= 0)
      throw input_error("NonPositiveDefinite", "inner product matrix must be positive definite");
  }
  InnerProduct ip;
  ip.m_ = std::move(m);
  return ip;
}

InnerProduct InnerProduct::standard(int n) { return create(Matrix::identity(n)); }

std::vector<Matrix> orthogonal_derivations(const LieAlgebra& g, const InnerProduct& ip) {
  int n = g.dim();
  if (n == 0) return {};
  const Matrix& gm = ip.matrix();
  std::vector<Vec> rows;
  // Derivation equations.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec row(n * n);
        for (int m = 0; m < n; ++m)
          if (!g.c(i, j, m).is_zero()) row[k * n + m] = row[k * n + m] + g.c(i, j, m);
        for (int a = 0; a < n; ++a) {
          if (!g.c(a, j, k).is_zero()) row[a * n + i] = row[a * n + i] - g.c(a, j, k);
          if (!g.c(i, a, k).is_zero()) row[a * n + j] = row[a * n + j] - g.c(i, a, k);
        }
        rows.push_back(row);
      }
  // Skewness: (G D)_{pq} + (G D)_{qp} = 0 for p <= q.
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      Vec row(n * n);
      for (int a = 0; a < n; ++a) {
        if (!gm(p, a).is_zero()) row[a * n + q] = row[a * n + q] + gm(p, a);
        if (!gm(q, a).is_zero()) row[a * n + p] = row[a * n + p] + gm(q, a);
      }
      rows.push_back(row);
    }
  auto ker = kernel_basis(Matrix::from_rows(rows));
  std::vector<Matrix> basis;
  for (const auto& v : ker) {
    Matrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int s = 0; s < n; ++s) m(r, s) = v[r * n + s];
    check_internal(has_purely_imaginary_spectrum(m),
                   "orthogonal derivation with non-imaginary spectrum");
    basis.push_back(m);
  }
  return basis;
}

SemidirectSum semidirect_sum(const LieAlgebra& r, const std::vector<Matrix>& k) {
  int n = r.dim();
  int m = static_cast<int>(k.size());
  // Common field.
  FieldPtr field = r.field();
  for (const auto& d : k) {
    FieldPtr df = d.field();
    if (df) {
      check_internal(!field || field == df, "semidirect sum needs a common field");
      field = df;
    }
  }
  // Each generator must be a derivation of r.
  for (const auto& d : k) {
    check_internal(d.rows() == n && d.cols() == n, "derivation shape mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Vec ei(n), ej(n);
        ei[i] = Scalar(Rational(1));
        ej[j] = Scalar(Rational(1));
        Vec lhs = d.apply(bracket(r, ei, ej));
        Vec rhs = vec_add(bracket(r, d.column(i), ej), bracket(r, ei, d.column(j)));
        if (!vec_is_zero(vec_sub(lhs, rhs)))
          throw math_error("NotADerivation", "semidirect factor is not a derivation");
      }
  }
  // Commutator closure of the span, with coordinates.
  Matrix span(n * n, m);
  for (int a = 0; a < m; ++a) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) span(i * n + j, a) = k[a](i, j);
  }
  std::vector<std::tuple<int, int, Vec>> brackets;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec v(n + m);
      for (int t = 0; t < n; ++t) v[t] = r.c(i, j, t);
      brackets.push_back({i, j, v});
    }
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      Matrix comm = k[a] * k[b] - k[b] * k[a];
      Vec flat(n * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) flat[i * n + j] = comm(i, j);
      std::optional<Vec> coords;
      if (vec_is_zero(flat))
        coords = Vec(m);
      else if (m > 0)
        coords = solve(span, flat);
      if (!coords)
        throw math_error("NotASubalgebra", "semidirect factors are not commutator-closed");
      Vec v(n + m);
      for (int t = 0; t < m; ++t) v[n + t] = (*coords)[t];
      brackets.push_back({n + a, n + b, v});
    }
  for (int a = 0; a < m; ++a)
    for (int j = 0; j < n; ++j) {
      // [D_a, e_j] = D_a e_j; stored with index order (j, n + a) requires the
      // sign flip.
      Vec col = k[a].column(j);
      Vec v(n + m);
      for (int t = 0; t < n; ++t) v[t] = -col[t];
      brackets.push_back({j, n + a, v});
    }
  std::vector<std::string> labels = r.labels();
  for (int a = 0; a < m; ++a) labels.push_back("D" + std::to_string(a + 1));
  SemidirectSum out;
  try {
    out.algebra = LieAlgebra::create(n + m, labels, brackets, field);
  } catch (const Error& e) {
    throw internal_error(std::string("semidirect sum failed Jacobi: ") + e.what());
  }
  out.base_dim = n;
  out.torus = k;
  return out;
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  int n = a.dim(), m = b.dim();
  std::vector<std::tuple<int, int, Vec>> brackets;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec v(n + m);
      for (int k = 0; k < n; ++k) v[k] = a.c(i, j, k);
      brackets.push_back({i, j, v});
    }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec v(n + m);
      for (int k = 0; k < m; ++k) v[n + k] = b.c(i, j, k);
      brackets.push_back({n + i, n + j, v});
    }
  std::vector<std::string> labels;
  for (const auto& l : a.labels()) labels.push_back(l + "'");
  for (const auto& l : b.labels()) labels.push_back(l + "''");
  FieldPtr f = a.field() ? a.field() : b.field();
  if (a.field() && b.field()) check_internal(a.field() == b.field(), "direct sum field mismatch");
  return LieAlgebra::create(n + m, labels, brackets, f);
}

} // namespace solvshadow
