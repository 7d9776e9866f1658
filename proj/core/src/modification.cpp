#include "solvshadow/modification.hpp"

#include <sstream>

#include "solvshadow/errors.hpp"
#include "solvshadow/prng.hpp"

namespace solvshadow {

namespace {

void require_skew_derivation_torus(const LieAlgebra& s, const InnerProduct& ip,
                                   const std::vector<Matrix>& torus) {
  int n = s.dim();
  const Matrix& gm = ip.matrix();
  for (const auto& d : torus) {
    check_internal(d.rows() == n && d.cols() == n, "torus matrix shape mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Vec ei(n), ej(n);
        ei[i] = Scalar(Rational(1));
        ej[j] = Scalar(Rational(1));
        Vec lhs = d.apply(bracket(s, ei, ej));
        Vec rhs = vec_add(bracket(s, d.column(i), ej), bracket(s, ei, d.column(j)));
        if (!vec_is_zero(vec_sub(lhs, rhs)))
          throw math_error("NotADerivation", "torus element is not a derivation of the base");
      }
    Matrix skew = gm * d + d.transpose() * gm;
    if (!skew.is_zero())
      throw math_error("NotSkewSymmetric",
                       "torus element is not skew-symmetric for the inner product");
  }
  for (size_t a = 0; a < torus.size(); ++a)
    for (size_t b = a + 1; b < torus.size(); ++b)
      if (!(torus[a] * torus[b] == torus[b] * torus[a]))
        throw math_error("NotAbelianTorus", "torus matrices do not commute");
}

} // namespace

std::variant<Modification, ClosureFailure> try_apply_modification(
    const LieAlgebra& s, const InnerProduct& ip, const std::vector<Matrix>& torus,
    const Matrix& phi) {
  if (!is_completely_solvable(s))
    throw math_error("NotCompletelySolvable",
                     "modifications are applied to completely solvable bases");
  require_skew_derivation_torus(s, ip, torus);
  int n = s.dim();
  int m = static_cast<int>(torus.size());
  check_internal(phi.rows() == m && phi.cols() == n, "phi must be torus-size x dim");

  SemidirectSum ambient = semidirect_sum(s, torus);
  const LieAlgebra& g = ambient.algebra;
  std::vector<Vec> rvecs;
  for (int j = 0; j < n; ++j) {
    Vec v(n + m);
    v[j] = Scalar(Rational(1));
    for (int a = 0; a < m; ++a) v[n + a] = phi(a, j);
    rvecs.push_back(v);
  }
  Matrix rbasis = Matrix::from_columns(rvecs);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec br = bracket(g, rvecs[i], rvecs[j]);
      if (!vec_is_zero(br) && !solve(rbasis, br).has_value())
        return ClosureFailure{i, j, br};
    }
  Modification out;
  out.base = s;
  out.ip = ip;
  out.torus = torus;
  out.phi = phi;
  out.modified = Subspace(g, rbasis);
  check_internal(out.modified.is_subalgebra(), "closed modification is not a subalgebra");
  check_internal(out.modified.dim() == n, "modification changed the dimension");
  out.modified_algebra = subalgebra_structure(out.modified);
  out.ambient = std::move(ambient);
  return out;
}

Modification apply_modification(const LieAlgebra& s, const InnerProduct& ip,
                                const std::vector<Matrix>& torus, const Matrix& phi) {
  auto r = try_apply_modification(s, ip, torus, phi);
  if (auto* fail = std::get_if<ClosureFailure>(&r)) {
    std::ostringstream os;
    os << "bracket of modified basis pair (" << s.labels()[fail->i] << ", "
       << s.labels()[fail->j] << ") escapes the modified subspace";
    throw math_error("NotClosed", os.str());
  }
  return std::get<Modification>(std::move(r));
}

bool is_normal_modification(const Modification& m) {
  // phi must annihilate a basis of [s, s].
  auto der = derived_series(m.base);
  if (der.size() < 2 || der[1].dim() == 0) return true;
  const Matrix& b = der[1].basis();
  for (int j = 0; j < b.cols(); ++j) {
    Vec w = b.column(j);
    for (int a = 0; a < m.phi.rows(); ++a) {
      Scalar acc;
      for (int i = 0; i < m.phi.cols(); ++i) acc = acc + m.phi(a, i) * w[i];
      if (!acc.is_zero()) return false;
    }
  }
  return true;
}

bool check_mutual_bracket(const LieAlgebra& g, const Subspace& s, const Subspace& r) {
  (void)g;
  Subspace br = bracket_span(s, r);
  return subspace_intersect(s, r).contains(br);
}

bool check_transitivity_analogue(const LieAlgebra& g, const Subspace& l, const Subspace& r2) {
  return subspace_sum(l, r2).dim() == g.dim();
}

std::optional<Modification> random_modification(const LieAlgebra& s, const InnerProduct& ip,
                                                std::uint64_t seed) {
  if (!is_completely_solvable(s))
    throw math_error("NotCompletelySolvable",
                     "modifications are applied to completely solvable bases");
  int n = s.dim();
  std::vector<Matrix> od = orthogonal_derivations(s, ip);
  if (od.empty()) {
    // Only phi = 0 exists; return the trivial modification.
    return apply_modification(s, ip, {}, Matrix(0, n));
  }
  Prng rng(seed * 0x9e3779b97f4a7c15ULL + 0xc0ffee);
  const Rational scales[2] = {Rational(1), Rational(1, 2)};
  for (int attempt = 0; attempt < 500; ++attempt) {
    // Abelian torus candidate from small combinations of the basis.
    int want = (od.size() >= 2 && rng.chance(1, 3)) ? 2 : 1;
    std::vector<Matrix> torus;
    for (int pick = 0; pick < want; ++pick) {
      Matrix cand(n, n);
      bool nonzero = false;
      for (const auto& d : od) {
        long c = rng.range(-1, 1);
        if (c != 0) {
          cand = cand + d * Scalar(Rational(c));
          nonzero = true;
        }
      }
      if (!nonzero) continue;
      bool ok = true;
      for (const auto& t : torus)
        if (!(t * cand == cand * t)) ok = false;
      // Keep the family independent.
      if (ok && !torus.empty()) {
        std::vector<Vec> flats;
        for (const auto& t : torus) {
          Vec v(n * n);
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v[i * n + j] = t(i, j);
          flats.push_back(v);
        }
        Vec v(n * n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) v[i * n + j] = cand(i, j);
        if (solve(Matrix::from_columns(flats), v).has_value()) ok = false;
      }
      if (ok) torus.push_back(cand);
    }
    if (torus.empty()) continue;
    int m = static_cast<int>(torus.size());
    Matrix phi(m, n);
    for (int a = 0; a < m; ++a)
      for (int j = 0; j < n; ++j) {
        if (rng.chance(1, 2)) continue;  // keep phi sparse
        long c = rng.range(-2, 2);
        if (c == 0) continue;
        phi(a, j) = Scalar(Rational(c) * scales[rng.below(2)]);
      }
    auto r = try_apply_modification(s, ip, torus, phi);
    if (auto* mod = std::get_if<Modification>(&r)) return std::move(*mod);
  }
  return std::nullopt;
}

} // namespace solvshadow
