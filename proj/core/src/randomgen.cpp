#include "solvshadow/randomgen.hpp"

#include "solvshadow/errors.hpp"
#include "solvshadow/prng.hpp"
#include "solvshadow/zfactor.hpp"

namespace solvshadow {

namespace {

LieAlgebra abelian(int n) { return LieAlgebra::create(n, {}, {}); }

/// Block-built derivation on an abelian base: rotation-scale 2x2 blocks and
/// diagonal entries, so the weights stay rational or quadratic.
Matrix block_derivation(Prng& rng, int n) {
  Matrix d(n, n);
  int i = 0;
  while (i < n) {
    if (i + 1 < n && rng.chance(2, 3)) {
      long a = rng.range(-2, 2);
      long b = rng.range(1, 2) * (rng.chance(1, 2) ? 1 : -1);
      d(i, i) = Scalar(Rational(a));
      d(i + 1, i + 1) = Scalar(Rational(a));
      d(i, i + 1) = Scalar(Rational(-b));
      d(i + 1, i) = Scalar(Rational(b));
      i += 2;
    } else {
      d(i, i) = Scalar(Rational(rng.range(-2, 2)));
      i += 1;
    }
  }
  return d;
}

/// Random nilpotent algebra as the bracket closure of strictly upper
/// triangular matrices; returns its structure constants, or the abelian
/// algebra when the closure is trivial.
LieAlgebra nilpotent_span(Prng& rng, int target_dim) {
  int size = 4;
  std::vector<Matrix> gens;
  for (int t = 0; t < 2; ++t) {
    Matrix m(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j) m(i, j) = Scalar(Rational(rng.range(-1, 1)));
    gens.push_back(m);
  }
  // Span closure.
  std::vector<Matrix> basis;
  auto flat = [&](const Matrix& m) {
    Vec v(size * size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) v[i * size + j] = m(i, j);
    return v;
  };
  auto in_span = [&](const Matrix& m) {
    if (m.is_zero()) return true;
    if (basis.empty()) return false;
    std::vector<Vec> cols;
    for (const auto& b : basis) cols.push_back(flat(b));
    return solve(Matrix::from_columns(cols), flat(m)).has_value();
  };
  for (const auto& g : gens)
    if (!in_span(g)) basis.push_back(g);
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = 0; b < basis.size(); ++b) {
      if (a == b) continue;
      Matrix comm = basis[a] * basis[b] - basis[b] * basis[a];
      if (!in_span(comm)) basis.push_back(comm);
    }
  int k = static_cast<int>(basis.size());
  if (k == 0 || k > target_dim) return abelian(std::min(3, target_dim));
  // Structure constants in this basis.
  std::vector<Vec> cols;
  for (const auto& b : basis) cols.push_back(flat(b));
  Matrix span = Matrix::from_columns(cols);
  std::vector<std::tuple<int, int, Vec>> brackets;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      Matrix comm = basis[a] * basis[b] - basis[b] * basis[a];
      Vec coords(k);
      if (!comm.is_zero()) {
        auto x = solve(span, flat(comm));
        check_internal(x.has_value(), "closure failed to close");
        coords = *x;
      }
      brackets.push_back({a, b, coords});
    }
  return LieAlgebra::create(k, {}, brackets);
}

/// Random derivation of a (nilpotent) algebra: small combination of a
/// derivation-space basis.
std::optional<Matrix> random_derivation(Prng& rng, const LieAlgebra& g) {
  auto ders = derivations(g);
  if (ders.empty()) return std::nullopt;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Matrix d(g.dim(), g.dim());
    bool nonzero = false;
    for (const auto& b : ders) {
      long c = rng.range(-1, 1);
      if (c != 0) {
        d = d + b * Scalar(Rational(c));
        nonzero = true;
      }
    }
    if (nonzero) return d;
  }
  return std::nullopt;
}

} // namespace

Matrix random_unimodular_matrix(int n, std::uint64_t seed) {
  Prng rng(seed ^ 0xabcdef1234567890ULL);
  Matrix m = Matrix::identity(n);
  // Unit elementary operations only: keeps the scrambled structure constants
  // small, which keeps the downstream field towers affordable.
  int ops = n + 1 + static_cast<int>(rng.below(3));
  for (int t = 0; t < ops; ++t) {
    int i = static_cast<int>(rng.below(n));
    int j = static_cast<int>(rng.below(n));
    if (i == j) continue;
    long c = rng.chance(1, 2) ? 1 : -1;
    // Row operation row_i += c * row_j keeps the determinant.
    for (int k = 0; k < n; ++k) m(i, k) = m(i, k) + Scalar(Rational(c)) * m(j, k);
  }
  return m;
}

LieAlgebra random_basis_scramble(const LieAlgebra& g, std::uint64_t seed) {
  return change_basis(g, random_unimodular_matrix(g.dim(), seed));
}

namespace {

/// Keeps random instances inside the cheap-field design envelope: quartic
/// ad-factors must have a reducible resolvent cubic (Galois group inside D4,
/// splitting degree <= 8); quintic and larger irreducible factors are out.
bool tower_friendly(const LieAlgebra& g) {
  for (int i = 0; i < g.dim(); ++i) {
    QPoly mp = to_qpoly(min_poly(g.ad_basis(i)));
    for (const auto& [f, mult] : factor_rational(mp)) {
      if (f.degree() <= 2) continue;
      if (f.degree() == 3) continue;  // splitting degree at most 6
      if (f.degree() >= 5) return false;
      // Depress x^4 + a3 x^3 + a2 x^2 + a1 x + a0 and test the resolvent
      // cubic z^3 - p z^2 - 4 r z + (4 p r - q^2) for a rational root.
      Rational a3 = f[3], a2 = f[2], a1 = f[1], a0 = f[0];
      QPoly dep = f.shift(-a3 / 4);
      Rational p = dep[2], q = dep[1], r = dep[0];
      QPoly resolvent(std::vector<Rational>{4 * p * r - q * q, -4 * r, -p, Rational(1)});
      auto rf = factor_rational(resolvent);
      bool has_linear = false;
      for (const auto& [rg, rm] : rf)
        if (rg.degree() == 1) has_linear = true;
      if (!has_linear) return false;
    }
  }
  return true;
}

LieAlgebra random_solvable_candidate(std::uint64_t seed, int max_dim);

} // namespace

LieAlgebra random_solvable_algebra(std::uint64_t seed, int max_dim) {
  check_internal(max_dim >= 2, "random algebras need dimension >= 2");
  for (std::uint64_t attempt = 0; attempt < 24; ++attempt) {
    LieAlgebra g = random_solvable_candidate(seed + 0x9e3779b97f4a7c15ULL * attempt, max_dim);
    if (tower_friendly(g)) return g;
  }
  // Fall back to a guaranteed-friendly block construction.
  Prng rng(seed);
  auto sd = semidirect_sum(abelian(std::min(4, max_dim - 1)),
                           {block_derivation(rng, std::min(4, max_dim - 1))});
  return sd.algebra;
}

namespace {

LieAlgebra random_solvable_candidate(std::uint64_t seed, int max_dim) {
  Prng rng(seed * 0x2545f4914f6cdd1dULL + 1);
  int recipe = static_cast<int>(rng.below(8));
  LieAlgebra g;
  switch (recipe) {
    case 0:
    case 1: {
      // Abelian ideal + one block derivation (rational or quadratic weights).
      int na = std::min(max_dim - 1, 2 + static_cast<int>(rng.below(3)));
      auto sd = semidirect_sum(abelian(na), {block_derivation(rng, na)});
      g = sd.algebra;
      break;
    }
    case 2: {
      // Abelian ideal + two commuting derivations (block + a polynomial in it).
      int na = std::min(max_dim - 2, 2 + static_cast<int>(rng.below(2)));
      if (na < 2) na = 2;
      Matrix d1 = block_derivation(rng, na);
      Matrix d2 = d1 * d1 + d1 * Scalar(Rational(rng.range(-1, 1)));
      std::vector<Matrix> torus{d1};
      // Keep d2 only if independent.
      if (!d2.is_zero()) {
        bool dep = false;
        // d2 = c * d1?
        for (long c = -4; c <= 4 && !dep; ++c)
          if (d2 == d1 * Scalar(Rational(c))) dep = true;
        if (!dep && na + 2 <= max_dim) torus.push_back(d2);
      }
      g = semidirect_sum(abelian(na), torus).algebra;
      break;
    }
    case 3: {
      // Nilpotent matrix span, possibly extended by one of its derivations.
      LieAlgebra n = nilpotent_span(rng, max_dim - 1);
      auto d = random_derivation(rng, n);
      if (d && n.dim() + 1 <= max_dim)
        g = semidirect_sum(n, {*d}).algebra;
      else
        g = n;
      break;
    }
    case 4: {
      // Upper triangular span (completely solvable).
      int na = std::min(max_dim - 1, 3);
      Matrix d(na, na);
      for (int i = 0; i < na; ++i)
        for (int j = i; j < na; ++j) d(i, j) = Scalar(Rational(rng.range(-2, 2)));
      g = semidirect_sum(abelian(na), {d}).algebra;
      break;
    }
    case 5: {
      // Direct sum of two small pieces.
      LieAlgebra a = semidirect_sum(abelian(2), {block_derivation(rng, 2)}).algebra;
      int rest = max_dim - a.dim();
      if (rest >= 1)
        g = direct_sum(a, abelian(rest));
      else
        g = a;
      break;
    }
    case 6: {
      // Companion-matrix derivation with a deliberately tame splitting field:
      // cubics split in degree <= 6, biquadratics in degree <= 8.
      int na = std::min(max_dim - 1, 3 + static_cast<int>(rng.below(2)));
      Matrix d(na, na);
      for (int i = 1; i < na; ++i) d(i, i - 1) = Scalar(Rational(1));
      if (na <= 2) {
        // x^2 + p x + q.
        d(0, na - 1) = Scalar(Rational(-rng.range(-2, 2)));
        d(na - 1, na - 1) = Scalar(Rational(-rng.range(-2, 2)));
      } else if (na == 3) {
        d(0, 2) = Scalar(Rational(rng.range(-2, 2)));
        d(1, 2) = Scalar(Rational(rng.range(-2, 2)));
        d(2, 2) = Scalar(Rational(rng.range(-1, 1)));
      } else {
        // x^4 + p x^2 + q as the characteristic polynomial.
        d(0, 3) = Scalar(Rational(-rng.range(-3, 3)));
        d(2, 3) = Scalar(Rational(-rng.range(-3, 3)));
      }
      g = semidirect_sum(abelian(na), {d}).algebra;
      break;
    }
    default: {
      // Heisenberg-type base with a derivation.
      LieAlgebra h3 = LieAlgebra::create(
          3, {"X", "Y", "Z"},
          {{0, 1, Vec{Scalar(Rational(0)), Scalar(Rational(0)), Scalar(Rational(1))}}});
      auto d = random_derivation(rng, h3);
      if (d && 4 <= max_dim)
        g = semidirect_sum(h3, {*d}).algebra;
      else
        g = h3;
      break;
    }
  }
  check_internal(is_solvable(g), "random algebra is not solvable");
  // Scramble the basis half the time to avoid structured tensors.
  if (rng.chance(1, 2)) g = random_basis_scramble(g, rng.next());
  return g;
}

} // namespace

} // namespace solvshadow
