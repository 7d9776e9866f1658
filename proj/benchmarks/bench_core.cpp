#include <benchmark/benchmark.h>

#include "solvshadow/catalog.hpp"
#include "solvshadow/prng.hpp"
#include "solvshadow/randomgen.hpp"
#include "solvshadow/shadow.hpp"
#include "solvshadow/zfactor.hpp"

using namespace solvshadow;

namespace {

Matrix random_matrix(int n, std::uint64_t seed) {
  Prng rng(seed);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Scalar(Rational(rng.range(-3, 3)));
  return m;
}

void BM_KernelBasis(benchmark::State& state) {
  Matrix m = random_matrix(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m));
}
BENCHMARK(BM_KernelBasis)->Arg(4)->Arg(6)->Arg(8);

void BM_MinPoly(benchmark::State& state) {
  Matrix m = random_matrix(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(min_poly(m));
}
BENCHMARK(BM_MinPoly)->Arg(4)->Arg(6);

void BM_JordanChevalley(benchmark::State& state) {
  Matrix m = random_matrix(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(jordan_chevalley(m));
}
BENCHMARK(BM_JordanChevalley)->Arg(3)->Arg(5);

void BM_FactorRational(benchmark::State& state) {
  // Product of quadratics: a recombination-heavy shape.
  QPoly p = QPoly::constant(1);
  for (long k = 2; k <= 2 + state.range(0); ++k) {
    QPoly q(std::vector<Rational>{Rational(k), Rational(0), Rational(1)});
    p = p * q;
  }
  for (auto _ : state) benchmark::DoNotOptimize(factor_rational(p));
}
BENCHMARK(BM_FactorRational)->Arg(3)->Arg(6);

void BM_Triangularize(benchmark::State& state) {
  LieAlgebra g = make_blockdiag5();
  for (auto _ : state) {
    // Bypass the cache by scrambling the basis each round.
    LieAlgebra s = random_basis_scramble(g, state.iterations());
    benchmark::DoNotOptimize(triangularize(s));
  }
}
BENCHMARK(BM_Triangularize);

void BM_Shadow(benchmark::State& state) {
  LieAlgebra g = make_blockdiag5();
  for (auto _ : state) {
    LieAlgebra s = random_basis_scramble(g, state.iterations());
    benchmark::DoNotOptimize(shadow(s));
  }
}
BENCHMARK(BM_Shadow);

void BM_RandomSolvable(benchmark::State& state) {
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(random_solvable_algebra(seed++, 5));
}
BENCHMARK(BM_RandomSolvable);

} // namespace

BENCHMARK_MAIN();
