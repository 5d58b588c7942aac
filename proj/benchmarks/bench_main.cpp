#include <benchmark/benchmark.h>

#include "pqcat/analytic.hpp"
#include "pqcat/catalan.hpp"
#include "pqcat/digits.hpp"
#include "pqcat/exceptions.hpp"
#include "pqcat/modular.hpp"
#include "pqcat/sieve.hpp"
#include "pqcat/squarefree.hpp"

using namespace pqcat;

static void BM_GranvilleSmall(benchmark::State& state) {
  const GranvilleEngine engine(PrimePower(3, 2));
  unsigned long m = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine.binom(m, m / 3));
    m = m * 7 % 1000003 + 1000;
  }
}
BENCHMARK(BM_GranvilleSmall);

static void BM_GranvilleHuge(benchmark::State& state) {
  const PrimePower pp(2, 2);
  const GranvilleEngine engine(pp);
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), 2, static_cast<unsigned long>(state.range(0)));
  n = (n - 1) / 3;
  const BigInt m = pp.modulus() * n + 1;
  for (auto _ : state) benchmark::DoNotOptimize(engine.binom(m, n));
}
BENCHMARK(BM_GranvilleHuge)->Arg(64)->Arg(512)->Arg(1518);

static void BM_CatalanValuation(benchmark::State& state) {
  const PrimePower pp(3, 2);
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), 3, static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(catalan_valuation(pp, n));
}
BENCHMARK(BM_CatalanValuation)->Arg(100)->Arg(956);

static void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) {
    PrimeTable table(static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(table.primes().size());
  }
}
BENCHMARK(BM_Sieve)->Arg(1 << 16)->Arg(1 << 22);

static void BM_SquarefreeBinom(benchmark::State& state) {
  const SquarefreeTester tester(1'000'000'000);
  std::uint64_t n = 45;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tester.is_squarefree_binom(4 * n + 1, n));
    n = n * 3 % 200'000'000 + 1;
  }
}
BENCHMARK(BM_SquarefreeBinom);

static void BM_ScanFiltered(benchmark::State& state) {
  const PrimePower pp(2, 2);
  const BigInt bound = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_candidates(pp, bound).squarefree_hits.size());
}
BENCHMARK(BM_ScanFiltered)->Arg(10'000)->Arg(10'000'000);

static void BM_ScanExhaustive(benchmark::State& state) {
  const PrimePower pp(2, 2);
  ScanOptions opts;
  opts.exhaustive = true;
  opts.jobs = static_cast<unsigned>(state.range(1));
  const BigInt bound = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_candidates(pp, bound, opts).squarefree_hits.size());
}
BENCHMARK(BM_ScanExhaustive)->Args({10'000, 1})->Args({10'000, 2});

static void BM_EnumerateQgeq3(benchmark::State& state) {
  const PrimePower pp(3, 3);
  BigInt bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 10, static_cast<unsigned long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_qgeq3(pp, bound).size());
}
BENCHMARK(BM_EnumerateQgeq3)->Arg(4)->Arg(8);

static void BM_InequalitySides(benchmark::State& state) {
  InequalityInstance inst{PrimePower(2, 2)};
  inst.precision = static_cast<unsigned>(state.range(0));
  BigInt n;
  mpz_ui_pow_ui(n.get_mpz_t(), 2, 1518);
  for (auto _ : state) benchmark::DoNotOptimize(inequality_sides(inst, n).verdict);
}
BENCHMARK(BM_InequalitySides)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
