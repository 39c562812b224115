#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "guesswork/guessing.hpp"
#include "guesswork/leakage.hpp"
#include "guesswork/oracle.hpp"
#include "guesswork/strategy.hpp"

using namespace guesswork;

namespace {

Pmf random_pmf(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (double& v : p) sum += (v = g(gen) + 1e-6);
  for (double& v : p) v /= sum;
  return Pmf(p);
}

}  // namespace

static void BM_MinimalLoss(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Pmf p = random_pmf(n, 1);
  const GuessBudget k(n / 4 + 1);
  const Alpha a = Alpha::finite(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(minimal_loss(p, k, a).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MinimalLoss)->RangeMultiplier(8)->Range(8, 1 << 15)->Complexity();

static void BM_Oracle(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Pmf p = random_pmf(n, 2);
  const GuessBudget k(n / 3 + 1);
  const Alpha a = Alpha::finite(0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::minimize_expected_loss(p, k, a, 1e-10).value);
  }
}
BENCHMARK(BM_Oracle)->Arg(4)->Arg(12)->Arg(64);

static void BM_RealizeCoverage(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Pmf p = random_pmf(n, 3);
  const auto report = minimal_loss(p, GuessBudget(n / 2), Alpha::finite(0.7));
  for (auto _ : state) benchmark::DoNotOptimize(realize_coverage(report.coverage, p).size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RealizeCoverage)->RangeMultiplier(8)->Range(8, 1 << 15)->Complexity();

static void BM_LpFeasible(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> t(n, 2.0 / static_cast<double>(n));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::lp_feasible(t, GuessBudget(2)));
}
BENCHMARK(BM_LpFeasible)->Arg(4)->Arg(8)->Arg(12);

static void BM_Leakage(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const Pmf cols = random_pmf(8, 5);
  const JointPmf j = JointPmf::product(random_pmf(rows, 4), cols);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha_leakage(j, GuessBudget(2), Alpha::finite(3.0)).value);
  }
}
BENCHMARK(BM_Leakage)->Arg(16)->Arg(256);

BENCHMARK_MAIN();
