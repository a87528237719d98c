#include <benchmark/benchmark.h>

#include <variant>

#include "lpsparse/generator.hpp"
#include "lpsparse/quantum.hpp"
#include "lpsparse/simplex.hpp"
#include "lpsparse/violation.hpp"

using namespace lpsparse;

namespace {

LpInstance feasible(std::size_t n, std::size_t d) {
  return std::get<LpInstance>(generate_instance(InstanceKind::FeasibleNondegenerate, n, d, 1));
}

void BM_SimplexSolve(benchmark::State& state) {
  const auto inst = feasible(static_cast<std::size_t>(state.range(0)),
                             static_cast<std::size_t>(state.range(1)));
  SubLp all{&inst, {}};
  for (std::size_t i = 0; i < inst.n(); ++i) all.rows.push_back(i);
  for (auto _ : state) benchmark::DoNotOptimize(simplex_solve(all));
}
BENCHMARK(BM_SimplexSolve)->Args({50, 2})->Args({200, 3})->Args({1000, 4});

void BM_ViolationVector(benchmark::State& state) {
  const auto inst = feasible(static_cast<std::size_t>(state.range(0)), 3);
  const std::vector<double> x(3, 0.5);
  QueryLedger ledger;
  for (auto _ : state) benchmark::DoNotOptimize(violation_vector(inst, x, 0.0, ledger));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ViolationVector)->Arg(1'000)->Arg(100'000);

void BM_QSubsetSample(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::vector<double> q(n, 20.0 / static_cast<double>(n));
  const QueryCostModel model;
  QueryLedger ledger;
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(q_subset_sample(q, model, ledger, rng));
}
BENCHMARK(BM_QSubsetSample)->Arg(1'000)->Arg(100'000);

void BM_QuantumSampling(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<std::uint32_t> counts(n);
  Rng fill(4);
  for (auto& c : counts) c = static_cast<std::uint32_t>(fill.below(8));
  const auto w = WeightOracle::from_counts(counts, 1);
  const QueryCostModel model;
  QueryLedger ledger;
  Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantum_sampling(w, 24.0, w.log2_norm(), failure_probability(n), model, ledger, rng));
  }
}
BENCHMARK(BM_QuantumSampling)->Arg(1'000)->Arg(100'000);

}  // namespace

BENCHMARK_MAIN();
