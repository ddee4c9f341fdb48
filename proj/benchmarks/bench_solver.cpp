// Copyright (c) The multipolyeig Authors.
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "multipolyeig/dixon.hpp"
#include "multipolyeig/oracle.hpp"
#include "multipolyeig/pep.hpp"
#include "multipolyeig/solver.hpp"
#include "systems.hpp"

namespace mpe = multipolyeig;
using namespace multipolyeig::testing;

namespace {

// Square random system with every degree bound equal to tau and matrices of size n.
mpe::Pmep bench_system(int d, int tau, int n) {
  std::mt19937_64 rng(1000 + 100 * d + 10 * tau + n);
  return random_pmep(std::vector<int>(d, n), std::vector<int>(d, tau), rng);
}

void BM_BuildResultant(benchmark::State& state) {
  const mpe::Pmep p = bench_system(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)),
                                   static_cast<int>(state.range(2)));
  mpe::ResultantOptions opts;
  opts.parallel = false;
  int size = 0;
  for (auto _ : state) {
    const mpe::ResultantPoly r = mpe::build_resultant(p, opts);
    size = r.size();
    benchmark::DoNotOptimize(r.coeffs().data());
  }
  state.counters["size"] = size;
}
BENCHMARK(BM_BuildResultant)
    ->Args({2, 2, 1})
    ->Args({2, 2, 2})
    ->Args({2, 4, 2})
    ->Args({3, 1, 2})
    ->Args({3, 2, 2})
    ->Unit(benchmark::kMillisecond);

void BM_SolvePep(benchmark::State& state) {
  const mpe::Pmep p = bench_system(2, static_cast<int>(state.range(0)), 2);
  const mpe::ResultantPoly r = mpe::build_resultant(p);
  for (auto _ : state) benchmark::DoNotOptimize(mpe::solve_pep(r).finite.size());
}
BENCHMARK(BM_SolvePep)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SolveWorkedExample(benchmark::State& state) {
  const mpe::Pmep p = example13();
  mpe::SolverConfig cfg;
  cfg.parallel = false;
  for (auto _ : state) benchmark::DoNotOptimize(mpe::solve(p, cfg).solutions.size());
}
BENCHMARK(BM_SolveWorkedExample)->Unit(benchmark::kMicrosecond);

void BM_SolveRandom(benchmark::State& state) {
  const mpe::Pmep p = bench_system(static_cast<int>(state.range(0)),
                                   static_cast<int>(state.range(1)), 2);
  mpe::SolverConfig cfg;
  cfg.parallel = false;
  cfg.rotate = state.range(2) != 0;
  std::size_t found = 0;
  for (auto _ : state) found = mpe::solve(p, cfg).solutions.size();
  state.counters["solutions"] = static_cast<double>(found);
}
BENCHMARK(BM_SolveRandom)
    ->Args({2, 2, 0})
    ->Args({2, 2, 1})
    ->Args({2, 3, 0})
    ->Args({3, 1, 0})
    ->Unit(benchmark::kMillisecond);

void BM_NewtonOracle(benchmark::State& state) {
  const mpe::Pmep p = bench_system(2, 2, 2);
  mpe::OracleConfig cfg;
  cfg.starts = static_cast<int>(state.range(0));
  cfg.parallel = false;
  for (auto _ : state) benchmark::DoNotOptimize(mpe::newton_oracle(p, cfg).solutions.size());
}
BENCHMARK(BM_NewtonOracle)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
