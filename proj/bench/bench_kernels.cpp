// Copyright 2026 The qflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference vs OpenMP path of the (t, tau) CPF sweep and of the
// trace-distance bound sweep.

#include <benchmark/benchmark.h>

#include "qflow/kernels.hpp"
#include "qflow/presets.hpp"
#include "qflow/random_models.hpp"

namespace {

using qflow::Execution;

std::vector<double> axis(int n) {
  std::vector<double> t;
  for (int i = 1; i <= n; ++i) t.push_back(0.1 * i);
  return t;
}

void BM_CpfGridDepolarizing(benchmark::State& state) {
  const auto exec = static_cast<Execution>(state.range(0));
  const auto ts = axis(static_cast<int>(state.range(1)));
  qflow::Dynamics dyn(qflow::presets::depolarizing(1.0, 1.0));
  const auto req = qflow::presets::reference_cpf(dyn.model(), qflow::Scheme::Deterministic);
  for (auto _ : state) {
    auto g = qflow::cpf_grid(dyn, req, ts, ts, exec);
    benchmark::DoNotOptimize(g.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ts.size() * ts.size()));
}

void BM_CpfGridCoherent(benchmark::State& state) {
  const auto exec = static_cast<Execution>(state.range(0));
  const auto ts = axis(static_cast<int>(state.range(1)));
  qflow::Dynamics dyn(qflow::presets::coherent(1.0, 1.0, 5.0));
  const auto req = qflow::presets::reference_cpf(dyn.model(), qflow::Scheme::Deterministic);
  for (auto _ : state) {
    auto g = qflow::cpf_grid(dyn, req, ts, ts, exec);
    benchmark::DoNotOptimize(g.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(ts.size() * ts.size()));
}

void BM_BoundSweepRandomUnitary(benchmark::State& state) {
  const auto exec = static_cast<Execution>(state.range(0));
  qflow::RandomSource rng(42);
  std::vector<qflow::BipartiteModel> models;
  for (int k = 0; k < 32; ++k) models.emplace_back(qflow::random_unitary_model(2, 2, rng));
  const qflow::Matrix rho = qflow::DensityMatrix::basis_state(2, 0).matrix();
  const qflow::Matrix sigma = qflow::presets::plus_state();
  std::vector<double> slack(models.size());
  for (auto _ : state) {
    qflow::for_each_index(
        models.size(),
        [&](std::size_t k) {
          qflow::Dynamics dyn(models[k]);
          slack[k] = qflow::td_bound_terms(dyn, rho, sigma, models[k].initial_environment().matrix(), 1.0, 1.0)
                         .slack;
        },
        exec);
    benchmark::DoNotOptimize(slack.data());
  }
}

}  // namespace

BENCHMARK(BM_CpfGridDepolarizing)
    ->ArgsProduct({{static_cast<long>(Execution::Serial), static_cast<long>(Execution::Parallel)}, {10, 30}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CpfGridCoherent)
    ->ArgsProduct({{static_cast<long>(Execution::Serial), static_cast<long>(Execution::Parallel)}, {10}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundSweepRandomUnitary)
    ->Arg(static_cast<long>(Execution::Serial))
    ->Arg(static_cast<long>(Execution::Parallel))
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
