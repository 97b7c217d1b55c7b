// Copyright 2026 The dpimpute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>

#include "benchmark/benchmark.h"
#include "dpimpute/dataset.h"
#include "dpimpute/functional_mechanism.h"
#include "dpimpute/imputation.h"
#include "dpimpute/random.h"
#include "dpimpute/sensitivity_oracle.h"
#include "dpimpute/simulation.h"

namespace dpimpute {
namespace {

Dataset Population(int64_t n) {
  SimConfig cfg;
  cfg.n = n;
  RandomSource rng(7);
  Dataset d = GeneratePopulation(cfg, rng);
  return InjectMissingness(d, rng).value();
}

void BM_FunctionalMechanism(benchmark::State& state) {
  const Dataset d = Population(state.range(0)).CompleteCases();
  const Universe u = Universe::UnitCube(2);
  FunctionalMechanismOptions options;
  options.intercept = true;
  RandomSource rng(11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(FunctionalMechanismOls(
        d.covariates(), d.response(), u, 0.5, rng, options));
  }
  state.SetItemsProcessed(state.iterations() * d.size());
}
BENCHMARK(BM_FunctionalMechanism)->Arg(1'000)->Arg(10'000)->Arg(100'000);

void BM_FitAndImpute(benchmark::State& state) {
  const Dataset d = Population(state.range(0));
  ImputationFitOptions options;
  options.dp_epsilon = 0.5;
  options.intercept = true;
  RandomSource rng(13);
  for (auto _ : state) {
    ImputationModel model = FitImputationModel(d, options, rng).value();
    benchmark::DoNotOptimize(Impute(d, model, rng));
  }
  state.SetItemsProcessed(state.iterations() * d.size());
}
BENCHMARK(BM_FitAndImpute)->Arg(10'000)->Arg(100'000);

void BM_MonteCarlo(benchmark::State& state) {
  SimConfig cfg;
  cfg.runs = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(MonteCarlo(cfg, 1));
  }
  state.SetItemsProcessed(state.iterations() * cfg.runs);
}
BENCHMARK(BM_MonteCarlo)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SensitivityOracle(benchmark::State& state) {
  OracleSpec spec{.grid = {0.0, 0.5, 1.0}, .n = static_cast<int>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        BruteForceImputedSensitivity(spec, MeanImputer(), MeanResponseQuery()));
  }
}
BENCHMARK(BM_SensitivityOracle)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dpimpute

BENCHMARK_MAIN();
