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

#ifndef DPIMPUTE_SIMULATION_H_
#define DPIMPUTE_SIMULATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpimpute/dataset.h"
#include "dpimpute/random.h"
#include "dpimpute/strategies.h"
#include "dpimpute/summary.h"

namespace dpimpute {

// Monte Carlo design. Defaults reproduce the reference experiment: n = 10000
// records, X ~ U(0,1)^2, Y = X'(0.5, 0.5) + N(0, 0.1) clipped to [0, 1],
// Pr(Y missing) = X_1, epsilon = 1 split equally, 500 runs.
struct SimConfig {
  int64_t n = 10'000;
  int d = 2;
  std::vector<double> beta = {0.5, 0.5};
  double sigma2 = 0.1;
  double epsilon = 1.0;
  double split = 0.5;
  int64_t runs = 500;
  uint64_t seed = 20230101;
  std::vector<Strategy> strategies = {std::begin(kAllStrategies),
                                      std::end(kAllStrategies)};
  // Imputation model options.
  bool intercept = true;
  bool stochastic = false;
  double coefficient_bound = 10.0;

  absl::Status Validate() const;
  // E[X'beta] = 0.5 * sum(beta); 0.5 with the defaults.
  double true_mean() const;
};

// X entries i.i.d. U(0,1) and Y = clip(X'beta + tau, 0, 1), tau ~
// N(0, sigma2). Per record the draws are x_1..x_d, then tau. Empty mask.
Dataset GeneratePopulation(const SimConfig& cfg, RandomSource& rng);

// Masks y_i with probability x_i1, one uniform draw per record in order.
// FailedPrecondition if the input already has missing entries.
absl::StatusOr<Dataset> InjectMissingness(const Dataset& d, RandomSource& rng);

// Seed of run r: MixSeed(cfg.seed, r). Within a run, data generation and
// missingness use stream 0 and strategy s uses stream 1 + index(s), so every
// strategy sees the same dataset and its noise does not depend on which
// other strategies are configured.
uint64_t RunSeed(uint64_t master_seed, int64_t run);
uint64_t StrategyStream(Strategy s);

struct RunRecord {
  int64_t run = 0;
  Strategy strategy = Strategy::kAvailableCase;
  double value = 0.0;
  int64_t n_mis = 0;
  double epsilon_spent = 0.0;
  double sensitivity_used = 0.0;
  double noise_scale = 0.0;
  // Not written to runs.csv.
  double unreleased_statistic = 0.0;
  std::vector<LedgerEntry> ledger;
};

struct RunFailure {
  int64_t run = 0;
  Strategy strategy = Strategy::kAvailableCase;
  std::string message;
};

struct StrategySummary {
  Strategy strategy = Strategy::kAvailableCase;
  int64_t failures = 0;
  // Absent when every run failed.
  std::optional<FiveNumberSummary> stats;
  double bias = 0.0;
};

struct SimSummary {
  std::vector<StrategySummary> strategies;
  double true_mean = 0.5;
};

struct SimResult {
  // Ordered by run, then by the configured strategy order.
  std::vector<RunRecord> records;
  std::vector<RunFailure> failures;
  SimSummary summary;
};

// The result is identical for every worker count. workers <= 0 means
// std::thread::hardware_concurrency(). Per-run failures are recorded and
// excluded from the summaries; only an invalid config is an error.
absl::StatusOr<SimResult> MonteCarlo(const SimConfig& cfg, int workers = 1);

// Values of one strategy, in run order.
std::vector<double> StrategyValues(const SimResult& result, Strategy s);

// runs.csv: run,strategy,value,n_mis,epsilon_spent,sensitivity_used
// summary.csv: strategy,count,mean,bias,variance,min,q1,median,q3,max
// LF line endings, doubles in shortest round-trip form. A strategy with no
// successful runs has count 0 and empty statistic fields.
std::string RunsCsv(const SimResult& result);
std::string SummaryCsv(const SimSummary& summary);

}  // namespace dpimpute

#endif  // DPIMPUTE_SIMULATION_H_
