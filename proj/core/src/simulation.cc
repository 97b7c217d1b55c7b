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

#include "dpimpute/simulation.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "absl/strings/str_cat.h"
#include "dpimpute/dataset_io.h"
#include "dpimpute/privacy_budget.h"

namespace dpimpute {
namespace {

struct RunOutcome {
  std::vector<RunRecord> records;
  std::vector<RunFailure> failures;
};

RunOutcome ExecuteRun(const SimConfig& cfg, const PrivacyBudget& budget,
                      int64_t run) {
  RunOutcome out;
  const uint64_t run_seed = RunSeed(cfg.seed, run);
  RandomSource data_rng = RandomSource::ForStream(run_seed, 0);
  const Dataset population = GeneratePopulation(cfg, data_rng);
  absl::StatusOr<Dataset> observed = InjectMissingness(population, data_rng);
  const StrategyOptions options{.intercept = cfg.intercept,
                                .stochastic = cfg.stochastic,
                                .coefficient_bound = cfg.coefficient_bound};
  for (Strategy s : cfg.strategies) {
    RandomSource rng = RandomSource::ForStream(run_seed, StrategyStream(s));
    absl::StatusOr<QueryResult> r = RunStrategy(s, *observed, budget, rng, options);
    if (!r.ok()) {
      out.failures.push_back({run, s, std::string(r.status().ToString())});
      continue;
    }
    out.records.push_back({.run = run,
                           .strategy = s,
                           .value = r->value,
                           .n_mis = r->n_mis_at_query,
                           .epsilon_spent = r->epsilon_spent_total,
                           .sensitivity_used = r->sensitivity_used,
                           .noise_scale = r->noise_scale,
                           .unreleased_statistic = r->unreleased_statistic,
                           .ledger = r->ledger});
  }
  return out;
}

}  // namespace

absl::Status SimConfig::Validate() const {
  if (n < 1) return absl::InvalidArgumentError("n must be positive");
  if (d < 1) return absl::InvalidArgumentError("d must be positive");
  if (static_cast<int>(beta.size()) != d) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta has ", beta.size(), " entries, d = ", d));
  }
  for (double b : beta) {
    if (!std::isfinite(b)) return absl::InvalidArgumentError("beta not finite");
  }
  if (!(sigma2 >= 0) || !std::isfinite(sigma2)) {
    return absl::InvalidArgumentError("sigma2 must be nonnegative");
  }
  if (runs < 1) return absl::InvalidArgumentError("runs must be positive");
  if (strategies.empty()) {
    return absl::InvalidArgumentError("at least one strategy is required");
  }
  if (!(coefficient_bound > 0)) {
    return absl::InvalidArgumentError("coefficient_bound must be positive");
  }
  if (stochastic &&
      std::find(strategies.begin(), strategies.end(),
                Strategy::kDpImputeThenQuery) != strategies.end()) {
    return absl::InvalidArgumentError(
        "stochastic imputation is not available with dp_impute_then_query");
  }
  absl::StatusOr<PrivacyBudget> budget = PrivacyBudget::Create(epsilon, split);
  return budget.status();
}

double SimConfig::true_mean() const {
  double sum = 0.0;
  for (double b : beta) sum += b;
  return 0.5 * sum;
}

Dataset GeneratePopulation(const SimConfig& cfg, RandomSource& rng) {
  const double sigma = std::sqrt(cfg.sigma2);
  Eigen::MatrixXd x(cfg.n, cfg.d);
  Eigen::VectorXd y(cfg.n);
  for (int64_t i = 0; i < cfg.n; ++i) {
    double mean = 0.0;
    for (int j = 0; j < cfg.d; ++j) {
      x(i, j) = rng.Uniform();
      mean += cfg.beta[j] * x(i, j);
    }
    y[i] = std::clamp(mean + sigma * rng.StandardNormal(), 0.0, 1.0);
  }
  return *Dataset::CreateComplete(std::move(x), std::move(y),
                                  Universe::UnitCube(cfg.d));
}

absl::StatusOr<Dataset> InjectMissingness(const Dataset& d, RandomSource& rng) {
  if (CountMissing(d) != 0) {
    return absl::FailedPreconditionError(
        "missingness must be injected into a complete dataset");
  }
  if (d.dimension() < 1) {
    return absl::FailedPreconditionError("missingness needs a covariate");
  }
  std::vector<bool> mask(static_cast<size_t>(d.size()));
  for (int64_t i = 0; i < d.size(); ++i) {
    mask[i] = rng.Uniform() < d.covariates()(i, 0);
  }
  Eigen::VectorXd y = d.response();
  for (int64_t i = 0; i < d.size(); ++i) {
    if (mask[i]) y[i] = std::numeric_limits<double>::quiet_NaN();
  }
  return Dataset::Create(d.covariates(), std::move(y), std::move(mask),
                         d.universe());
}

uint64_t RunSeed(uint64_t master_seed, int64_t run) {
  return MixSeed(master_seed, static_cast<uint64_t>(run));
}

uint64_t StrategyStream(Strategy s) {
  return 1 + static_cast<uint64_t>(s);
}

absl::StatusOr<SimResult> MonteCarlo(const SimConfig& cfg, int workers) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  const PrivacyBudget budget = *PrivacyBudget::Create(cfg.epsilon, cfg.split);
  if (workers <= 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<int>(std::min<int64_t>(workers, cfg.runs));

  std::vector<RunOutcome> outcomes(static_cast<size_t>(cfg.runs));
  std::atomic<int64_t> next{0};
  auto work = [&]() {
    for (int64_t k = next.fetch_add(1); k < cfg.runs; k = next.fetch_add(1)) {
      outcomes[k] = ExecuteRun(cfg, budget, k + 1);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  SimResult result;
  for (RunOutcome& o : outcomes) {
    for (RunRecord& r : o.records) result.records.push_back(std::move(r));
    for (RunFailure& f : o.failures) result.failures.push_back(std::move(f));
  }
  result.summary.true_mean = cfg.true_mean();
  for (Strategy s : cfg.strategies) {
    StrategySummary ss;
    ss.strategy = s;
    ss.failures = std::count_if(
        result.failures.begin(), result.failures.end(),
        [s](const RunFailure& f) { return f.strategy == s; });
    const std::vector<double> values = StrategyValues(result, s);
    if (!values.empty()) {
      ss.stats = *Summarize(values);
      ss.bias = ss.stats->mean - result.summary.true_mean;
    }
    result.summary.strategies.push_back(std::move(ss));
  }
  return result;
}

std::vector<double> StrategyValues(const SimResult& result, Strategy s) {
  std::vector<double> values;
  for (const RunRecord& r : result.records) {
    if (r.strategy == s) values.push_back(r.value);
  }
  return values;
}

std::string RunsCsv(const SimResult& result) {
  std::string out = "run,strategy,value,n_mis,epsilon_spent,sensitivity_used\n";
  for (const RunRecord& r : result.records) {
    absl::StrAppend(&out, r.run, ",", StrategyName(r.strategy), ",",
                    FormatDouble(r.value), ",", r.n_mis, ",",
                    FormatDouble(r.epsilon_spent), ",",
                    FormatDouble(r.sensitivity_used), "\n");
  }
  return out;
}

std::string SummaryCsv(const SimSummary& summary) {
  std::string out = "strategy,count,mean,bias,variance,min,q1,median,q3,max\n";
  for (const StrategySummary& s : summary.strategies) {
    absl::StrAppend(&out, StrategyName(s.strategy), ",");
    if (!s.stats.has_value()) {
      out += "0,,,,,,,,\n";
      continue;
    }
    const FiveNumberSummary& f = *s.stats;
    absl::StrAppend(&out, f.count, ",", FormatDouble(f.mean), ",",
                    FormatDouble(s.bias), ",", FormatDouble(f.variance), ",",
                    FormatDouble(f.min), ",", FormatDouble(f.q1), ",",
                    FormatDouble(f.median), ",", FormatDouble(f.q3), ",",
                    FormatDouble(f.max), "\n");
  }
  return out;
}

}  // namespace dpimpute
