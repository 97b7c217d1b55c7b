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

#include "dpimpute/strategies.h"

#include "absl/strings/str_cat.h"
#include "dpimpute/imputation.h"
#include "dpimpute/laplace.h"
#include "dpimpute/sensitivity.h"

namespace dpimpute {
namespace {

absl::StatusOr<QueryResult> Release(Strategy strategy, double statistic,
                                    double sensitivity, double epsilon,
                                    int64_t n_mis, BudgetLedger ledger,
                                    RandomSource& rng) {
  if (absl::Status s = ledger.Spend("analysis", epsilon); !s.ok()) return s;
  absl::StatusOr<double> value =
      LaplaceMechanism(statistic, sensitivity, epsilon, rng);
  if (!value.ok()) return value.status();
  QueryResult r;
  r.value = *value;
  r.sensitivity_used = sensitivity;
  r.noise_scale = sensitivity / epsilon;
  r.epsilon_spent_total = ledger.spent();
  r.strategy = strategy;
  r.n_mis_at_query = n_mis;
  r.ledger = ledger.entries();
  r.unreleased_statistic = statistic;
  return r;
}

}  // namespace

absl::string_view StrategyName(Strategy s) {
  switch (s) {
    case Strategy::kAvailableCase:
      return "available_case";
    case Strategy::kImputeThenQuery:
      return "impute_then_query";
    case Strategy::kDpImputeThenQuery:
      return "dp_impute_then_query";
  }
  return "unknown";
}

absl::StatusOr<Strategy> ParseStrategy(absl::string_view name) {
  if (name == "available_case" || name == "available-case") {
    return Strategy::kAvailableCase;
  }
  if (name == "impute_then_query" || name == "impute") {
    return Strategy::kImputeThenQuery;
  }
  if (name == "dp_impute_then_query" || name == "dp-impute") {
    return Strategy::kDpImputeThenQuery;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown strategy '", name,
                                                 "'"));
}

double MeanQuery::Evaluate(const Dataset& complete) const {
  return complete.response().mean();
}

absl::StatusOr<double> MeanQuery::Sensitivity(const Universe& universe,
                                              int64_t n) const {
  return MeanGlobalSensitivity(universe, n);
}

const BoundedQuery& DefaultMeanQuery() {
  static const MeanQuery* const kQuery = new MeanQuery();
  return *kQuery;
}

absl::StatusOr<QueryResult> RunAvailableCase(const Dataset& d, double epsilon,
                                             RandomSource& rng,
                                             const BoundedQuery& query) {
  const Dataset complete = d.CompleteCases();
  if (complete.size() == 0) {
    return absl::FailedPreconditionError(
        "available-case analysis needs at least one observed response");
  }
  absl::StatusOr<double> sensitivity =
      query.Sensitivity(d.universe(), complete.size());
  if (!sensitivity.ok()) return sensitivity.status();
  return Release(Strategy::kAvailableCase, query.Evaluate(complete),
                 *sensitivity, epsilon, CountMissing(d), BudgetLedger(epsilon),
                 rng);
}

absl::StatusOr<QueryResult> RunImputeThenQuery(const Dataset& d,
                                               double epsilon,
                                               RandomSource& rng,
                                               const StrategyOptions& options,
                                               const BoundedQuery& query) {
  absl::StatusOr<ImputationModel> model = FitImputationModel(
      d,
      {.dp_epsilon = std::nullopt,
       .intercept = options.intercept,
       .stochastic = options.stochastic,
       .coefficient_bound = options.coefficient_bound},
      rng);
  if (!model.ok()) return model.status();
  absl::StatusOr<Dataset> completed = Impute(d, *model, rng);
  if (!completed.ok()) return completed.status();

  const int64_t n_mis = CountMissing(d);
  absl::StatusOr<double> base = query.Sensitivity(d.universe(), d.size());
  if (!base.ok()) return base.status();
  const SensitivityReport report = InflatedSensitivity(*base, n_mis);
  return Release(Strategy::kImputeThenQuery, query.Evaluate(*completed),
                 report.inflated_sensitivity, epsilon, n_mis,
                 BudgetLedger(epsilon), rng);
}

absl::StatusOr<QueryResult> RunDpImputeThenQuery(const Dataset& d,
                                                 const PrivacyBudget& budget,
                                                 RandomSource& rng,
                                                 const StrategyOptions& options,
                                                 const BoundedQuery& query) {
  if (!(budget.epsilon_imputation() > 0)) {
    return absl::InvalidArgumentError(
        "DP imputation needs a positive imputation budget");
  }
  BudgetLedger ledger(budget.epsilon_total());
  if (absl::Status s = ledger.Spend("imputation", budget.epsilon_imputation());
      !s.ok()) {
    return s;
  }
  absl::StatusOr<ImputationModel> model = FitImputationModel(
      d,
      {.dp_epsilon = budget.epsilon_imputation(),
       .intercept = options.intercept,
       .stochastic = false,
       .coefficient_bound = options.coefficient_bound},
      rng);
  if (!model.ok()) return model.status();
  absl::StatusOr<Dataset> completed = Impute(d, *model, rng);
  if (!completed.ok()) return completed.status();

  absl::StatusOr<double> base = query.Sensitivity(d.universe(), d.size());
  if (!base.ok()) return base.status();
  return Release(Strategy::kDpImputeThenQuery, query.Evaluate(*completed),
                 *base, budget.epsilon_analysis(), CountMissing(d),
                 std::move(ledger), rng);
}

absl::StatusOr<QueryResult> RunStrategy(Strategy strategy, const Dataset& d,
                                        const PrivacyBudget& budget,
                                        RandomSource& rng,
                                        const StrategyOptions& options,
                                        const BoundedQuery& query) {
  switch (strategy) {
    case Strategy::kAvailableCase:
      return RunAvailableCase(d, budget.epsilon_total(), rng, query);
    case Strategy::kImputeThenQuery:
      return RunImputeThenQuery(d, budget.epsilon_total(), rng, options, query);
    case Strategy::kDpImputeThenQuery:
      return RunDpImputeThenQuery(d, budget, rng, options, query);
  }
  return absl::InvalidArgumentError("unknown strategy");
}

}  // namespace dpimpute
