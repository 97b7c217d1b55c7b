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

#ifndef DPIMPUTE_STRATEGIES_H_
#define DPIMPUTE_STRATEGIES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpimpute/dataset.h"
#include "dpimpute/privacy_budget.h"
#include "dpimpute/random.h"

namespace dpimpute {

enum class Strategy {
  kAvailableCase,
  kImputeThenQuery,
  kDpImputeThenQuery,
};

inline constexpr Strategy kAllStrategies[] = {Strategy::kAvailableCase,
                                              Strategy::kImputeThenQuery,
                                              Strategy::kDpImputeThenQuery};

// "available_case", "impute_then_query", "dp_impute_then_query".
absl::string_view StrategyName(Strategy s);
// Accepts the names above and the CLI spellings "available-case", "impute",
// "dp-impute".
absl::StatusOr<Strategy> ParseStrategy(absl::string_view name);

// A query on a fully observed dataset whose values move by at most
// Sensitivity(universe, n) between replace-one neighbors of size n.
class BoundedQuery {
 public:
  virtual ~BoundedQuery() = default;
  virtual double Evaluate(const Dataset& complete) const = 0;
  virtual absl::StatusOr<double> Sensitivity(const Universe& universe,
                                             int64_t n) const = 0;
};

class MeanQuery final : public BoundedQuery {
 public:
  double Evaluate(const Dataset& complete) const override;
  absl::StatusOr<double> Sensitivity(const Universe& universe,
                                     int64_t n) const override;
};

const BoundedQuery& DefaultMeanQuery();

struct StrategyOptions {
  // Imputation model options for the two imputing strategies.
  bool intercept = true;
  bool stochastic = false;
  double coefficient_bound = 10.0;
};

struct QueryResult {
  double value = 0.0;
  double sensitivity_used = 0.0;
  double noise_scale = 0.0;
  double epsilon_spent_total = 0.0;
  Strategy strategy = Strategy::kAvailableCase;
  int64_t n_mis_at_query = 0;
  std::vector<LedgerEntry> ledger;
  // The query value before noise. In-process diagnostics only; it is not
  // private and is never written by the CLI.
  double unreleased_statistic = 0.0;
};

// (i) Drops incomplete records, releases q(complete cases) with sensitivity
// computed for n_obs records. n_obs is treated as public.
// FailedPrecondition when no response is observed.
absl::StatusOr<QueryResult> RunAvailableCase(
    const Dataset& d, double epsilon, RandomSource& rng,
    const BoundedQuery& query = DefaultMeanQuery());

// (ii) Imputes with a non-private model and pays for it at the query:
// sensitivity (n_mis + 1) * Delta(q), full epsilon. n_mis is the realized
// count; a release safe for every dataset of size n would use n * Delta(q).
absl::StatusOr<QueryResult> RunImputeThenQuery(
    const Dataset& d, double epsilon, RandomSource& rng,
    const StrategyOptions& options = {},
    const BoundedQuery& query = DefaultMeanQuery());

// (iii) Fits the imputation model with the functional mechanism at
// epsilon_imputation, imputes deterministically, then releases q with
// sensitivity Delta(q) at epsilon_analysis. Total cost is the sum by
// sequential composition; the ledger holds "imputation" then "analysis".
absl::StatusOr<QueryResult> RunDpImputeThenQuery(
    const Dataset& d, const PrivacyBudget& budget, RandomSource& rng,
    const StrategyOptions& options = {},
    const BoundedQuery& query = DefaultMeanQuery());

// Dispatches on `strategy`. Strategies (i) and (ii) spend the whole total.
absl::StatusOr<QueryResult> RunStrategy(
    Strategy strategy, const Dataset& d, const PrivacyBudget& budget,
    RandomSource& rng, const StrategyOptions& options = {},
    const BoundedQuery& query = DefaultMeanQuery());

}  // namespace dpimpute

#endif  // DPIMPUTE_STRATEGIES_H_
