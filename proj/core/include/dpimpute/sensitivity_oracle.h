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

#ifndef DPIMPUTE_SENSITIVITY_ORACLE_H_
#define DPIMPUTE_SENSITIVITY_ORACLE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "dpimpute/dataset.h"
#include "dpimpute/imputation.h"

namespace dpimpute {

// A real-valued query on a fully observed dataset.
using Query = std::function<double(const Dataset&)>;

// Mean of the response column. Requires an empty mask.
Query MeanResponseQuery();

struct OracleSpec {
  // Values used for every covariate and every observed response. The
  // universe is [min(grid), max(grid)] in each coordinate.
  std::vector<double> grid;
  int n = 2;
  int num_covariates = 1;
  bool allow_missing = true;
  // Guard on the number of neighbor pairs evaluated.
  int64_t max_evaluations = 10'000'000;
};

struct NeighborPair {
  Dataset d;
  Dataset d_prime;
};

struct OracleResult {
  // max |q(iota(D)) - q(iota(D'))| over every dataset D and every neighbor
  // D' (one record replaced by any other record state).
  double max_gap = 0.0;
  // Lexicographically first pair attaining max_gap, and n_mis(D) for it.
  std::optional<NeighborPair> witness;
  int64_t witness_n_mis = 0;
  // Delta(q): the same maximum restricted to fully observed pairs.
  double base_sensitivity = 0.0;
  // Pairs violating gap <= (n_mis(D) + 1) * base_sensitivity.
  int64_t bound_violations = 0;
  // max gap / ((n_mis(D) + 1) * base_sensitivity); <= 1 when the bound holds.
  double max_bound_ratio = 0.0;
  int64_t datasets = 0;
  int64_t evaluations = 0;
  // Pairs where the imputer returned an error on either side.
  int64_t skipped_pairs = 0;
};

// Number of neighbor pairs BruteForceImputedSensitivity would evaluate.
double OracleEvaluationCount(const OracleSpec& spec);

// Exhaustive enumeration over every dataset on the grid (every missingness
// pattern when allow_missing) and every single-record neighbor.
// ResourceExhausted when the pair count exceeds spec.max_evaluations.
absl::StatusOr<OracleResult> BruteForceImputedSensitivity(
    const OracleSpec& spec, const Imputer& imputer, const Query& query);

// Neighbor pair on which no-intercept regression imputation with one
// covariate attains the (n_mis + 1) * Delta bound for the mean over [a, b]:
//   D : (0, a), (1, a) observed, n - 2 records at x = 1 missing
//   D': as D with the second response set to b.
// Imputing D gives all a; imputing D' gives one a and n - 1 b's.
absl::StatusOr<NeighborPair> RegressionTightnessWitness(double a, double b,
                                                        int n);

// Regression imputer used with RegressionTightnessWitness.
Imputer RegressionExtrapolationImputer();

}  // namespace dpimpute

#endif  // DPIMPUTE_SENSITIVITY_ORACLE_H_
