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

#ifndef DPIMPUTE_IMPUTATION_H_
#define DPIMPUTE_IMPUTATION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpimpute/dataset.h"
#include "dpimpute/ols.h"
#include "dpimpute/random.h"

namespace dpimpute {

// Regression imputation model fitted on complete cases. Under ignorable
// missingness f(Y_obs | X_obs) = f(Y | X), so the complete cases identify
// the parameters used to fill in the rest.
struct ImputationModel {
  OlsFit fit;
  // Adds N(0, sigma2_hat) to each prediction. Only permitted for
  // non-private fits: the private fitter does not release a residual
  // variance.
  bool stochastic = false;
  Universe universe = Universe::UnitCube(0);
};

struct ImputationFitOptions {
  // Set: fit with the functional mechanism at this epsilon.
  // Unset: ordinary least squares.
  std::optional<double> dp_epsilon;
  bool intercept = false;
  bool stochastic = false;
  double coefficient_bound = 10.0;
};

// Fits on the rows with mask == false. Requires at least p + 1 complete
// cases, p = d (+1 with intercept). Does not touch any ledger; callers
// record dp_epsilon themselves.
absl::StatusOr<ImputationModel> FitImputationModel(
    const Dataset& d, const ImputationFitOptions& options, RandomSource& rng);

// Fills every missing response with clip(x_i'beta [+ noise], a, b) and
// returns a dataset with an empty mask. Observed entries are copied
// bit-for-bit. The value imputed for record i depends only on record i's
// covariates and the model; stochastic draws come from sub-stream
// (rng.NextU64(), i), so the output does not depend on processing order.
absl::StatusOr<Dataset> Impute(const Dataset& d, const ImputationModel& model,
                               RandomSource& rng);

// An imputation scheme as a function of the whole dataset.
using Imputer = std::function<absl::StatusOr<Dataset>(const Dataset&)>;

// Applies one fixed model to every input. Stochastic draws restart from
// `seed` on each call.
Imputer SharedModelImputer(ImputationModel model, uint64_t seed = 0);

// Refits the model on each input before imputing.
Imputer RefittingImputer(ImputationFitOptions options, uint64_t seed = 0);

// Replaces missing responses by the mean of the observed ones, or by the
// midpoint of the response bounds when nothing is observed.
Imputer MeanImputer();

struct ContractViolation {
  enum class Kind {
    kImputerFailed,
    kNotNeighbors,
    kStillMissing,
    kOutsideUniverse,
    kObservedValueChanged,
    kHammingBoundExceeded,
  };
  Kind kind;
  std::string detail;
};

// Checks the imputation-scheme assumptions on a neighboring pair:
//  1. iota(D) lies in U^n (no missing entries, every value in bounds);
//  2. observed values are unchanged;
// and that hamming(iota(D), iota(D')) <= n_mis(D) + 1. Empty result = ok.
std::vector<ContractViolation> CheckImputerContract(const Imputer& imputer,
                                                    const Dataset& d,
                                                    const Dataset& d_neighbor);

}  // namespace dpimpute

#endif  // DPIMPUTE_IMPUTATION_H_
