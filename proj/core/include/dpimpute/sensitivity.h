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

#ifndef DPIMPUTE_SENSITIVITY_H_
#define DPIMPUTE_SENSITIVITY_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpimpute/dataset.h"

namespace dpimpute {

// Sensitivity of a query evaluated after imputation. The imputed versions of
// two neighbors differ in at most n_mis + 1 records, so chaining single
// record changes bounds the query gap by (n_mis + 1) * base.
struct SensitivityReport {
  double base_sensitivity = 0.0;
  double inflated_sensitivity = 0.0;
  int64_t n_mis_used = 0;
  // Set only after an oracle exhibits a neighbor pair attaining the bound.
  bool bound_tight = false;
};

// (b - a) / n for the mean of a response bounded in [a, b], replace-one
// neighbors. InvalidArgument for n < 1.
absl::StatusOr<double> MeanGlobalSensitivity(const Universe& universe,
                                             int64_t n);

// (n_mis + 1) * delta.
SensitivityReport InflatedSensitivity(double delta, int64_t n_mis);

// e^{k * epsilon}: the factor by which output probabilities may differ
// between datasets at Hamming distance k under an epsilon-DP mechanism.
double GroupPrivacyFactor(double epsilon, int64_t k);

// e^{n * epsilon}: the group factor with k = n, a bound that holds for every
// dataset of size n regardless of its missingness.
double UniformWorstCaseFactor(double epsilon, int64_t n);

// (a + (n - 1) b) / n - a = (n - 1)(b - a) / n, the query gap reached by the
// regression-imputation witness with n - 2 missing responses.
// InvalidArgument unless a < b and n >= 2.
absl::StatusOr<double> TightnessGap(double a, double b, int64_t n);

// Marks `report` tight when `observed_gap` reaches its inflated sensitivity
// within `tolerance`.
void CertifyTightness(SensitivityReport& report, double observed_gap,
                      double tolerance = 1e-12);

}  // namespace dpimpute

#endif  // DPIMPUTE_SENSITIVITY_H_
