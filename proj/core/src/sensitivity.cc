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

#include "dpimpute/sensitivity.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpimpute {

absl::StatusOr<double> MeanGlobalSensitivity(const Universe& universe,
                                             int64_t n) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("sensitivity needs n >= 1, got ", n));
  }
  return universe.response().width() / static_cast<double>(n);
}

SensitivityReport InflatedSensitivity(double delta, int64_t n_mis) {
  SensitivityReport report;
  report.base_sensitivity = delta;
  report.n_mis_used = n_mis;
  report.inflated_sensitivity = static_cast<double>(n_mis + 1) * delta;
  return report;
}

double GroupPrivacyFactor(double epsilon, int64_t k) {
  return std::exp(static_cast<double>(k) * epsilon);
}

double UniformWorstCaseFactor(double epsilon, int64_t n) {
  return GroupPrivacyFactor(epsilon, n);
}

absl::StatusOr<double> TightnessGap(double a, double b, int64_t n) {
  if (!(a < b)) {
    return absl::InvalidArgumentError(
        absl::StrCat("tightness gap needs a < b, got [", a, ", ", b, "]"));
  }
  if (n < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("tightness gap needs n >= 2, got ", n));
  }
  return static_cast<double>(n - 1) * (b - a) / static_cast<double>(n);
}

void CertifyTightness(SensitivityReport& report, double observed_gap,
                      double tolerance) {
  report.bound_tight =
      observed_gap >= report.inflated_sensitivity - tolerance;
}

}  // namespace dpimpute
