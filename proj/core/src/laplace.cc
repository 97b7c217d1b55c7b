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

#include "dpimpute/laplace.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpimpute {

double LaplaceQuantile(double u, double scale) {
  const double v = u - 0.5;
  if (v == 0.0) return 0.0;
  const double magnitude = -scale * std::log1p(-2.0 * std::abs(v));
  return v < 0 ? -magnitude : magnitude;
}

absl::StatusOr<double> LaplaceSample(double scale, RandomSource& rng) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive and finite, got ", scale));
  }
  return LaplaceQuantile(rng.UniformOpen(), scale);
}

absl::StatusOr<double> LaplaceMechanism(double value, double sensitivity,
                                        double epsilon, RandomSource& rng) {
  if (!(sensitivity > 0) || !std::isfinite(sensitivity)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sensitivity must be positive, got ", sensitivity));
  }
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  absl::StatusOr<double> noise = LaplaceSample(sensitivity / epsilon, rng);
  if (!noise.ok()) return noise.status();
  return value + *noise;
}

}  // namespace dpimpute
