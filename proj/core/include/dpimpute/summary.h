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

#ifndef DPIMPUTE_SUMMARY_H_
#define DPIMPUTE_SUMMARY_H_

#include <cstdint>
#include <span>

#include "absl/status/statusor.h"

namespace dpimpute {

// Boxplot five-number summary plus mean and sample variance.
struct FiveNumberSummary {
  int64_t count = 0;
  double mean = 0.0;
  // Sample variance with n - 1 in the denominator; 0 for a single value.
  double variance = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Quantile p of sorted values by linear interpolation between closest
// ranks: h = (n - 1) p, result x[floor h] + (h - floor h)(x[floor h + 1] -
// x[floor h]).
double InterpolatedQuantile(std::span<const double> sorted, double p);

// InvalidArgument on empty input.
absl::StatusOr<FiveNumberSummary> Summarize(std::span<const double> values);

}  // namespace dpimpute

#endif  // DPIMPUTE_SUMMARY_H_
