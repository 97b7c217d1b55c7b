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

#include "dpimpute/summary.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dpimpute {

double InterpolatedQuantile(std::span<const double> sorted, double p) {
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

absl::StatusOr<FiveNumberSummary> Summarize(std::span<const double> values) {
  if (values.empty()) {
    return absl::InvalidArgumentError("cannot summarize an empty list");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  FiveNumberSummary s;
  s.count = static_cast<int64_t>(sorted.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.variance = ss / static_cast<double>(s.count - 1);
  }
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = InterpolatedQuantile(sorted, 0.25);
  s.median = InterpolatedQuantile(sorted, 0.5);
  s.q3 = InterpolatedQuantile(sorted, 0.75);
  return s;
}

}  // namespace dpimpute
