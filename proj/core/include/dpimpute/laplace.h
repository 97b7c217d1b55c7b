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

#ifndef DPIMPUTE_LAPLACE_H_
#define DPIMPUTE_LAPLACE_H_

#include "absl/status/statusor.h"
#include "dpimpute/random.h"

namespace dpimpute {

// Inverse CDF of Laplace(0, scale) at u in (0, 1):
//   -scale * sign(u - 1/2) * log(1 - 2|u - 1/2|).
// Exactly 0 at u = 0.5.
double LaplaceQuantile(double u, double scale);

// One Laplace(0, scale) draw by inversion of rng.UniformOpen().
absl::StatusOr<double> LaplaceSample(double scale, RandomSource& rng);

// value + Laplace(sensitivity / epsilon). The result is not clipped.
absl::StatusOr<double> LaplaceMechanism(double value, double sensitivity,
                                        double epsilon, RandomSource& rng);

}  // namespace dpimpute

#endif  // DPIMPUTE_LAPLACE_H_
