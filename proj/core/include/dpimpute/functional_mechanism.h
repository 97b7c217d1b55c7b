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

#ifndef DPIMPUTE_FUNCTIONAL_MECHANISM_H_
#define DPIMPUTE_FUNCTIONAL_MECHANISM_H_

#include "Eigen/Dense"
#include "absl/status/statusor.h"
#include "dpimpute/dataset.h"
#include "dpimpute/ols.h"
#include "dpimpute/random.h"

namespace dpimpute {

// Differentially private least squares by perturbing the polynomial
// coefficients of the objective (the functional mechanism).
//
// Every attribute is first mapped into [-1, 1] using only the public bounds
// of the universe:
//   with an intercept     v -> (2v - (lo + hi)) / (hi - lo)   (onto [-1, 1])
//   without an intercept  v -> v / max(|lo|, |hi|)            (into [-1, 1])
// The affine map needs the intercept to be undone on beta; the linear one
// does not. On the mapped rows (x_i, y_i) the squared-error objective is
//
//   sum_i (y_i - x_i'b)^2 = sum_i y_i^2
//                         + sum_j b_j     * (sum_i -2 y_i x_ij)
//                         + sum_{j<=l} b_j b_l * (sum_i c_jl x_ij x_il)
//
// with c_jj = 1 and c_jl = 2 for j < l. The constant term does not move the
// argmin and is dropped. Each record contributes at most 2 to each of the p
// linear coefficients and (sum_j |x_ij|)^2 <= p^2 in total to the quadratic
// ones, so replacing one record changes the coefficient vector by at most
//
//   Delta = 2 (2p + p^2)
//
// in L1. Every coefficient receives independent Laplace(Delta / epsilon)
// noise. Draw order: the p linear terms, then the quadratic terms (j, l)
// with j <= l in row-major order.
//
// The perturbed quadratic b'Mb + alpha'b is made strictly convex by adding
// ridge max(0, 1e-8 - lambda_min(M)) to the diagonal, minimized in closed
// form, clipped to [-C, C] per coefficient and mapped back to the original
// scales. These steps are post-processing. The derivation is written out in
// docs/functional_mechanism.md.

struct FunctionalMechanismOptions {
  bool intercept = false;
  // C: per-coefficient bound applied on the mapped scale.
  double coefficient_bound = 10.0;
};

// Intermediate state on the mapped scale, exposed for checks of first-order
// optimality.
struct PerturbedQuadratic {
  // Symmetric M (noisy) before the ridge is added.
  Eigen::MatrixXd quadratic;
  // alpha (noisy).
  Eigen::VectorXd linear;
  double lambda_min = 0.0;
  double ridge = 0.0;
  // Minimizer of b'(M + ridge I)b + alpha'b before clipping.
  Eigen::VectorXd unclipped_beta;
};

// L1 sensitivity of the perturbed coefficient vector for p coefficients.
double FunctionalMechanismSensitivity(int num_coefficients);

// Errors:
//  InvalidArgument     epsilon <= 0, a covariate or response outside its
//                      universe bounds, shape mismatch.
//  FailedPrecondition  no rows (degenerate design).
//  Aborted             irrecoverable perturbation: lambda_min(M) < -10 tr(M).
//                      Callers may retry only with fresh randomness and a
//                      fresh budget.
absl::StatusOr<OlsFit> FunctionalMechanismOls(
    const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
    const Universe& universe, double epsilon, RandomSource& rng,
    const FunctionalMechanismOptions& options = {},
    PerturbedQuadratic* diagnostics = nullptr);

}  // namespace dpimpute

#endif  // DPIMPUTE_FUNCTIONAL_MECHANISM_H_
