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

#ifndef DPIMPUTE_OLS_H_
#define DPIMPUTE_OLS_H_

#include <cstdint>

#include "Eigen/Dense"
#include "absl/status/statusor.h"

namespace dpimpute {

// Fitted linear model y ~ x'beta. When `intercept` is set, beta has d + 1
// entries and the last one multiplies a constant column.
struct OlsFit {
  Eigen::VectorXd beta;
  // Residual variance estimate; meaningful only when sigma2_usable.
  double sigma2_hat = 0.0;
  bool sigma2_usable = false;
  int64_t n_used = 0;
  bool intercept = false;
  bool is_private = false;
  double epsilon_spent = 0.0;

  int num_covariates() const {
    return static_cast<int>(beta.size()) - (intercept ? 1 : 0);
  }
};

// Relative eigenvalue threshold below which a Gram matrix is treated as
// singular.
inline constexpr double kSingularGramTolerance = 1e-10;

// x with a trailing column of ones when `intercept` is set.
Eigen::MatrixXd DesignMatrix(const Eigen::MatrixXd& x, bool intercept);

// x_row'beta, including the intercept term if the fit has one.
double Predict(const OlsFit& fit, const Eigen::Ref<const Eigen::RowVectorXd>& x_row);

// Least squares via the normal equations. The Gram matrix X'X is factored
// with Eigen's LDLT (Cholesky with diagonal pivoting). sigma2_hat is
// RSS / (n - p) when n > p.
//
// FailedPrecondition ("degenerate design") when n < p or when
// lambda_min(X'X) <= kSingularGramTolerance * lambda_max(X'X).
absl::StatusOr<OlsFit> FitOls(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                              bool intercept);

}  // namespace dpimpute

#endif  // DPIMPUTE_OLS_H_
