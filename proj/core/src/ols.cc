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

#include "dpimpute/ols.h"

#include "absl/strings/str_cat.h"

namespace dpimpute {

Eigen::MatrixXd DesignMatrix(const Eigen::MatrixXd& x, bool intercept) {
  if (!intercept) return x;
  Eigen::MatrixXd out(x.rows(), x.cols() + 1);
  out.leftCols(x.cols()) = x;
  out.col(x.cols()).setOnes();
  return out;
}

double Predict(const OlsFit& fit,
               const Eigen::Ref<const Eigen::RowVectorXd>& x_row) {
  const int d = fit.num_covariates();
  double v = x_row.head(d).dot(fit.beta.head(d));
  if (fit.intercept) v += fit.beta[d];
  return v;
}

absl::StatusOr<OlsFit> FitOls(const Eigen::MatrixXd& x,
                              const Eigen::VectorXd& y, bool intercept) {
  if (x.rows() != y.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "x has ", x.rows(), " rows but y has ", y.size(), " entries"));
  }
  const Eigen::MatrixXd design = DesignMatrix(x, intercept);
  const int64_t n = design.rows();
  const int64_t p = design.cols();
  if (p == 0 || n < p) {
    return absl::FailedPreconditionError(absl::StrCat(
        "degenerate design: ", n, " rows for ", p, " coefficients"));
  }
  const Eigen::MatrixXd gram = design.transpose() * design;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram,
                                                     Eigen::EigenvaluesOnly);
  const double lambda_max = eig.eigenvalues().maxCoeff();
  const double lambda_min = eig.eigenvalues().minCoeff();
  if (!(lambda_max > 0) || lambda_min <= kSingularGramTolerance * lambda_max) {
    return absl::FailedPreconditionError(absl::StrCat(
        "degenerate design: Gram matrix is singular (eigenvalues ",
        lambda_min, " .. ", lambda_max, ")"));
  }

  OlsFit fit;
  fit.beta = gram.ldlt().solve(design.transpose() * y);
  fit.n_used = n;
  fit.intercept = intercept;
  if (n > p) {
    fit.sigma2_hat = (y - design * fit.beta).squaredNorm() /
                     static_cast<double>(n - p);
    fit.sigma2_usable = true;
  }
  return fit;
}

}  // namespace dpimpute
