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

#include "dpimpute/functional_mechanism.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpimpute/laplace.h"

namespace dpimpute {
namespace {

// v -> (v - center) / half_width lands in [-1, 1].
struct AttributeMap {
  double center;
  double half_width;
};

AttributeMap MapFor(const Interval& iv, bool intercept) {
  if (intercept) return {iv.midpoint(), 0.5 * iv.width()};
  return {0.0, std::max(std::abs(iv.lo), std::abs(iv.hi))};
}

}  // namespace

double FunctionalMechanismSensitivity(int num_coefficients) {
  const double p = num_coefficients;
  return 2.0 * (p * p + 2.0 * p);
}

absl::StatusOr<OlsFit> FunctionalMechanismOls(
    const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
    const Universe& universe, double epsilon, RandomSource& rng,
    const FunctionalMechanismOptions& options,
    PerturbedQuadratic* diagnostics) {
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  if (!(options.coefficient_bound > 0)) {
    return absl::InvalidArgumentError("coefficient bound must be positive");
  }
  if (x.rows() != y.size() || x.cols() != universe.dimension()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "shape mismatch: x is ", x.rows(), "x", x.cols(), ", y has ", y.size(),
        " entries, universe dimension ", universe.dimension()));
  }
  if (x.rows() == 0) {
    return absl::FailedPreconditionError("degenerate design: no rows");
  }
  const int d = universe.dimension();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < d; ++j) {
      if (!universe.covariates()[j].Contains(x(i, j))) {
        return absl::InvalidArgumentError(absl::StrCat(
            "x", j + 1, " = ", x(i, j), " at row ", i, " outside its bounds"));
      }
    }
    if (!universe.response().Contains(y[i])) {
      return absl::InvalidArgumentError(absl::StrCat(
          "response ", y[i], " at row ", i, " outside its bounds"));
    }
  }

  const AttributeMap y_map = MapFor(universe.response(), options.intercept);
  std::vector<AttributeMap> x_maps;
  for (const Interval& iv : universe.covariates()) {
    x_maps.push_back(MapFor(iv, options.intercept));
  }
  Eigen::MatrixXd mapped(x.rows(), d);
  for (int j = 0; j < d; ++j) {
    mapped.col(j) = (x.col(j).array() - x_maps[j].center) / x_maps[j].half_width;
  }
  const Eigen::MatrixXd design = DesignMatrix(mapped, options.intercept);
  const Eigen::VectorXd y_mapped =
      (y.array() - y_map.center) / y_map.half_width;
  const int p = static_cast<int>(design.cols());

  const double noise_scale = FunctionalMechanismSensitivity(p) / epsilon;
  auto draw = [&]() { return LaplaceQuantile(rng.UniformOpen(), noise_scale); };

  Eigen::VectorXd linear = -2.0 * design.transpose() * y_mapped;
  for (int j = 0; j < p; ++j) linear[j] += draw();

  const Eigen::MatrixXd gram = design.transpose() * design;
  Eigen::MatrixXd quadratic(p, p);
  for (int j = 0; j < p; ++j) {
    quadratic(j, j) = gram(j, j) + draw();
    for (int l = j + 1; l < p; ++l) {
      // The monomial b_j b_l carries 2 * gram(j, l); split it evenly across
      // the symmetric pair.
      const double coefficient = 2.0 * gram(j, l) + draw();
      quadratic(j, l) = quadratic(l, j) = 0.5 * coefficient;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(quadratic,
                                                     Eigen::EigenvaluesOnly);
  const double lambda_min = eig.eigenvalues().minCoeff();
  const double trace = quadratic.trace();
  if (lambda_min < -10.0 * trace) {
    return absl::AbortedError(absl::StrCat(
        "irrecoverable perturbation: lambda_min ", lambda_min,
        " < -10 * trace ", trace));
  }
  const double ridge = std::max(0.0, 1e-8 - lambda_min);
  const Eigen::MatrixXd repaired =
      quadratic + ridge * Eigen::MatrixXd::Identity(p, p);
  const Eigen::VectorXd unclipped = repaired.ldlt().solve(-0.5 * linear);
  const Eigen::VectorXd clipped =
      unclipped.cwiseMax(-options.coefficient_bound)
          .cwiseMin(options.coefficient_bound);

  // y = c_y + h_y * (b0 + sum_j b_j (x_j - c_j) / h_j)
  OlsFit fit;
  fit.beta.resize(p);
  double offset = y_map.center;
  for (int j = 0; j < d; ++j) {
    fit.beta[j] = y_map.half_width * clipped[j] / x_maps[j].half_width;
    offset -= fit.beta[j] * x_maps[j].center;
  }
  if (options.intercept) fit.beta[d] = offset + y_map.half_width * clipped[d];
  fit.sigma2_hat = 0.0;
  fit.sigma2_usable = false;
  fit.n_used = design.rows();
  fit.intercept = options.intercept;
  fit.is_private = true;
  fit.epsilon_spent = epsilon;

  if (diagnostics != nullptr) {
    diagnostics->quadratic = quadratic;
    diagnostics->linear = linear;
    diagnostics->lambda_min = lambda_min;
    diagnostics->ridge = ridge;
    diagnostics->unclipped_beta = unclipped;
  }
  return fit;
}

}  // namespace dpimpute
