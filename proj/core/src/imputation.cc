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

#include "dpimpute/imputation.h"

#include <cassert>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpimpute/functional_mechanism.h"

namespace dpimpute {

absl::StatusOr<ImputationModel> FitImputationModel(
    const Dataset& d, const ImputationFitOptions& options, RandomSource& rng) {
  if (options.stochastic && options.dp_epsilon.has_value()) {
    return absl::InvalidArgumentError(
        "stochastic imputation needs a residual variance, which the private "
        "fitter does not release");
  }
  const Dataset complete = d.CompleteCases();
  const int64_t p = d.dimension() + (options.intercept ? 1 : 0);
  if (complete.size() < p + 1) {
    return absl::FailedPreconditionError(
        absl::StrCat("too few complete cases: ", complete.size(), " < ",
                     p + 1));
  }

  absl::StatusOr<OlsFit> fit;
  if (options.dp_epsilon.has_value()) {
    fit = FunctionalMechanismOls(
        complete.covariates(), complete.response(), d.universe(),
        *options.dp_epsilon, rng,
        {.intercept = options.intercept,
         .coefficient_bound = options.coefficient_bound});
  } else {
    fit = FitOls(complete.covariates(), complete.response(), options.intercept);
  }
  if (!fit.ok()) return fit.status();
  if (options.stochastic && !fit->sigma2_usable) {
    return absl::FailedPreconditionError(
        "stochastic imputation needs n_obs > p for a residual variance");
  }
  return ImputationModel{*std::move(fit), options.stochastic, d.universe()};
}

absl::StatusOr<Dataset> Impute(const Dataset& d, const ImputationModel& model,
                               RandomSource& rng) {
  if (model.fit.num_covariates() != d.dimension()) {
    return absl::InvalidArgumentError(
        absl::StrCat("model expects ", model.fit.num_covariates(),
                     " covariates, dataset has ", d.dimension()));
  }
  if (!(model.universe == d.universe())) {
    return absl::InvalidArgumentError("model and dataset universes differ");
  }
  const Interval& bounds = d.universe().response();
  const double sigma = model.stochastic ? std::sqrt(model.fit.sigma2_hat) : 0;
  const uint64_t base = model.stochastic ? rng.NextU64() : 0;

  Eigen::VectorXd y = d.response();
  for (int64_t i = 0; i < d.size(); ++i) {
    if (!d.is_missing(i)) continue;
    double v = Predict(model.fit, d.covariates().row(i));
    if (model.stochastic) {
      v += sigma * RandomSource::ForStream(base, static_cast<uint64_t>(i))
                       .StandardNormal();
    }
    y[i] = bounds.Clamp(v);
    assert(bounds.Contains(y[i]));
  }
  return Dataset::CreateComplete(d.covariates(), std::move(y), d.universe());
}

Imputer SharedModelImputer(ImputationModel model, uint64_t seed) {
  return [model = std::move(model), seed](const Dataset& d) {
    RandomSource rng(seed);
    return Impute(d, model, rng);
  };
}

Imputer RefittingImputer(ImputationFitOptions options, uint64_t seed) {
  return [options, seed](const Dataset& d) -> absl::StatusOr<Dataset> {
    RandomSource rng(seed);
    absl::StatusOr<ImputationModel> model = FitImputationModel(d, options, rng);
    if (!model.ok()) return model.status();
    return Impute(d, *model, rng);
  };
}

Imputer MeanImputer() {
  return [](const Dataset& d) -> absl::StatusOr<Dataset> {
    double sum = 0.0;
    int64_t n_obs = 0;
    for (int64_t i = 0; i < d.size(); ++i) {
      if (d.is_missing(i)) continue;
      sum += d.response()[i];
      ++n_obs;
    }
    const Interval& bounds = d.universe().response();
    const double fill =
        n_obs > 0 ? bounds.Clamp(sum / static_cast<double>(n_obs))
                  : bounds.midpoint();
    Eigen::VectorXd y = d.response();
    for (int64_t i = 0; i < d.size(); ++i) {
      if (d.is_missing(i)) y[i] = fill;
    }
    return Dataset::CreateComplete(d.covariates(), std::move(y), d.universe());
  };
}

namespace {

void CheckOne(const Dataset& in, const Dataset& out, absl::string_view name,
              std::vector<ContractViolation>& violations) {
  using Kind = ContractViolation::Kind;
  if (out.size() != in.size() || out.dimension() != in.dimension()) {
    violations.push_back({Kind::kOutsideUniverse,
                          absl::StrCat(name, ": imputed shape differs")});
    return;
  }
  if (int64_t m = CountMissing(out); m > 0) {
    violations.push_back({Kind::kStillMissing,
                          absl::StrCat(name, ": ", m, " entries still missing")});
  }
  for (const Violation& v : Validate(out)) {
    violations.push_back(
        {Kind::kOutsideUniverse, absl::StrCat(name, ": ", v.ToString())});
  }
  for (int64_t i = 0; i < in.size(); ++i) {
    const bool x_same = in.covariates().row(i) == out.covariates().row(i);
    const bool y_same =
        in.is_missing(i) || (!out.is_missing(i) &&
                             in.response()[i] == out.response()[i]);
    if (!x_same || !y_same) {
      violations.push_back(
          {Kind::kObservedValueChanged,
           absl::StrCat(name, ": observed values changed at row ", i)});
    }
  }
}

}  // namespace

std::vector<ContractViolation> CheckImputerContract(
    const Imputer& imputer, const Dataset& d, const Dataset& d_neighbor) {
  using Kind = ContractViolation::Kind;
  std::vector<ContractViolation> violations;

  absl::StatusOr<int64_t> pair_distance = HammingDistance(d, d_neighbor);
  if (!pair_distance.ok() || *pair_distance > 1) {
    violations.push_back(
        {Kind::kNotNeighbors, pair_distance.ok()
                                  ? absl::StrCat("distance ", *pair_distance)
                                  : std::string(pair_distance.status().message())});
    return violations;
  }

  absl::StatusOr<Dataset> a = imputer(d);
  absl::StatusOr<Dataset> b = imputer(d_neighbor);
  if (!a.ok() || !b.ok()) {
    violations.push_back(
        {Kind::kImputerFailed,
         std::string((a.ok() ? b.status() : a.status()).message())});
    return violations;
  }
  CheckOne(d, *a, "D", violations);
  CheckOne(d_neighbor, *b, "D'", violations);

  absl::StatusOr<int64_t> distance = HammingDistance(*a, *b);
  const int64_t bound = CountMissing(d) + 1;
  if (distance.ok() && *distance > bound) {
    violations.push_back(
        {Kind::kHammingBoundExceeded,
         absl::StrCat("hamming(iota(D), iota(D')) = ", *distance, " > ",
                      bound)});
  }
  return violations;
}

}  // namespace dpimpute
