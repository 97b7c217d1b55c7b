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

#include "dpimpute/dataset.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace dpimpute {
namespace {

absl::Status CheckInterval(const Interval& iv, absl::string_view what) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
    return absl::InvalidArgumentError(
        absl::StrCat(what, " bounds must be finite"));
  }
  if (!(iv.lo < iv.hi)) {
    return absl::InvalidArgumentError(absl::StrCat(
        what, " bounds must satisfy lo < hi, got [", iv.lo, ", ", iv.hi, "]"));
  }
  return absl::OkStatus();
}

}  // namespace

double Interval::Clamp(double v) const { return std::clamp(v, lo, hi); }

absl::StatusOr<Universe> Universe::Create(Interval response,
                                          std::vector<Interval> covariates) {
  if (absl::Status s = CheckInterval(response, "response"); !s.ok()) return s;
  for (size_t j = 0; j < covariates.size(); ++j) {
    if (absl::Status s = CheckInterval(covariates[j], absl::StrCat("x", j + 1));
        !s.ok()) {
      return s;
    }
  }
  return Universe(response, std::move(covariates));
}

Universe Universe::UnitCube(int d) {
  return Universe(Interval{0.0, 1.0},
                  std::vector<Interval>(static_cast<size_t>(d), {0.0, 1.0}));
}

absl::StatusOr<Dataset> Dataset::Create(Eigen::MatrixXd covariates,
                                        Eigen::VectorXd response,
                                        std::vector<bool> mask,
                                        Universe universe) {
  const int64_t n = covariates.rows();
  if (response.size() != n || static_cast<int64_t>(mask.size()) != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "row count mismatch: covariates ", n, ", response ", response.size(),
        ", mask ", mask.size()));
  }
  if (covariates.cols() != universe.dimension()) {
    return absl::InvalidArgumentError(
        absl::StrCat("covariate columns ", covariates.cols(),
                     " != universe dimension ", universe.dimension()));
  }
  return Dataset(std::move(covariates), std::move(response), std::move(mask),
                 std::move(universe));
}

absl::StatusOr<Dataset> Dataset::CreateComplete(Eigen::MatrixXd covariates,
                                                Eigen::VectorXd response,
                                                Universe universe) {
  std::vector<bool> mask(static_cast<size_t>(covariates.rows()), false);
  return Create(std::move(covariates), std::move(response), std::move(mask),
                std::move(universe));
}

double Dataset::observed_response(int64_t i) const {
  assert(!mask_[i]);
  return response_[i];
}

Dataset Dataset::WithRecord(int64_t i, const Eigen::RowVectorXd& x, double y,
                            bool missing) const {
  Dataset out = *this;
  out.covariates_.row(i) = x;
  out.response_[i] = missing ? std::numeric_limits<double>::quiet_NaN() : y;
  out.mask_[i] = missing;
  return out;
}

Dataset Dataset::CompleteCases() const {
  const int64_t n_obs = size() - CountMissing(*this);
  Eigen::MatrixXd x(n_obs, dimension());
  Eigen::VectorXd y(n_obs);
  int64_t k = 0;
  for (int64_t i = 0; i < size(); ++i) {
    if (mask_[i]) continue;
    x.row(k) = covariates_.row(i);
    y[k] = response_[i];
    ++k;
  }
  return Dataset(std::move(x), std::move(y),
                 std::vector<bool>(static_cast<size_t>(n_obs), false),
                 universe_);
}

int64_t CountMissing(const Dataset& d) {
  return std::count(d.mask().begin(), d.mask().end(), true);
}

bool RecordsEqual(const Dataset& a, int64_t i, const Dataset& b, int64_t j) {
  if (a.mask()[i] != b.mask()[j]) return false;
  if (a.covariates().row(i) != b.covariates().row(j)) return false;
  return a.mask()[i] || a.response()[i] == b.response()[j];
}

absl::StatusOr<int64_t> HammingDistance(const Dataset& d1, const Dataset& d2) {
  if (d1.size() != d2.size() || d1.dimension() != d2.dimension()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "datasets are not comparable: ", d1.size(), "x", d1.dimension(),
        " vs ", d2.size(), "x", d2.dimension()));
  }
  int64_t distance = 0;
  for (int64_t i = 0; i < d1.size(); ++i) {
    if (!RecordsEqual(d1, i, d2, i)) ++distance;
  }
  return distance;
}

std::string Violation::ToString() const {
  if (kind == Kind::kResponseOutOfBounds) {
    return absl::StrCat("row ", row, ": response ", value, " out of bounds");
  }
  return absl::StrCat("row ", row, ": x", column + 1, " = ", value,
                      " out of bounds");
}

std::vector<Violation> Validate(const Dataset& d) {
  std::vector<Violation> out;
  const Universe& u = d.universe();
  for (int64_t i = 0; i < d.size(); ++i) {
    for (int j = 0; j < d.dimension(); ++j) {
      const double v = d.covariates()(i, j);
      if (!u.covariates()[j].Contains(v)) {
        out.push_back({Violation::Kind::kCovariateOutOfBounds, i, j, v});
      }
    }
    if (!d.is_missing(i) && !u.response().Contains(d.response()[i])) {
      out.push_back(
          {Violation::Kind::kResponseOutOfBounds, i, -1, d.response()[i]});
    }
  }
  return out;
}

}  // namespace dpimpute
