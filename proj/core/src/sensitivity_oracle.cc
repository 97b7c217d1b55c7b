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

#include "dpimpute/sensitivity_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace dpimpute {
namespace {

// Record state s encodes (covariate grid indices, response index); response
// index == grid size means missing. Dataset index: base-S digits with record
// 0 most significant, so index order is lexicographic in records.
class StateSpace {
 public:
  explicit StateSpace(const OracleSpec& spec) : spec_(spec) {
    g_ = static_cast<int64_t>(spec.grid.size());
    y_states_ = g_ + (spec.allow_missing ? 1 : 0);
    x_states_ = 1;
    for (int j = 0; j < spec.num_covariates; ++j) x_states_ *= g_;
    s_ = x_states_ * y_states_;
    count_ = 1;
    for (int i = 0; i < spec.n; ++i) count_ *= s_;
    const auto [lo, hi] = std::minmax_element(spec.grid.begin(), spec.grid.end());
    universe_ = Universe::Create(
        {*lo, *hi}, std::vector<Interval>(spec.num_covariates, {*lo, *hi}));
  }

  int64_t states() const { return s_; }
  int64_t count() const { return count_; }
  const absl::StatusOr<Universe>& universe() const { return universe_; }

  int Digit(int64_t index, int record) const {
    for (int i = spec_.n - 1; i > record; --i) index /= s_;
    return static_cast<int>(index % s_);
  }

  int64_t Replace(int64_t index, int record, int state) const {
    int64_t place = 1;
    for (int i = spec_.n - 1; i > record; --i) place *= s_;
    return index + (state - Digit(index, record)) * place;
  }

  Dataset Build(int64_t index) const {
    const int n = spec_.n;
    const int d = spec_.num_covariates;
    Eigen::MatrixXd x(n, d);
    Eigen::VectorXd y(n);
    std::vector<bool> mask(n);
    for (int i = 0; i < n; ++i) {
      const int s = Digit(index, i);
      int64_t xs = s / y_states_;
      const int64_t ys = s % y_states_;
      for (int j = d - 1; j >= 0; --j) {
        x(i, j) = spec_.grid[xs % g_];
        xs /= g_;
      }
      mask[i] = ys == g_;
      y[i] = mask[i] ? std::numeric_limits<double>::quiet_NaN()
                     : spec_.grid[ys];
    }
    return *Dataset::Create(std::move(x), std::move(y), std::move(mask),
                            *universe_);
  }

 private:
  const OracleSpec& spec_;
  int64_t g_, y_states_, x_states_, s_, count_;
  absl::StatusOr<Universe> universe_;
};

}  // namespace

Query MeanResponseQuery() {
  return [](const Dataset& d) { return d.response().mean(); };
}

double OracleEvaluationCount(const OracleSpec& spec) {
  const double g = static_cast<double>(spec.grid.size());
  const double s =
      std::pow(g, spec.num_covariates) * (g + (spec.allow_missing ? 1 : 0));
  return std::pow(s, spec.n) * spec.n * (s - 1);
}

absl::StatusOr<OracleResult> BruteForceImputedSensitivity(
    const OracleSpec& spec, const Imputer& imputer, const Query& query) {
  if (spec.grid.size() < 2) {
    return absl::InvalidArgumentError("grid needs at least two values");
  }
  if (spec.n < 1 || spec.num_covariates < 0) {
    return absl::InvalidArgumentError("need n >= 1 and num_covariates >= 0");
  }
  const double required = OracleEvaluationCount(spec);
  if (required > static_cast<double>(spec.max_evaluations)) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "enumeration needs ", required, " evaluations, budget is ",
        spec.max_evaluations));
  }
  StateSpace space(spec);
  if (!space.universe().ok()) return space.universe().status();

  const int64_t count = space.count();
  std::vector<double> value(count);
  std::vector<bool> ok(count);
  std::vector<int64_t> n_mis(count);
  for (int64_t idx = 0; idx < count; ++idx) {
    const Dataset d = space.Build(idx);
    n_mis[idx] = CountMissing(d);
    absl::StatusOr<Dataset> imputed = imputer(d);
    ok[idx] = imputed.ok();
    if (ok[idx]) value[idx] = query(*imputed);
  }

  OracleResult result;
  result.datasets = count;

  // Delta(q) first: the bound check below depends on it.
  for (int64_t idx = 0; idx < count; ++idx) {
    if (n_mis[idx] != 0 || !ok[idx]) continue;
    for (int i = 0; i < spec.n; ++i) {
      for (int s = 0; s < space.states(); ++s) {
        const int64_t other = space.Replace(idx, i, s);
        if (other == idx || n_mis[other] != 0 || !ok[other]) continue;
        result.base_sensitivity = std::max(
            result.base_sensitivity, std::abs(value[idx] - value[other]));
      }
    }
  }

  int64_t best_d = -1, best_d_prime = -1;
  for (int64_t idx = 0; idx < count; ++idx) {
    const double bound =
        static_cast<double>(n_mis[idx] + 1) * result.base_sensitivity;
    for (int i = 0; i < spec.n; ++i) {
      for (int s = 0; s < space.states(); ++s) {
        const int64_t other = space.Replace(idx, i, s);
        if (other == idx) continue;
        ++result.evaluations;
        if (!ok[idx] || !ok[other]) {
          ++result.skipped_pairs;
          continue;
        }
        const double gap = std::abs(value[idx] - value[other]);
        if (gap > bound * (1 + 1e-12) + 1e-15) ++result.bound_violations;
        if (bound > 0) {
          result.max_bound_ratio = std::max(result.max_bound_ratio, gap / bound);
        }
        if (best_d < 0 || gap > result.max_gap) {
          result.max_gap = gap;
          best_d = idx;
          best_d_prime = other;
        }
      }
    }
  }
  if (best_d >= 0) {
    result.witness = NeighborPair{space.Build(best_d), space.Build(best_d_prime)};
    result.witness_n_mis = n_mis[best_d];
  }
  return result;
}

absl::StatusOr<NeighborPair> RegressionTightnessWitness(double a, double b,
                                                        int n) {
  if (n < 2) return absl::InvalidArgumentError("witness needs n >= 2");
  absl::StatusOr<Universe> universe =
      Universe::Create({a, b}, {Interval{0.0, 1.0}});
  if (!universe.ok()) return universe.status();

  Eigen::MatrixXd x = Eigen::MatrixXd::Ones(n, 1);
  x(0, 0) = 0.0;
  Eigen::VectorXd y =
      Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN());
  y[0] = a;
  y[1] = a;
  std::vector<bool> mask(n, true);
  mask[0] = mask[1] = false;

  absl::StatusOr<Dataset> d = Dataset::Create(x, y, mask, *universe);
  if (!d.ok()) return d.status();
  Dataset d_prime = d->WithRecord(1, x.row(1), b, false);
  return NeighborPair{*std::move(d), std::move(d_prime)};
}

Imputer RegressionExtrapolationImputer() {
  return RefittingImputer({.dp_epsilon = std::nullopt, .intercept = false});
}

}  // namespace dpimpute
