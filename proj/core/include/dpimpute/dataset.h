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

#ifndef DPIMPUTE_DATASET_H_
#define DPIMPUTE_DATASET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpimpute {

// Closed real interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  double midpoint() const { return lo + 0.5 * (hi - lo); }
  bool Contains(double v) const { return v >= lo && v <= hi; }
  double Clamp(double v) const;

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Value domain of a dataset: bounds for the response and one interval per
// covariate.
class Universe {
 public:
  // Fails unless every interval is finite with lo < hi.
  static absl::StatusOr<Universe> Create(Interval response,
                                         std::vector<Interval> covariates);

  // [0,1] for the response and for each of `d` covariates.
  static Universe UnitCube(int d);

  const Interval& response() const { return response_; }
  const std::vector<Interval>& covariates() const { return covariates_; }
  int dimension() const { return static_cast<int>(covariates_.size()); }

  friend bool operator==(const Universe&, const Universe&) = default;

 private:
  Universe(Interval response, std::vector<Interval> covariates)
      : response_(response), covariates_(std::move(covariates)) {}

  Interval response_;
  std::vector<Interval> covariates_;
};

// n records of d fully observed covariates plus one partially observed
// response. mask[i] == true means the response of record i is missing; the
// stored response under a masked entry is unspecified and never read.
class Dataset {
 public:
  // Checks shapes only (rows of `covariates` == size of `response` == size of
  // `mask`, columns == universe dimension). Bounds are checked by Validate().
  static absl::StatusOr<Dataset> Create(Eigen::MatrixXd covariates,
                                        Eigen::VectorXd response,
                                        std::vector<bool> mask,
                                        Universe universe);

  // Same as Create with an all-false mask.
  static absl::StatusOr<Dataset> CreateComplete(Eigen::MatrixXd covariates,
                                                Eigen::VectorXd response,
                                                Universe universe);

  int64_t size() const { return covariates_.rows(); }
  int dimension() const { return static_cast<int>(covariates_.cols()); }

  const Eigen::MatrixXd& covariates() const { return covariates_; }
  const Eigen::VectorXd& response() const { return response_; }
  const std::vector<bool>& mask() const { return mask_; }
  const Universe& universe() const { return universe_; }

  bool is_missing(int64_t i) const { return mask_[i]; }
  // Observed response of record i. Must not be called on a masked record.
  double observed_response(int64_t i) const;

  // Returns a copy with record i replaced.
  Dataset WithRecord(int64_t i, const Eigen::RowVectorXd& x, double y,
                     bool missing) const;

  // Rows with mask == false, in original order.
  Dataset CompleteCases() const;

 private:
  Dataset(Eigen::MatrixXd covariates, Eigen::VectorXd response,
          std::vector<bool> mask, Universe universe)
      : covariates_(std::move(covariates)),
        response_(std::move(response)),
        mask_(std::move(mask)),
        universe_(std::move(universe)) {}

  Eigen::MatrixXd covariates_;
  Eigen::VectorXd response_;
  std::vector<bool> mask_;
  Universe universe_;
};

// Number of records whose response is missing.
int64_t CountMissing(const Dataset& d);

// True iff record i of `a` equals record j of `b`: identical covariate row,
// identical mask bit, and (when observed) identical response.
bool RecordsEqual(const Dataset& a, int64_t i, const Dataset& b, int64_t j);

// Number of indices at which the two datasets hold different records.
// InvalidArgument when the shapes differ.
absl::StatusOr<int64_t> HammingDistance(const Dataset& d1, const Dataset& d2);

struct Violation {
  enum class Kind { kCovariateOutOfBounds, kResponseOutOfBounds };
  Kind kind;
  int64_t row;
  // Covariate column, or -1 for the response.
  int column;
  double value;

  std::string ToString() const;
};

// Empty when every covariate is inside its bounds and every observed
// response is inside the response bounds. Masked entries are ignored.
std::vector<Violation> Validate(const Dataset& d);

}  // namespace dpimpute

#endif  // DPIMPUTE_DATASET_H_
