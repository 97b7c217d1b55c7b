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

#include "dpimpute/privacy_budget.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpimpute {

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon_total,
                                                    double split) {
  if (!std::isfinite(epsilon_total) || epsilon_total <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ",
                     epsilon_total));
  }
  if (!(split >= 0.0 && split < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("split must lie in [0, 1), got ", split));
  }
  const double imputation = split * epsilon_total;
  return PrivacyBudget(epsilon_total, imputation, epsilon_total - imputation);
}

absl::StatusOr<PrivacyBudget> PrivacyBudget::FromShares(
    double epsilon_imputation, double epsilon_analysis) {
  if (!std::isfinite(epsilon_imputation) || epsilon_imputation < 0) {
    return absl::InvalidArgumentError("imputation epsilon must be >= 0");
  }
  if (!std::isfinite(epsilon_analysis) || epsilon_analysis <= 0) {
    return absl::InvalidArgumentError("analysis epsilon must be > 0");
  }
  return PrivacyBudget(epsilon_imputation + epsilon_analysis,
                       epsilon_imputation, epsilon_analysis);
}

absl::Status BudgetLedger::Spend(std::string label, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("spend '", label, "' must be positive, got ", epsilon));
  }
  if (spent() + epsilon > total_ + kEpsilonTolerance) {
    return absl::ResourceExhaustedError(
        absl::StrCat("privacy budget exhausted: spending ", epsilon, " on '",
                     label, "' with ", remaining(), " remaining of ", total_));
  }
  entries_.push_back({std::move(label), epsilon});
  return absl::OkStatus();
}

double BudgetLedger::spent() const {
  double sum = 0.0;
  for (const LedgerEntry& e : entries_) sum += e.epsilon;
  return sum;
}

}  // namespace dpimpute
