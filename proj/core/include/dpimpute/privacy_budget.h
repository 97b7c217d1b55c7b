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

#ifndef DPIMPUTE_PRIVACY_BUDGET_H_
#define DPIMPUTE_PRIVACY_BUDGET_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpimpute {

// Tolerance used when comparing sums of epsilons against a total.
inline constexpr double kEpsilonTolerance = 1e-12;

// Total epsilon split between the imputation stage (epsilon_imputation) and
// the analysis stage (epsilon_analysis). Sequential composition makes the
// two-stage pipeline (eps1 + eps2)-DP.
class PrivacyBudget {
 public:
  // epsilon_imputation = split * total, epsilon_analysis = total - that.
  // Requires total > 0, split in [0, 1), so the analysis share is positive.
  static absl::StatusOr<PrivacyBudget> Create(double epsilon_total,
                                              double split);

  // Explicit shares; requires imputation >= 0, analysis > 0.
  static absl::StatusOr<PrivacyBudget> FromShares(double epsilon_imputation,
                                                  double epsilon_analysis);

  double epsilon_total() const { return total_; }
  double epsilon_imputation() const { return imputation_; }
  double epsilon_analysis() const { return analysis_; }

 private:
  PrivacyBudget(double total, double imputation, double analysis)
      : total_(total), imputation_(imputation), analysis_(analysis) {}

  double total_;
  double imputation_;
  double analysis_;
};

struct LedgerEntry {
  std::string label;
  double epsilon;
};

// Append-only record of epsilon spent against a fixed total.
class BudgetLedger {
 public:
  explicit BudgetLedger(double epsilon_total) : total_(epsilon_total) {}

  // ResourceExhausted if the spend would push the sum past the total (beyond
  // kEpsilonTolerance); InvalidArgument for a nonpositive or non-finite spend.
  absl::Status Spend(std::string label, double epsilon);

  double total() const { return total_; }
  double spent() const;
  double remaining() const { return total_ - spent(); }
  const std::vector<LedgerEntry>& entries() const { return entries_; }

 private:
  double total_;
  std::vector<LedgerEntry> entries_;
};

}  // namespace dpimpute

#endif  // DPIMPUTE_PRIVACY_BUDGET_H_
