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
#include <random>

#include "absl/status/status.h"
#include "gtest/gtest.h"

namespace dpimpute {
namespace {

TEST(PrivacyBudgetTest, EqualSplit) {
  const PrivacyBudget b = PrivacyBudget::Create(1.0, 0.5).value();
  EXPECT_EQ(b.epsilon_total(), 1.0);
  EXPECT_EQ(b.epsilon_imputation(), 0.5);
  EXPECT_EQ(b.epsilon_analysis(), 0.5);
}

TEST(PrivacyBudgetTest, SharesSumExactlyForSweptSplits) {
  for (double split : {0.1, 0.5, 0.9}) {
    const PrivacyBudget b = PrivacyBudget::Create(1.0, split).value();
    EXPECT_EQ(b.epsilon_imputation() + b.epsilon_analysis(), 1.0) << split;
  }
}

TEST(PrivacyBudgetTest, SharesSumWithinToleranceForRandomBudgets) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> eps(1e-3, 50.0);
  std::uniform_real_distribution<double> split(0.0, 0.999);
  for (int i = 0; i < 10000; ++i) {
    const double total = eps(gen);
    const PrivacyBudget b = PrivacyBudget::Create(total, split(gen)).value();
    EXPECT_NEAR(b.epsilon_imputation() + b.epsilon_analysis(), total,
                kEpsilonTolerance);
    EXPECT_GE(b.epsilon_imputation(), 0.0);
    EXPECT_GT(b.epsilon_analysis(), 0.0);
  }
}

TEST(PrivacyBudgetTest, RejectsInvalidParameters) {
  EXPECT_FALSE(PrivacyBudget::Create(0.0, 0.5).ok());
  EXPECT_FALSE(PrivacyBudget::Create(-1.0, 0.5).ok());
  EXPECT_FALSE(PrivacyBudget::Create(INFINITY, 0.5).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, 1.0).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, -0.1).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, std::nan("")).ok());
  EXPECT_TRUE(PrivacyBudget::Create(1.0, 0.0).ok());
}

TEST(PrivacyBudgetTest, FromShares) {
  const PrivacyBudget b = PrivacyBudget::FromShares(0.25, 0.75).value();
  EXPECT_EQ(b.epsilon_total(), 1.0);
  EXPECT_FALSE(PrivacyBudget::FromShares(-0.1, 1.0).ok());
  EXPECT_FALSE(PrivacyBudget::FromShares(0.5, 0.0).ok());
}

TEST(BudgetLedgerTest, RecordsEntriesInOrder) {
  BudgetLedger ledger(1.0);
  ASSERT_TRUE(ledger.Spend("imputation", 0.5).ok());
  ASSERT_TRUE(ledger.Spend("analysis", 0.5).ok());
  ASSERT_EQ(ledger.entries().size(), 2u);
  EXPECT_EQ(ledger.entries()[0].label, "imputation");
  EXPECT_EQ(ledger.entries()[1].label, "analysis");
  EXPECT_EQ(ledger.spent(), 1.0);
  EXPECT_EQ(ledger.remaining(), 0.0);
}

TEST(BudgetLedgerTest, RefusesOverspend) {
  BudgetLedger ledger(1.0);
  ASSERT_TRUE(ledger.Spend("a", 0.75).ok());
  const absl::Status s = ledger.Spend("b", 0.5);
  EXPECT_EQ(s.code(), absl::StatusCode::kResourceExhausted);
  EXPECT_EQ(ledger.entries().size(), 1u);
  EXPECT_EQ(ledger.spent(), 0.75);
}

TEST(BudgetLedgerTest, RefusesNonPositiveSpend) {
  BudgetLedger ledger(1.0);
  EXPECT_EQ(ledger.Spend("zero", 0.0).code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(ledger.Spend("neg", -0.1).code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(ledger.Spend("nan", std::nan("")).code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_TRUE(ledger.entries().empty());
}

TEST(BudgetLedgerTest, NeverExceedsTotalUnderRandomSpends) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> amount(0.01, 0.4);
  for (int trial = 0; trial < 200; ++trial) {
    BudgetLedger ledger(1.0);
    for (int k = 0; k < 20; ++k) {
      (void)ledger.Spend("step", amount(gen));
      EXPECT_LE(ledger.spent(), 1.0 + kEpsilonTolerance);
    }
  }
}

}  // namespace
}  // namespace dpimpute
