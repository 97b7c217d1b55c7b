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

#include "dpimpute/laplace.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "dpimpute/random.h"
#include "gtest/gtest.h"

namespace dpimpute {
namespace {

double LaplaceCdf(double x, double b) {
  return x < 0 ? 0.5 * std::exp(x / b) : 1.0 - 0.5 * std::exp(-x / b);
}

TEST(LaplaceQuantileTest, MedianIsExactlyZero) {
  EXPECT_EQ(LaplaceQuantile(0.5, 2.0), 0.0);
  EXPECT_EQ(LaplaceQuantile(0.5, 1e-9), 0.0);
}

TEST(LaplaceQuantileTest, InvertsTheCdf) {
  for (double b : {0.5, 1.0, 2.0}) {
    for (double u : {1e-6, 0.01, 0.2, 0.49, 0.51, 0.8, 0.99, 1 - 1e-6}) {
      EXPECT_NEAR(LaplaceCdf(LaplaceQuantile(u, b), b), u, 1e-12);
    }
  }
}

TEST(LaplaceQuantileTest, IsOddAroundTheMedian) {
  for (double u : {0.01, 0.1, 0.3, 0.45}) {
    // 1 - u is itself rounded, so equality holds only to a few ulp.
    EXPECT_NEAR(LaplaceQuantile(u, 1.5), -LaplaceQuantile(1.0 - u, 1.5), 1e-14);
  }
}

TEST(LaplaceSampleTest, MomentsAtUnitScale) {
  RandomSource rng(42);
  const int n = 1'000'000;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = LaplaceSample(1.0, rng).value();
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  EXPECT_LT(std::abs(mean), 0.01);
  EXPECT_NEAR(var, 2.0, 0.05);
}

TEST(LaplaceSampleTest, EmpiricalCdfMatches) {
  RandomSource rng(8);
  const int n = 200000;
  std::vector<double> v(n);
  for (double& x : v) x = LaplaceSample(2.0, rng).value();
  std::sort(v.begin(), v.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = LaplaceCdf(v[i], 2.0);
    ks = std::max({ks, std::abs(f - static_cast<double>(i) / n),
                   std::abs(f - static_cast<double>(i + 1) / n)});
  }
  // Kolmogorov critical value at alpha = 0.001 is 1.95 / sqrt(n).
  EXPECT_LT(ks, 1.95 / std::sqrt(static_cast<double>(n)));
}

TEST(LaplaceSampleTest, FixedSeedRepeats) {
  RandomSource a(42);
  RandomSource b(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(LaplaceSample(1.0, a).value(), LaplaceSample(1.0, b).value());
  }
}

TEST(LaplaceSampleTest, RejectsBadScale) {
  RandomSource rng(1);
  EXPECT_EQ(LaplaceSample(0.0, rng).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(LaplaceSample(-1.0, rng).ok());
  EXPECT_FALSE(LaplaceSample(INFINITY, rng).ok());
  EXPECT_FALSE(LaplaceSample(std::nan(""), rng).ok());
}

TEST(LaplaceMechanismTest, SmallScaleConcentratesAtValue) {
  RandomSource rng(3);
  const int n = 100000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += LaplaceMechanism(0.5, 1e-4, 1.0, rng).value();
  }
  EXPECT_NEAR(sum / n, 0.5, 5e-5);
}

TEST(LaplaceMechanismTest, DependsOnlyOnTheRatio) {
  RandomSource a(99);
  RandomSource b(99);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(LaplaceMechanism(0.3, 1.0, 2.0, a).value(),
              LaplaceMechanism(0.3, 2.0, 4.0, b).value());
  }
}

TEST(LaplaceMechanismTest, VanishingNoiseLimit) {
  RandomSource rng(4);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_NEAR(LaplaceMechanism(0.7, 1.0, 1e12, rng).value(), 0.7, 1e-9);
  }
}

TEST(LaplaceMechanismTest, OutputIsNotClipped) {
  RandomSource rng(5);
  bool left = false;
  bool right = false;
  for (int i = 0; i < 1000; ++i) {
    const double v = LaplaceMechanism(0.5, 1.0, 1.0, rng).value();
    left |= v < 0.0;
    right |= v > 1.0;
  }
  EXPECT_TRUE(left && right);
}

TEST(LaplaceMechanismTest, RejectsBadParameters) {
  RandomSource rng(1);
  EXPECT_FALSE(LaplaceMechanism(0.0, 0.0, 1.0, rng).ok());
  EXPECT_FALSE(LaplaceMechanism(0.0, -1.0, 1.0, rng).ok());
  EXPECT_FALSE(LaplaceMechanism(0.0, 1.0, 0.0, rng).ok());
  EXPECT_FALSE(LaplaceMechanism(0.0, 1.0, -2.0, rng).ok());
}

}  // namespace
}  // namespace dpimpute
