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

#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include "absl/status/status.h"
#include "dpimpute/random.h"
#include "dpimpute/simulation.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace dpimpute {
namespace {

using ::dpimpute::testing::Rows;
using ::dpimpute::testing::UnitDataset;
using ::dpimpute::testing::Vec;

ImputationModel FixedModel(std::vector<double> beta, int d = 2,
                           bool stochastic = false, double sigma2 = 0.0) {
  OlsFit fit;
  fit.beta = Vec(beta);
  fit.intercept = static_cast<int>(beta.size()) > d;
  fit.sigma2_hat = sigma2;
  fit.sigma2_usable = true;
  return ImputationModel{fit, stochastic, Universe::UnitCube(d)};
}

Dataset MarSample(uint64_t seed, int64_t n) {
  SimConfig cfg;
  cfg.n = n;
  RandomSource rng(seed);
  const Dataset full = GeneratePopulation(cfg, rng);
  return InjectMissingness(full, rng).value();
}

Dataset RandomSmall(std::mt19937_64& gen, int n, double missing_rate) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::vector<double>> x(n);
  std::vector<double> y(n);
  std::vector<bool> mask(n);
  for (int i = 0; i < n; ++i) {
    x[i] = {unif(gen), unif(gen)};
    y[i] = unif(gen);
    mask[i] = unif(gen) < missing_rate;
  }
  return UnitDataset(x, y, mask);
}

TEST(FitImputationModelTest, RecoversGeneratorCoefficients) {
  SimConfig cfg;
  RandomSource rng(12);
  const Dataset full = GeneratePopulation(cfg, rng);
  ASSERT_OK_AND_ASSIGN(const ImputationModel m,
                       FitImputationModel(full, {}, rng));
  // 3 standard errors of OLS at n = 10000, sigma^2 = 0.1, x ~ U(0,1)^2
  // without intercept: Var(beta_j) ~ sigma^2 [E(xx')^-1]_jj / n with
  // E(xx') = [[1/3, 1/4], [1/4, 1/3]].
  const double se = std::sqrt(0.1 * (1.0 / 3.0) / (1.0 / 9.0 - 1.0 / 16.0) /
                              10'000);
  EXPECT_NEAR(m.fit.beta[0], 0.5, 3 * se + 0.01);
  EXPECT_NEAR(m.fit.beta[1], 0.5, 3 * se + 0.01);
  EXPECT_FALSE(m.fit.is_private);
}

TEST(FitImputationModelTest, UsesOnlyCompleteCases) {
  // Masked rows carry values that would wreck the fit if read.
  const Dataset d = UnitDataset({{0.1}, {0.5}, {0.9}, {0.3}},
                                {0.1, 0.5, 0.9, 1000.0}, {false, false, false, true});
  RandomSource rng(1);
  ASSERT_OK_AND_ASSIGN(const ImputationModel m, FitImputationModel(d, {}, rng));
  EXPECT_NEAR(m.fit.beta[0], 1.0, 1e-12);
  EXPECT_EQ(m.fit.n_used, 3);
}

TEST(FitImputationModelTest, PrivateFitWithHugeEpsilonMatchesOls) {
  const Dataset d = MarSample(3, 5000);
  RandomSource rng(9);
  for (bool intercept : {false, true}) {
    ASSERT_OK_AND_ASSIGN(
        const ImputationModel plain,
        FitImputationModel(d, {.intercept = intercept}, rng));
    ASSERT_OK_AND_ASSIGN(
        const ImputationModel dp,
        FitImputationModel(d, {.dp_epsilon = 1e12, .intercept = intercept},
                           rng));
    EXPECT_TRUE(dp.fit.is_private);
    EXPECT_EQ(dp.fit.epsilon_spent, 1e12);
    for (int j = 0; j < plain.fit.beta.size(); ++j) {
      EXPECT_NEAR(dp.fit.beta[j], plain.fit.beta[j], 1e-6);
    }
  }
}

TEST(FitImputationModelTest, Errors) {
  RandomSource rng(1);
  const Dataset all_missing =
      UnitDataset({{0.1}, {0.2}, {0.3}}, {0, 0, 0}, {true, true, true});
  EXPECT_EQ(FitImputationModel(all_missing, {}, rng).status().code(),
            absl::StatusCode::kFailedPrecondition);
  const Dataset two_obs =
      UnitDataset({{0.1}, {0.2}, {0.3}}, {0.1, 0.2, 0}, {false, false, true});
  EXPECT_EQ(FitImputationModel(two_obs, {.intercept = true}, rng).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_TRUE(FitImputationModel(two_obs, {}, rng).ok());
  EXPECT_EQ(FitImputationModel(two_obs, {.dp_epsilon = 1.0, .stochastic = true},
                               rng)
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(ImputeTest, CompleteDataIsUnchanged) {
  const Dataset d = UnitDataset({{0.1, 0.2}, {0.3, 0.4}}, {0.5, 0.6});
  RandomSource rng(1);
  ASSERT_OK_AND_ASSIGN(const Dataset out, Impute(d, FixedModel({0.5, 0.5}), rng));
  EXPECT_EQ(HammingDistance(d, out).value(), 0);
}

TEST(ImputeTest, PredictionInsideBounds) {
  const Dataset d = UnitDataset({{1, 1}}, {0}, {true});
  RandomSource rng(1);
  ASSERT_OK_AND_ASSIGN(const Dataset out, Impute(d, FixedModel({0.5, 0.5}), rng));
  EXPECT_FALSE(out.is_missing(0));
  EXPECT_EQ(out.response()[0], 1.0);
}

TEST(ImputeTest, PredictionIsClipped) {
  const Dataset d = UnitDataset({{1, 1}, {1, 0}}, {0, 0}, {true, true});
  RandomSource rng(1);
  ASSERT_OK_AND_ASSIGN(const Dataset hi, Impute(d, FixedModel({10, 10}), rng));
  EXPECT_EQ(hi.response()[0], 1.0);
  ASSERT_OK_AND_ASSIGN(const Dataset lo, Impute(d, FixedModel({-10, 0}), rng));
  EXPECT_EQ(lo.response()[1], 0.0);
}

TEST(ImputeTest, UsesInterceptWhenPresent) {
  const Dataset d = UnitDataset({{0.2, 0.4}}, {0}, {true});
  RandomSource rng(1);
  ASSERT_OK_AND_ASSIGN(const Dataset out,
                       Impute(d, FixedModel({0.5, 0.25, 0.1}), rng));
  EXPECT_NEAR(out.response()[0], 0.1 + 0.5 * 0.2 + 0.25 * 0.4, 1e-15);
}

TEST(ImputeTest, RejectsMismatchedModel) {
  const Dataset d = UnitDataset({{0.2}}, {0}, {true});
  RandomSource rng(1);
  EXPECT_EQ(Impute(d, FixedModel({0.5, 0.5}), rng).status().code(),
            absl::StatusCode::kInvalidArgument);
  ImputationModel other_bounds = FixedModel({0.5}, 1);
  other_bounds.universe = Universe::Create({0, 2}, {{0, 1}}).value();
  EXPECT_EQ(Impute(d, other_bounds, rng).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(ImputeTest, IsIdempotent) {
  const Dataset d = MarSample(5, 400);
  RandomSource rng(2);
  const ImputationModel m = FitImputationModel(d, {}, rng).value();
  const Dataset once = Impute(d, m, rng).value();
  const Dataset twice = Impute(once, m, rng).value();
  EXPECT_EQ(HammingDistance(once, twice).value(), 0);
}

TEST(ImputeTest, ObservedEntriesAreBitIdenticalAndOutputInUniverse) {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset d = RandomSmall(gen, 20, 0.5);
    for (bool stochastic : {false, true}) {
      const ImputationModel m =
          FixedModel({1.7, -0.9, 0.2}, 2, stochastic, 0.3);
      RandomSource rng(trial);
      const Dataset out = Impute(d, m, rng).value();
      EXPECT_EQ(CountMissing(out), 0);
      EXPECT_TRUE(Validate(out).empty());
      for (int64_t i = 0; i < d.size(); ++i) {
        EXPECT_EQ(out.covariates().row(i), d.covariates().row(i));
        if (!d.is_missing(i)) {
          EXPECT_EQ(std::bit_cast<uint64_t>(out.response()[i]),
                    std::bit_cast<uint64_t>(d.response()[i]));
        }
      }
    }
  }
}

TEST(ImputeTest, IsLocalToEachRecord) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (bool stochastic : {false, true}) {
    const ImputationModel m = FixedModel({0.3, 0.6}, 2, stochastic, 0.05);
    for (int trial = 0; trial < 50; ++trial) {
      const Dataset d = RandomSmall(gen, 12, 0.6);
      const int64_t j = trial % 12;
      const Dataset moved =
          d.WithRecord(j, Rows({{unif(gen), unif(gen)}}), unif(gen), unif(gen) < 0.5);
      RandomSource r1(trial);
      RandomSource r2(trial);
      const Dataset a = Impute(d, m, r1).value();
      const Dataset b = Impute(moved, m, r2).value();
      for (int64_t i = 0; i < d.size(); ++i) {
        if (i != j) EXPECT_EQ(a.response()[i], b.response()[i]);
      }
    }
  }
}

TEST(ImputeTest, DeterministicModeIgnoresRandomness) {
  const Dataset d = MarSample(7, 300);
  const ImputationModel m = FixedModel({0.5, 0.5});
  RandomSource r1(1);
  RandomSource r2(999);
  EXPECT_EQ(Impute(d, m, r1).value().response(), Impute(d, m, r2).value().response());
}

TEST(ImputeTest, StochasticModeAddsResidualNoise) {
  const int n = 20000;
  Eigen::MatrixXd x = Eigen::MatrixXd::Constant(n, 2, 0.5);
  const Dataset d = Dataset::Create(x, Eigen::VectorXd::Zero(n),
                                    std::vector<bool>(n, true),
                                    Universe::UnitCube(2))
                        .value();
  RandomSource rng(3);
  const Dataset out = Impute(d, FixedModel({0.5, 0.5}, 2, true, 0.01), rng).value();
  const double mean = out.response().mean();
  const double var = (out.response().array() - mean).square().mean();
  EXPECT_NEAR(mean, 0.5, 4 * 0.1 / std::sqrt(n));
  EXPECT_NEAR(var, 0.01, 0.001);
}

TEST(ImputerContractTest, SharedModelPassesOnRandomNeighbors) {
  std::mt19937_64 gen(10);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Imputer imputer = SharedModelImputer(FixedModel({0.4, 0.4, 0.1}));
  for (int trial = 0; trial < 200; ++trial) {
    const Dataset d = RandomSmall(gen, 8, 0.4);
    const Dataset e = d.WithRecord(trial % 8, Rows({{unif(gen), unif(gen)}}),
                                   unif(gen), unif(gen) < 0.4);
    EXPECT_TRUE(CheckImputerContract(imputer, d, e).empty());
    EXPECT_TRUE(CheckImputerContract(imputer, e, d).empty());
  }
}

TEST(ImputerContractTest, RefittingImputersPassOnRandomNeighbors) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::vector<Imputer> imputers = {
      MeanImputer(), RefittingImputer({}), RefittingImputer({.intercept = true}),
      RefittingImputer({.dp_epsilon = 1.0}, 4)};
  int checked = 0;
  for (const Imputer& imputer : imputers) {
    for (int trial = 0; trial < 200; ++trial) {
      const Dataset d = RandomSmall(gen, 10, 0.3);
      const Dataset e = d.WithRecord(trial % 10, Rows({{unif(gen), unif(gen)}}),
                                     unif(gen), unif(gen) < 0.3);
      const std::vector<ContractViolation> v = CheckImputerContract(imputer, d, e);
      if (!v.empty() && v.front().kind == ContractViolation::Kind::kImputerFailed) {
        continue;
      }
      ++checked;
      for (const ContractViolation& violation : v) {
        ADD_FAILURE() << violation.detail;
      }
    }
  }
  EXPECT_GT(checked, 600);
}

TEST(ImputerContractTest, CompleteDataPairIsWithinOne) {
  const Dataset d = UnitDataset({{0.1}, {0.2}}, {0.3, 0.4});
  const Dataset e = d.WithRecord(0, Rows({{0.1}}), 0.9, false);
  EXPECT_TRUE(CheckImputerContract(MeanImputer(), d, e).empty());
}

TEST(ImputerContractTest, FlagsChangedObservedValue) {
  const Imputer broken = [](const Dataset& d) -> absl::StatusOr<Dataset> {
    absl::StatusOr<Dataset> out = MeanImputer()(d);
    if (!out.ok()) return out;
    return out->WithRecord(0, out->covariates().row(0),
                           0.5 * out->response()[0], false);
  };
  const Dataset d = UnitDataset({{0.1}, {0.2}}, {0.8, 0.0}, {false, true});
  const Dataset e = d.WithRecord(1, Rows({{0.2}}), 0.4, false);
  const std::vector<ContractViolation> v = CheckImputerContract(broken, d, e);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v.front().kind, ContractViolation::Kind::kObservedValueChanged);
}

TEST(ImputerContractTest, FlagsOutOfUniverseAndStillMissing) {
  const Imputer out_of_range = [](const Dataset& d) -> absl::StatusOr<Dataset> {
    Eigen::VectorXd y = d.response();
    for (int64_t i = 0; i < d.size(); ++i) {
      if (d.is_missing(i)) y[i] = 7.0;
    }
    return Dataset::CreateComplete(d.covariates(), y, d.universe());
  };
  const Imputer identity = [](const Dataset& d) -> absl::StatusOr<Dataset> {
    return d;
  };
  const Dataset d = UnitDataset({{0.1}, {0.2}}, {0.8, 0.0}, {false, true});
  const Dataset e = d.WithRecord(0, Rows({{0.1}}), 0.1, false);
  bool outside = false;
  for (const ContractViolation& v : CheckImputerContract(out_of_range, d, e)) {
    outside |= v.kind == ContractViolation::Kind::kOutsideUniverse;
  }
  EXPECT_TRUE(outside);
  bool missing = false;
  for (const ContractViolation& v : CheckImputerContract(identity, d, e)) {
    missing |= v.kind == ContractViolation::Kind::kStillMissing;
  }
  EXPECT_TRUE(missing);
}

TEST(ImputerContractTest, FlagsHammingBoundBreach) {
  // Rewrites every record whenever the first response is high: not an
  // imputation scheme at all, and the distance check catches it.
  const Imputer global = [](const Dataset& d) -> absl::StatusOr<Dataset> {
    Eigen::VectorXd y = d.response();
    Eigen::MatrixXd x = d.covariates();
    if (!d.is_missing(0) && d.response()[0] > 0.5) x.setConstant(0.5);
    for (int64_t i = 0; i < d.size(); ++i) {
      if (d.is_missing(i)) y[i] = 0.5;
    }
    return Dataset::CreateComplete(x, y, d.universe());
  };
  const Dataset d = UnitDataset({{0.1}, {0.2}, {0.3}}, {0.1, 0.2, 0.3});
  const Dataset e = d.WithRecord(0, Rows({{0.1}}), 0.9, false);
  bool breach = false;
  for (const ContractViolation& v : CheckImputerContract(global, d, e)) {
    breach |= v.kind == ContractViolation::Kind::kHammingBoundExceeded;
  }
  EXPECT_TRUE(breach);
}

TEST(ImputerContractTest, RejectsNonNeighbors) {
  const Dataset d = UnitDataset({{0.1}, {0.2}}, {0.3, 0.4});
  const Dataset e = UnitDataset({{0.5}, {0.6}}, {0.7, 0.8});
  const std::vector<ContractViolation> v = CheckImputerContract(MeanImputer(), d, e);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, ContractViolation::Kind::kNotNeighbors);
}

TEST(MeanImputerTest, FallsBackToMidpoint) {
  const Dataset d = UnitDataset({{0.1}, {0.2}}, {0, 0}, {true, true});
  ASSERT_OK_AND_ASSIGN(const Dataset out, MeanImputer()(d));
  EXPECT_EQ(out.response()[0], 0.5);
  EXPECT_EQ(out.response()[1], 0.5);
}

}  // namespace
}  // namespace dpimpute
