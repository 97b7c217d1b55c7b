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

#ifndef DPIMPUTE_TOOLS_COMMANDS_H_
#define DPIMPUTE_TOOLS_COMMANDS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpimpute/ols.h"
#include "dpimpute/simulation.h"
#include "json.hpp"

namespace dpimpute::cli {

// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitBadInput = 1,
  kExitIo = 2,
  kExitComputation = 3,
};

// InvalidArgument -> 1; NotFound, Unavailable, DataLoss,
// PermissionDenied -> 2; anything else -> 3.
int ExitCodeFor(const absl::Status& status);

struct SimulateConfig {
  SimConfig sim;
  std::string output_dir = ".";
  bool emit_svg = true;
};

// Strict parse: unknown keys and wrong types are InvalidArgument naming the
// offending key. Missing keys keep their defaults.
absl::StatusOr<SimulateConfig> ParseSimulateConfig(const nlohmann::json& j);

struct SimulateOptions {
  std::string config_path;
  std::optional<std::string> output_dir;
  // Worker threads; 0 = hardware concurrency.
  int threads = 0;
};

// Writes runs.csv, summary.csv and, when enabled, boxplot.svg.
int CmdSimulate(const SimulateOptions& options, std::ostream& out,
                std::ostream& err);

struct BoundsOptions {
  double epsilon = 1.0;
  int64_t n_mis = 0;
  double lo = 0.0;
  double hi = 1.0;
  int64_t n = 1;
  // Exhaustive oracle on a small grid, e.g. "0,0.5,1".
  std::optional<std::string> oracle_grid;
  int oracle_n = 3;
  // "mean" or "regression".
  std::string oracle_imputer = "mean";
  std::optional<std::string> witness_out;
};

// Prints the sensitivity report as JSON.
int CmdBounds(const BoundsOptions& options, std::ostream& out,
              std::ostream& err);

struct DataOptions {
  std::string data_path;
  double lo = 0.0;
  double hi = 1.0;
  double x_lo = 0.0;
  double x_hi = 1.0;
};

struct ImputeOptions {
  DataOptions data;
  std::string out_path;
  std::optional<std::string> model_path;
  std::optional<std::string> model_out;
  // Fit with the functional mechanism at this epsilon instead of OLS.
  std::optional<double> epsilon;
  bool intercept = true;
  bool stochastic = false;
  uint64_t seed = 0;
};

int CmdImpute(const ImputeOptions& options, std::ostream& out,
              std::ostream& err);

struct QueryOptions {
  DataOptions data;
  std::string strategy = "dp-impute";
  double epsilon = 1.0;
  double split = 0.5;
  uint64_t seed = 0;
  bool intercept = true;
  std::optional<std::string> out_path;
};

// Prints a QueryResult as JSON (stdout or out_path).
int CmdQuery(const QueryOptions& options, std::ostream& out,
             std::ostream& err);

// {"beta": [...], "private": bool, "epsilon_spent": x, "intercept": bool,
//  "sigma2_hat": x}. The last two are optional on input.
nlohmann::json ModelToJson(const OlsFit& fit);
absl::StatusOr<OlsFit> ModelFromJson(const nlohmann::json& j);

nlohmann::json QueryResultToJson(const QueryResult& r);

// Worker count from DPIMPUTE_THREADS; 0 (auto) when unset or invalid.
int ThreadsFromEnvironment();

}  // namespace dpimpute::cli

#endif  // DPIMPUTE_TOOLS_COMMANDS_H_
