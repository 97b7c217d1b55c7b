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

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"

namespace {

void AddDataOptions(CLI::App* cmd, dpimpute::cli::DataOptions& data) {
  cmd->add_option("--data", data.data_path, "Dataset CSV (x1,...,xd,y,missing)")
      ->required();
  cmd->add_option("--lo", data.lo, "Lower response bound a")
      ->capture_default_str();
  cmd->add_option("--hi", data.hi, "Upper response bound b")
      ->capture_default_str();
  cmd->add_option("--x-lo", data.x_lo, "Lower bound of every covariate")
      ->capture_default_str();
  cmd->add_option("--x-hi", data.x_hi, "Upper bound of every covariate")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = dpimpute::cli;

  CLI::App app{
      "dpimpute: differentially private imputation toolkit and Monte Carlo "
      "harness.\n\nEnvironment: DPIMPUTE_THREADS caps the simulate worker "
      "count (0 = auto)."};
  app.require_subcommand(1);

  cli::SimulateOptions sim;
  std::string sim_out;
  CLI::App* simulate = app.add_subcommand(
      "simulate",
      "Run the three-strategy Monte Carlo experiment; writes runs.csv, "
      "summary.csv and boxplot.svg");
  simulate->add_option("--config", sim.config_path, "JSON config file")
      ->required();
  simulate->add_option("--output-dir", sim_out,
                       "Overrides output_dir from the config");

  cli::BoundsOptions bounds;
  std::string grid, witness_out;
  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "Print base and inflated sensitivity of the mean as JSON");
  bounds_cmd->add_option("--epsilon", bounds.epsilon, "Per-query epsilon")
      ->required();
  bounds_cmd->add_option("--n-mis", bounds.n_mis, "Number of missing responses")
      ->required();
  bounds_cmd->add_option("--lo", bounds.lo, "Lower response bound a")->required();
  bounds_cmd->add_option("--hi", bounds.hi, "Upper response bound b")->required();
  bounds_cmd->add_option("--n", bounds.n, "Number of records")->required();
  bounds_cmd->add_option("--oracle-grid", grid,
                         "Also run the exhaustive oracle on this grid, "
                         "e.g. 0,0.5,1");
  bounds_cmd->add_option("--oracle-n", bounds.oracle_n, "Oracle dataset size")
      ->capture_default_str();
  bounds_cmd->add_option("--oracle-imputer", bounds.oracle_imputer,
                         "mean | regression")
      ->capture_default_str();
  bounds_cmd->add_option("--witness-out", witness_out,
                         "Write the oracle's witness pair to this CSV");

  cli::ImputeOptions impute;
  std::string model_path, model_out;
  double impute_epsilon = 0;
  bool no_intercept = false;
  CLI::App* impute_cmd = app.add_subcommand(
      "impute", "Fill missing responses by regression imputation");
  AddDataOptions(impute_cmd, impute.data);
  impute_cmd->add_option("--out", impute.out_path, "Completed dataset CSV")
      ->required();
  impute_cmd->add_option("--model", model_path,
                         "Model JSON to apply instead of fitting");
  impute_cmd->add_option("--model-out", model_out, "Write the model JSON here");
  CLI::Option* eps_opt = impute_cmd->add_option(
      "--epsilon", impute_epsilon,
      "Fit the model with the functional mechanism at this epsilon");
  impute_cmd->add_flag("--no-intercept", no_intercept,
                       "Fit without a constant column");
  impute_cmd->add_flag("--stochastic", impute.stochastic,
                       "Add N(0, sigma2_hat) to predictions (non-private only)");
  impute_cmd->add_option("--seed", impute.seed)->capture_default_str();

  cli::QueryOptions query;
  bool query_no_intercept = false;
  std::string query_out;
  CLI::App* query_cmd = app.add_subcommand(
      "query", "Release the mean of y under one of the three strategies");
  AddDataOptions(query_cmd, query.data);
  query_cmd->add_option("--strategy", query.strategy)
      ->check(CLI::IsMember({"available-case", "impute", "dp-impute"}))
      ->capture_default_str();
  query_cmd->add_option("--epsilon", query.epsilon, "Total epsilon")
      ->capture_default_str();
  query_cmd->add_option("--split", query.split,
                        "Fraction of epsilon spent on imputation (dp-impute)")
      ->capture_default_str();
  query_cmd->add_option("--seed", query.seed)->capture_default_str();
  query_cmd->add_flag("--no-intercept", query_no_intercept,
                      "Imputation model without a constant column");
  query_cmd->add_option("--out", query_out, "Write the JSON result here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitBadInput;
  }

  if (simulate->parsed()) {
    if (!sim_out.empty()) sim.output_dir = sim_out;
    sim.threads = cli::ThreadsFromEnvironment();
    return cli::CmdSimulate(sim, std::cout, std::cerr);
  }
  if (bounds_cmd->parsed()) {
    if (!grid.empty()) bounds.oracle_grid = grid;
    if (!witness_out.empty()) bounds.witness_out = witness_out;
    return cli::CmdBounds(bounds, std::cout, std::cerr);
  }
  if (impute_cmd->parsed()) {
    if (!model_path.empty()) impute.model_path = model_path;
    if (!model_out.empty()) impute.model_out = model_out;
    if (eps_opt->count() > 0) impute.epsilon = impute_epsilon;
    impute.intercept = !no_intercept;
    return cli::CmdImpute(impute, std::cout, std::cerr);
  }
  if (query_cmd->parsed()) {
    query.intercept = !query_no_intercept;
    if (!query_out.empty()) query.out_path = query_out;
    return cli::CmdQuery(query, std::cout, std::cerr);
  }
  return cli::kExitBadInput;
}
