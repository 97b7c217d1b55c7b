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

#include "commands.h"

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <set>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "boxplot_svg.h"
#include "dpimpute/dataset_io.h"
#include "dpimpute/imputation.h"
#include "dpimpute/privacy_budget.h"
#include "dpimpute/sensitivity.h"
#include "dpimpute/sensitivity_oracle.h"
#include "dpimpute/strategies.h"

namespace dpimpute::cli {
namespace {

using nlohmann::json;

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return ExitCodeFor(status);
}

absl::Status TypeError(const std::string& key, absl::string_view expected) {
  return absl::InvalidArgumentError(
      absl::StrCat("config key '", key, "' must be ", expected));
}

// Reads j[key] into *out when present.
template <typename T>
absl::Status Read(const json& j, const std::string& key, T* out,
                  absl::string_view expected) {
  auto it = j.find(key);
  if (it == j.end()) return absl::OkStatus();
  if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) return TypeError(key, expected);
  } else if constexpr (std::is_integral_v<T>) {
    if (!it->is_number_integer()) return TypeError(key, expected);
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!it->is_number()) return TypeError(key, expected);
  } else {
    if (!it->is_string()) return TypeError(key, expected);
  }
  *out = it->get<T>();
  return absl::OkStatus();
}

absl::StatusOr<Universe> UniverseFor(const DataOptions& data, int d) {
  return Universe::Create({data.lo, data.hi},
                          std::vector<Interval>(d, {data.x_lo, data.x_hi}));
}

absl::StatusOr<Dataset> LoadDataset(const DataOptions& data) {
  absl::StatusOr<std::string> text = ReadFile(data.data_path);
  if (!text.ok()) return text.status();
  absl::StatusOr<int> d = CsvDimension(*text);
  if (!d.ok()) return d.status();
  absl::StatusOr<Universe> universe = UniverseFor(data, *d);
  if (!universe.ok()) return universe.status();
  absl::StatusOr<Dataset> dataset = DatasetFromCsv(*text, *universe);
  if (!dataset.ok()) return dataset.status();
  std::vector<Violation> violations = Validate(*dataset);
  if (!violations.empty()) {
    std::vector<std::string> lines;
    for (size_t k = 0; k < violations.size() && k < 5; ++k) {
      lines.push_back(violations[k].ToString());
    }
    return absl::InvalidArgumentError(
        absl::StrCat(violations.size(), " value(s) outside the universe: ",
                     absl::StrJoin(lines, "; ")));
  }
  return dataset;
}

absl::StatusOr<std::vector<double>> ParseGrid(const std::string& text) {
  std::vector<double> grid;
  for (absl::string_view part : absl::StrSplit(text, ',')) {
    double v;
    if (!absl::SimpleAtod(part, &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad grid value '", part, "'"));
    }
    grid.push_back(v);
  }
  return grid;
}

std::string WitnessCsv(const NeighborPair& pair) {
  auto body = [](const Dataset& d, absl::string_view tag) {
    std::string csv = DatasetToCsv(d);
    std::string out;
    bool header = true;
    for (absl::string_view line : absl::StrSplit(csv, '\n', absl::SkipEmpty())) {
      if (header) {
        header = false;
        continue;
      }
      absl::StrAppend(&out, tag, ",", line, "\n");
    }
    return out;
  };
  std::string header = DatasetToCsv(pair.d).substr(
      0, DatasetToCsv(pair.d).find('\n') + 1);
  return absl::StrCat("dataset,", header, body(pair.d, "D"),
                      body(pair.d_prime, "D'"));
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
      return kExitBadInput;
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kUnavailable:
    case absl::StatusCode::kDataLoss:
    case absl::StatusCode::kPermissionDenied:
      return kExitIo;
    default:
      return kExitComputation;
  }
}

int ThreadsFromEnvironment() {
  const char* env = std::getenv("DPIMPUTE_THREADS");
  int threads = 0;
  if (env == nullptr || !absl::SimpleAtoi(env, &threads) || threads < 0) {
    return 0;
  }
  return threads;
}

absl::StatusOr<SimulateConfig> ParseSimulateConfig(const json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("config must be a JSON object");
  }
  static const std::set<std::string> kKeys = {
      "n",        "d",         "beta",       "sigma2",
      "epsilon",  "split",     "runs",       "seed",
      "strategies", "intercept", "stochastic", "coefficient_bound",
      "output_dir", "emit_svg"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown config key '", key, "'"));
    }
  }

  SimulateConfig c;
  SimConfig& s = c.sim;
  for (absl::Status st :
       {Read(j, "n", &s.n, "a positive integer"),
        Read(j, "d", &s.d, "a positive integer"),
        Read(j, "sigma2", &s.sigma2, "a number"),
        Read(j, "epsilon", &s.epsilon, "a number"),
        Read(j, "split", &s.split, "a number"),
        Read(j, "runs", &s.runs, "a positive integer"),
        Read(j, "intercept", &s.intercept, "a boolean"),
        Read(j, "stochastic", &s.stochastic, "a boolean"),
        Read(j, "coefficient_bound", &s.coefficient_bound, "a number"),
        Read(j, "output_dir", &c.output_dir, "a string"),
        Read(j, "emit_svg", &c.emit_svg, "a boolean")}) {
    if (!st.ok()) return st;
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) {
      return TypeError("seed", "a nonnegative integer");
    }
    s.seed = it->get<uint64_t>();
  }
  if (auto it = j.find("beta"); it != j.end()) {
    if (!it->is_array()) return TypeError("beta", "an array of numbers");
    s.beta.clear();
    for (const json& v : *it) {
      if (!v.is_number()) return TypeError("beta", "an array of numbers");
      s.beta.push_back(v.get<double>());
    }
    if (!j.contains("d")) s.d = static_cast<int>(s.beta.size());
  } else if (j.contains("d")) {
    s.beta.assign(s.d, 0.5);
  }
  if (auto it = j.find("strategies"); it != j.end()) {
    if (!it->is_array()) return TypeError("strategies", "an array of names");
    s.strategies.clear();
    for (const json& v : *it) {
      if (!v.is_string()) return TypeError("strategies", "an array of names");
      absl::StatusOr<Strategy> st = ParseStrategy(v.get<std::string>());
      if (!st.ok()) return st.status();
      s.strategies.push_back(*st);
    }
  }
  if (absl::Status st = s.Validate(); !st.ok()) return st;
  return c;
}

int CmdSimulate(const SimulateOptions& options, std::ostream& out,
                std::ostream& err) {
  absl::StatusOr<std::string> text = ReadFile(options.config_path);
  if (!text.ok()) return Fail(err, text.status());
  json j = json::parse(*text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    return Fail(err, absl::InvalidArgumentError(
                         absl::StrCat("config is not valid JSON: ",
                                      options.config_path)));
  }
  absl::StatusOr<SimulateConfig> config = ParseSimulateConfig(j);
  if (!config.ok()) return Fail(err, config.status());
  if (options.output_dir) config->output_dir = *options.output_dir;

  absl::StatusOr<SimResult> result =
      MonteCarlo(config->sim, options.threads);
  if (!result.ok()) return Fail(err, result.status());
  for (const RunFailure& f : result->failures) {
    err << "run " << f.run << " " << StrategyName(f.strategy)
        << " failed: " << f.message << "\n";
  }
  if (result->records.empty()) {
    err << "error: all runs failed\n";
    return kExitComputation;
  }

  std::error_code ec;
  std::filesystem::create_directories(config->output_dir, ec);
  if (ec) {
    return Fail(err, absl::UnavailableError(absl::StrCat(
                         "cannot create ", config->output_dir, ": ",
                         ec.message())));
  }
  const std::filesystem::path dir(config->output_dir);
  std::vector<std::pair<std::string, std::string>> files = {
      {"runs.csv", RunsCsv(*result)},
      {"summary.csv", SummaryCsv(result->summary)}};
  if (config->emit_svg) {
    files.push_back({"boxplot.svg", BoxplotSvg(result->summary)});
  }
  for (const auto& [name, contents] : files) {
    if (absl::Status s = WriteFileAtomically((dir / name).string(), contents);
        !s.ok()) {
      return Fail(err, s);
    }
  }
  out << SummaryCsv(result->summary);
  return kExitOk;
}

int CmdBounds(const BoundsOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.epsilon > 0) || !std::isfinite(o.epsilon)) {
    return Fail(err, absl::InvalidArgumentError("--epsilon must be positive"));
  }
  if (o.n < 1 || o.n_mis < 0 || o.n_mis > o.n) {
    return Fail(err, absl::InvalidArgumentError(
                         "need n >= 1 and 0 <= n-mis <= n"));
  }
  absl::StatusOr<Universe> universe = Universe::Create({o.lo, o.hi}, {});
  if (!universe.ok()) return Fail(err, universe.status());
  const double base = *MeanGlobalSensitivity(*universe, o.n);
  SensitivityReport report = InflatedSensitivity(base, o.n_mis);

  json j = {
      {"base_sensitivity", report.base_sensitivity},
      {"inflated_sensitivity", report.inflated_sensitivity},
      {"n_mis", report.n_mis_used},
      {"group_privacy_factor", GroupPrivacyFactor(o.epsilon, o.n_mis + 1)},
      {"uniform_worst_case", UniformWorstCaseFactor(o.epsilon, o.n)},
  };

  if (o.oracle_grid) {
    absl::StatusOr<std::vector<double>> grid = ParseGrid(*o.oracle_grid);
    if (!grid.ok()) return Fail(err, grid.status());
    Imputer imputer;
    if (o.oracle_imputer == "mean") {
      imputer = MeanImputer();
    } else if (o.oracle_imputer == "regression") {
      imputer = RegressionExtrapolationImputer();
    } else {
      return Fail(err, absl::InvalidArgumentError(absl::StrCat(
                           "unknown oracle imputer '", o.oracle_imputer, "'")));
    }
    OracleSpec spec{.grid = *grid, .n = o.oracle_n};
    absl::StatusOr<OracleResult> r =
        BruteForceImputedSensitivity(spec, imputer, MeanResponseQuery());
    if (!r.ok()) return Fail(err, r.status());
    SensitivityReport witness_report =
        InflatedSensitivity(r->base_sensitivity, r->witness_n_mis);
    CertifyTightness(witness_report, r->max_gap);
    json oracle = {
        {"n", o.oracle_n},
        {"imputer", o.oracle_imputer},
        {"max_gap", r->max_gap},
        {"base_sensitivity", r->base_sensitivity},
        {"witness_n_mis", r->witness_n_mis},
        {"witness_bound", witness_report.inflated_sensitivity},
        {"witness_tight", witness_report.bound_tight},
        {"bound_violations", r->bound_violations},
        {"max_bound_ratio", r->max_bound_ratio},
        {"datasets", r->datasets},
        {"evaluations", r->evaluations},
        {"skipped_pairs", r->skipped_pairs},
    };
    if (r->witness) {
      const std::string csv = WitnessCsv(*r->witness);
      if (o.witness_out) {
        if (absl::Status s = WriteFileAtomically(*o.witness_out, csv); !s.ok()) {
          return Fail(err, s);
        }
      } else {
        oracle["witness_csv"] = csv;
      }
    }
    j["oracle"] = oracle;
  }
  j["bound_tight"] = report.bound_tight;
  out << j.dump(2) << "\n";
  return kExitOk;
}

json ModelToJson(const OlsFit& fit) {
  json beta = json::array();
  for (Eigen::Index k = 0; k < fit.beta.size(); ++k) beta.push_back(fit.beta[k]);
  json j = {{"beta", beta},
            {"private", fit.is_private},
            {"epsilon_spent", fit.epsilon_spent},
            {"intercept", fit.intercept}};
  if (fit.sigma2_usable) j["sigma2_hat"] = fit.sigma2_hat;
  return j;
}

absl::StatusOr<OlsFit> ModelFromJson(const json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("model must be an object");
  static const std::set<std::string> kKeys = {"beta", "private", "epsilon_spent",
                                              "intercept", "sigma2_hat"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown model key '", key, "'"));
    }
  }
  for (const char* key : {"beta", "private", "epsilon_spent"}) {
    if (!j.contains(key)) {
      return absl::InvalidArgumentError(
          absl::StrCat("model is missing '", key, "'"));
    }
  }
  OlsFit fit;
  const json& beta = j["beta"];
  if (!beta.is_array() || beta.empty()) {
    return absl::InvalidArgumentError("model 'beta' must be a nonempty array");
  }
  fit.beta.resize(static_cast<Eigen::Index>(beta.size()));
  for (size_t k = 0; k < beta.size(); ++k) {
    if (!beta[k].is_number()) {
      return absl::InvalidArgumentError("model 'beta' must hold numbers");
    }
    fit.beta[static_cast<Eigen::Index>(k)] = beta[k].get<double>();
  }
  if (!j["private"].is_boolean() || !j["epsilon_spent"].is_number()) {
    return absl::InvalidArgumentError(
        "model 'private' must be a boolean and 'epsilon_spent' a number");
  }
  fit.is_private = j["private"].get<bool>();
  fit.epsilon_spent = j["epsilon_spent"].get<double>();
  if (fit.is_private != (fit.epsilon_spent > 0)) {
    return absl::InvalidArgumentError(
        "model 'epsilon_spent' must be positive exactly when 'private'");
  }
  if (j.contains("intercept")) {
    if (!j["intercept"].is_boolean()) {
      return absl::InvalidArgumentError("model 'intercept' must be a boolean");
    }
    fit.intercept = j["intercept"].get<bool>();
  }
  if (fit.num_covariates() < 0) {
    return absl::InvalidArgumentError("model 'beta' is too short");
  }
  if (j.contains("sigma2_hat")) {
    if (!j["sigma2_hat"].is_number() || j["sigma2_hat"].get<double>() < 0) {
      return absl::InvalidArgumentError(
          "model 'sigma2_hat' must be a nonnegative number");
    }
    fit.sigma2_hat = j["sigma2_hat"].get<double>();
    fit.sigma2_usable = !fit.is_private;
  }
  return fit;
}

int CmdImpute(const ImputeOptions& o, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Dataset> data = LoadDataset(o.data);
  if (!data.ok()) return Fail(err, data.status());
  RandomSource rng(o.seed);

  ImputationModel model;
  if (o.model_path) {
    if (o.epsilon) {
      return Fail(err, absl::InvalidArgumentError(
                           "--model and --epsilon are mutually exclusive"));
    }
    absl::StatusOr<std::string> text = ReadFile(*o.model_path);
    if (!text.ok()) return Fail(err, text.status());
    json j = json::parse(*text, nullptr, false);
    if (j.is_discarded()) {
      return Fail(err, absl::InvalidArgumentError("model is not valid JSON"));
    }
    absl::StatusOr<OlsFit> fit = ModelFromJson(j);
    if (!fit.ok()) return Fail(err, fit.status());
    if (o.stochastic && !fit->sigma2_usable) {
      return Fail(err, absl::InvalidArgumentError(
                           "--stochastic needs a non-private model with "
                           "sigma2_hat"));
    }
    model = {*std::move(fit), o.stochastic, data->universe()};
  } else if (CountMissing(*data) == 0) {
    // Nothing to impute; no model is fitted and no budget is spent.
    model = {OlsFit{.beta = Eigen::VectorXd::Zero(data->dimension())}, false,
             data->universe()};
  } else {
    absl::StatusOr<ImputationModel> fitted = FitImputationModel(
        *data,
        {.dp_epsilon = o.epsilon,
         .intercept = o.intercept,
         .stochastic = o.stochastic},
        rng);
    if (!fitted.ok()) return Fail(err, fitted.status());
    model = *std::move(fitted);
  }

  absl::StatusOr<Dataset> completed = Impute(*data, model, rng);
  if (!completed.ok()) return Fail(err, completed.status());
  if (o.model_out) {
    if (absl::Status s =
            WriteFileAtomically(*o.model_out, ModelToJson(model.fit).dump(2) + "\n");
        !s.ok()) {
      return Fail(err, s);
    }
  }
  if (absl::Status s = WriteFileAtomically(o.out_path, DatasetToCsv(*completed));
      !s.ok()) {
    return Fail(err, s);
  }
  out << "imputed " << CountMissing(*data) << " of " << data->size()
      << " responses\n";
  return kExitOk;
}

json QueryResultToJson(const QueryResult& r) {
  json ledger = json::array();
  for (const LedgerEntry& e : r.ledger) {
    ledger.push_back({{"label", e.label}, {"epsilon", e.epsilon}});
  }
  return {{"strategy", std::string(StrategyName(r.strategy))},
          {"value", r.value},
          {"sensitivity_used", r.sensitivity_used},
          {"noise_scale", r.noise_scale},
          {"epsilon_spent_total", r.epsilon_spent_total},
          {"n_mis_at_query", r.n_mis_at_query},
          {"ledger", ledger}};
}

int CmdQuery(const QueryOptions& o, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Strategy> strategy = ParseStrategy(o.strategy);
  if (!strategy.ok()) return Fail(err, strategy.status());
  absl::StatusOr<PrivacyBudget> budget = PrivacyBudget::Create(o.epsilon, o.split);
  if (!budget.ok()) return Fail(err, budget.status());
  absl::StatusOr<Dataset> data = LoadDataset(o.data);
  if (!data.ok()) return Fail(err, data.status());

  RandomSource rng(o.seed);
  absl::StatusOr<QueryResult> r = RunStrategy(
      *strategy, *data, *budget, rng, {.intercept = o.intercept});
  if (!r.ok()) {
    return Fail(err, r.status().code() == absl::StatusCode::kInvalidArgument
                         ? absl::InvalidArgumentError(r.status().message())
                         : absl::FailedPreconditionError(r.status().message()));
  }
  const std::string text = QueryResultToJson(*r).dump(2) + "\n";
  if (o.out_path) {
    if (absl::Status s = WriteFileAtomically(*o.out_path, text); !s.ok()) {
      return Fail(err, s);
    }
  } else {
    out << text;
  }
  return kExitOk;
}

}  // namespace dpimpute::cli
