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

#include "dpimpute/dataset_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"

namespace dpimpute {
namespace {

std::vector<absl::string_view> Lines(absl::string_view text) {
  std::vector<absl::string_view> lines;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    absl::ConsumeSuffix(&line, "\r");
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

absl::StatusOr<int> HeaderDimension(absl::string_view header) {
  std::vector<absl::string_view> cols = absl::StrSplit(header, ',');
  if (cols.size() < 2 || cols[cols.size() - 2] != "y" ||
      cols.back() != "missing") {
    return absl::InvalidArgumentError(
        "CSV header must be x1,...,xd,y,missing");
  }
  const int d = static_cast<int>(cols.size()) - 2;
  for (int j = 0; j < d; ++j) {
    if (cols[j] != absl::StrCat("x", j + 1)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "CSV header column ", j + 1, " must be x", j + 1, ", got '",
          cols[j], "'"));
    }
  }
  return d;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string DatasetToCsv(const Dataset& d) {
  std::string out;
  for (int j = 0; j < d.dimension(); ++j) absl::StrAppend(&out, "x", j + 1, ",");
  out += "y,missing\n";
  for (int64_t i = 0; i < d.size(); ++i) {
    for (int j = 0; j < d.dimension(); ++j) {
      absl::StrAppend(&out, FormatDouble(d.covariates()(i, j)), ",");
    }
    if (d.is_missing(i)) {
      out += ",1\n";
    } else {
      absl::StrAppend(&out, FormatDouble(d.response()[i]), ",0\n");
    }
  }
  return out;
}

absl::StatusOr<int> CsvDimension(absl::string_view text) {
  std::vector<absl::string_view> lines = Lines(text);
  if (lines.empty()) return absl::InvalidArgumentError("empty CSV");
  return HeaderDimension(lines.front());
}

absl::StatusOr<Dataset> DatasetFromCsv(absl::string_view text,
                                       const Universe& universe) {
  std::vector<absl::string_view> lines = Lines(text);
  if (lines.empty()) return absl::InvalidArgumentError("empty CSV");
  absl::StatusOr<int> d = HeaderDimension(lines.front());
  if (!d.ok()) return d.status();
  if (*d != universe.dimension()) {
    return absl::InvalidArgumentError(
        absl::StrCat("CSV has ", *d, " covariates but the universe has ",
                     universe.dimension()));
  }
  const int64_t n = static_cast<int64_t>(lines.size()) - 1;
  Eigen::MatrixXd x(n, *d);
  Eigen::VectorXd y(n);
  std::vector<bool> mask(static_cast<size_t>(n));
  for (int64_t i = 0; i < n; ++i) {
    const int64_t line_no = i + 2;
    std::vector<absl::string_view> f = absl::StrSplit(lines[i + 1], ',');
    if (static_cast<int>(f.size()) != *d + 2) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_no, ": expected ", *d + 2, " fields, got ", f.size()));
    }
    for (int j = 0; j < *d; ++j) {
      if (!absl::SimpleAtod(f[j], &x(i, j)) || !std::isfinite(x(i, j))) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_no, ": bad x", j + 1, " '", f[j], "'"));
      }
    }
    const absl::string_view flag = f[*d + 1];
    if (flag == "1") {
      if (!f[*d].empty()) {
        return absl::InvalidArgumentError(absl::StrCat(
            "line ", line_no, ": missing response must have an empty y"));
      }
      mask[i] = true;
      y[i] = std::numeric_limits<double>::quiet_NaN();
    } else if (flag == "0") {
      if (!absl::SimpleAtod(f[*d], &y[i]) || !std::isfinite(y[i])) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_no, ": bad y '", f[*d], "'"));
      }
    } else {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_no, ": missing flag must be 0 or 1, got '", flag,
          "'"));
    }
  }
  return Dataset::Create(std::move(x), std::move(y), std::move(mask), universe);
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat("read failed: ", path));
  return ss.str();
}

absl::Status WriteFileAtomically(const std::string& path,
                                 absl::string_view contents) {
  const std::string tmp = absl::StrCat(path, ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      return absl::UnavailableError(absl::StrCat("cannot open ", tmp));
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      return absl::DataLossError(absl::StrCat("write failed: ", tmp));
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    return absl::UnavailableError(
        absl::StrCat("rename ", tmp, " -> ", path, ": ", ec.message()));
  }
  return absl::OkStatus();
}

}  // namespace dpimpute
