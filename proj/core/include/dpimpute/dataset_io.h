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

#ifndef DPIMPUTE_DATASET_IO_H_
#define DPIMPUTE_DATASET_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpimpute/dataset.h"

namespace dpimpute {

// Dataset CSV format:
//
//   x1,...,xd,y,missing
//   0.25,0.5,0.375,0
//   0.75,0.1,,1
//
// UTF-8, LF line endings, doubles in shortest round-trip form. Masked rows
// carry an empty y field. The universe is not part of the file; readers
// supply it.

// Shortest decimal string that parses back to exactly `v`.
std::string FormatDouble(double v);

std::string DatasetToCsv(const Dataset& d);

// The header determines d, which must match `universe.dimension()`.
// Values are not bounds-checked here; see Validate().
absl::StatusOr<Dataset> DatasetFromCsv(absl::string_view text,
                                       const Universe& universe);

// Column count implied by a CSV header, i.e. d for `x1,...,xd,y,missing`.
absl::StatusOr<int> CsvDimension(absl::string_view text);

absl::StatusOr<std::string> ReadFile(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partial file.
absl::Status WriteFileAtomically(const std::string& path,
                                 absl::string_view contents);

}  // namespace dpimpute

#endif  // DPIMPUTE_DATASET_IO_H_
