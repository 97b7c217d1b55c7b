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

#ifndef DPIMPUTE_TOOLS_BOXPLOT_SVG_H_
#define DPIMPUTE_TOOLS_BOXPLOT_SVG_H_

#include <string>

#include "dpimpute/simulation.h"

namespace dpimpute::cli {

// Static SVG: one box (q1..q3, median bar) per strategy with whiskers to the
// min and max, a red horizontal line at the true mean, and y-axis ticks.
std::string BoxplotSvg(const SimSummary& summary);

}  // namespace dpimpute::cli

#endif  // DPIMPUTE_TOOLS_BOXPLOT_SVG_H_
