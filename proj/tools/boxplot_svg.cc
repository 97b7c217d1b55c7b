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

#include "boxplot_svg.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace dpimpute::cli {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 30;
constexpr double kBottom = 50;

double NiceStep(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / magnitude;
  const double nice = r < 1.5 ? 1 : r < 3 ? 2 : r < 7 ? 5 : 10;
  return nice * magnitude;
}

std::string Num(double v) { return absl::StrFormat("%.2f", v); }

}  // namespace

std::string BoxplotSvg(const SimSummary& summary) {
  double lo = summary.true_mean;
  double hi = summary.true_mean;
  for (const StrategySummary& s : summary.strategies) {
    if (!s.stats) continue;
    lo = std::min(lo, s.stats->min);
    hi = std::max(hi, s.stats->max);
  }
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double step = NiceStep(hi - lo, 6);
  lo = std::floor(lo / step) * step;
  hi = std::ceil(hi / step) * step;

  const double plot_h = kHeight - kTop - kBottom;
  const double plot_w = kWidth - kLeft - kRight;
  auto y_of = [&](double v) { return kTop + (hi - v) / (hi - lo) * plot_h; };

  std::string svg = absl::StrFormat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
      "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
      static_cast<int>(kWidth), static_cast<int>(kHeight),
      static_cast<int>(kWidth), static_cast<int>(kHeight));
  absl::StrAppend(&svg, "<text x=\"", Num(kWidth / 2), "\" y=\"18\" ",
                  "text-anchor=\"middle\">Estimated mean across runs</text>\n");

  // Axis and ticks.
  absl::StrAppend(&svg, "<line x1=\"", Num(kLeft), "\" y1=\"", Num(kTop),
                  "\" x2=\"", Num(kLeft), "\" y2=\"", Num(kTop + plot_h),
                  "\" stroke=\"black\"/>\n");
  for (int k = 0;; ++k) {
    const double v = lo + k * step;
    if (v > hi + step * 1e-9) break;
    const double y = y_of(v);
    absl::StrAppend(&svg, "<line x1=\"", Num(kLeft - 5), "\" y1=\"", Num(y),
                    "\" x2=\"", Num(kLeft), "\" y2=\"", Num(y),
                    "\" stroke=\"black\"/>\n");
    absl::StrAppend(&svg, "<text x=\"", Num(kLeft - 8), "\" y=\"", Num(y + 4),
                    "\" text-anchor=\"end\">",
                    absl::StrFormat("%g", std::abs(v) < step * 1e-9 ? 0.0 : v),
                    "</text>\n");
  }

  const size_t count = summary.strategies.size();
  const double slot = plot_w / std::max<size_t>(count, 1);
  for (size_t k = 0; k < count; ++k) {
    const StrategySummary& s = summary.strategies[k];
    const double cx = kLeft + slot * (k + 0.5);
    absl::StrAppend(&svg, "<text x=\"", Num(cx), "\" y=\"",
                    Num(kTop + plot_h + 20), "\" text-anchor=\"middle\">",
                    StrategyName(s.strategy), "</text>\n");
    if (!s.stats) continue;
    const FiveNumberSummary& f = *s.stats;
    const double half = std::min(slot * 0.3, 60.0);
    absl::StrAppend(&svg, "<line x1=\"", Num(cx), "\" y1=\"", Num(y_of(f.max)),
                    "\" x2=\"", Num(cx), "\" y2=\"", Num(y_of(f.q3)),
                    "\" stroke=\"black\"/>\n");
    absl::StrAppend(&svg, "<line x1=\"", Num(cx), "\" y1=\"", Num(y_of(f.q1)),
                    "\" x2=\"", Num(cx), "\" y2=\"", Num(y_of(f.min)),
                    "\" stroke=\"black\"/>\n");
    for (double v : {f.min, f.max}) {
      absl::StrAppend(&svg, "<line x1=\"", Num(cx - half / 2), "\" y1=\"",
                      Num(y_of(v)), "\" x2=\"", Num(cx + half / 2),
                      "\" y2=\"", Num(y_of(v)), "\" stroke=\"black\"/>\n");
    }
    absl::StrAppend(&svg, "<rect x=\"", Num(cx - half), "\" y=\"",
                    Num(y_of(f.q3)), "\" width=\"", Num(2 * half),
                    "\" height=\"", Num(std::max(y_of(f.q1) - y_of(f.q3), 0.5)),
                    "\" fill=\"#cfe0f3\" stroke=\"black\"/>\n");
    absl::StrAppend(&svg, "<line x1=\"", Num(cx - half), "\" y1=\"",
                    Num(y_of(f.median)), "\" x2=\"", Num(cx + half),
                    "\" y2=\"", Num(y_of(f.median)),
                    "\" stroke=\"black\" stroke-width=\"2\"/>\n");
  }

  const double ty = y_of(summary.true_mean);
  absl::StrAppend(&svg, "<line x1=\"", Num(kLeft), "\" y1=\"", Num(ty),
                  "\" x2=\"", Num(kLeft + plot_w), "\" y2=\"", Num(ty),
                  "\" stroke=\"red\" stroke-width=\"1.5\"/>\n");
  svg += "</svg>\n";
  return svg;
}

}  // namespace dpimpute::cli
