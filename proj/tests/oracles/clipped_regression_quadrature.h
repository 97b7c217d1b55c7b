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

// Test-only moments of the simulation generator by numerical integration:
// X ~ U(0,1)^2, Y = clip(0.5 X1 + 0.5 X2 + tau, 0, 1), tau ~ N(0, s^2),
// Pr(M = 1 | X) = X1.
//
// E[clip(mu + tau) | mu] and E[clip(mu + tau)^2 | mu] have closed forms in
// the normal CDF/PDF; the outer integral over (x1, x2) uses tensor-product
// Gauss-Legendre on [0, 1]^2.

#ifndef DPIMPUTE_TESTS_ORACLES_CLIPPED_REGRESSION_QUADRATURE_H_
#define DPIMPUTE_TESTS_ORACLES_CLIPPED_REGRESSION_QUADRATURE_H_

#include <array>
#include <cmath>
#include <functional>
#include <numbers>

namespace dpimpute::testing {

inline double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double NormalPdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// E[clip(mu + s Z, 0, 1)].
inline double ClippedMean(double mu, double s) {
  const double a = (0.0 - mu) / s;
  const double b = (1.0 - mu) / s;
  return (1.0 - NormalCdf(b)) + mu * (NormalCdf(b) - NormalCdf(a)) +
         s * (NormalPdf(a) - NormalPdf(b));
}

// E[clip(mu + s Z, 0, 1)^2].
inline double ClippedSecondMoment(double mu, double s) {
  const double a = (0.0 - mu) / s;
  const double b = (1.0 - mu) / s;
  const double mass = NormalCdf(b) - NormalCdf(a);
  // E[(mu + sZ)^2 1{a < Z < b}]
  const double inner = mu * mu * mass + 2 * mu * s * (NormalPdf(a) - NormalPdf(b)) +
                       s * s * (mass + a * NormalPdf(a) - b * NormalPdf(b));
  return (1.0 - NormalCdf(b)) + inner;
}

// Composite 10-point Gauss-Legendre over [0,1] split into `panels` pieces.
inline double Integrate01(const std::function<double(double)>& f,
                          int panels = 64) {
  static constexpr std::array<double, 5> kNodes = {
      0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
      0.8650633666889845, 0.9739065285171717};
  static constexpr std::array<double, 5> kWeights = {
      0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
      0.1494513491505806, 0.0666713443086881};
  double total = 0.0;
  const double h = 1.0 / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = (k + 0.5) * h;
    for (size_t q = 0; q < kNodes.size(); ++q) {
      const double dx = 0.5 * h * kNodes[q];
      total += 0.5 * h * kWeights[q] * (f(mid - dx) + f(mid + dx));
    }
  }
  return total;
}

inline double IntegrateUnitSquare(const std::function<double(double, double)>& f) {
  return Integrate01([&](double x1) {
    return Integrate01([&](double x2) { return f(x1, x2); }, 32);
  }, 32);
}

// E[Y | M = 0] = E[(1 - X1) Y] / E[1 - X1].
inline double ObservedResponseMean(double sigma2) {
  const double s = std::sqrt(sigma2);
  return IntegrateUnitSquare([&](double x1, double x2) {
           return (1.0 - x1) * ClippedMean(0.5 * x1 + 0.5 * x2, s);
         }) /
         0.5;
}

inline double ResponseMean(double sigma2) {
  const double s = std::sqrt(sigma2);
  return IntegrateUnitSquare([&](double x1, double x2) {
    return ClippedMean(0.5 * x1 + 0.5 * x2, s);
  });
}

inline double ResponseVariance(double sigma2) {
  const double s = std::sqrt(sigma2);
  const double m = ResponseMean(sigma2);
  return IntegrateUnitSquare([&](double x1, double x2) {
           return ClippedSecondMoment(0.5 * x1 + 0.5 * x2, s);
         }) -
         m * m;
}

}  // namespace dpimpute::testing

#endif  // DPIMPUTE_TESTS_ORACLES_CLIPPED_REGRESSION_QUADRATURE_H_
