// Copyright 2026 The dpeuler Authors
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

#include "dpeuler/privacy.h"

#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpeuler/internal/status_macros.h"

namespace dpeuler {

uint64_t SplitMixRng::Below(uint64_t bound) {
  // Lemire's nearly-divisionless rejection.
  __uint128_t m = static_cast<__uint128_t>((*this)()) * bound;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < bound) {
    const uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<__uint128_t>((*this)()) * bound;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

double SplitMixRng::Normal() {
  double u1 = Uniform();
  while (u1 <= 0.0) u1 = Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

absl::StatusOr<int64_t> CellsSpanned(double diameter_bound, double cell_side) {
  if (!(diameter_bound > 0.0) || !(cell_side > 0.0) ||
      !std::isfinite(diameter_bound) || !std::isfinite(cell_side)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "diameter bound and cell side must be positive, got B=", diameter_bound,
        " d=", cell_side));
  }
  const double q = diameter_bound / cell_side;
  const double nearest = std::round(q);
  if (std::abs(q - nearest) <= 1e-9 * std::max(1.0, q)) {
    return static_cast<int64_t>(nearest);
  }
  return static_cast<int64_t>(std::ceil(q));
}

absl::StatusOr<int64_t> GlobalSensitivity(double diameter_bound,
                                          double cell_side) {
  DPEULER_ASSIGN_OR_RETURN(const int64_t c,
                           CellsSpanned(diameter_bound, cell_side));
  const int64_t m = c + 1;
  return 4 * m * (m - 1) + 1;
}

absl::StatusOr<double> GlobalSensitivityClosedForm(double diameter_bound,
                                                   double cell_side) {
  DPEULER_ASSIGN_OR_RETURN(const int64_t c,
                           CellsSpanned(diameter_bound, cell_side));
  return 4.5 * static_cast<double>(c + 1) * static_cast<double>(c);
}

absl::StatusOr<PrivacyParams> PrivacyParams::Create(double epsilon,
                                                    double diameter_bound,
                                                    double cell_side) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  DPEULER_ASSIGN_OR_RETURN(const int64_t sensitivity,
                           GlobalSensitivity(diameter_bound, cell_side));
  return PrivacyParams(epsilon, diameter_bound,
                       static_cast<double>(sensitivity));
}

double LaplaceFromUniform(double lambda, double u) {
  if (u == 0.0) return 0.0;
  const double magnitude = -lambda * std::log1p(-2.0 * std::abs(u));
  return u > 0.0 ? magnitude : -magnitude;
}

absl::StatusOr<double> SampleLaplace(double lambda, const UniformSource& source,
                                     uint64_t index) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive, got ", lambda));
  }
  return LaplaceFromUniform(lambda, source.Centered(index));
}

absl::StatusOr<EulerHistogram> Perturb(const EulerHistogram& raw,
                                       const PrivacyParams& params,
                                       const UniformSource& source) {
  DPEULER_RETURN_IF_ERROR(ExpectState(raw.state(), HistogramState::kRaw));
  const double lambda = params.lambda();
  std::vector<double> noisy(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    const double value =
        raw[i] + LaplaceFromUniform(lambda, source.Centered(i));
    noisy[i] = value < 0.0 ? 0.0 : value;
  }
  return EulerHistogram::Create(raw.partition(), std::move(noisy),
                                HistogramState::kNoisy);
}

absl::StatusOr<double> DpUtilityBound(double delta, double lambda,
                                      double component_count) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (!(lambda > 0.0) || !(component_count >= 1.0)) {
    return absl::InvalidArgumentError(
        "lambda must be positive and the component count at least 1");
  }
  return lambda * std::log(component_count / delta);
}

absl::StatusOr<double> EndToEndUtilityBound(double delta, double epsilon,
                                            double diameter_bound,
                                            double cell_side,
                                            double area_side) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (!(epsilon > 0.0) || !(area_side > 0.0)) {
    return absl::InvalidArgumentError("epsilon and area side must be positive");
  }
  DPEULER_ASSIGN_OR_RETURN(const int64_t c,
                           CellsSpanned(diameter_bound, cell_side));
  const double ratio = area_side / cell_side;
  const double components = 4.0 * ratio * ratio - 4.0 * ratio + 1.0;
  return 9.0 * static_cast<double>(c + 1) * static_cast<double>(c) / epsilon *
             std::log(components / delta) +
         0.5;
}

}  // namespace dpeuler
