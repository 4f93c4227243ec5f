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

// Laplace mechanism for Euler histograms.
//
// A body of diameter at most B spans at most m = ceil(B / d) + 1 cells per
// axis, so it touches at most the m^2 faces, 2m(m - 1) edges and (m - 1)^2
// vertices of an m x m block: 4m(m - 1) + 1 components. Swapping one body
// therefore moves the count vector by at most that much in L1.

#ifndef DPEULER_PRIVACY_H_
#define DPEULER_PRIVACY_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpeuler/histogram.h"
#include "dpeuler/random.h"

namespace dpeuler {

// ceil(B / d), treating quotients within 1e-9 (relative) of an integer as
// that integer so that e.g. d = 20/30 km, B = 2 km gives 3.
absl::StatusOr<int64_t> CellsSpanned(double diameter_bound, double cell_side);

// Exact L1 global sensitivity 4m(m - 1) + 1 with m = ceil(B / d) + 1.
absl::StatusOr<int64_t> GlobalSensitivity(double diameter_bound,
                                          double cell_side);

// The looser closed form 4.5 (ceil(B / d) + 1) ceil(B / d). Always at least
// GlobalSensitivity().
absl::StatusOr<double> GlobalSensitivityClosedForm(double diameter_bound,
                                                   double cell_side);

class PrivacyParams {
 public:
  static absl::StatusOr<PrivacyParams> Create(double epsilon,
                                              double diameter_bound,
                                              double cell_side);

  double epsilon() const { return epsilon_; }
  double diameter_bound() const { return diameter_bound_; }
  double sensitivity() const { return sensitivity_; }
  // Laplace scale: sensitivity / epsilon.
  double lambda() const { return sensitivity_ / epsilon_; }

 private:
  PrivacyParams(double epsilon, double diameter_bound, double sensitivity)
      : epsilon_(epsilon),
        diameter_bound_(diameter_bound),
        sensitivity_(sensitivity) {}

  double epsilon_;
  double diameter_bound_;
  double sensitivity_;
};

// Inverse-CDF Laplace(0, lambda) draw from u in (-1/2, 1/2):
// -lambda * sign(u) * ln(1 - 2|u|).
double LaplaceFromUniform(double lambda, double u);

absl::StatusOr<double> SampleLaplace(double lambda, const UniformSource& source,
                                     uint64_t index);

// Adds independent Laplace(0, lambda) noise to every count of a raw
// histogram and truncates negative results to zero. Component i uses draw i
// of `source`. The input is not modified.
absl::StatusOr<EulerHistogram> Perturb(const EulerHistogram& raw,
                                       const PrivacyParams& params,
                                       const UniformSource& source);

// lambda * log(components / delta): with probability at least 1 - delta the
// noisy histogram is within this distance of the raw one in L-infinity.
absl::StatusOr<double> DpUtilityBound(double delta, double lambda,
                                      double component_count);

// High-probability L-infinity bound between the raw and the final rounded
// histogram:
//   9 (ceil(B/d) + 1) ceil(B/d) / epsilon * log((4A^2/d^2 - 4A/d + 1) / delta)
//   + 0.5
absl::StatusOr<double> EndToEndUtilityBound(double delta, double epsilon,
                                            double diameter_bound,
                                            double cell_side, double area_side);

}  // namespace dpeuler

#endif  // DPEULER_PRIVACY_H_
