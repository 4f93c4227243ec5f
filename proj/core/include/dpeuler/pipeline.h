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

// The release pipeline Raw -> Noisy -> Consistent -> Rounded in one call.

#ifndef DPEULER_PIPELINE_H_
#define DPEULER_PIPELINE_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpeuler/histogram.h"
#include "dpeuler/inference.h"
#include "dpeuler/lp.h"
#include "dpeuler/rounding.h"

namespace dpeuler {

struct PipelineOptions {
  double epsilon = 1.0;
  double diameter_bound = 0.0;
  InferenceObjective objective = InferenceObjective::kL1;
  // Replaces the Laplace draws by zeros. For tests and calibration only: the
  // output is then not private.
  bool zero_noise = false;
  SolveOptions solve;
};

struct StageTimes {
  double perturb_seconds = 0.0;
  double infer_seconds = 0.0;
  double round_seconds = 0.0;
};

struct PipelineOutput {
  EulerHistogram noisy;
  EulerHistogram consistent;
  // Rounded before repair.
  EulerHistogram rounded;
  // Rounded and repaired: the releasable histogram.
  EulerHistogram released;
  SolveReport solve;
  double repair_cost = 0.0;
  StageTimes times;
};

// Noise for component i comes from draw i of a counter stream keyed by
// `noise_seed`.
absl::StatusOr<PipelineOutput> RunPipeline(const EulerHistogram& raw,
                                           const ConstraintSet& constraints,
                                           const PipelineOptions& options,
                                           uint64_t noise_seed);

}  // namespace dpeuler

#endif  // DPEULER_PIPELINE_H_
