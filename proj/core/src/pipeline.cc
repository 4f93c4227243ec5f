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

#include "dpeuler/pipeline.h"

#include <chrono>
#include <memory>

#include "dpeuler/internal/status_macros.h"
#include "dpeuler/privacy.h"
#include "dpeuler/random.h"

namespace dpeuler {
namespace {

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

absl::StatusOr<PipelineOutput> RunPipeline(const EulerHistogram& raw,
                                           const ConstraintSet& constraints,
                                           const PipelineOptions& options,
                                           uint64_t noise_seed) {
  DPEULER_ASSIGN_OR_RETURN(
      PrivacyParams params,
      PrivacyParams::Create(options.epsilon, options.diameter_bound,
                            raw.partition().cell_side()));
  std::unique_ptr<UniformSource> source;
  if (options.zero_noise) {
    source = std::make_unique<ConstantUniformSource>(0.0);
  } else {
    source = std::make_unique<CounterUniformSource>(noise_seed);
  }
  StageTimes times;
  auto start = std::chrono::steady_clock::now();
  DPEULER_ASSIGN_OR_RETURN(EulerHistogram noisy, Perturb(raw, params, *source));
  times.perturb_seconds = SecondsSince(start);

  start = std::chrono::steady_clock::now();
  DPEULER_ASSIGN_OR_RETURN(
      InferenceResult inferred,
      Infer(noisy, constraints, options.objective, options.solve));
  times.infer_seconds = SecondsSince(start);

  start = std::chrono::steady_clock::now();
  DPEULER_ASSIGN_OR_RETURN(EulerHistogram rounded,
                           RoundCounts(inferred.histogram));
  DPEULER_ASSIGN_OR_RETURN(RepairResult repaired, Repair(rounded, constraints));
  times.round_seconds = SecondsSince(start);

  return PipelineOutput{std::move(noisy),
                        std::move(inferred.histogram),
                        std::move(rounded),
                        std::move(repaired.histogram),
                        inferred.report,
                        repaired.cost,
                        times};
}

}  // namespace dpeuler
