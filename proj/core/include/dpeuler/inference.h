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

// Constrained inference: projects a noisy histogram onto the set of
// histograms satisfying the consistency constraints
//
//   C1  E_e <= F_f                 for each edge e and incident face f
//   C2  V_v <= E_e                 for each vertex v and incident edge e
//   C3  sum F - sum E + V_v >= 0   over the 2x2 block around each vertex v
//
// by minimising the L1 (default) or L-infinity distance to the noisy counts.

#ifndef DPEULER_INFERENCE_H_
#define DPEULER_INFERENCE_H_

#include <array>
#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpeuler/grid.h"
#include "dpeuler/histogram.h"
#include "dpeuler/lp.h"

namespace dpeuler {

struct BlockConstraint {
  size_t vertex = 0;
  std::array<size_t, 4> faces{};
  std::array<size_t, 4> edges{};
};

// Constraint rows in canonical order: C1 by edge then face, C2 by vertex then
// edge, C3 by vertex.
struct ConstraintSet {
  std::vector<std::pair<size_t, size_t>> c1;  // (edge, face)
  std::vector<std::pair<size_t, size_t>> c2;  // (vertex, edge)
  std::vector<BlockConstraint> c3;

  size_t size() const { return c1.size() + c2.size() + c3.size(); }
};

ConstraintSet BuildConstraints(const GridPartition& grid);

enum class InferenceObjective { kL1, kLinf };

std::string_view InferenceObjectiveName(InferenceObjective objective);
absl::StatusOr<InferenceObjective> ParseInferenceObjective(
    std::string_view name);

// Variables x_0..x_{N-1} are the consistent counts. For kL1 they are followed
// by one residual h_i per count; for kLinf by a single residual t. Rows are
// the residual pairs (component by component) followed by the constraint rows
// in canonical order.
absl::StatusOr<LinearProgram> BuildInferenceProgram(
    const EulerHistogram& noisy, const ConstraintSet& constraints,
    InferenceObjective objective);

struct SolveReport {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;
  int64_t iterations = 0;
  double wall_seconds = 0.0;
  double max_violation = 0.0;
  bool optimal() const { return status == SolveStatus::kOptimal; }
};

struct InferenceResult {
  // Tagged kConsistent. When the solve is not optimal this holds the last
  // basic solution with negative entries clamped to zero.
  EulerHistogram histogram;
  SolveReport report;
};

// Builds and solves the inference program for a noisy histogram.
absl::StatusOr<InferenceResult> Infer(
    const EulerHistogram& noisy, const ConstraintSet& constraints,
    InferenceObjective objective = InferenceObjective::kL1,
    const SolveOptions& options = {});

}  // namespace dpeuler

#endif  // DPEULER_INFERENCE_H_
