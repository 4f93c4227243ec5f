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

#include "dpeuler/inference.h"

#include <chrono>

#include "absl/strings/str_cat.h"
#include "dpeuler/internal/status_macros.h"

namespace dpeuler {

ConstraintSet BuildConstraints(const GridPartition& grid) {
  ConstraintSet cs;
  cs.c1.reserve(2 * grid.edge_count());
  cs.c2.reserve(4 * grid.vertex_count());
  cs.c3.reserve(grid.vertex_count());
  for (size_t e = grid.edge_begin(); e < grid.vertex_begin(); ++e) {
    for (size_t f : grid.EdgeFaces(e)) cs.c1.emplace_back(e, f);
  }
  for (size_t v = grid.vertex_begin(); v < grid.component_count(); ++v) {
    for (size_t e : grid.VertexEdges(v)) cs.c2.emplace_back(v, e);
  }
  for (size_t v = grid.vertex_begin(); v < grid.component_count(); ++v) {
    cs.c3.push_back({v, grid.VertexFaces(v), grid.VertexEdges(v)});
  }
  return cs;
}

std::string_view InferenceObjectiveName(InferenceObjective objective) {
  return objective == InferenceObjective::kL1 ? "l1" : "linf";
}

absl::StatusOr<InferenceObjective> ParseInferenceObjective(
    std::string_view name) {
  if (name == "l1") return InferenceObjective::kL1;
  if (name == "linf") return InferenceObjective::kLinf;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown objective '", std::string(name), "' (want l1 or linf)"));
}

absl::StatusOr<LinearProgram> BuildInferenceProgram(
    const EulerHistogram& noisy, const ConstraintSet& constraints,
    InferenceObjective objective) {
  DPEULER_RETURN_IF_ERROR(ExpectState(noisy.state(), HistogramState::kNoisy));
  const int n = static_cast<int>(noisy.size());
  LinearProgram lp;
  for (int i = 0; i < n; ++i) lp.AddVariable(0.0, absl::StrCat("x", i));
  int t = -1;
  if (objective == InferenceObjective::kL1) {
    for (int i = 0; i < n; ++i) lp.AddVariable(1.0, absl::StrCat("h", i));
  } else {
    t = lp.AddVariable(1.0, "t");
  }
  for (int i = 0; i < n; ++i) {
    const int r = t >= 0 ? t : n + i;
    const LinearTerm below[] = {{i, -1.0}, {r, -1.0}};
    const LinearTerm above[] = {{i, 1.0}, {r, -1.0}};
    lp.AddRow(below, -noisy[i], absl::StrCat("lo", i));
    lp.AddRow(above, noisy[i], absl::StrCat("hi", i));
  }
  for (const auto& [e, f] : constraints.c1) {
    const LinearTerm row[] = {{static_cast<int>(e), 1.0},
                              {static_cast<int>(f), -1.0}};
    lp.AddRow(row, 0.0, absl::StrCat("c1_", e, "_", f));
  }
  for (const auto& [v, e] : constraints.c2) {
    const LinearTerm row[] = {{static_cast<int>(v), 1.0},
                              {static_cast<int>(e), -1.0}};
    lp.AddRow(row, 0.0, absl::StrCat("c2_", v, "_", e));
  }
  for (const BlockConstraint& b : constraints.c3) {
    std::vector<LinearTerm> row;
    for (size_t f : b.faces) row.push_back({static_cast<int>(f), -1.0});
    for (size_t e : b.edges) row.push_back({static_cast<int>(e), 1.0});
    row.push_back({static_cast<int>(b.vertex), -1.0});
    lp.AddRow(row, 0.0, absl::StrCat("c3_", b.vertex));
  }
  return lp;
}

absl::StatusOr<InferenceResult> Infer(const EulerHistogram& noisy,
                                      const ConstraintSet& constraints,
                                      InferenceObjective objective,
                                      const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  DPEULER_ASSIGN_OR_RETURN(
      LinearProgram lp, BuildInferenceProgram(noisy, constraints, objective));
  // Start from x = noisy counts: x_i basic in its lower residual row.
  SolveOptions solve_options = options;
  if (solve_options.initial_basis.empty()) {
    for (int i = 0; i < static_cast<int>(noisy.size()); ++i) {
      solve_options.initial_basis.emplace_back(2 * i, i);
    }
  }
  DPEULER_ASSIGN_OR_RETURN(LpSolution solution,
                           SolveDualSimplex(lp, solve_options));

  std::vector<double> counts(solution.x.begin(),
                             solution.x.begin() + noisy.size());
  for (double& c : counts) {
    if (!(c > 0.0)) c = 0.0;
  }
  DPEULER_ASSIGN_OR_RETURN(
      EulerHistogram consistent,
      EulerHistogram::Create(noisy.partition(), std::move(counts),
                             HistogramState::kConsistent));
  SolveReport report;
  report.status = solution.status;
  report.objective = solution.objective;
  report.iterations = solution.iterations;
  report.max_violation = solution.max_violation;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return InferenceResult{std::move(consistent), report};
}

}  // namespace dpeuler
