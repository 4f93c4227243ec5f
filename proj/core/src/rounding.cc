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

#include "dpeuler/rounding.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/strings/str_cat.h"
#include "dpeuler/internal/status_macros.h"

namespace dpeuler {
namespace {

double BlockSum(std::span<const double> h, const BlockConstraint& b) {
  double s = h[b.vertex];
  for (size_t f : b.faces) s += h[f];
  for (size_t e : b.edges) s -= h[e];
  return s;
}

}  // namespace

absl::StatusOr<EulerHistogram> RoundCounts(const EulerHistogram& consistent) {
  DPEULER_RETURN_IF_ERROR(
      ExpectState(consistent.state(), HistogramState::kConsistent));
  std::vector<double> counts(consistent.counts().begin(),
                             consistent.counts().end());
  for (double& c : counts) c = std::floor(c + 0.5);
  return EulerHistogram::Create(consistent.partition(), std::move(counts),
                                HistogramState::kRounded);
}

ViolationCounts VerifyViolations(const EulerHistogram& histogram,
                                 const ConstraintSet& constraints) {
  const double tol = IsIntegerState(histogram.state()) ? 0.0 : 1e-7;
  const auto h = histogram.counts();
  ViolationCounts v;
  for (const auto& [e, f] : constraints.c1) {
    if (h[e] - h[f] > tol) ++v.c1;
  }
  for (const auto& [vertex, e] : constraints.c2) {
    if (h[vertex] - h[e] > tol) ++v.c2;
  }
  for (const BlockConstraint& b : constraints.c3) {
    if (BlockSum(h, b) < -tol) ++v.c3;
  }
  return v;
}

absl::StatusOr<RepairResult> Repair(const EulerHistogram& rounded,
                                    const ConstraintSet& constraints) {
  DPEULER_RETURN_IF_ERROR(
      ExpectState(rounded.state(), HistogramState::kRounded));
  std::vector<double> h(rounded.counts().begin(), rounded.counts().end());
  const int max_passes = static_cast<int>(10 * h.size()) + 10;
  int passes = 0;
  bool changed = true;
  while (changed) {
    if (passes == max_passes) {
      return absl::InternalError(
          absl::StrCat("repair did not converge in ", max_passes, " passes"));
    }
    ++passes;
    changed = false;
    for (const auto& [e, f] : constraints.c1) {
      if (h[e] > h[f]) {
        h[e] = h[f];
        changed = true;
      }
    }
    for (const auto& [v, e] : constraints.c2) {
      if (h[v] > h[e]) {
        h[v] = h[e];
        changed = true;
      }
    }
    for (const BlockConstraint& b : constraints.c3) {
      const double s = BlockSum(h, b);
      if (s >= 0.0) continue;
      size_t smallest = b.faces[0];
      for (size_t f : b.faces) {
        if (h[f] < h[smallest]) smallest = f;
      }
      h[smallest] -= s;
      changed = true;
    }
  }
  double cost = 0.0;
  for (size_t i = 0; i < h.size(); ++i) cost += std::abs(h[i] - rounded[i]);
  DPEULER_ASSIGN_OR_RETURN(
      EulerHistogram repaired,
      EulerHistogram::Create(rounded.partition(), std::move(h),
                             HistogramState::kRounded));
  return RepairResult{std::move(repaired), cost, passes};
}

}  // namespace dpeuler
