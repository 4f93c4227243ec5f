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

// Integer rounding of a consistent histogram, constraint checking and a
// repair pass that restores C1-C3 exactly on integer counts.

#ifndef DPEULER_ROUNDING_H_
#define DPEULER_ROUNDING_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpeuler/histogram.h"
#include "dpeuler/inference.h"

namespace dpeuler {

// Rounds every count half-up (floor(x + 0.5)). Requires kConsistent.
absl::StatusOr<EulerHistogram> RoundCounts(const EulerHistogram& consistent);

struct ViolationCounts {
  int64_t c1 = 0;
  int64_t c2 = 0;
  int64_t c3 = 0;

  int64_t total() const { return c1 + c2 + c3; }
  friend bool operator==(const ViolationCounts&,
                         const ViolationCounts&) = default;
};

// Number of strictly violated rows per family. Integer states are checked
// exactly; noisy and consistent ones with tolerance 1e-7.
ViolationCounts VerifyViolations(const EulerHistogram& histogram,
                                 const ConstraintSet& constraints);

struct RepairResult {
  EulerHistogram histogram;
  // L1 distance between the input and the repaired histogram.
  double cost = 0.0;
  int passes = 0;
};

// Repeats until nothing changes: clamp each edge to the smaller incident
// face, clamp each vertex to its smallest incident edge, then raise the
// smallest face of each violated block by the block's deficit. Requires
// kRounded; the output satisfies C1-C3 exactly.
absl::StatusOr<RepairResult> Repair(const EulerHistogram& rounded,
                                    const ConstraintSet& constraints);

}  // namespace dpeuler

#endif  // DPEULER_ROUNDING_H_
