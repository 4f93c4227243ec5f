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

// Euler histograms: per-component counts of the bodies touching each face,
// edge and vertex of a grid, and Euler-formula range counting over them.

#ifndef DPEULER_HISTOGRAM_H_
#define DPEULER_HISTOGRAM_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpeuler/geometry.h"
#include "dpeuler/grid.h"

namespace dpeuler {

// Release pipeline stage. Transitions only move forward:
// kRaw -> kNoisy -> kConsistent -> kRounded.
enum class HistogramState { kRaw, kNoisy, kConsistent, kRounded };

std::string_view HistogramStateName(HistogramState state);
absl::StatusOr<HistogramState> ParseHistogramState(std::string_view name);

// Integer-valued states (raw and rounded) hold whole counts.
inline bool IsIntegerState(HistogramState state) {
  return state == HistogramState::kRaw || state == HistogramState::kRounded;
}

// Fails with FailedPrecondition unless `actual == expected`.
absl::Status ExpectState(HistogramState actual, HistogramState expected);

class EulerHistogram {
 public:
  // Validates the count vector length and the per-state invariants: counts are
  // finite and non-negative, and whole numbers in the integer states.
  static absl::StatusOr<EulerHistogram> Create(const GridPartition& partition,
                                               std::vector<double> counts,
                                               HistogramState state);
  static EulerHistogram Zeros(const GridPartition& partition,
                              HistogramState state);

  const GridPartition& partition() const { return partition_; }
  std::span<const double> counts() const { return counts_; }
  HistogramState state() const { return state_; }
  size_t size() const { return counts_.size(); }
  double operator[](size_t index) const { return counts_[index]; }

 private:
  EulerHistogram(const GridPartition& partition, std::vector<double> counts,
                 HistogramState state)
      : partition_(partition), counts_(std::move(counts)), state_(state) {}

  GridPartition partition_;
  std::vector<double> counts_;
  HistogramState state_;
};

// Inclusive row and column ranges of whole cells.
struct QueryRegion {
  int row_begin = 0;
  int row_end = 0;
  int col_begin = 0;
  int col_end = 0;

  int rows() const { return row_end - row_begin + 1; }
  int cols() const { return col_end - col_begin + 1; }
  friend bool operator==(const QueryRegion&, const QueryRegion&) = default;
};

absl::Status ValidateQueryRegion(const GridPartition& grid,
                                 const QueryRegion& region);

// Component sums inside a query region. Edges and vertices count only when
// all of their incident faces are inside the region.
struct EulerSums {
  double faces = 0.0;
  double edges = 0.0;
  double vertices = 0.0;

  double Count() const { return faces - edges + vertices; }
};

absl::StatusOr<EulerSums> QuerySums(const EulerHistogram& histogram,
                                    const QueryRegion& region);

// F - E + V over the region.
absl::StatusOr<double> Query(const EulerHistogram& histogram,
                             const QueryRegion& region);

// Summed-area tables for answering many queries against one histogram in
// O(1) each. Regions passed to Count must already be valid.
class RangeQueryIndex {
 public:
  explicit RangeQueryIndex(const EulerHistogram& histogram);

  double Count(const QueryRegion& region) const;

 private:
  // (rows + 1) x (cols + 1) prefix table over a rows x cols block.
  struct Table {
    int rows = 0;
    int cols = 0;
    std::vector<double> sums;

    double Sum(int r0, int r1, int c0, int c1) const;  // inclusive
  };
  static Table MakeTable(std::span<const double> values, int rows, int cols);

  Table faces_;
  Table horizontal_edges_;
  Table vertical_edges_;
  Table vertices_;
};

struct BuildOptions {
  // When set, bodies with a larger diameter are rejected.
  std::optional<double> diameter_bound;
  // Worker threads; 0 picks the hardware concurrency.
  int threads = 1;
};

struct BodyRejection {
  size_t body_index = 0;
  absl::Status reason;
};

struct BuildResult {
  EulerHistogram histogram;
  std::vector<BodyRejection> rejected;
};

// Counts, for every component, the bodies whose intersection with the
// component's closed extent is non-empty. Bodies are first clipped to the
// grid area; bodies that miss the area entirely (or break the diameter bound)
// are reported in `rejected` and not counted.
BuildResult BuildHistogram(std::span<const ConvexBody> bodies,
                           const GridPartition& grid,
                           const BuildOptions& options = {});

// Dense indices of every component a single (already clipped) body touches,
// in increasing order.
std::vector<size_t> TouchedComponents(const ConvexBody& body,
                                      const GridPartition& grid);

}  // namespace dpeuler

#endif  // DPEULER_HISTOGRAM_H_
