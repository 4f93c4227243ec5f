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

#include "dpeuler/histogram.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "absl/strings/str_cat.h"

namespace dpeuler {

std::string_view HistogramStateName(HistogramState state) {
  switch (state) {
    case HistogramState::kRaw:
      return "raw";
    case HistogramState::kNoisy:
      return "noisy";
    case HistogramState::kConsistent:
      return "consistent";
    case HistogramState::kRounded:
      return "rounded";
  }
  return "unknown";
}

absl::StatusOr<HistogramState> ParseHistogramState(std::string_view name) {
  for (HistogramState s :
       {HistogramState::kRaw, HistogramState::kNoisy,
        HistogramState::kConsistent, HistogramState::kRounded}) {
    if (HistogramStateName(s) == name) return s;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown histogram state '", std::string(name), "'"));
}

absl::Status ExpectState(HistogramState actual, HistogramState expected) {
  if (actual == expected) return absl::OkStatus();
  return absl::FailedPreconditionError(absl::StrCat(
      "expected a ", std::string(HistogramStateName(expected)),
      " histogram, got a ", std::string(HistogramStateName(actual)), " one"));
}

absl::StatusOr<EulerHistogram> EulerHistogram::Create(
    const GridPartition& partition, std::vector<double> counts,
    HistogramState state) {
  if (counts.size() != partition.component_count()) {
    return absl::InvalidArgumentError(
        absl::StrCat("histogram has ", counts.size(), " counts, grid needs ",
                     partition.component_count()));
  }
  const bool integral = IsIntegerState(state);
  for (size_t i = 0; i < counts.size(); ++i) {
    const double c = counts[i];
    if (!std::isfinite(c) || c < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("count ", i, " is negative or not finite: ", c));
    }
    if (integral && c != std::floor(c)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "count ", i, " of a ", std::string(HistogramStateName(state)),
          " histogram is not a whole number: ", c));
    }
  }
  return EulerHistogram(partition, std::move(counts), state);
}

EulerHistogram EulerHistogram::Zeros(const GridPartition& partition,
                                     HistogramState state) {
  return EulerHistogram(
      partition, std::vector<double>(partition.component_count(), 0.0), state);
}

absl::Status ValidateQueryRegion(const GridPartition& grid,
                                 const QueryRegion& q) {
  const int n = grid.rows();
  if (q.row_begin < 0 || q.col_begin < 0 || q.row_end >= n || q.col_end >= n ||
      q.row_begin > q.row_end || q.col_begin > q.col_end) {
    return absl::InvalidArgumentError(
        absl::StrCat("query region rows [", q.row_begin, ", ", q.row_end,
                     "] cols [", q.col_begin, ", ", q.col_end,
                     "] does not fit an ", n, "x", n, " grid"));
  }
  return absl::OkStatus();
}

absl::StatusOr<EulerSums> QuerySums(const EulerHistogram& histogram,
                                    const QueryRegion& q) {
  const GridPartition& g = histogram.partition();
  if (absl::Status s = ValidateQueryRegion(g, q); !s.ok()) return s;
  EulerSums sums;
  for (int r = q.row_begin; r <= q.row_end; ++r) {
    for (int c = q.col_begin; c <= q.col_end; ++c) {
      sums.faces += histogram[g.FaceIndex(r, c)];
      if (r < q.row_end) sums.edges += histogram[g.HorizontalEdgeIndex(r, c)];
      if (c < q.col_end) sums.edges += histogram[g.VerticalEdgeIndex(r, c)];
      if (r < q.row_end && c < q.col_end) {
        sums.vertices += histogram[g.VertexIndex(r, c)];
      }
    }
  }
  return sums;
}

absl::StatusOr<double> Query(const EulerHistogram& histogram,
                             const QueryRegion& region) {
  auto sums = QuerySums(histogram, region);
  if (!sums.ok()) return sums.status();
  return sums->Count();
}

RangeQueryIndex::Table RangeQueryIndex::MakeTable(
    std::span<const double> values, int rows, int cols) {
  Table t{rows, cols,
          std::vector<double>(static_cast<size_t>(rows + 1) * (cols + 1), 0.0)};
  for (int r = 0; r < rows; ++r) {
    double row_sum = 0.0;
    for (int c = 0; c < cols; ++c) {
      row_sum += values[static_cast<size_t>(r) * cols + c];
      t.sums[static_cast<size_t>(r + 1) * (cols + 1) + c + 1] =
          t.sums[static_cast<size_t>(r) * (cols + 1) + c + 1] + row_sum;
    }
  }
  return t;
}

double RangeQueryIndex::Table::Sum(int r0, int r1, int c0, int c1) const {
  if (r0 > r1 || c0 > c1) return 0.0;
  const size_t w = cols + 1;
  return sums[(r1 + 1) * w + c1 + 1] - sums[r0 * w + c1 + 1] -
         sums[(r1 + 1) * w + c0] + sums[r0 * w + c0];
}

RangeQueryIndex::RangeQueryIndex(const EulerHistogram& histogram) {
  const GridPartition& g = histogram.partition();
  const int n = g.rows();
  const auto counts = histogram.counts();
  faces_ = MakeTable(counts.subspan(0, g.face_count()), n, n);
  horizontal_edges_ = MakeTable(
      counts.subspan(g.horizontal_edge_begin(), g.horizontal_edge_count()),
      n - 1, n);
  vertical_edges_ = MakeTable(
      counts.subspan(g.vertical_edge_begin(), g.horizontal_edge_count()), n,
      n - 1);
  vertices_ = MakeTable(counts.subspan(g.vertex_begin(), g.vertex_count()),
                        n - 1, n - 1);
}

double RangeQueryIndex::Count(const QueryRegion& q) const {
  const double f = faces_.Sum(q.row_begin, q.row_end, q.col_begin, q.col_end);
  const double e =
      horizontal_edges_.Sum(q.row_begin, q.row_end - 1, q.col_begin,
                            q.col_end) +
      vertical_edges_.Sum(q.row_begin, q.row_end, q.col_begin, q.col_end - 1);
  const double v =
      vertices_.Sum(q.row_begin, q.row_end - 1, q.col_begin, q.col_end - 1);
  return f - e + v;
}

std::vector<size_t> TouchedComponents(const ConvexBody& body,
                                      const GridPartition& grid) {
  const int n = grid.rows();
  const double d = grid.cell_side();
  const Rect& box = body.bounding_box();
  const Point o = grid.origin();
  // Conservative cell range from the bounding box; the exact predicate
  // decides membership.
  auto cell_lo = [&](double v, double origin) {
    return std::clamp(
        static_cast<int>(std::floor((v - origin - kContactTolerance) / d)), 0,
        n - 1);
  };
  auto cell_hi = [&](double v, double origin) {
    return std::clamp(
        static_cast<int>(std::floor((v - origin + kContactTolerance) / d)), 0,
        n - 1);
  };
  const int c0 = cell_lo(box.min.x, o.x), c1 = cell_hi(box.max.x, o.x);
  const int r0 = cell_lo(box.min.y, o.y), r1 = cell_hi(box.max.y, o.y);
  const int lr = std::max(r0 - 1, 0), hr = std::min(r1, n - 2);
  const int lc = std::max(c0 - 1, 0), hc = std::min(c1, n - 2);

  std::vector<size_t> touched;
  auto test = [&](size_t index) {
    if (IntersectsComponent(body, grid, index)) touched.push_back(index);
  };
  for (int r = r0; r <= r1; ++r) {
    for (int c = c0; c <= c1; ++c) test(grid.FaceIndex(r, c));
  }
  for (int r = lr; r <= hr; ++r) {
    for (int c = c0; c <= c1; ++c) test(grid.HorizontalEdgeIndex(r, c));
  }
  for (int r = r0; r <= r1; ++r) {
    for (int c = lc; c <= hc; ++c) test(grid.VerticalEdgeIndex(r, c));
  }
  for (int r = lr; r <= hr; ++r) {
    for (int c = lc; c <= hc; ++c) test(grid.VertexIndex(r, c));
  }
  return touched;
}

BuildResult BuildHistogram(std::span<const ConvexBody> bodies,
                           const GridPartition& grid,
                           const BuildOptions& options) {
  const Rect area = grid.Bounds();
  int threads = options.threads > 0
                    ? options.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max<int>(1, bodies.size()));

  struct Partial {
    std::vector<double> counts;
    std::vector<BodyRejection> rejected;
  };
  std::vector<Partial> partials(threads);
  auto work = [&](int worker) {
    Partial& p = partials[worker];
    p.counts.assign(grid.component_count(), 0.0);
    const size_t begin = bodies.size() * worker / threads;
    const size_t end = bodies.size() * (worker + 1) / threads;
    for (size_t i = begin; i < end; ++i) {
      auto clipped = ClipToRect(bodies[i], area);
      if (!clipped.ok()) {
        p.rejected.push_back({i, clipped.status()});
        continue;
      }
      if (options.diameter_bound.has_value()) {
        if (absl::Status s = CheckDiameter(*clipped, *options.diameter_bound);
            !s.ok()) {
          p.rejected.push_back({i, s});
          continue;
        }
      }
      for (size_t index : TouchedComponents(*clipped, grid)) {
        p.counts[index] += 1.0;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  std::vector<double> counts = std::move(partials[0].counts);
  std::vector<BodyRejection> rejected = std::move(partials[0].rejected);
  for (int w = 1; w < threads; ++w) {
    for (size_t i = 0; i < counts.size(); ++i) {
      counts[i] += partials[w].counts[i];
    }
    rejected.insert(rejected.end(), partials[w].rejected.begin(),
                    partials[w].rejected.end());
  }
  auto histogram =
      EulerHistogram::Create(grid, std::move(counts), HistogramState::kRaw);
  return {*std::move(histogram), std::move(rejected)};
}

}  // namespace dpeuler
