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

#ifndef DPEULER_GEOMETRY_H_
#define DPEULER_GEOMETRY_H_

#include <span>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpeuler/grid.h"
#include "dpeuler/planar.h"

namespace dpeuler {

// Contacts closer than this many meters count as touching. Integer-valued
// inputs are unaffected: any real gap between them is far larger.
inline constexpr double kContactTolerance = 1e-9;

// A convex polygon given by its vertices in counter-clockwise order. Points
// and segments (one or two distinct vertices) are valid degenerate bodies.
//
// The separating axes of the body and the projection of the body onto each
// axis are computed once at construction, so the intersection predicates
// below cost O(vertices) per component.
class ConvexBody {
 public:
  // Validates that `vertices` is non-empty, finite, and turns left (or goes
  // straight) at every vertex with a total turn of one revolution.
  // Consecutive duplicates are dropped.
  static absl::StatusOr<ConvexBody> Create(std::vector<Point> vertices);

  std::span<const Point> vertices() const { return vertices_; }
  size_t size() const { return vertices_.size(); }
  const Rect& bounding_box() const { return bounding_box_; }

  // Separating-axis data: unit axes and the body's [min, max] projection.
  std::span<const Point> axes() const { return axes_; }
  std::span<const std::pair<double, double>> projections() const {
    return projections_;
  }

  friend bool operator==(const ConvexBody& a, const ConvexBody& b) {
    return a.vertices_ == b.vertices_;
  }

 private:
  explicit ConvexBody(std::vector<Point> vertices);

  std::vector<Point> vertices_;
  Rect bounding_box_;
  std::vector<Point> axes_;
  std::vector<std::pair<double, double>> projections_;
};

// Closed-set intersection of a body with an axis-aligned rectangle, which may
// be degenerate (a segment or a point).
bool IntersectsRect(const ConvexBody& body, const Rect& rect);

// Predicates against grid components by dense index. `index` must be valid.
bool IntersectsComponent(const ConvexBody& body, const GridPartition& grid,
                         size_t index);

absl::StatusOr<bool> IntersectsFace(const ConvexBody& body,
                                    const GridPartition& grid,
                                    const ComponentId& face);
absl::StatusOr<bool> IntersectsEdge(const ConvexBody& body,
                                    const GridPartition& grid,
                                    const ComponentId& edge);
absl::StatusOr<bool> IntersectsVertex(const ConvexBody& body,
                                      const GridPartition& grid,
                                      const ComponentId& vertex);

// Andrew's monotone chain. The result is counter-clockwise, starts at the
// lexicographically smallest point, and has no three collinear vertices.
// Collinear input yields the two extreme points; identical points yield one.
absl::StatusOr<ConvexBody> ConvexHull(std::span<const Point> points);

// Largest pairwise vertex distance (rotating calipers).
double Diameter(const ConvexBody& body);

// Intersection of the body with a closed rectangle. NotFoundError when the
// body lies entirely outside it.
absl::StatusOr<ConvexBody> ClipToRect(const ConvexBody& body, const Rect& rect);

// Checks the body's diameter against `diameter_bound` (with contact tolerance).
absl::Status CheckDiameter(const ConvexBody& body, double diameter_bound);

}  // namespace dpeuler

#endif  // DPEULER_GEOMETRY_H_
