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

#include "dpeuler/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace dpeuler {
namespace {

// Relative tolerance on the sine of a turn when validating convexity.
constexpr double kTurnTolerance = 1e-9;

std::pair<double, double> ProjectPoints(std::span<const Point> points,
                                        Point axis) {
  double lo = Dot(points[0], axis);
  double hi = lo;
  for (size_t i = 1; i < points.size(); ++i) {
    const double v = Dot(points[i], axis);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

std::pair<double, double> ProjectRect(const Rect& r, Point axis) {
  // Extremes of a linear function over a box are at its corners.
  const double x0 = r.min.x * axis.x, x1 = r.max.x * axis.x;
  const double y0 = r.min.y * axis.y, y1 = r.max.y * axis.y;
  return {std::min(x0, x1) + std::min(y0, y1),
          std::max(x0, x1) + std::max(y0, y1)};
}

Point UnitNormal(Point a, Point b) {
  const Point d = b - a;
  const double len = std::hypot(d.x, d.y);
  return {-d.y / len, d.x / len};
}

}  // namespace

ConvexBody::ConvexBody(std::vector<Point> vertices)
    : vertices_(std::move(vertices)) {
  bounding_box_ = {vertices_[0], vertices_[0]};
  for (const Point& p : vertices_) {
    bounding_box_.min.x = std::min(bounding_box_.min.x, p.x);
    bounding_box_.min.y = std::min(bounding_box_.min.y, p.y);
    bounding_box_.max.x = std::max(bounding_box_.max.x, p.x);
    bounding_box_.max.y = std::max(bounding_box_.max.y, p.y);
  }

  // Grid components are axis-aligned, so x and y always separate candidates.
  axes_ = {{1.0, 0.0}, {0.0, 1.0}};
  const size_t n = vertices_.size();
  double twice_area = 0.0;
  for (size_t i = 0; i < n && n > 1; ++i) {
    twice_area += Cross(vertices_[i], vertices_[(i + 1) % n]);
  }
  const bool flat = n <= 2 || std::abs(twice_area) <= kContactTolerance;
  for (size_t i = 0; i < n && n > 1; ++i) {
    const Point a = vertices_[i];
    const Point b = vertices_[(i + 1) % n];
    const Point normal = UnitNormal(a, b);
    axes_.push_back(normal);
    // A flat body also needs its direction as a candidate axis.
    if (flat) axes_.push_back({normal.y, -normal.x});
  }
  projections_.reserve(axes_.size());
  for (const Point& axis : axes_) {
    projections_.push_back(ProjectPoints(vertices_, axis));
  }
}

absl::StatusOr<ConvexBody> ConvexBody::Create(std::vector<Point> vertices) {
  if (vertices.empty()) {
    return absl::InvalidArgumentError("convex body needs at least one vertex");
  }
  for (const Point& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      return absl::InvalidArgumentError("convex body has non-finite vertex");
    }
  }
  std::vector<Point> unique;
  unique.reserve(vertices.size());
  for (const Point& p : vertices) {
    if (unique.empty() || !(unique.back() == p)) unique.push_back(p);
  }
  while (unique.size() > 1 && unique.back() == unique.front()) {
    unique.pop_back();
  }

  const size_t n = unique.size();
  if (n >= 3) {
    double total_turn = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const Point e1 = unique[(i + 1) % n] - unique[i];
      const Point e2 = unique[(i + 2) % n] - unique[(i + 1) % n];
      const double scale = std::hypot(e1.x, e1.y) * std::hypot(e2.x, e2.y);
      double cross = Cross(e1, e2);
      const double dot = Dot(e1, e2);
      if (cross < -kTurnTolerance * scale) {
        return absl::InvalidArgumentError(absl::StrCat(
            "polygon is not convex counter-clockwise at vertex ", (i + 1) % n));
      }
      if (std::abs(cross) <= kTurnTolerance * scale) cross = 0.0;
      // A straight reversal counts as a half turn.
      total_turn += (cross == 0.0 && dot < 0.0) ? std::numbers::pi
                                                : std::atan2(cross, dot);
    }
    if (std::abs(total_turn - 2.0 * std::numbers::pi) > 1e-6) {
      return absl::InvalidArgumentError(
          "polygon winds more than once around its interior");
    }
  }
  return ConvexBody(std::move(unique));
}

bool IntersectsRect(const ConvexBody& body, const Rect& rect) {
  // Separating axis theorem over the body's precomputed axes, which include
  // the rectangle's own axes.
  const auto axes = body.axes();
  const auto proj = body.projections();
  for (size_t i = 0; i < axes.size(); ++i) {
    const auto [rlo, rhi] = ProjectRect(rect, axes[i]);
    if (proj[i].first > rhi + kContactTolerance ||
        rlo > proj[i].second + kContactTolerance) {
      return false;
    }
  }
  return true;
}

bool IntersectsComponent(const ConvexBody& body, const GridPartition& grid,
                         size_t index) {
  return IntersectsRect(body, grid.Extent(index));
}

namespace {

absl::StatusOr<bool> IntersectsKind(const ConvexBody& body,
                                    const GridPartition& grid,
                                    const ComponentId& id, ComponentKind kind) {
  if (id.kind != kind) {
    return absl::InvalidArgumentError("component has the wrong kind");
  }
  auto index = grid.Index(id);
  if (!index.ok()) return index.status();
  return IntersectsComponent(body, grid, *index);
}

}  // namespace

absl::StatusOr<bool> IntersectsFace(const ConvexBody& body,
                                    const GridPartition& grid,
                                    const ComponentId& face) {
  return IntersectsKind(body, grid, face, ComponentKind::kFace);
}

absl::StatusOr<bool> IntersectsEdge(const ConvexBody& body,
                                    const GridPartition& grid,
                                    const ComponentId& edge) {
  return IntersectsKind(body, grid, edge, ComponentKind::kEdge);
}

absl::StatusOr<bool> IntersectsVertex(const ConvexBody& body,
                                      const GridPartition& grid,
                                      const ComponentId& vertex) {
  return IntersectsKind(body, grid, vertex, ComponentKind::kVertex);
}

absl::StatusOr<ConvexBody> ConvexHull(std::span<const Point> points) {
  if (points.empty()) {
    return absl::InvalidArgumentError("convex hull of an empty point set");
  }
  std::vector<Point> pts(points.begin(), points.end());
  for (const Point& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      return absl::InvalidArgumentError("convex hull input is not finite");
    }
  }
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return ConvexBody::Create(std::move(pts));

  std::vector<Point> hull(2 * pts.size());
  size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && Orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const Point p = pts[i];
    while (k >= lower && Orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  // The last point repeats the first.
  hull.resize(k - 1);
  return ConvexBody::Create(std::move(hull));
}

double Diameter(const ConvexBody& body) {
  const auto v = body.vertices();
  const size_t n = v.size();
  if (n == 1) return 0.0;
  if (n <= 3) {
    double best = 0.0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        best = std::max(best, SquaredDistance(v[i], v[j]));
      }
    }
    return std::sqrt(best);
  }
  // Rotating calipers over antipodal vertex pairs.
  double best = 0.0;
  size_t j = 1;
  for (size_t i = 0; i < n; ++i) {
    const size_t i1 = (i + 1) % n;
    for (size_t guard = 0; guard < n; ++guard) {
      const size_t j1 = (j + 1) % n;
      if (Orient(v[i], v[i1], v[j1]) > Orient(v[i], v[i1], v[j])) {
        j = j1;
      } else {
        break;
      }
    }
    best = std::max(
        {best, SquaredDistance(v[i], v[j]), SquaredDistance(v[i1], v[j])});
  }
  return std::sqrt(best);
}

absl::StatusOr<ConvexBody> ClipToRect(const ConvexBody& body,
                                      const Rect& rect) {
  std::vector<Point> poly(body.vertices().begin(), body.vertices().end());
  // Sutherland-Hodgman against the four half-planes value(p) >= 0.
  auto clip = [&](auto value, auto intersect) {
    if (poly.empty()) return;
    std::vector<Point> out;
    const size_t n = poly.size();
    if (n == 1) {
      if (value(poly[0]) >= -kContactTolerance) out.push_back(poly[0]);
      poly = std::move(out);
      return;
    }
    for (size_t i = 0; i < n; ++i) {
      const Point a = poly[i];
      const Point b = poly[(i + 1) % n];
      const double va = value(a);
      const double vb = value(b);
      const bool a_in = va >= -kContactTolerance;
      const bool b_in = vb >= -kContactTolerance;
      if (a_in) out.push_back(a);
      if (a_in != b_in && std::abs(va - vb) > 0.0) {
        out.push_back(intersect(a, b, va / (va - vb)));
      }
    }
    poly = std::move(out);
  };
  auto lerp = [](Point a, Point b, double t) { return a + t * (b - a); };
  clip([&](Point p) { return p.x - rect.min.x; },
       [&](Point a, Point b, double t) {
         Point q = lerp(a, b, t);
         q.x = rect.min.x;
         return q;
       });
  clip([&](Point p) { return rect.max.x - p.x; },
       [&](Point a, Point b, double t) {
         Point q = lerp(a, b, t);
         q.x = rect.max.x;
         return q;
       });
  clip([&](Point p) { return p.y - rect.min.y; },
       [&](Point a, Point b, double t) {
         Point q = lerp(a, b, t);
         q.y = rect.min.y;
         return q;
       });
  clip([&](Point p) { return rect.max.y - p.y; },
       [&](Point a, Point b, double t) {
         Point q = lerp(a, b, t);
         q.y = rect.max.y;
         return q;
       });
  if (poly.empty()) {
    return absl::NotFoundError("body lies outside the clipping rectangle");
  }
  for (Point& p : poly) {
    p.x = std::clamp(p.x, rect.min.x, rect.max.x);
    p.y = std::clamp(p.y, rect.min.y, rect.max.y);
  }
  // Clipping can leave collinear or repeated vertices; re-hull to normalise.
  return ConvexHull(poly);
}

absl::Status CheckDiameter(const ConvexBody& body, double diameter_bound) {
  const double diameter = Diameter(body);
  if (diameter > diameter_bound + kContactTolerance) {
    return absl::InvalidArgumentError(absl::StrCat(
        "body diameter ", diameter, " exceeds bound ", diameter_bound));
  }
  return absl::OkStatus();
}

}  // namespace dpeuler
