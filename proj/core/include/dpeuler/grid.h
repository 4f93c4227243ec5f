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

// Square grid partition underlying an Euler histogram.
//
// An n x n grid over the square [origin, origin + A]^2 has three kinds of
// components: faces (closed cells), interior edges (closed segments shared by
// two faces) and interior vertices (grid points shared by four faces). Rows
// grow along +y and columns along +x.
//
// Every component has a dense index. The layout is
//
//   [ faces (row-major) | horizontal edges | vertical edges | vertices ]
//
// where horizontal edge (r, c) separates faces (r, c) and (r + 1, c), vertical
// edge (r, c) separates faces (r, c) and (r, c + 1), and vertex (r, c) is the
// grid point shared by faces (r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1).

#ifndef DPEULER_GRID_H_
#define DPEULER_GRID_H_

#include <array>
#include <cstddef>
#include <ostream>

#include "absl/status/statusor.h"
#include "dpeuler/planar.h"

namespace dpeuler {

enum class ComponentKind { kFace, kEdge, kVertex };
enum class EdgeOrientation { kHorizontal, kVertical };

struct ComponentId {
  ComponentKind kind = ComponentKind::kFace;
  // Only meaningful for edges.
  EdgeOrientation orientation = EdgeOrientation::kHorizontal;
  int row = 0;
  int col = 0;

  static ComponentId Face(int row, int col) {
    return {ComponentKind::kFace, EdgeOrientation::kHorizontal, row, col};
  }
  static ComponentId HorizontalEdge(int row, int col) {
    return {ComponentKind::kEdge, EdgeOrientation::kHorizontal, row, col};
  }
  static ComponentId VerticalEdge(int row, int col) {
    return {ComponentKind::kEdge, EdgeOrientation::kVertical, row, col};
  }
  static ComponentId Vertex(int row, int col) {
    return {ComponentKind::kVertex, EdgeOrientation::kHorizontal, row, col};
  }

  friend bool operator==(const ComponentId& a, const ComponentId& b) {
    if (a.kind != b.kind || a.row != b.row || a.col != b.col) return false;
    return a.kind != ComponentKind::kEdge || a.orientation == b.orientation;
  }
  friend std::ostream& operator<<(std::ostream& os, const ComponentId& id);
};

class GridPartition {
 public:
  // Fails with InvalidArgument unless area_side > 0 and rows >= 2.
  static absl::StatusOr<GridPartition> Create(Point origin, double area_side,
                                              int rows);

  Point origin() const { return origin_; }
  double area_side() const { return area_side_; }
  int rows() const { return n_; }
  // Derived from the area side; never stored.
  double cell_side() const { return area_side_ / n_; }

  size_t face_count() const { return static_cast<size_t>(n_) * n_; }
  size_t horizontal_edge_count() const {
    return static_cast<size_t>(n_ - 1) * n_;
  }
  size_t edge_count() const { return 2 * horizontal_edge_count(); }
  size_t vertex_count() const { return static_cast<size_t>(n_ - 1) * (n_ - 1); }
  size_t component_count() const {
    return face_count() + edge_count() + vertex_count();
  }

  // Start of each block in the dense layout.
  size_t horizontal_edge_begin() const { return face_count(); }
  size_t vertical_edge_begin() const {
    return face_count() + horizontal_edge_count();
  }
  size_t edge_begin() const { return face_count(); }
  size_t vertex_begin() const { return face_count() + edge_count(); }

  bool IsValid(const ComponentId& id) const;
  absl::StatusOr<size_t> Index(const ComponentId& id) const;
  absl::StatusOr<ComponentId> Id(size_t index) const;

  bool IsFace(size_t index) const { return index < face_count(); }
  bool IsEdge(size_t index) const {
    return index >= edge_begin() && index < vertex_begin();
  }
  bool IsVertex(size_t index) const {
    return index >= vertex_begin() && index < component_count();
  }

  // Unchecked dense indices; callers guarantee the ranges.
  size_t FaceIndex(int row, int col) const {
    return static_cast<size_t>(row) * n_ + col;
  }
  size_t HorizontalEdgeIndex(int row, int col) const {
    return horizontal_edge_begin() + static_cast<size_t>(row) * n_ + col;
  }
  size_t VerticalEdgeIndex(int row, int col) const {
    return vertical_edge_begin() + static_cast<size_t>(row) * (n_ - 1) + col;
  }
  size_t VertexIndex(int row, int col) const {
    return vertex_begin() + static_cast<size_t>(row) * (n_ - 1) + col;
  }

  // Incidence by dense index. Arguments must be a valid edge or vertex index.
  std::array<size_t, 2> EdgeFaces(size_t edge) const;
  // Order: the two horizontal edges (left, right), then the two vertical
  // edges (bottom, top).
  std::array<size_t, 4> VertexEdges(size_t vertex) const;
  // Order: (r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1).
  std::array<size_t, 4> VertexFaces(size_t vertex) const;

  absl::StatusOr<std::array<ComponentId, 2>> IncidentFaces(
      const ComponentId& edge) const;
  absl::StatusOr<std::array<ComponentId, 4>> IncidentEdges(
      const ComponentId& vertex) const;
  absl::StatusOr<std::array<ComponentId, 4>> IncidentFacesOfVertex(
      const ComponentId& vertex) const;

  // Coordinate of grid line k (0 <= k <= n) along x or y.
  double GridX(int k) const { return origin_.x + area_side_ * k / n_; }
  double GridY(int k) const { return origin_.y + area_side_ * k / n_; }

  Rect Bounds() const {
    return {origin_, {origin_.x + area_side_, origin_.y + area_side_}};
  }
  // Closed geometric extent of a component: a cell, a segment or a point.
  Rect Extent(const ComponentId& id) const;
  Rect Extent(size_t index) const;

 private:
  GridPartition(Point origin, double area_side, int rows)
      : origin_(origin), area_side_(area_side), n_(rows) {}

  ComponentId IdUnchecked(size_t index) const;

  Point origin_;
  double area_side_;
  int n_;
};

}  // namespace dpeuler

#endif  // DPEULER_GRID_H_
