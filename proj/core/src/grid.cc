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

#include "dpeuler/grid.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpeuler {

std::ostream& operator<<(std::ostream& os, const ComponentId& id) {
  switch (id.kind) {
    case ComponentKind::kFace:
      return os << "Face(" << id.row << ", " << id.col << ")";
    case ComponentKind::kEdge:
      return os << (id.orientation == EdgeOrientation::kHorizontal
                        ? "HorizontalEdge("
                        : "VerticalEdge(")
                << id.row << ", " << id.col << ")";
    case ComponentKind::kVertex:
      return os << "Vertex(" << id.row << ", " << id.col << ")";
  }
  return os;
}

absl::StatusOr<GridPartition> GridPartition::Create(Point origin,
                                                    double area_side,
                                                    int rows) {
  if (!(area_side > 0.0) || !std::isfinite(area_side)) {
    return absl::InvalidArgumentError(
        absl::StrCat("area side must be positive and finite, got ", area_side));
  }
  if (rows < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid needs at least 2 rows, got ", rows));
  }
  if (!std::isfinite(origin.x) || !std::isfinite(origin.y)) {
    return absl::InvalidArgumentError("origin must be finite");
  }
  return GridPartition(origin, area_side, rows);
}

bool GridPartition::IsValid(const ComponentId& id) const {
  auto in = [](int v, int limit) { return v >= 0 && v < limit; };
  switch (id.kind) {
    case ComponentKind::kFace:
      return in(id.row, n_) && in(id.col, n_);
    case ComponentKind::kEdge:
      if (id.orientation == EdgeOrientation::kHorizontal) {
        return in(id.row, n_ - 1) && in(id.col, n_);
      }
      return in(id.row, n_) && in(id.col, n_ - 1);
    case ComponentKind::kVertex:
      return in(id.row, n_ - 1) && in(id.col, n_ - 1);
  }
  return false;
}

absl::StatusOr<size_t> GridPartition::Index(const ComponentId& id) const {
  if (!IsValid(id)) {
    return absl::OutOfRangeError(absl::StrCat("component (", id.row, ", ",
                                              id.col, ") is outside an ", n_,
                                              "x", n_, " grid"));
  }
  switch (id.kind) {
    case ComponentKind::kFace:
      return FaceIndex(id.row, id.col);
    case ComponentKind::kEdge:
      return id.orientation == EdgeOrientation::kHorizontal
                 ? HorizontalEdgeIndex(id.row, id.col)
                 : VerticalEdgeIndex(id.row, id.col);
    case ComponentKind::kVertex:
      return VertexIndex(id.row, id.col);
  }
  return absl::InternalError("unknown component kind");
}

ComponentId GridPartition::IdUnchecked(size_t index) const {
  const int n = n_;
  if (index < face_count()) {
    return ComponentId::Face(static_cast<int>(index / n),
                             static_cast<int>(index % n));
  }
  if (index < vertical_edge_begin()) {
    const size_t k = index - horizontal_edge_begin();
    return ComponentId::HorizontalEdge(static_cast<int>(k / n),
                                       static_cast<int>(k % n));
  }
  if (index < vertex_begin()) {
    const size_t k = index - vertical_edge_begin();
    return ComponentId::VerticalEdge(static_cast<int>(k / (n - 1)),
                                     static_cast<int>(k % (n - 1)));
  }
  const size_t k = index - vertex_begin();
  return ComponentId::Vertex(static_cast<int>(k / (n - 1)),
                             static_cast<int>(k % (n - 1)));
}

absl::StatusOr<ComponentId> GridPartition::Id(size_t index) const {
  if (index >= component_count()) {
    return absl::OutOfRangeError(
        absl::StrCat("component index ", index, " >= ", component_count()));
  }
  return IdUnchecked(index);
}

std::array<size_t, 2> GridPartition::EdgeFaces(size_t edge) const {
  const ComponentId id = IdUnchecked(edge);
  if (id.orientation == EdgeOrientation::kHorizontal) {
    return {FaceIndex(id.row, id.col), FaceIndex(id.row + 1, id.col)};
  }
  return {FaceIndex(id.row, id.col), FaceIndex(id.row, id.col + 1)};
}

std::array<size_t, 4> GridPartition::VertexEdges(size_t vertex) const {
  const ComponentId v = IdUnchecked(vertex);
  return {HorizontalEdgeIndex(v.row, v.col),
          HorizontalEdgeIndex(v.row, v.col + 1),
          VerticalEdgeIndex(v.row, v.col), VerticalEdgeIndex(v.row + 1, v.col)};
}

std::array<size_t, 4> GridPartition::VertexFaces(size_t vertex) const {
  const ComponentId v = IdUnchecked(vertex);
  return {FaceIndex(v.row, v.col), FaceIndex(v.row, v.col + 1),
          FaceIndex(v.row + 1, v.col), FaceIndex(v.row + 1, v.col + 1)};
}

absl::StatusOr<std::array<ComponentId, 2>> GridPartition::IncidentFaces(
    const ComponentId& edge) const {
  if (edge.kind != ComponentKind::kEdge) {
    return absl::InvalidArgumentError("incident faces requested for non-edge");
  }
  auto index = Index(edge);
  if (!index.ok()) return index.status();
  const auto faces = EdgeFaces(*index);
  return std::array<ComponentId, 2>{IdUnchecked(faces[0]),
                                    IdUnchecked(faces[1])};
}

absl::StatusOr<std::array<ComponentId, 4>> GridPartition::IncidentEdges(
    const ComponentId& vertex) const {
  if (vertex.kind != ComponentKind::kVertex) {
    return absl::InvalidArgumentError(
        "incident edges requested for non-vertex");
  }
  auto index = Index(vertex);
  if (!index.ok()) return index.status();
  std::array<ComponentId, 4> out;
  const auto edges = VertexEdges(*index);
  for (int i = 0; i < 4; ++i) out[i] = IdUnchecked(edges[i]);
  return out;
}

absl::StatusOr<std::array<ComponentId, 4>> GridPartition::IncidentFacesOfVertex(
    const ComponentId& vertex) const {
  if (vertex.kind != ComponentKind::kVertex) {
    return absl::InvalidArgumentError(
        "incident faces requested for non-vertex");
  }
  auto index = Index(vertex);
  if (!index.ok()) return index.status();
  std::array<ComponentId, 4> out;
  const auto faces = VertexFaces(*index);
  for (int i = 0; i < 4; ++i) out[i] = IdUnchecked(faces[i]);
  return out;
}

Rect GridPartition::Extent(const ComponentId& id) const {
  const int r = id.row;
  const int c = id.col;
  switch (id.kind) {
    case ComponentKind::kFace:
      return {{GridX(c), GridY(r)}, {GridX(c + 1), GridY(r + 1)}};
    case ComponentKind::kEdge:
      if (id.orientation == EdgeOrientation::kHorizontal) {
        return {{GridX(c), GridY(r + 1)}, {GridX(c + 1), GridY(r + 1)}};
      }
      return {{GridX(c + 1), GridY(r)}, {GridX(c + 1), GridY(r + 1)}};
    case ComponentKind::kVertex:
      return {{GridX(c + 1), GridY(r + 1)}, {GridX(c + 1), GridY(r + 1)}};
  }
  return {};
}

Rect GridPartition::Extent(size_t index) const {
  return Extent(IdUnchecked(index));
}

}  // namespace dpeuler
