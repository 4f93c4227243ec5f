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

#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace dpeuler {
namespace {

using ::testing::ElementsAre;

ConvexBody Body(std::vector<Point> v) { return ConvexBody::Create(v).value(); }

GridPartition Grid(int n) {
  return GridPartition::Create({0, 0}, n, n).value();
}

TEST(ConvexBodyTest, AcceptsDegenerateBodies) {
  EXPECT_TRUE(ConvexBody::Create({{1, 1}}).ok());
  EXPECT_TRUE(ConvexBody::Create({{1, 1}, {2, 3}}).ok());
  EXPECT_EQ(ConvexBody::Create({{1, 1}, {1, 1}}).value().size(), 1u);
}

TEST(ConvexBodyTest, RejectsInvalidInput) {
  EXPECT_FALSE(ConvexBody::Create({}).ok());
  EXPECT_FALSE(ConvexBody::Create({{0, 0}, {NAN, 1}}).ok());
  // Clockwise.
  EXPECT_FALSE(ConvexBody::Create({{0, 0}, {0, 1}, {1, 1}, {1, 0}}).ok());
  // Reflex vertex.
  EXPECT_FALSE(
      ConvexBody::Create({{0, 0}, {2, 0}, {1, 0.5}, {2, 2}, {0, 2}}).ok());
  // Winds twice.
  EXPECT_FALSE(ConvexBody::Create({{0, 0},
                                   {1, 0},
                                   {1, 1},
                                   {0, 1},
                                   {0, 0.5},
                                   {0.5, 0},
                                   {1, 0.5},
                                   {0.5, 1}})
                   .ok());
}

TEST(ConvexHullTest, SquareWithInteriorAndCollinearPoints) {
  const std::vector<Point> pts = {{1, 1}, {0, 0}, {2, 0}, {1, 0},
                                  {2, 2}, {0, 2}, {0, 1}, {1, 2}};
  EXPECT_THAT(testing::ToVector(ConvexHull(pts).value().vertices()),
              ElementsAre(Point{0, 0}, Point{2, 0}, Point{2, 2}, Point{0, 2}));
}

TEST(ConvexHullTest, DegenerateInputs) {
  const std::vector<Point> same = {{3, 4}, {3, 4}, {3, 4}};
  EXPECT_THAT(testing::ToVector(ConvexHull(same).value().vertices()),
              ElementsAre(Point{3, 4}));
  const std::vector<Point> line = {{1, 1}, {3, 3}, {0, 0}, {2, 2}};
  EXPECT_THAT(testing::ToVector(ConvexHull(line).value().vertices()),
              ElementsAre(Point{0, 0}, Point{3, 3}));
  EXPECT_FALSE(ConvexHull(std::vector<Point>{}).ok());
}

TEST(ConvexHullTest, ContainsAllInputPoints) {
  SplitMixRng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> pts;
    for (int i = 0; i < 30; ++i) pts.push_back({rng.Uniform(), rng.Uniform()});
    const ConvexBody hull = ConvexHull(pts).value();
    const auto v = hull.vertices();
    for (Point p : pts) {
      for (size_t i = 0; i < v.size(); ++i) {
        EXPECT_GE(Orient(v[i], v[(i + 1) % v.size()], p), -1e-12);
      }
    }
  }
}

TEST(DiameterTest, MatchesAllPairs) {
  SplitMixRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> pts;
    const int k = 1 + static_cast<int>(rng.Below(12));
    for (int i = 0; i < k; ++i) pts.push_back({rng.Normal(), rng.Normal()});
    const ConvexBody hull = ConvexHull(pts).value();
    double best = 0.0;
    for (Point a : pts) {
      for (Point b : pts) best = std::max(best, Distance(a, b));
    }
    EXPECT_NEAR(Diameter(hull), best, 1e-12);
  }
}

TEST(CheckDiameterTest, BoundIsInclusive) {
  const ConvexBody seg = Body({{0, 0}, {2, 0}});
  EXPECT_TRUE(CheckDiameter(seg, 2.0).ok());
  EXPECT_FALSE(CheckDiameter(seg, 1.999).ok());
}

TEST(IntersectsRectTest, ClosedSetContacts) {
  const Rect cell{{1, 1}, {2, 2}};
  // Shares only the corner (1, 1).
  EXPECT_TRUE(IntersectsRect(Body({{0, 0}, {1, 0}, {1, 1}}), cell));
  // Shares the edge x = 2.
  EXPECT_TRUE(IntersectsRect(Body({{2, 1}, {3, 1}, {3, 2}, {2, 2}}), cell));
  // Diagonal segment passing the corner at distance 0.5 / sqrt(2).
  EXPECT_FALSE(IntersectsRect(Body({{0, 1.5}, {1.5, 3}}), cell));
  // Point on the boundary and point just outside.
  EXPECT_TRUE(IntersectsRect(Body({{1.5, 2}}), cell));
  EXPECT_FALSE(IntersectsRect(Body({{1.5, 2.001}}), cell));
  // Body containing the whole rectangle.
  EXPECT_TRUE(IntersectsRect(Body({{-5, -5}, {5, -5}, {5, 5}, {-5, 5}}), cell));
  // Degenerate rectangle (a vertex) inside a triangle.
  EXPECT_TRUE(IntersectsRect(Body({{0, 0}, {4, 0}, {0, 4}}), {{1, 1}, {1, 1}}));
}

TEST(IntersectsRectTest, MatchesBruteForceOracle) {
  SplitMixRng rng(3);
  for (int trial = 0; trial < 20000; ++trial) {
    const ConvexBody body = testing::RandomDyadicBody(rng, 0, 4, 1.5, 6);
    double x0 = std::round(rng.Uniform(0, 4) * 4) / 4;
    double x1 = std::round(rng.Uniform(0, 4) * 4) / 4;
    double y0 = std::round(rng.Uniform(0, 4) * 4) / 4;
    double y1 = std::round(rng.Uniform(0, 4) * 4) / 4;
    if (trial % 3 == 0) x1 = x0;  // segments and points
    const Rect rect{{std::min(x0, x1), std::min(y0, y1)},
                    {std::max(x0, x1), std::max(y0, y1)}};
    ASSERT_EQ(IntersectsRect(body, rect),
              testing::PolygonMeetsRect(body.vertices(), rect))
        << "trial " << trial;
  }
}

// Touching an edge implies touching both incident faces; touching a vertex
// implies touching its four edges.
TEST(IntersectsComponentTest, ClosedSetImplications) {
  const GridPartition g = Grid(6);
  SplitMixRng rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const ConvexBody body = testing::RandomDyadicBody(rng, 0, 6, 1.2, 5);
    for (size_t e = g.edge_begin(); e < g.vertex_begin(); ++e) {
      if (!IntersectsComponent(body, g, e)) continue;
      for (size_t f : g.EdgeFaces(e)) {
        ASSERT_TRUE(IntersectsComponent(body, g, f));
      }
    }
    for (size_t v = g.vertex_begin(); v < g.component_count(); ++v) {
      if (!IntersectsComponent(body, g, v)) continue;
      for (size_t e : g.VertexEdges(v)) {
        ASSERT_TRUE(IntersectsComponent(body, g, e));
      }
    }
  }
}

TEST(IntersectsComponentTest, IdOverloadsValidateKind) {
  const GridPartition g = Grid(3);
  const ConvexBody body = Body({{1, 1}});
  EXPECT_TRUE(IntersectsVertex(body, g, ComponentId::Vertex(0, 0)).value());
  EXPECT_TRUE(
      IntersectsEdge(body, g, ComponentId::HorizontalEdge(0, 0)).value());
  EXPECT_TRUE(IntersectsFace(body, g, ComponentId::Face(1, 1)).value());
  EXPECT_FALSE(IntersectsFace(body, g, ComponentId::Face(2, 2)).value());
  EXPECT_FALSE(IntersectsFace(body, g, ComponentId::Vertex(0, 0)).ok());
  EXPECT_FALSE(IntersectsVertex(body, g, ComponentId::Face(0, 0)).ok());
}

TEST(ClipToRectTest, ClipsAndRejects) {
  const Rect area{{0, 0}, {4, 4}};
  const ConvexBody big = Body({{-2, -2}, {6, -2}, {6, 6}, {-2, 6}});
  EXPECT_THAT(testing::ToVector(ClipToRect(big, area).value().vertices()),
              ElementsAre(Point{0, 0}, Point{4, 0}, Point{4, 4}, Point{0, 4}));
  EXPECT_EQ(ClipToRect(Body({{5, 5}, {6, 5}, {6, 6}}), area).status().code(),
            absl::StatusCode::kNotFound);
  // A triangle touching the area at one corner clips to a point.
  EXPECT_THAT(
      testing::ToVector(
          ClipToRect(Body({{4, 4}, {5, 4}, {5, 5}}), area).value().vertices()),
      ElementsAre(Point{4, 4}));
  const ConvexBody inside = Body({{1, 1}, {2, 1}, {1, 2}});
  EXPECT_EQ(ClipToRect(inside, area).value(), inside);
}

}  // namespace
}  // namespace dpeuler
