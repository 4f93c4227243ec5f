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

#include "dpeuler/ingest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dpeuler/random.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpeuler {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;

IngestConfig WideConfig() {
  IngestConfig c;
  c.area_side = 400000;
  c.center_latitude = 40.0;
  c.center_longitude = 116.0;
  return c;
}

TEST(ProjectTest, OneDegreeOfLatitude) {
  const IngestConfig c = WideConfig();
  const UserTrack track{"u", {{40.0, 116.0, ""}, {41.0, 116.0, ""}}};
  const std::vector<Point> p = Project(track, c).value();
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0].x, 200000, 1e-6);
  EXPECT_NEAR(p[0].y, 200000, 1e-6);
  EXPECT_NEAR(p[1].y - p[0].y, 111194.93, 0.01);
  EXPECT_NEAR(p[1].x, 200000, 1e-6);
}

TEST(ProjectTest, LongitudeShrinksWithLatitude) {
  const IngestConfig c = WideConfig();
  const UserTrack track{"u", {{40.0, 117.0, ""}}};
  const std::vector<Point> p = Project(track, c).value();
  EXPECT_NEAR(p[0].x - 200000, 111194.93 * std::cos(40.0 * M_PI / 180), 0.01);
}

TEST(ProjectTest, RejectsBadCoordinatesAndEmptyResults) {
  const IngestConfig c = WideConfig();
  EXPECT_EQ(Project({"u", {{95.0, 116.0, ""}}}, c).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(Project({"u", {{40.0, 190.0, ""}}}, c).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(Project({"u", {{50.0, 116.0, ""}}}, c).status().code(),
            absl::StatusCode::kNotFound);
}

TEST(IngestConfigTest, Validation) {
  IngestConfig c;
  EXPECT_TRUE(ValidateIngestConfig(c).ok());
  c.k = 0;
  EXPECT_FALSE(ValidateIngestConfig(c).ok());
  c = IngestConfig();
  c.diameter_bound = -1;
  EXPECT_FALSE(ValidateIngestConfig(c).ok());
  c = IngestConfig();
  c.center_latitude = 91;
  EXPECT_FALSE(ValidateIngestConfig(c).ok());
}

// Reference values from an independent Scott's-rule Gaussian KDE.
TEST(KernelDensityTest, MatchesReferenceValues) {
  const std::vector<Point> data = {{0, 0},     {1, 0.5}, {2, 2},
                                   {0.5, 1.5}, {3, 1},   {1.5, 1}};
  const KernelDensity kde(data);
  EXPECT_NEAR(kde({0, 0}), 0.10784790824296162, 1e-12);
  EXPECT_NEAR(kde({1, 1}), 0.14005426806717647, 1e-12);
  EXPECT_NEAR(kde({2.5, 0.5}), 0.05988935004531701, 1e-12);
  EXPECT_NEAR(kde({4, 4}), 3.4760363978287715e-05, 1e-15);
}

TEST(KernelDensityTest, ModeIsDensestDataPoint) {
  std::vector<Point> data = {
      {10, 10}, {0, 0}, {0.1, 0}, {0, 0.1}, {0.05, 0.05}};
  EXPECT_EQ(KdeMode(data), (Point{0.05, 0.05}));
  const std::vector<Point> single = {{3, 4}};
  EXPECT_EQ(KdeMode(single), (Point{3, 4}));
  // Collinear data still has a finite density.
  const std::vector<Point> line = {{0, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(KdeMode(line), (Point{1, 0}));
}

// Reference extraction: keep the k nearest to the mode, then drop the
// farthest remaining point while the diameter exceeds B.
std::vector<Point> ReferenceExtract(std::vector<Point> points, Point mode,
                                    int k, double bound) {
  std::stable_sort(points.begin(), points.end(), [&](Point a, Point b) {
    return SquaredDistance(a, mode) < SquaredDistance(b, mode);
  });
  if (static_cast<int>(points.size()) > k) points.resize(k);
  auto diameter = [](const std::vector<Point>& p) {
    double d = 0;
    for (Point a : p) {
      for (Point b : p) d = std::max(d, Distance(a, b));
    }
    return d;
  };
  while (diameter(points) > bound) points.pop_back();
  return points;
}

TEST(ExtractBodyTest, MatchesIterativeOutlierRemoval) {
  SplitMixRng rng(13);
  IngestConfig config;
  config.diameter_bound = 2.0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point> pts;
    const int n = 1 + static_cast<int>(rng.Below(60));
    for (int i = 0; i < n; ++i) {
      const double s = rng.Uniform() < 0.8 ? 0.5 : 3.0;
      pts.push_back({5 + s * rng.Normal(), 5 + s * rng.Normal()});
    }
    config.k = 1 + static_cast<int>(rng.Below(50));
    const std::vector<Point> kept =
        ReferenceExtract(pts, KdeMode(pts), config.k, config.diameter_bound);
    const ConvexBody expected = ConvexHull(kept).value();
    const ConvexBody body = ExtractBody(pts, config).value();
    EXPECT_EQ(body, expected) << "trial " << trial;
    EXPECT_LE(Diameter(body), config.diameter_bound + 1e-9);
  }
}

TEST(IngestTracksTest, OrderAndSkips) {
  IngestConfig c;
  c.area_side = 20000;
  c.center_latitude = 40.0;
  c.center_longitude = 116.0;
  c.diameter_bound = 2000;
  std::vector<UserTrack> tracks = {
      {"a", {{40.0, 116.0, ""}, {40.001, 116.0, ""}, {40.0, 116.001, ""}}},
      {"far", {{45.0, 116.0, ""}}},
      {"bad", {{-100.0, 116.0, ""}}},
      {"b", {{40.01, 116.01, ""}}}};
  const IngestResult serial = IngestTracks(tracks, c, 1);
  const IngestResult threaded = IngestTracks(tracks, c, 3);
  ASSERT_EQ(serial.bodies.size(), 2u);
  EXPECT_EQ(serial.bodies[0].user_id, "a");
  EXPECT_EQ(serial.bodies[1].user_id, "b");
  ASSERT_EQ(serial.skipped.size(), 2u);
  EXPECT_EQ(serial.skipped[0].user_id, "far");
  EXPECT_EQ(serial.skipped[1].user_id, "bad");
  ASSERT_EQ(threaded.bodies.size(), 2u);
  EXPECT_EQ(threaded.bodies[0].body, serial.bodies[0].body);
  EXPECT_EQ(threaded.bodies[1].body, serial.bodies[1].body);
}

TEST(SyntheticTest, BodiesRespectAreaAndBound) {
  SyntheticConfig config;
  for (SyntheticKind kind : {SyntheticKind::kUniform, SyntheticKind::kClustered,
                             SyntheticKind::kConcentrated}) {
    const std::vector<ConvexBody> bodies =
        GenerateSynthetic(kind, 2000, config, 3).value();
    ASSERT_EQ(bodies.size(), 2000u);
    for (const ConvexBody& b : bodies) {
      EXPECT_LE(Diameter(b), config.diameter_bound + 1e-9);
      EXPECT_GE(b.bounding_box().min.x, 0);
      EXPECT_GE(b.bounding_box().min.y, 0);
      EXPECT_LE(b.bounding_box().max.x, 20);
      EXPECT_LE(b.bounding_box().max.y, 20);
    }
    EXPECT_EQ(ParseSyntheticKind(SyntheticKindName(kind)).value(), kind);
  }
  EXPECT_FALSE(ParseSyntheticKind("gaussian").ok());
}

TEST(SyntheticTest, DeterministicPerSeed) {
  SyntheticConfig config;
  const auto a = GenerateSynthetic(SyntheticKind::kClustered, 50, config, 9);
  const auto b = GenerateSynthetic(SyntheticKind::kClustered, 50, config, 9);
  const auto c = GenerateSynthetic(SyntheticKind::kClustered, 50, config, 10);
  EXPECT_EQ(a.value(), b.value());
  EXPECT_NE(a.value(), c.value());
}

// Coefficient of variation of bodies per 4x4 block.
double BlockCv(const std::vector<ConvexBody>& bodies, double side) {
  std::vector<double> counts(16, 0.0);
  for (const ConvexBody& b : bodies) {
    const Rect& r = b.bounding_box();
    const double cx = (r.min.x + r.max.x) / 2, cy = (r.min.y + r.max.y) / 2;
    const int i = std::min(3, static_cast<int>(cx / side * 4));
    const int j = std::min(3, static_cast<int>(cy / side * 4));
    counts[i * 4 + j] += 1;
  }
  const double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / 16;
  double var = 0;
  for (double c : counts) var += (c - mean) * (c - mean);
  return std::sqrt(var / 16) / mean;
}

TEST(SyntheticTest, UniformIsSpreadAndConcentratedIsNot) {
  SyntheticConfig config;
  const auto uniform =
      GenerateSynthetic(SyntheticKind::kUniform, 10000, config, 1).value();
  const auto hot =
      GenerateSynthetic(SyntheticKind::kConcentrated, 10000, config, 1).value();
  EXPECT_LT(BlockCv(uniform, 20), 0.2);
  EXPECT_GT(BlockCv(hot, 20), 0.5);
}

}  // namespace
}  // namespace dpeuler
