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

#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "testing/oracles.h"

namespace dpeuler {
namespace {

using ::testing::ElementsAre;

GridPartition Grid(int n) {
  return GridPartition::Create({0, 0}, n, n).value();
}

ConvexBody Body(std::vector<Point> v) { return ConvexBody::Create(v).value(); }

TEST(HistogramTest, CreateValidatesSize) {
  const GridPartition g = Grid(2);
  EXPECT_FALSE(
      EulerHistogram::Create(g, std::vector<double>(8), HistogramState::kRaw)
          .ok());
  EXPECT_TRUE(
      EulerHistogram::Create(g, std::vector<double>(9), HistogramState::kRaw)
          .ok());
}

TEST(HistogramTest, StateNamesRoundTrip) {
  for (HistogramState s :
       {HistogramState::kRaw, HistogramState::kNoisy,
        HistogramState::kConsistent, HistogramState::kRounded}) {
    EXPECT_EQ(ParseHistogramState(HistogramStateName(s)).value(), s);
  }
  EXPECT_FALSE(ParseHistogramState("cooked").ok());
  EXPECT_EQ(ExpectState(HistogramState::kRaw, HistogramState::kNoisy).code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(HistogramTest, SingleSquareSpanningFourCells) {
  const GridPartition g = Grid(3);
  const std::vector<ConvexBody> bodies = {
      Body({{0.5, 0.5}, {1.5, 0.5}, {1.5, 1.5}, {0.5, 1.5}})};
  const EulerHistogram h = BuildHistogram(bodies, g).histogram;
  // Four faces, four edges around vertex (0, 0), that vertex.
  EXPECT_EQ(TouchedComponents(bodies[0], g).size(), 9u);
  const QueryRegion all{0, 2, 0, 2};
  const EulerSums sums = QuerySums(h, all).value();
  EXPECT_EQ(sums.faces, 4);
  EXPECT_EQ(sums.edges, 4);
  EXPECT_EQ(sums.vertices, 1);
  EXPECT_EQ(Query(h, all).value(), 1);
  // Naive face sum over-counts.
  EXPECT_EQ(Query(h, {0, 1, 0, 0}).value(), 1);
}

TEST(HistogramTest, BodyOnGridLineTouchesBothSides) {
  const GridPartition g = Grid(2);
  const std::vector<ConvexBody> bodies = {Body({{0.2, 1}, {0.8, 1}})};
  const EulerHistogram h = BuildHistogram(bodies, g).histogram;
  EXPECT_THAT(testing::ToVector(h.counts()),
              ElementsAre(1, 0, 1, 0, 1, 0, 0, 0, 0));
}

TEST(HistogramTest, RejectsBodiesOutsideAreaOrTooWide) {
  const GridPartition g = Grid(4);
  const std::vector<ConvexBody> bodies = {
      Body({{9, 9}}), Body({{0, 0}, {3, 0}}), Body({{1, 1}, {2, 1}})};
  BuildOptions options;
  options.diameter_bound = 2.0;
  const BuildResult result = BuildHistogram(bodies, g, options);
  ASSERT_EQ(result.rejected.size(), 2u);
  EXPECT_EQ(result.rejected[0].body_index, 0u);
  EXPECT_EQ(result.rejected[1].body_index, 1u);
  EXPECT_EQ(Query(result.histogram, {0, 3, 0, 3}).value(), 1);
}

TEST(HistogramTest, ThreadedBuildMatchesSerial) {
  const GridPartition g = Grid(8);
  SplitMixRng rng(9);
  std::vector<ConvexBody> bodies;
  for (int i = 0; i < 500; ++i) {
    bodies.push_back(testing::RandomDyadicBody(rng, -1, 9, 2.0, 6));
  }
  BuildOptions threaded;
  threaded.threads = 4;
  const BuildResult a = BuildHistogram(bodies, g);
  const BuildResult b = BuildHistogram(bodies, g, threaded);
  EXPECT_TRUE(std::equal(a.histogram.counts().begin(),
                         a.histogram.counts().end(),
                         b.histogram.counts().begin()));
  EXPECT_EQ(a.rejected.size(), b.rejected.size());
}

TEST(HistogramTest, QueryValidatesRegion) {
  const EulerHistogram h = EulerHistogram::Zeros(Grid(3), HistogramState::kRaw);
  EXPECT_FALSE(Query(h, {0, 3, 0, 0}).ok());
  EXPECT_FALSE(Query(h, {2, 1, 0, 0}).ok());
  EXPECT_FALSE(Query(h, {-1, 0, 0, 0}).ok());
  EXPECT_TRUE(Query(h, {2, 2, 0, 2}).ok());
}

// Euler exactness against the brute-force count, on dyadic coordinates so
// that every contact is decided exactly.
TEST(HistogramTest, EulerCountMatchesBruteForce) {
  SplitMixRng rng(21);
  for (int n = 2; n <= 10; ++n) {
    const GridPartition g = Grid(n);
    for (int set = 0; set < 20; ++set) {
      std::vector<ConvexBody> bodies;
      const int count = 1 + static_cast<int>(rng.Below(40));
      for (int i = 0; i < count; ++i) {
        bodies.push_back(testing::RandomDyadicBody(rng, 0, n, 1.5, 6));
      }
      const EulerHistogram h = BuildHistogram(bodies, g).histogram;
      const RangeQueryIndex index(h);
      for (int q = 0; q < 50; ++q) {
        const QueryRegion region = testing::RandomRegion(rng, n);
        const double expected =
            static_cast<double>(testing::BruteForceCount(bodies, g, region));
        ASSERT_EQ(Query(h, region).value(), expected)
            << "n=" << n << " set=" << set;
        ASSERT_EQ(index.Count(region), expected);
      }
    }
  }
}

}  // namespace
}  // namespace dpeuler
