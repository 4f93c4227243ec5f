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

#include "dpeuler/io.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dpeuler/random.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpeuler {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::Pair;

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(3), "3");
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(-2.5), "-2.5");
  SplitMixRng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.Normal() * std::pow(10.0, rng.Uniform(-8, 8));
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

HistogramFile Sample() {
  const GridPartition g = GridPartition::Create({1.5, -2}, 6, 3).value();
  std::vector<double> counts(g.component_count());
  for (size_t i = 0; i < counts.size(); ++i) counts[i] = 0.1 * i + 1.0 / 3;
  return {
      EulerHistogram::Create(g, counts, HistogramState::kConsistent).value(),
      0.7,
      2.0,
      {{"objective", "l1"}}};
}

TEST(HistogramIoTest, RoundTripIsBitExact) {
  const HistogramFile file = Sample();
  std::stringstream s;
  ASSERT_TRUE(WriteHistogram(file, s).ok());
  const std::string text = s.str();
  const HistogramFile back = ReadHistogram(s).value();
  EXPECT_EQ(back.histogram.state(), HistogramState::kConsistent);
  EXPECT_EQ(back.histogram.partition().rows(), 3);
  EXPECT_EQ(back.histogram.partition().origin(), (Point{1.5, -2}));
  EXPECT_EQ(back.epsilon, 0.7);
  EXPECT_EQ(back.diameter_bound, 2.0);
  EXPECT_THAT(back.metadata, ElementsAre(Pair("objective", "l1")));
  EXPECT_TRUE(std::equal(file.histogram.counts().begin(),
                         file.histogram.counts().end(),
                         back.histogram.counts().begin()));
  std::stringstream again;
  ASSERT_TRUE(WriteHistogram(back, again).ok());
  EXPECT_EQ(again.str(), text);
}

TEST(HistogramIoTest, HeaderLayout) {
  std::stringstream s;
  ASSERT_TRUE(WriteHistogram(Sample(), s).ok());
  EXPECT_THAT(s.str(), HasSubstr("format_version = 1\nstate = consistent\n"));
  EXPECT_THAT(s.str(), HasSubstr("rows = 3\ncell_side = 2\n"));
  EXPECT_THAT(s.str(), HasSubstr("[vertices]\n"));
}

TEST(HistogramIoTest, RejectsMalformedFiles) {
  std::stringstream good;
  ASSERT_TRUE(WriteHistogram(Sample(), good).ok());
  const std::string text = good.str();
  auto read = [](std::string t) {
    std::istringstream in(t);
    return ReadHistogram(in).status();
  };
  EXPECT_TRUE(read(text).ok());
  std::string bad_version = text;
  bad_version.replace(bad_version.find("format_version = 1"), 18,
                      "format_version = 9");
  EXPECT_FALSE(read(bad_version).ok());
  std::string bad_state = text;
  bad_state.replace(bad_state.find("consistent"), 10, "fermented");
  EXPECT_FALSE(read(bad_state).ok());
  // Last line missing.
  EXPECT_FALSE(
      read(text.substr(0, text.rfind('\n', text.size() - 2) + 1)).ok());
  std::string bad_cell = text;
  bad_cell.replace(bad_cell.find("cell_side = 2"), 13, "cell_side = 3");
  EXPECT_FALSE(read(bad_cell).ok());
  EXPECT_FALSE(read("").ok());
}

TEST(BodiesIoTest, RoundTrip) {
  const std::vector<UserBody> bodies = {
      {"a", ConvexBody::Create({{0, 0}, {1, 0}, {0, 1}}).value()},
      {"b\"q", ConvexBody::Create({{0.1, 0.2}}).value()}};
  std::stringstream s;
  ASSERT_TRUE(WriteBodies(bodies, s).ok());
  const std::vector<UserBody> back = ReadBodies(s).value();
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].user_id, "a");
  EXPECT_EQ(back[0].body, bodies[0].body);
  EXPECT_EQ(back[1].user_id, "b\"q");
  EXPECT_EQ(back[1].body, bodies[1].body);
}

TEST(BodiesIoTest, RejectsBadLines) {
  std::istringstream not_json("{\"user_id\": \"a\", \"vertices\": [[0, 0]\n");
  EXPECT_FALSE(ReadBodies(not_json).ok());
  std::istringstream clockwise(
      "{\"user_id\": \"a\", \"vertices\": [[0,0],[0,1],[1,0]]}\n");
  EXPECT_FALSE(ReadBodies(clockwise).ok());
}

TEST(TracksIoTest, GroupsByUserInFirstAppearanceOrder) {
  std::istringstream in(
      "user_id,latitude,longitude,timestamp\n"
      "u2,40.0,116.0,2008-10-23 02:53:04\n"
      "u1,39.9,116.3\n"
      "u2,40.1,116.1,2008-10-23 02:53:10\n");
  const std::vector<UserTrack> tracks = ReadTracks(in).value();
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(tracks[0].user_id, "u2");
  ASSERT_EQ(tracks[0].points.size(), 2u);
  EXPECT_EQ(tracks[0].points[1].latitude, 40.1);
  EXPECT_EQ(tracks[0].points[1].timestamp, "2008-10-23 02:53:10");
  EXPECT_EQ(tracks[1].user_id, "u1");
  std::istringstream bad("u1,40,116\nu1,north,116\n");
  EXPECT_FALSE(ReadTracks(bad).ok());
}

}  // namespace
}  // namespace dpeuler
