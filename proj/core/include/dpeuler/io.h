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

// File formats.
//
// Histogram files are plain text:
//
//   # dpeuler histogram
//   format_version = 1
//   state = rounded
//   area_side = 20000
//   origin = 0 0
//   rows = 20
//   cell_side = 1000
//   epsilon = 1              (absent for raw histograms)
//   diameter_bound = 2000    (absent when unknown)
//   [faces]
//   <n lines of n counts, row-major, row 0 first>
//   [horizontal_edges]
//   <n - 1 lines of n counts>
//   [vertical_edges]
//   <n lines of n - 1 counts>
//   [vertices]
//   <n - 1 lines of n - 1 counts>
//
// Numbers use the shortest representation that reads back to the same
// double, so files round-trip bit-exactly. Extra `key = value` header lines
// are kept as metadata.
//
// Bodies files hold one JSON object per line:
//   {"user_id": "...", "vertices": [[x, y], ...]}
//
// Track files are comma-separated `user_id,latitude,longitude[,timestamp]`
// with an optional header line.

#ifndef DPEULER_IO_H_
#define DPEULER_IO_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpeuler/histogram.h"
#include "dpeuler/ingest.h"

namespace dpeuler {

inline constexpr int kHistogramFormatVersion = 1;

// Shortest round-trip decimal form of `value`.
std::string FormatDouble(double value);

struct HistogramFile {
  EulerHistogram histogram;
  std::optional<double> epsilon;
  std::optional<double> diameter_bound;
  // Additional header entries, written in key order.
  std::map<std::string, std::string> metadata;
};

absl::Status WriteHistogram(const HistogramFile& file, std::ostream& out);
absl::StatusOr<HistogramFile> ReadHistogram(std::istream& in);

absl::Status WriteHistogramFile(const HistogramFile& file,
                                const std::string& path);
absl::StatusOr<HistogramFile> ReadHistogramFile(const std::string& path);

absl::Status WriteBodies(std::span<const UserBody> bodies, std::ostream& out);
absl::StatusOr<std::vector<UserBody>> ReadBodies(std::istream& in);

// Groups points by user id, in order of first appearance.
absl::StatusOr<std::vector<UserTrack>> ReadTracks(std::istream& in);

}  // namespace dpeuler

#endif  // DPEULER_IO_H_
