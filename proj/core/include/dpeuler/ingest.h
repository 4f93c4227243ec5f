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

// Turning GPS tracks into one bounded-diameter convex body per user, and
// synthetic body generators.

#ifndef DPEULER_INGEST_H_
#define DPEULER_INGEST_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpeuler/geometry.h"
#include "dpeuler/planar.h"

namespace dpeuler {

inline constexpr double kEarthRadiusMeters = 6371000.0;

struct GeoPoint {
  double latitude = 0.0;
  double longitude = 0.0;
  std::string timestamp;  // optional, carried through unparsed
};

struct UserTrack {
  std::string user_id;
  std::vector<GeoPoint> points;
};

struct IngestConfig {
  // Planar frame: the area square [origin, origin + area_side]^2 in meters,
  // with `center_*` mapped to its middle.
  Point origin;
  double area_side = 20000.0;
  double center_latitude = 0.0;
  double center_longitude = 0.0;
  double diameter_bound = 2000.0;
  // Nearest neighbours of the density mode kept per user.
  int k = 5760;
};

absl::Status ValidateIngestConfig(const IngestConfig& config);

// Equirectangular projection about the configured center:
//   x = R dlon cos(lat0),  y = R dlat.
// Points falling outside the area are dropped. InvalidArgument on bad
// coordinates, NotFound when no point is inside the area.
absl::StatusOr<std::vector<Point>> Project(const UserTrack& track,
                                           const IngestConfig& config);

// Gaussian kernel density estimate with Scott's-rule bandwidth: the kernel
// covariance is the sample covariance times n^(-1/3).
class KernelDensity {
 public:
  explicit KernelDensity(std::span<const Point> data);
  double operator()(Point at) const;

 private:
  std::span<const Point> data_;
  // Inverse kernel covariance (symmetric) and normalising constant.
  double inv_xx_ = 0.0, inv_xy_ = 0.0, inv_yy_ = 0.0;
  double norm_ = 0.0;
};

// The data point with the highest estimated density (first one on ties).
// `points` must be non-empty.
Point KdeMode(std::span<const Point> points);

// Mode, k nearest points to it, farthest-first outlier removal down to
// diameter B, convex hull.
absl::StatusOr<ConvexBody> ExtractBody(std::span<const Point> points,
                                       const IngestConfig& config);

struct UserBody {
  std::string user_id;
  ConvexBody body;
};

struct SkippedUser {
  std::string user_id;
  absl::Status reason;
};

struct IngestResult {
  std::vector<UserBody> bodies;
  std::vector<SkippedUser> skipped;
};

// Runs projection and extraction for every track. Output order follows the
// input order regardless of `threads`.
IngestResult IngestTracks(std::span<const UserTrack> tracks,
                          const IngestConfig& config, int threads = 1);

enum class SyntheticKind { kUniform, kClustered, kConcentrated };

std::string_view SyntheticKindName(SyntheticKind kind);
absl::StatusOr<SyntheticKind> ParseSyntheticKind(std::string_view name);

struct SyntheticConfig {
  Point origin;
  double area_side = 20.0;
  double diameter_bound = 2.0;
};

// `count` random convex bodies inside the area with diameter at most B.
// Each body is the hull of 3 to 8 points drawn in a disk of radius
// [0.1 B, 0.5 B] around a center whose distribution depends on `kind`:
// uniform over the area, a five-component Gaussian mixture, or 70% from one
// tight hotspot plus 30% uniform background.
absl::StatusOr<std::vector<ConvexBody>> GenerateSynthetic(
    SyntheticKind kind, size_t count, const SyntheticConfig& config,
    uint64_t seed);

}  // namespace dpeuler

#endif  // DPEULER_INGEST_H_
