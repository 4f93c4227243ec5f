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
#include <thread>

#include "absl/strings/str_cat.h"
#include "dpeuler/internal/status_macros.h"
#include "dpeuler/random.h"

namespace dpeuler {
namespace {

constexpr double kDegree = M_PI / 180.0;

bool ValidCoordinate(const GeoPoint& p) {
  return std::isfinite(p.latitude) && std::isfinite(p.longitude) &&
         p.latitude >= -90.0 && p.latitude <= 90.0 && p.longitude >= -180.0 &&
         p.longitude <= 180.0;
}

double PointSetDiameter(std::span<const Point> points) {
  auto hull = ConvexHull(points);
  return hull.ok() ? Diameter(*hull) : 0.0;
}

}  // namespace

absl::Status ValidateIngestConfig(const IngestConfig& config) {
  if (!(config.area_side > 0.0) || !(config.diameter_bound > 0.0)) {
    return absl::InvalidArgumentError(
        "area side and diameter bound must be positive");
  }
  if (config.k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("k must be at least 1, got ", config.k));
  }
  if (!ValidCoordinate({config.center_latitude, config.center_longitude, ""})) {
    return absl::InvalidArgumentError(
        "projection center is not a valid "
        "latitude/longitude");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<Point>> Project(const UserTrack& track,
                                           const IngestConfig& config) {
  const double lat0 = config.center_latitude * kDegree;
  const double cos_lat0 = std::cos(lat0);
  const Point middle =
      config.origin + Point{config.area_side / 2, config.area_side / 2};
  const Rect area{config.origin,
                  config.origin + Point{config.area_side, config.area_side}};
  std::vector<Point> out;
  out.reserve(track.points.size());
  for (const GeoPoint& p : track.points) {
    if (!ValidCoordinate(p)) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ", track.user_id, ": invalid coordinate (",
                       p.latitude, ", ", p.longitude, ")"));
    }
    double dlon = p.longitude - config.center_longitude;
    if (dlon > 180.0) dlon -= 360.0;
    if (dlon < -180.0) dlon += 360.0;
    const Point q =
        middle + Point{kEarthRadiusMeters * dlon * kDegree * cos_lat0,
                       kEarthRadiusMeters *
                           (p.latitude - config.center_latitude) * kDegree};
    if (area.Contains(q)) out.push_back(q);
  }
  if (out.empty()) {
    return absl::NotFoundError(
        absl::StrCat("user ", track.user_id, " has no points inside the area"));
  }
  return out;
}

KernelDensity::KernelDensity(std::span<const Point> data) : data_(data) {
  const double n = static_cast<double>(data.size());
  Point mean;
  for (const Point& p : data) mean = mean + p;
  mean = (1.0 / n) * mean;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Point& p : data) {
    const Point d = p - mean;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  const double dof = std::max(n - 1.0, 1.0);
  const double factor2 = std::pow(n, -1.0 / 3.0);
  double cxx = sxx / dof * factor2;
  double cxy = sxy / dof * factor2;
  double cyy = syy / dof * factor2;
  // Degenerate (single point or collinear) data: add a small ridge.
  const double ridge = std::max(1e-9 * (cxx + cyy), 1e-12);
  double det = cxx * cyy - cxy * cxy;
  if (!(det > 1e-12 * (cxx + cyy) * (cxx + cyy)) || det <= 0.0) {
    cxx += ridge;
    cyy += ridge;
    det = cxx * cyy - cxy * cxy;
  }
  inv_xx_ = cyy / det;
  inv_xy_ = -cxy / det;
  inv_yy_ = cxx / det;
  norm_ = 1.0 / (2.0 * M_PI * std::sqrt(det) * n);
}

double KernelDensity::operator()(Point at) const {
  double sum = 0.0;
  for (const Point& p : data_) {
    const double dx = at.x - p.x, dy = at.y - p.y;
    sum += std::exp(-0.5 * (inv_xx_ * dx * dx + 2.0 * inv_xy_ * dx * dy +
                            inv_yy_ * dy * dy));
  }
  return sum * norm_;
}

Point KdeMode(std::span<const Point> points) {
  if (points.size() == 1) return points[0];
  KernelDensity density(points);
  size_t best = 0;
  double best_value = -1.0;
  for (size_t i = 0; i < points.size(); ++i) {
    const double v = density(points[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return points[best];
}

absl::StatusOr<ConvexBody> ExtractBody(std::span<const Point> points,
                                       const IngestConfig& config) {
  if (points.empty()) {
    return absl::InvalidArgumentError("cannot extract a body from no points");
  }
  const Point mode = KdeMode(points);
  std::vector<size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    dist[i] = Distance(points[i], mode);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return dist[a] < dist[b]; });
  order.resize(std::min<size_t>(order.size(), config.k));

  // Dropping the farthest point until the diameter fits keeps a prefix of
  // `order`; the prefix diameter grows with its length, so binary search it.
  std::vector<Point> kept;
  auto prefix = [&](size_t len) {
    kept.clear();
    for (size_t i = 0; i < len; ++i) kept.push_back(points[order[i]]);
    return std::span<const Point>(kept);
  };
  size_t lo = 1, hi = order.size();
  const double limit = config.diameter_bound + kContactTolerance;
  if (PointSetDiameter(prefix(hi)) > limit) {
    while (hi - lo > 1) {
      const size_t mid = lo + (hi - lo) / 2;
      if (PointSetDiameter(prefix(mid)) <= limit) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    hi = lo;
  }
  return ConvexHull(prefix(hi));
}

IngestResult IngestTracks(std::span<const UserTrack> tracks,
                          const IngestConfig& config, int threads) {
  std::vector<absl::StatusOr<ConvexBody>> results(
      tracks.size(), absl::UnknownError("not processed"));
  auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      auto projected = Project(tracks[i], config);
      if (!projected.ok()) {
        results[i] = projected.status();
        continue;
      }
      results[i] = ExtractBody(*projected, config);
    }
  };
  threads = std::clamp<int>(threads, 1, std::max<int>(1, tracks.size()));
  if (threads == 1) {
    work(0, tracks.size());
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back(work, tracks.size() * w / threads,
                        tracks.size() * (w + 1) / threads);
    }
    for (auto& t : pool) t.join();
  }
  IngestResult out;
  for (size_t i = 0; i < tracks.size(); ++i) {
    if (results[i].ok()) {
      out.bodies.push_back({tracks[i].user_id, *std::move(results[i])});
    } else {
      out.skipped.push_back({tracks[i].user_id, results[i].status()});
    }
  }
  return out;
}

std::string_view SyntheticKindName(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::kUniform:
      return "uniform";
    case SyntheticKind::kClustered:
      return "clustered";
    case SyntheticKind::kConcentrated:
      return "concentrated";
  }
  return "unknown";
}

absl::StatusOr<SyntheticKind> ParseSyntheticKind(std::string_view name) {
  for (SyntheticKind k : {SyntheticKind::kUniform, SyntheticKind::kClustered,
                          SyntheticKind::kConcentrated}) {
    if (SyntheticKindName(k) == name) return k;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown synthetic kind '", std::string(name),
                   "' (want uniform, clustered or concentrated)"));
}

absl::StatusOr<std::vector<ConvexBody>> GenerateSynthetic(
    SyntheticKind kind, size_t count, const SyntheticConfig& config,
    uint64_t seed) {
  if (!(config.area_side > 0.0) || !(config.diameter_bound > 0.0)) {
    return absl::InvalidArgumentError(
        "area side and diameter bound must be positive");
  }
  const double a = config.area_side;
  const Rect area{config.origin, config.origin + Point{a, a}};
  SplitMixRng rng(seed);

  auto uniform_point = [&] {
    return config.origin + Point{rng.Uniform(0, a), rng.Uniform(0, a)};
  };
  auto gaussian_point = [&](Point mean, double sigma) {
    while (true) {
      const Point p = mean + Point{sigma * rng.Normal(), sigma * rng.Normal()};
      if (area.Contains(p)) return p;
    }
  };
  std::vector<Point> mixture;
  if (kind == SyntheticKind::kClustered) {
    for (int i = 0; i < 5; ++i) {
      mixture.push_back(config.origin + Point{rng.Uniform(0.15 * a, 0.85 * a),
                                              rng.Uniform(0.15 * a, 0.85 * a)});
    }
  } else if (kind == SyntheticKind::kConcentrated) {
    mixture.push_back(config.origin + Point{rng.Uniform(0.3 * a, 0.7 * a),
                                            rng.Uniform(0.3 * a, 0.7 * a)});
  }

  std::vector<ConvexBody> bodies;
  bodies.reserve(count);
  std::vector<Point> cloud;
  for (size_t i = 0; i < count; ++i) {
    Point center;
    switch (kind) {
      case SyntheticKind::kUniform:
        center = uniform_point();
        break;
      case SyntheticKind::kClustered:
        center = gaussian_point(mixture[rng.Below(mixture.size())], a / 15);
        break;
      case SyntheticKind::kConcentrated:
        center = rng.Uniform() < 0.7 ? gaussian_point(mixture[0], a / 20)
                                     : uniform_point();
        break;
    }
    const double radius = config.diameter_bound * rng.Uniform(0.1, 0.5);
    const int points = 3 + static_cast<int>(rng.Below(6));
    cloud.clear();
    for (int j = 0; j < points; ++j) {
      const double r = radius * std::sqrt(rng.Uniform());
      const double t = 2.0 * M_PI * rng.Uniform();
      cloud.push_back(center + Point{r * std::cos(t), r * std::sin(t)});
    }
    DPEULER_ASSIGN_OR_RETURN(ConvexBody hull, ConvexHull(cloud));
    auto clipped = ClipToRect(hull, area);
    // The center lies inside the area, so the hull cannot miss it entirely
    // unless round-off collapsed it; fall back to the center point.
    if (!clipped.ok()) {
      DPEULER_ASSIGN_OR_RETURN(clipped, ConvexBody::Create({center}));
    }
    bodies.push_back(*std::move(clipped));
  }
  return bodies;
}

}  // namespace dpeuler
