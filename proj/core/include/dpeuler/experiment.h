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

// Query-accuracy experiments: repeated private releases of one dataset,
// scored against the exact Euler histogram with random rectangular queries.

#ifndef DPEULER_EXPERIMENT_H_
#define DPEULER_EXPERIMENT_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpeuler/geometry.h"
#include "dpeuler/histogram.h"
#include "dpeuler/inference.h"
#include "dpeuler/ingest.h"
#include "dpeuler/rounding.h"

namespace dpeuler {

// Flat `key = value` text; `#` starts a comment. Later keys win.
absl::StatusOr<std::map<std::string, std::string>> ReadKeyValues(
    std::istream& in);

struct QueryShape {
  int rows = 1;
  int cols = 1;
  // Requested area percentage, or 0 for explicitly listed shapes.
  double percent = 0.0;
  friend bool operator==(const QueryShape&, const QueryShape&) = default;
};

// All (r, c) with r * c = round(percent / 100 * n^2) that fit the grid. When
// no factorisation fits, the nearest achievable cell count is used.
std::vector<QueryShape> ShapesForPercent(int n, double percent);

struct ExperimentConfig {
  // Dataset: a bodies file, or synthetic bodies.
  std::string bodies_path;
  SyntheticKind kind = SyntheticKind::kUniform;
  size_t body_count = 10000;
  uint64_t data_seed = 1;

  double area_side = 20.0;
  int rows = 20;
  double diameter_bound = 2.0;
  double epsilon = 1.0;
  double delta = 0.05;
  InferenceObjective objective = InferenceObjective::kL1;
  bool zero_noise = false;

  std::vector<double> query_percents = {10, 20, 30, 40, 50,
                                        60, 70, 80, 90, 100};
  std::vector<QueryShape> query_shapes;
  int repetitions = 100;
  // Random query positions per shape and repetition.
  int placements = 10;
  uint64_t seed = 1;
  int threads = 1;

  // Optional one-parameter sweep over epsilon, rows, cell_side or
  // diameter_bound.
  std::string sweep_key;
  std::vector<double> sweep_values;

  double cell_side() const { return area_side / rows; }
};

// Builds a config from key/value pairs; unknown keys are errors.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const std::map<std::string, std::string>& values);
absl::Status ValidateExperimentConfig(const ExperimentConfig& config);

// Applies one sweep value to a copy of the config.
absl::StatusOr<ExperimentConfig> WithSweepValue(const ExperimentConfig& config,
                                                double value);

inline constexpr int kAlgorithmCount = 3;
// DP (noisy), LP (consistent), R (rounded and repaired).
inline constexpr const char* kAlgorithmNames[kAlgorithmCount] = {"DP", "LP",
                                                                 "R"};

struct QueryErrorRow {
  std::optional<double> sweep_value;
  QueryShape shape;  // rows = cols = 0 aggregates every shape of `percent`
  size_t samples = 0;
  double median_error[kAlgorithmCount] = {0, 0, 0};
};

struct HistogramDifference {
  double l1 = 0.0;     // ||H - X||_1
  double ratio = 0.0;  // relative to the DP difference
};

// L1 distances from `raw` to each histogram, with ratios to the first one.
// A zero first distance gives ratio 1 for zero distances and infinity
// otherwise.
absl::StatusOr<std::vector<HistogramDifference>> CompareHistograms(
    const EulerHistogram& raw, std::span<const EulerHistogram> histograms);

struct SweepSummary {
  std::optional<double> sweep_value;
  double sensitivity = 0.0;
  // Medians over repetitions, for DP, LP and R.
  HistogramDifference difference[kAlgorithmCount];
  // Summed over repetitions: noisy, consistent, rounded before repair,
  // released.
  ViolationCounts violations[4];
  double median_perturb_seconds = 0.0;
  double median_infer_seconds = 0.0;
  double median_round_seconds = 0.0;
  double build_seconds = 0.0;
  double total_repair_cost = 0.0;
  int nonoptimal_solves = 0;
  int repetitions = 0;
};

struct MetricsReport {
  std::string sweep_key;
  std::vector<QueryErrorRow> query_errors;
  std::vector<SweepSummary> summaries;
};

// Runs the configured experiment on the given bodies (already clipped or
// not; they are clipped during the build).
absl::StatusOr<MetricsReport> RunQueryExperiment(
    const ExperimentConfig& config, std::span<const ConvexBody> bodies);

// Loads or generates the configured dataset.
absl::StatusOr<std::vector<ConvexBody>> LoadExperimentBodies(
    const ExperimentConfig& config);

// Comma-separated tables, each introduced by a `# table: <name>` line and a
// header row.
void WriteMetricsReport(const MetricsReport& report, std::ostream& out);

double Median(std::vector<double> values);

// |estimate - truth| / max(truth, 1).
inline double RelativeError(double estimate, double truth) {
  const double d = estimate - truth;
  return (d < 0 ? -d : d) / (truth > 1.0 ? truth : 1.0);
}

}  // namespace dpeuler

#endif  // DPEULER_EXPERIMENT_H_
