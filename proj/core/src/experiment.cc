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

#include "dpeuler/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <thread>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dpeuler/internal/status_macros.h"
#include "dpeuler/io.h"
#include "dpeuler/pipeline.h"
#include "dpeuler/privacy.h"
#include "dpeuler/random.h"

namespace dpeuler {
namespace {

// Stream offsets separating the per-repetition seeds.
constexpr uint64_t kPlacementStream = 0x5bd1e995;

absl::StatusOr<double> ToDouble(const std::string& key,
                                absl::string_view text) {
  double v;
  if (!absl::SimpleAtod(absl::StripAsciiWhitespace(text), &v) ||
      !std::isfinite(v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("config key '", key, "': '", text, "' is not a number"));
  }
  return v;
}

absl::StatusOr<int64_t> ToInt(const std::string& key, absl::string_view text) {
  int64_t v;
  if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(text), &v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("config key '", key, "': '", text, "' is not an integer"));
  }
  return v;
}

absl::StatusOr<std::vector<double>> ToDoubleList(const std::string& key,
                                                 absl::string_view text) {
  std::vector<double> out;
  for (absl::string_view part :
       absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    DPEULER_ASSIGN_OR_RETURN(double v, ToDouble(key, part));
    out.push_back(v);
  }
  return out;
}

absl::StatusOr<int> RowsForCellSide(double area_side, double cell_side) {
  if (!(cell_side > 0.0)) {
    return absl::InvalidArgumentError("cell_side must be positive");
  }
  const double q = area_side / cell_side;
  const double n = std::round(q);
  if (std::abs(q - n) > 1e-9 * q || n > 1e5) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cell_side ", cell_side, " does not divide area_side ", area_side));
  }
  return static_cast<int>(n);
}

double SecondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

double Median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  if (values.size() % 2 == 1) return values[mid];
  const double upper = values[mid];
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

absl::StatusOr<std::map<std::string, std::string>> ReadKeyValues(
    std::istream& in) {
  std::map<std::string, std::string> values;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    absl::string_view text = line;
    if (const size_t hash = text.find('#'); hash != absl::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = absl::StripAsciiWhitespace(text);
    if (text.empty()) continue;
    const size_t eq = text.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          "config line ", line_number, ": expected 'key = value'"));
    }
    values[std::string(absl::StripAsciiWhitespace(text.substr(0, eq)))] =
        std::string(absl::StripAsciiWhitespace(text.substr(eq + 1)));
  }
  return values;
}

std::vector<QueryShape> ShapesForPercent(int n, double percent) {
  const long total = static_cast<long>(n) * n;
  const long target = std::clamp<long>(
      std::lround(percent / 100.0 * static_cast<double>(total)), 1, total);
  for (long delta = 0; delta <= total; ++delta) {
    std::vector<QueryShape> shapes;
    for (long cells : {target - delta, target + delta}) {
      if (cells < 1 || cells > total) continue;
      for (int r = 1; r <= n; ++r) {
        if (cells % r == 0 && cells / r <= n) {
          shapes.push_back({r, static_cast<int>(cells / r), percent});
        }
      }
      if (delta == 0) break;
    }
    if (!shapes.empty()) return shapes;
  }
  return {};
}

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const std::map<std::string, std::string>& values) {
  ExperimentConfig c;
  std::optional<double> cell_side;
  for (const auto& [key, value] : values) {
    if (key == "bodies") {
      c.bodies_path = value;
    } else if (key == "kind") {
      DPEULER_ASSIGN_OR_RETURN(c.kind, ParseSyntheticKind(value));
    } else if (key == "body_count") {
      DPEULER_ASSIGN_OR_RETURN(int64_t v, ToInt(key, value));
      if (v < 0) return absl::InvalidArgumentError("body_count must be >= 0");
      c.body_count = static_cast<size_t>(v);
    } else if (key == "data_seed") {
      DPEULER_ASSIGN_OR_RETURN(int64_t v, ToInt(key, value));
      c.data_seed = static_cast<uint64_t>(v);
    } else if (key == "area_side") {
      DPEULER_ASSIGN_OR_RETURN(c.area_side, ToDouble(key, value));
    } else if (key == "rows") {
      DPEULER_ASSIGN_OR_RETURN(int64_t v, ToInt(key, value));
      c.rows = static_cast<int>(v);
    } else if (key == "cell_side") {
      DPEULER_ASSIGN_OR_RETURN(cell_side, ToDouble(key, value));
    } else if (key == "diameter_bound") {
      DPEULER_ASSIGN_OR_RETURN(c.diameter_bound, ToDouble(key, value));
    } else if (key == "epsilon") {
      DPEULER_ASSIGN_OR_RETURN(c.epsilon, ToDouble(key, value));
    } else if (key == "delta") {
      DPEULER_ASSIGN_OR_RETURN(c.delta, ToDouble(key, value));
    } else if (key == "objective") {
      DPEULER_ASSIGN_OR_RETURN(c.objective, ParseInferenceObjective(value));
    } else if (key == "noise") {
      if (value != "laplace" && value != "none") {
        return absl::InvalidArgumentError(
            absl::StrCat("noise must be laplace or none, got '", value, "'"));
      }
      c.zero_noise = value == "none";
    } else if (key == "query_percents") {
      DPEULER_ASSIGN_OR_RETURN(c.query_percents, ToDoubleList(key, value));
    } else if (key == "query_shapes") {
      c.query_shapes.clear();
      for (absl::string_view part :
           absl::StrSplit(value, ',', absl::SkipWhitespace())) {
        std::vector<absl::string_view> rc = absl::StrSplit(part, 'x');
        if (rc.size() != 2) {
          return absl::InvalidArgumentError(absl::StrCat(
              "query_shapes entries look like 3x4, got '", part, "'"));
        }
        DPEULER_ASSIGN_OR_RETURN(int64_t r, ToInt(key, rc[0]));
        DPEULER_ASSIGN_OR_RETURN(int64_t cc, ToInt(key, rc[1]));
        c.query_shapes.push_back(
            {static_cast<int>(r), static_cast<int>(cc), 0.0});
      }
    } else if (key == "repetitions") {
      DPEULER_ASSIGN_OR_RETURN(int64_t v, ToInt(key, value));
      c.repetitions = static_cast<int>(v);
    } else if (key == "placements") {
      DPEULER_ASSIGN_OR_RETURN(int64_t v, ToInt(key, value));
      c.placements = static_cast<int>(v);
    } else if (key == "seed") {
      DPEULER_ASSIGN_OR_RETURN(int64_t v, ToInt(key, value));
      c.seed = static_cast<uint64_t>(v);
    } else if (key == "threads") {
      DPEULER_ASSIGN_OR_RETURN(int64_t v, ToInt(key, value));
      c.threads = static_cast<int>(v);
    } else if (key == "sweep") {
      const size_t colon = value.find(':');
      if (colon == std::string::npos) {
        return absl::InvalidArgumentError(
            "sweep looks like 'epsilon: 0.1, 0.4, 0.7, 1'");
      }
      c.sweep_key =
          std::string(absl::StripAsciiWhitespace(value.substr(0, colon)));
      DPEULER_ASSIGN_OR_RETURN(c.sweep_values,
                               ToDoubleList(key, value.substr(colon + 1)));
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown config key '", key, "'"));
    }
  }
  if (cell_side) {
    DPEULER_ASSIGN_OR_RETURN(c.rows, RowsForCellSide(c.area_side, *cell_side));
  }
  DPEULER_RETURN_IF_ERROR(ValidateExperimentConfig(c));
  return c;
}

absl::StatusOr<ExperimentConfig> WithSweepValue(const ExperimentConfig& config,
                                                double value) {
  ExperimentConfig c = config;
  if (config.sweep_key == "epsilon") {
    c.epsilon = value;
  } else if (config.sweep_key == "diameter_bound") {
    c.diameter_bound = value;
  } else if (config.sweep_key == "rows") {
    if (value != std::floor(value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("rows must be an integer, got ", value));
    }
    c.rows = static_cast<int>(value);
  } else if (config.sweep_key == "cell_side") {
    DPEULER_ASSIGN_OR_RETURN(c.rows, RowsForCellSide(config.area_side, value));
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot sweep '", config.sweep_key,
                     "' (want epsilon, rows, cell_side or diameter_bound)"));
  }
  return c;
}

absl::Status ValidateExperimentConfig(const ExperimentConfig& c) {
  if (!(c.area_side > 0.0) || !(c.diameter_bound > 0.0) || !(c.epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        "area_side, diameter_bound and epsilon must be positive");
  }
  if (c.rows < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("rows must be at least 2, got ", c.rows));
  }
  if (!(c.delta > 0.0 && c.delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (c.repetitions < 1 || c.placements < 1) {
    return absl::InvalidArgumentError(
        "repetitions and placements must be at least 1");
  }
  for (double p : c.query_percents) {
    if (!(p > 0.0 && p <= 100.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("query percent ", p, " is outside (0, 100]"));
    }
  }
  for (const QueryShape& s : c.query_shapes) {
    if (s.rows < 1 || s.cols < 1 || s.rows > c.rows || s.cols > c.rows) {
      return absl::InvalidArgumentError(
          absl::StrCat("query shape ", s.rows, "x", s.cols, " does not fit a ",
                       c.rows, "x", c.rows, " grid"));
    }
  }
  if (!c.sweep_key.empty()) {
    if (c.sweep_values.empty()) {
      return absl::InvalidArgumentError("sweep has no values");
    }
    for (double v : c.sweep_values) {
      DPEULER_ASSIGN_OR_RETURN(ExperimentConfig swept, WithSweepValue(c, v));
      ExperimentConfig plain = swept;
      plain.sweep_key.clear();
      DPEULER_RETURN_IF_ERROR(ValidateExperimentConfig(plain));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<HistogramDifference>> CompareHistograms(
    const EulerHistogram& raw, std::span<const EulerHistogram> histograms) {
  std::vector<HistogramDifference> out;
  for (const EulerHistogram& h : histograms) {
    if (h.size() != raw.size() ||
        h.partition().rows() != raw.partition().rows() ||
        h.partition().area_side() != raw.partition().area_side() ||
        !(h.partition().origin() == raw.partition().origin())) {
      return absl::InvalidArgumentError(
          "histograms are over different partitions");
    }
    double l1 = 0.0;
    for (size_t i = 0; i < raw.size(); ++i) l1 += std::abs(h[i] - raw[i]);
    out.push_back({l1, 0.0});
  }
  if (!out.empty()) {
    const double base = out[0].l1;
    for (HistogramDifference& d : out) {
      d.ratio =
          base > 0.0
              ? d.l1 / base
              : (d.l1 == 0.0 ? 1.0 : std::numeric_limits<double>::infinity());
    }
  }
  return out;
}

absl::StatusOr<std::vector<ConvexBody>> LoadExperimentBodies(
    const ExperimentConfig& config) {
  if (config.bodies_path.empty()) {
    return GenerateSynthetic(
        config.kind, config.body_count,
        {Point{0, 0}, config.area_side, config.diameter_bound},
        config.data_seed);
  }
  std::ifstream in(config.bodies_path);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("cannot open bodies file ", config.bodies_path));
  }
  DPEULER_ASSIGN_OR_RETURN(std::vector<UserBody> users, ReadBodies(in));
  std::vector<ConvexBody> bodies;
  bodies.reserve(users.size());
  for (UserBody& u : users) bodies.push_back(std::move(u.body));
  return bodies;
}

namespace {

struct RepetitionResult {
  absl::Status status;
  // errors[shape][algorithm] over placements.
  std::vector<std::array<std::vector<double>, kAlgorithmCount>> errors;
  HistogramDifference difference[kAlgorithmCount];
  ViolationCounts violations[4];
  StageTimes times;
  double repair_cost = 0.0;
  bool optimal = true;
};

absl::Status RunSweepPoint(const ExperimentConfig& config,
                           std::optional<double> sweep_value,
                           std::span<const ConvexBody> bodies,
                           MetricsReport& report) {
  DPEULER_ASSIGN_OR_RETURN(
      GridPartition grid,
      GridPartition::Create({0.0, 0.0}, config.area_side, config.rows));
  auto build_start = std::chrono::steady_clock::now();
  BuildOptions build_options;
  build_options.diameter_bound = config.diameter_bound;
  build_options.threads = config.threads;
  BuildResult built = BuildHistogram(bodies, grid, build_options);
  const double build_seconds = SecondsSince(build_start);
  const EulerHistogram& raw = built.histogram;
  const ConstraintSet constraints = BuildConstraints(grid);
  const RangeQueryIndex truth_index(raw);

  std::vector<QueryShape> shapes;
  for (double p : config.query_percents) {
    for (const QueryShape& s : ShapesForPercent(grid.rows(), p)) {
      shapes.push_back(s);
    }
  }
  for (const QueryShape& s : config.query_shapes) {
    if (s.rows > grid.rows() || s.cols > grid.rows()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "query shape ", s.rows, "x", s.cols, " does not fit the grid"));
    }
    shapes.push_back(s);
  }

  PipelineOptions options;
  options.epsilon = config.epsilon;
  options.diameter_bound = config.diameter_bound;
  options.objective = config.objective;
  options.zero_noise = config.zero_noise;
  DPEULER_ASSIGN_OR_RETURN(
      double sensitivity,
      GlobalSensitivity(config.diameter_bound, grid.cell_side()));

  std::vector<RepetitionResult> results(config.repetitions);
  auto run_one = [&](int rep) {
    RepetitionResult& out = results[rep];
    auto pipeline =
        RunPipeline(raw, constraints, options, DeriveSeed(config.seed, rep));
    if (!pipeline.ok()) {
      out.status = pipeline.status();
      return;
    }
    const EulerHistogram* released[kAlgorithmCount] = {
        &pipeline->noisy, &pipeline->consistent, &pipeline->released};
    const RangeQueryIndex indices[kAlgorithmCount] = {
        RangeQueryIndex(*released[0]), RangeQueryIndex(*released[1]),
        RangeQueryIndex(*released[2])};
    SplitMixRng rng(DeriveSeed(config.seed ^ kPlacementStream, rep));
    out.errors.resize(shapes.size());
    for (size_t s = 0; s < shapes.size(); ++s) {
      const QueryShape& shape = shapes[s];
      for (int p = 0; p < config.placements; ++p) {
        QueryRegion q;
        q.row_begin = static_cast<int>(rng.Below(grid.rows() - shape.rows + 1));
        q.col_begin = static_cast<int>(rng.Below(grid.rows() - shape.cols + 1));
        q.row_end = q.row_begin + shape.rows - 1;
        q.col_end = q.col_begin + shape.cols - 1;
        const double truth = truth_index.Count(q);
        for (int a = 0; a < kAlgorithmCount; ++a) {
          out.errors[s][a].push_back(RelativeError(indices[a].Count(q), truth));
        }
      }
    }
    const EulerHistogram compared[kAlgorithmCount] = {
        pipeline->noisy, pipeline->consistent, pipeline->released};
    auto diffs = CompareHistograms(raw, compared);
    for (int a = 0; a < kAlgorithmCount; ++a) out.difference[a] = (*diffs)[a];
    out.violations[0] = VerifyViolations(pipeline->noisy, constraints);
    out.violations[1] = VerifyViolations(pipeline->consistent, constraints);
    out.violations[2] = VerifyViolations(pipeline->rounded, constraints);
    out.violations[3] = VerifyViolations(pipeline->released, constraints);
    out.times = pipeline->times;
    out.repair_cost = pipeline->repair_cost;
    out.optimal = pipeline->solve.optimal();
  };

  const int threads = std::clamp(config.threads, 1, config.repetitions);
  if (threads == 1) {
    for (int rep = 0; rep < config.repetitions; ++rep) run_one(rep);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int rep = next++; rep < config.repetitions; rep = next++) {
          run_one(rep);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const RepetitionResult& r : results) {
    DPEULER_RETURN_IF_ERROR(r.status);
  }

  // Per-shape rows, then one aggregate row per requested percentage.
  auto add_row = [&](QueryShape shape, const std::vector<size_t>& members) {
    QueryErrorRow row;
    row.sweep_value = sweep_value;
    row.shape = shape;
    for (int a = 0; a < kAlgorithmCount; ++a) {
      std::vector<double> all;
      for (const RepetitionResult& r : results) {
        for (size_t s : members) {
          all.insert(all.end(), r.errors[s][a].begin(), r.errors[s][a].end());
        }
      }
      row.samples = all.size();
      row.median_error[a] = Median(std::move(all));
    }
    report.query_errors.push_back(row);
  };
  for (size_t s = 0; s < shapes.size(); ++s) add_row(shapes[s], {s});
  for (double p : config.query_percents) {
    std::vector<size_t> members;
    for (size_t s = 0; s < shapes.size(); ++s) {
      if (shapes[s].percent == p) members.push_back(s);
    }
    add_row({0, 0, p}, members);
  }

  SweepSummary summary;
  summary.sweep_value = sweep_value;
  summary.sensitivity = sensitivity;
  summary.build_seconds = build_seconds;
  summary.repetitions = config.repetitions;
  for (int a = 0; a < kAlgorithmCount; ++a) {
    std::vector<double> l1, ratio;
    for (const RepetitionResult& r : results) {
      l1.push_back(r.difference[a].l1);
      ratio.push_back(r.difference[a].ratio);
    }
    summary.difference[a] = {Median(l1), Median(ratio)};
  }
  std::vector<double> perturb, infer, round;
  for (const RepetitionResult& r : results) {
    for (int k = 0; k < 4; ++k) {
      summary.violations[k].c1 += r.violations[k].c1;
      summary.violations[k].c2 += r.violations[k].c2;
      summary.violations[k].c3 += r.violations[k].c3;
    }
    perturb.push_back(r.times.perturb_seconds);
    infer.push_back(r.times.infer_seconds);
    round.push_back(r.times.round_seconds);
    summary.total_repair_cost += r.repair_cost;
    if (!r.optimal) ++summary.nonoptimal_solves;
  }
  summary.median_perturb_seconds = Median(perturb);
  summary.median_infer_seconds = Median(infer);
  summary.median_round_seconds = Median(round);
  report.summaries.push_back(summary);
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<MetricsReport> RunQueryExperiment(
    const ExperimentConfig& config, std::span<const ConvexBody> bodies) {
  DPEULER_RETURN_IF_ERROR(ValidateExperimentConfig(config));
  MetricsReport report;
  report.sweep_key = config.sweep_key;
  if (config.sweep_key.empty()) {
    DPEULER_RETURN_IF_ERROR(
        RunSweepPoint(config, std::nullopt, bodies, report));
    return report;
  }
  for (double value : config.sweep_values) {
    DPEULER_ASSIGN_OR_RETURN(ExperimentConfig swept,
                             WithSweepValue(config, value));
    DPEULER_RETURN_IF_ERROR(RunSweepPoint(swept, value, bodies, report));
  }
  return report;
}

void WriteMetricsReport(const MetricsReport& report, std::ostream& out) {
  const std::string key = report.sweep_key.empty() ? "sweep" : report.sweep_key;
  auto sweep_cell = [](const std::optional<double>& v) {
    return v ? FormatDouble(*v) : std::string();
  };
  out << "# table: query_errors\n";
  out << key << ",percent,qr_rows,qr_cols,samples,dp_median,lp_median,"
      << "r_median\n";
  for (const QueryErrorRow& r : report.query_errors) {
    out << sweep_cell(r.sweep_value) << ',' << FormatDouble(r.shape.percent)
        << ',' << r.shape.rows << ',' << r.shape.cols << ',' << r.samples;
    for (double e : r.median_error) out << ',' << FormatDouble(e);
    out << '\n';
  }
  out << "\n# table: histogram_differences\n";
  out << key << ",sensitivity,l1_dp,l1_lp,l1_r,ratio_lp,ratio_r\n";
  for (const SweepSummary& s : report.summaries) {
    out << sweep_cell(s.sweep_value) << ',' << FormatDouble(s.sensitivity);
    for (const HistogramDifference& d : s.difference) {
      out << ',' << FormatDouble(d.l1);
    }
    out << ',' << FormatDouble(s.difference[1].ratio) << ','
        << FormatDouble(s.difference[2].ratio) << '\n';
  }
  out << "\n# table: violations\n";
  out << key << ",stage,c1,c2,c3\n";
  const char* stages[4] = {"noisy", "consistent", "rounded", "released"};
  for (const SweepSummary& s : report.summaries) {
    for (int k = 0; k < 4; ++k) {
      out << sweep_cell(s.sweep_value) << ',' << stages[k] << ','
          << s.violations[k].c1 << ',' << s.violations[k].c2 << ','
          << s.violations[k].c3 << '\n';
    }
  }
  out << "\n# table: timings\n";
  out << key << ",repetitions,build_s,perturb_s,infer_s,round_s,"
      << "repair_cost_total,nonoptimal_solves\n";
  for (const SweepSummary& s : report.summaries) {
    out << sweep_cell(s.sweep_value) << ',' << s.repetitions << ','
        << FormatDouble(s.build_seconds) << ','
        << FormatDouble(s.median_perturb_seconds) << ','
        << FormatDouble(s.median_infer_seconds) << ','
        << FormatDouble(s.median_round_seconds) << ','
        << FormatDouble(s.total_repair_cost) << ',' << s.nonoptimal_solves
        << '\n';
  }
}

}  // namespace dpeuler
