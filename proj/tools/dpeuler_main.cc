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

// Command line front end. Exit codes: 0 success, 1 invalid input or
// configuration, 2 internal error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "dpeuler/experiment.h"
#include "dpeuler/histogram.h"
#include "dpeuler/inference.h"
#include "dpeuler/ingest.h"
#include "dpeuler/internal/status_macros.h"
#include "dpeuler/io.h"
#include "dpeuler/pipeline.h"
#include "dpeuler/privacy.h"
#include "dpeuler/rounding.h"

namespace dpeuler {
namespace {

int ExitCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kOutOfRange:
      return 1;
    default:
      return 2;
  }
}

// Values from --config files; command line flags take precedence.
class Settings {
 public:
  absl::Status Load(const std::string& path) {
    if (path.empty()) return absl::OkStatus();
    std::ifstream in(path);
    if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
    DPEULER_ASSIGN_OR_RETURN(values_, ReadKeyValues(in));
    return absl::OkStatus();
  }

  // Fills `value` from the config key unless the flag was given.
  template <typename T>
  absl::Status Fill(const CLI::Option* flag, const std::string& key,
                    T& value) const {
    if (flag->count() > 0) return absl::OkStatus();
    auto it = values_.find(key);
    if (it == values_.end()) return absl::OkStatus();
    try {
      value = CLI::detail::lexical_cast(it->second, value)
                  ? value
                  : throw std::invalid_argument(key);
    } catch (const std::exception&) {
      return absl::InvalidArgumentError(absl::StrCat(
          "config key '", key, "': cannot parse '", it->second, "'"));
    }
    return absl::OkStatus();
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct GridFlags {
  double area_side = 0.0;
  int rows = 0;
  double cell_side = 0.0;
  double origin_x = 0.0;
  double origin_y = 0.0;
  CLI::Option* area_side_flag = nullptr;
  CLI::Option* rows_flag = nullptr;
  CLI::Option* cell_side_flag = nullptr;
  CLI::Option* origin_x_flag = nullptr;
  CLI::Option* origin_y_flag = nullptr;

  void Add(CLI::App* app) {
    area_side_flag =
        app->add_option("--area-side", area_side, "side A of the square area");
    rows_flag = app->add_option("--rows", rows, "grid rows n (n x n cells)");
    cell_side_flag = app->add_option("--cell-side", cell_side,
                                     "cell side d; sets rows = A / d");
    origin_x_flag = app->add_option("--origin-x", origin_x, "area origin x");
    origin_y_flag = app->add_option("--origin-y", origin_y, "area origin y");
  }

  absl::StatusOr<GridPartition> Resolve(const Settings& s) {
    DPEULER_RETURN_IF_ERROR(s.Fill(area_side_flag, "area_side", area_side));
    DPEULER_RETURN_IF_ERROR(s.Fill(rows_flag, "rows", rows));
    DPEULER_RETURN_IF_ERROR(s.Fill(cell_side_flag, "cell_side", cell_side));
    DPEULER_RETURN_IF_ERROR(s.Fill(origin_x_flag, "origin_x", origin_x));
    DPEULER_RETURN_IF_ERROR(s.Fill(origin_y_flag, "origin_y", origin_y));
    if (!(area_side > 0.0)) {
      return absl::InvalidArgumentError("--area-side is required");
    }
    if (cell_side > 0.0 && rows == 0) {
      const double q = area_side / cell_side;
      if (std::abs(q - std::round(q)) > 1e-9 * q) {
        return absl::InvalidArgumentError(
            "--cell-side must divide --area-side");
      }
      rows = static_cast<int>(std::round(q));
    }
    return GridPartition::Create({origin_x, origin_y}, area_side, rows);
  }
};

absl::StatusOr<std::vector<ConvexBody>> LoadBodies(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  DPEULER_ASSIGN_OR_RETURN(std::vector<UserBody> users, ReadBodies(in));
  std::vector<ConvexBody> bodies;
  bodies.reserve(users.size());
  for (UserBody& u : users) bodies.push_back(std::move(u.body));
  return bodies;
}

uint64_t ResolveSeed(const std::optional<uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device device;
  return (static_cast<uint64_t>(device()) << 32) ^ device();
}

absl::StatusOr<EulerHistogram> BuildFromBodies(const std::string& path,
                                               const GridPartition& grid,
                                               std::optional<double> bound,
                                               int threads) {
  DPEULER_ASSIGN_OR_RETURN(std::vector<ConvexBody> bodies, LoadBodies(path));
  BuildOptions options;
  options.diameter_bound = bound;
  options.threads = threads;
  BuildResult result = BuildHistogram(bodies, grid, options);
  for (const BodyRejection& r : result.rejected) {
    std::cerr << "skipped body " << r.body_index << ": " << r.reason << "\n";
  }
  std::cerr << "built from " << bodies.size() - result.rejected.size() << " of "
            << bodies.size() << " bodies\n";
  return std::move(result.histogram);
}

std::string ViolationSummary(const ViolationCounts& v) {
  return absl::StrCat(v.c1, " ", v.c2, " ", v.c3);
}

absl::StatusOr<QueryRegion> ParseRange(const std::string& rows,
                                       const std::string& cols) {
  auto parse = [](const std::string& text, int& lo, int& hi) -> absl::Status {
    const size_t colon = text.find(':');
    try {
      if (colon == std::string::npos) {
        lo = hi = std::stoi(text);
      } else {
        lo = std::stoi(text.substr(0, colon));
        hi = std::stoi(text.substr(colon + 1));
      }
    } catch (const std::exception&) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad range '", text, "' (want lo:hi, inclusive)"));
    }
    return absl::OkStatus();
  };
  QueryRegion q;
  DPEULER_RETURN_IF_ERROR(parse(rows, q.row_begin, q.row_end));
  DPEULER_RETURN_IF_ERROR(parse(cols, q.col_begin, q.col_end));
  return q;
}

}  // namespace

int Main(int argc, char** argv) {
  CLI::App app{"Differentially private Euler histograms over convex regions"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");
  Settings settings;
  absl::Status status;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "GPS tracks -> bodies file");
  std::string tracks_path, out_path, in_path, bodies_path;
  IngestConfig ingest_config;
  int threads = 1;
  ingest->add_option("--tracks", tracks_path, "tracks CSV")->required();
  ingest->add_option("--out", out_path, "bodies JSONL output")->required();
  auto* ing_side = ingest->add_option("--area-side", ingest_config.area_side,
                                      "area side in meters");
  auto* ing_lat =
      ingest->add_option("--center-lat", ingest_config.center_latitude);
  auto* ing_lon =
      ingest->add_option("--center-lon", ingest_config.center_longitude);
  auto* ing_bound =
      ingest->add_option("--diameter-bound", ingest_config.diameter_bound,
                         "diameter bound B in meters");
  auto* ing_k = ingest->add_option("--k", ingest_config.k,
                                   "nearest neighbours kept per user");
  ingest->add_option("--threads", threads);
  ingest->callback([&] {
    status = [&]() -> absl::Status {
      DPEULER_RETURN_IF_ERROR(
          settings.Fill(ing_side, "area_side", ingest_config.area_side));
      DPEULER_RETURN_IF_ERROR(
          settings.Fill(ing_lat, "center_lat", ingest_config.center_latitude));
      DPEULER_RETURN_IF_ERROR(
          settings.Fill(ing_lon, "center_lon", ingest_config.center_longitude));
      DPEULER_RETURN_IF_ERROR(settings.Fill(ing_bound, "diameter_bound",
                                            ingest_config.diameter_bound));
      DPEULER_RETURN_IF_ERROR(settings.Fill(ing_k, "k", ingest_config.k));
      DPEULER_RETURN_IF_ERROR(ValidateIngestConfig(ingest_config));
      std::ifstream in(tracks_path);
      if (!in) return absl::NotFoundError("cannot open " + tracks_path);
      DPEULER_ASSIGN_OR_RETURN(std::vector<UserTrack> tracks, ReadTracks(in));
      IngestResult result = IngestTracks(tracks, ingest_config, threads);
      for (const SkippedUser& s : result.skipped) {
        std::cerr << "skipped user " << s.user_id << ": " << s.reason << "\n";
      }
      std::cerr << tracks.size() << " users: " << result.bodies.size()
                << " bodies, " << result.skipped.size() << " skipped\n";
      std::ofstream out(out_path);
      return WriteBodies(result.bodies, out);
    }();
  });

  // generate
  auto* generate = app.add_subcommand("generate", "synthetic bodies file");
  std::string kind_name = "uniform";
  size_t count = 10000;
  SyntheticConfig synthetic;
  uint64_t data_seed = 1;
  generate->add_option("--kind", kind_name,
                       "uniform, clustered or concentrated");
  generate->add_option("--count", count);
  generate->add_option("--area-side", synthetic.area_side);
  generate->add_option("--diameter-bound", synthetic.diameter_bound);
  generate->add_option("--seed", data_seed);
  generate->add_option("--out", out_path)->required();
  generate->callback([&] {
    status = [&]() -> absl::Status {
      DPEULER_ASSIGN_OR_RETURN(SyntheticKind kind,
                               ParseSyntheticKind(kind_name));
      DPEULER_ASSIGN_OR_RETURN(
          std::vector<ConvexBody> bodies,
          GenerateSynthetic(kind, count, synthetic, data_seed));
      std::vector<UserBody> users;
      for (size_t i = 0; i < bodies.size(); ++i) {
        users.push_back({absl::StrCat("s", i), std::move(bodies[i])});
      }
      std::ofstream out(out_path);
      return WriteBodies(users, out);
    }();
  });

  // build
  auto* build = app.add_subcommand("build", "bodies -> raw histogram");
  GridFlags build_grid;
  std::optional<double> diameter_bound;
  build->add_option("--bodies", bodies_path)->required();
  build->add_option("--out", out_path)->required();
  build_grid.Add(build);
  auto* build_bound =
      build->add_option("--diameter-bound", diameter_bound,
                        "reject bodies wider than B and record B in the file");
  build->add_option("--threads", threads);
  build->callback([&] {
    status = [&]() -> absl::Status {
      DPEULER_ASSIGN_OR_RETURN(GridPartition grid,
                               build_grid.Resolve(settings));
      DPEULER_RETURN_IF_ERROR(
          settings.Fill(build_bound, "diameter_bound", diameter_bound));
      DPEULER_ASSIGN_OR_RETURN(
          EulerHistogram raw,
          BuildFromBodies(bodies_path, grid, diameter_bound, threads));
      return WriteHistogramFile(
          {std::move(raw), std::nullopt, diameter_bound, {}}, out_path);
    }();
  });

  // privatize
  auto* privatize = app.add_subcommand("privatize", "raw -> noisy");
  double epsilon = 1.0;
  std::optional<uint64_t> seed;
  privatize->add_option("--in", in_path)->required();
  privatize->add_option("--out", out_path)->required();
  auto* priv_eps = privatize->add_option("--epsilon", epsilon);
  auto* priv_bound = privatize->add_option(
      "--diameter-bound", diameter_bound,
      "diameter bound B (defaults to the value in the input file)");
  privatize->add_option("--seed", seed,
                        "noise seed (fresh randomness when omitted)");
  privatize->callback([&] {
    status = [&]() -> absl::Status {
      DPEULER_RETURN_IF_ERROR(settings.Fill(priv_eps, "epsilon", epsilon));
      DPEULER_RETURN_IF_ERROR(
          settings.Fill(priv_bound, "diameter_bound", diameter_bound));
      DPEULER_ASSIGN_OR_RETURN(HistogramFile file, ReadHistogramFile(in_path));
      if (!diameter_bound) diameter_bound = file.diameter_bound;
      if (!diameter_bound) {
        return absl::InvalidArgumentError("--diameter-bound is required");
      }
      DPEULER_ASSIGN_OR_RETURN(
          PrivacyParams params,
          PrivacyParams::Create(epsilon, *diameter_bound,
                                file.histogram.partition().cell_side()));
      CounterUniformSource source(ResolveSeed(seed));
      DPEULER_ASSIGN_OR_RETURN(EulerHistogram noisy,
                               Perturb(file.histogram, params, source));
      return WriteHistogramFile({std::move(noisy), epsilon, diameter_bound, {}},
                                out_path);
    }();
  });

  // infer
  auto* infer = app.add_subcommand("infer", "noisy -> consistent");
  std::string objective_name = "l1", lp_dump;
  infer->add_option("--in", in_path)->required();
  infer->add_option("--out", out_path)->required();
  auto* infer_obj =
      infer->add_option("--objective", objective_name, "l1 (default) or linf");
  infer->add_option("--lp-dump", lp_dump, "also write the LP in CPLEX format");
  infer->callback([&] {
    status = [&]() -> absl::Status {
      DPEULER_RETURN_IF_ERROR(
          settings.Fill(infer_obj, "objective", objective_name));
      DPEULER_ASSIGN_OR_RETURN(InferenceObjective objective,
                               ParseInferenceObjective(objective_name));
      DPEULER_ASSIGN_OR_RETURN(HistogramFile file, ReadHistogramFile(in_path));
      const ConstraintSet constraints =
          BuildConstraints(file.histogram.partition());
      if (!lp_dump.empty()) {
        DPEULER_ASSIGN_OR_RETURN(
            LinearProgram lp,
            BuildInferenceProgram(file.histogram, constraints, objective));
        std::ofstream out(lp_dump);
        lp.WriteLpFormat(out);
      }
      DPEULER_ASSIGN_OR_RETURN(InferenceResult result,
                               Infer(file.histogram, constraints, objective));
      std::cerr << "solve " << SolveStatusName(result.report.status)
                << ": objective " << result.report.objective << " after "
                << result.report.iterations << " iterations, "
                << result.report.wall_seconds << " s\n";
      if (!result.report.optimal()) {
        return absl::InternalError(
            absl::StrCat("LP solve ended with status ",
                         std::string(SolveStatusName(result.report.status))));
      }
      file.histogram = std::move(result.histogram);
      file.metadata["objective"] = std::string(objective_name);
      return WriteHistogramFile(file, out_path);
    }();
  });

  // round
  auto* round = app.add_subcommand("round", "consistent -> rounded");
  round->add_option("--in", in_path)->required();
  round->add_option("--out", out_path)->required();
  round->callback([&] {
    status = [&]() -> absl::Status {
      DPEULER_ASSIGN_OR_RETURN(HistogramFile file, ReadHistogramFile(in_path));
      const ConstraintSet constraints =
          BuildConstraints(file.histogram.partition());
      DPEULER_ASSIGN_OR_RETURN(EulerHistogram rounded,
                               RoundCounts(file.histogram));
      DPEULER_ASSIGN_OR_RETURN(RepairResult repaired,
                               Repair(rounded, constraints));
      file.histogram = std::move(repaired.histogram);
      file.metadata["repair_cost"] = FormatDouble(repaired.cost);
      file.metadata["violations"] =
          ViolationSummary(VerifyViolations(file.histogram, constraints));
      return WriteHistogramFile(file, out_path);
    }();
  });

  // release
  auto* release = app.add_subcommand(
      "release", "bodies -> rounded release (build, privatize, infer, round)");
  GridFlags release_grid;
  release->add_option("--bodies", bodies_path)->required();
  release->add_option("--out", out_path)->required();
  release_grid.Add(release);
  auto* rel_eps = release->add_option("--epsilon", epsilon);
  auto* rel_bound = release->add_option("--diameter-bound", diameter_bound);
  auto* rel_obj = release->add_option("--objective", objective_name);
  release->add_option("--seed", seed);
  release->add_option("--threads", threads);
  release->callback([&] {
    status = [&]() -> absl::Status {
      DPEULER_ASSIGN_OR_RETURN(GridPartition grid,
                               release_grid.Resolve(settings));
      DPEULER_RETURN_IF_ERROR(settings.Fill(rel_eps, "epsilon", epsilon));
      DPEULER_RETURN_IF_ERROR(
          settings.Fill(rel_bound, "diameter_bound", diameter_bound));
      DPEULER_RETURN_IF_ERROR(
          settings.Fill(rel_obj, "objective", objective_name));
      if (!diameter_bound) {
        return absl::InvalidArgumentError("--diameter-bound is required");
      }
      PipelineOptions options;
      options.epsilon = epsilon;
      options.diameter_bound = *diameter_bound;
      DPEULER_ASSIGN_OR_RETURN(options.objective,
                               ParseInferenceObjective(objective_name));
      DPEULER_ASSIGN_OR_RETURN(
          EulerHistogram raw,
          BuildFromBodies(bodies_path, grid, diameter_bound, threads));
      const ConstraintSet constraints = BuildConstraints(grid);
      DPEULER_ASSIGN_OR_RETURN(
          PipelineOutput output,
          RunPipeline(raw, constraints, options, ResolveSeed(seed)));
      if (!output.solve.optimal()) {
        return absl::InternalError("LP solve did not reach optimality");
      }
      HistogramFile file{
          std::move(output.released), epsilon, diameter_bound, {}};
      file.metadata["repair_cost"] = FormatDouble(output.repair_cost);
      file.metadata["violations"] =
          ViolationSummary(VerifyViolations(file.histogram, constraints));
      return WriteHistogramFile(file, out_path);
    }();
  });

  // query
  auto* query = app.add_subcommand("query", "range count on a histogram");
  std::string query_rows, query_cols;
  query->add_option("--in", in_path)->required();
  query->add_option("--rows", query_rows, "row range lo:hi (inclusive)")
      ->required();
  query->add_option("--cols", query_cols, "column range lo:hi (inclusive)")
      ->required();
  query->callback([&] {
    status = [&]() -> absl::Status {
      DPEULER_ASSIGN_OR_RETURN(HistogramFile file, ReadHistogramFile(in_path));
      DPEULER_ASSIGN_OR_RETURN(QueryRegion region,
                               ParseRange(query_rows, query_cols));
      DPEULER_ASSIGN_OR_RETURN(double count, Query(file.histogram, region));
      std::cout << FormatDouble(count) << "\n";
      return absl::OkStatus();
    }();
  });

  // experiment
  auto* experiment =
      app.add_subcommand("experiment", "config -> metrics tables");
  std::vector<std::string> overrides;
  experiment->add_option("--set", overrides, "key=value config override");
  experiment->add_option("--out", out_path, "metrics output (default stdout)");
  experiment->callback([&] {
    status = [&]() -> absl::Status {
      std::map<std::string, std::string> values = settings.values();
      for (const std::string& o : overrides) {
        const size_t eq = o.find('=');
        if (eq == std::string::npos) {
          return absl::InvalidArgumentError("--set takes key=value");
        }
        values[o.substr(0, eq)] = o.substr(eq + 1);
      }
      DPEULER_ASSIGN_OR_RETURN(ExperimentConfig config,
                               ParseExperimentConfig(values));
      DPEULER_ASSIGN_OR_RETURN(std::vector<ConvexBody> bodies,
                               LoadExperimentBodies(config));
      DPEULER_ASSIGN_OR_RETURN(MetricsReport report,
                               RunQueryExperiment(config, bodies));
      if (out_path.empty()) {
        WriteMetricsReport(report, std::cout);
      } else {
        std::ofstream out(out_path);
        WriteMetricsReport(report, out);
      }
      return absl::OkStatus();
    }();
  });

  // verify
  auto* verify = app.add_subcommand("verify", "constraint violation counts");
  verify->add_option("--in", in_path)->required();
  verify->callback([&] {
    status = [&]() -> absl::Status {
      DPEULER_ASSIGN_OR_RETURN(HistogramFile file, ReadHistogramFile(in_path));
      const ViolationCounts v = VerifyViolations(
          file.histogram, BuildConstraints(file.histogram.partition()));
      std::cout << "c1=" << v.c1 << " c2=" << v.c2 << " c3=" << v.c3 << "\n";
      return absl::OkStatus();
    }();
  });

  // Load the config file before subcommand callbacks run.
  app.parse_complete_callback([&] {
    if (absl::Status s = settings.Load(config_path); !s.ok()) {
      throw CLI::ValidationError("--config", std::string(s.message()));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (!status.ok()) {
    std::cerr << "error: " << status << "\n";
  }
  return ExitCode(status);
}

}  // namespace dpeuler

int main(int argc, char** argv) { return dpeuler::Main(argc, argv); }
