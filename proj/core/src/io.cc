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

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_map>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dpeuler/internal/status_macros.h"
#include "json.hpp"

namespace dpeuler {
namespace {

absl::StatusOr<double> ParseDouble(absl::string_view text,
                                   absl::string_view what) {
  text = absl::StripAsciiWhitespace(text);
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot parse ", what, " '", text, "' as a number"));
  }
  return value;
}

std::vector<absl::string_view> Tokens(absl::string_view line) {
  return absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
}

struct Section {
  const char* name;
  int lines;
  int per_line;
};

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

absl::Status WriteHistogram(const HistogramFile& file, std::ostream& out) {
  const EulerHistogram& h = file.histogram;
  const GridPartition& g = h.partition();
  const int n = g.rows();
  out << "# dpeuler histogram\n";
  out << "format_version = " << kHistogramFormatVersion << "\n";
  out << "state = " << HistogramStateName(h.state()) << "\n";
  out << "area_side = " << FormatDouble(g.area_side()) << "\n";
  out << "origin = " << FormatDouble(g.origin().x) << " "
      << FormatDouble(g.origin().y) << "\n";
  out << "rows = " << n << "\n";
  out << "cell_side = " << FormatDouble(g.cell_side()) << "\n";
  if (file.epsilon) out << "epsilon = " << FormatDouble(*file.epsilon) << "\n";
  if (file.diameter_bound) {
    out << "diameter_bound = " << FormatDouble(*file.diameter_bound) << "\n";
  }
  for (const auto& [key, value] : file.metadata) {
    out << key << " = " << value << "\n";
  }
  const Section sections[] = {{"faces", n, n},
                              {"horizontal_edges", n - 1, n},
                              {"vertical_edges", n, n - 1},
                              {"vertices", n - 1, n - 1}};
  size_t index = 0;
  for (const Section& s : sections) {
    out << "[" << s.name << "]\n";
    for (int r = 0; r < s.lines; ++r) {
      for (int c = 0; c < s.per_line; ++c) {
        if (c > 0) out << ' ';
        out << FormatDouble(h[index++]);
      }
      out << '\n';
    }
  }
  if (!out) return absl::DataLossError("failed writing histogram");
  return absl::OkStatus();
}

absl::StatusOr<HistogramFile> ReadHistogram(std::istream& in) {
  std::map<std::string, std::string> header;
  std::string line;
  int line_number = 0;
  bool in_body = false;
  while (std::getline(in, line)) {
    ++line_number;
    absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty() || text[0] == '#') continue;
    if (text[0] == '[') {
      in_body = true;
      break;
    }
    const size_t eq = text.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": expected 'key = value', got '", text, "'"));
    }
    header[std::string(absl::StripAsciiWhitespace(text.substr(0, eq)))] =
        std::string(absl::StripAsciiWhitespace(text.substr(eq + 1)));
  }
  auto take = [&](const std::string& key) -> absl::StatusOr<std::string> {
    auto it = header.find(key);
    if (it == header.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("histogram header is missing '", key, "'"));
    }
    std::string value = it->second;
    header.erase(it);
    return value;
  };
  DPEULER_ASSIGN_OR_RETURN(std::string version, take("format_version"));
  if (version != absl::StrCat(kHistogramFormatVersion)) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported histogram format version ", version));
  }
  DPEULER_ASSIGN_OR_RETURN(std::string state_name, take("state"));
  DPEULER_ASSIGN_OR_RETURN(HistogramState state,
                           ParseHistogramState(state_name));
  DPEULER_ASSIGN_OR_RETURN(std::string side_text, take("area_side"));
  DPEULER_ASSIGN_OR_RETURN(double area_side,
                           ParseDouble(side_text, "area_side"));
  DPEULER_ASSIGN_OR_RETURN(std::string origin_text, take("origin"));
  const auto origin_tokens = Tokens(origin_text);
  if (origin_tokens.size() != 2) {
    return absl::InvalidArgumentError("origin must be two numbers");
  }
  DPEULER_ASSIGN_OR_RETURN(double ox, ParseDouble(origin_tokens[0], "origin"));
  DPEULER_ASSIGN_OR_RETURN(double oy, ParseDouble(origin_tokens[1], "origin"));
  DPEULER_ASSIGN_OR_RETURN(std::string rows_text, take("rows"));
  DPEULER_ASSIGN_OR_RETURN(double rows_value, ParseDouble(rows_text, "rows"));
  if (rows_value != std::floor(rows_value) || rows_value < 2 ||
      rows_value > 1e5) {
    return absl::InvalidArgumentError(
        absl::StrCat("rows must be an integer >= 2, got ", rows_text));
  }
  const int n = static_cast<int>(rows_value);
  DPEULER_ASSIGN_OR_RETURN(GridPartition grid,
                           GridPartition::Create({ox, oy}, area_side, n));
  if (header.count("cell_side")) {
    DPEULER_ASSIGN_OR_RETURN(std::string cell_text, take("cell_side"));
    DPEULER_ASSIGN_OR_RETURN(double cell, ParseDouble(cell_text, "cell_side"));
    if (std::abs(cell - grid.cell_side()) > 1e-9 * grid.cell_side()) {
      return absl::InvalidArgumentError(
          absl::StrCat("cell_side ", cell_text,
                       " disagrees with area_side / "
                       "rows = ",
                       grid.cell_side()));
    }
  }
  HistogramFile file{EulerHistogram::Zeros(grid, state), {}, {}, {}};
  if (header.count("epsilon")) {
    DPEULER_ASSIGN_OR_RETURN(std::string t, take("epsilon"));
    DPEULER_ASSIGN_OR_RETURN(file.epsilon, ParseDouble(t, "epsilon"));
  }
  if (header.count("diameter_bound")) {
    DPEULER_ASSIGN_OR_RETURN(std::string t, take("diameter_bound"));
    DPEULER_ASSIGN_OR_RETURN(file.diameter_bound,
                             ParseDouble(t, "diameter_bound"));
  }
  file.metadata = std::move(header);

  if (!in_body) {
    return absl::InvalidArgumentError("histogram file has no count sections");
  }
  const Section sections[] = {{"faces", n, n},
                              {"horizontal_edges", n - 1, n},
                              {"vertical_edges", n, n - 1},
                              {"vertices", n - 1, n - 1}};
  std::vector<double> counts;
  counts.reserve(grid.component_count());
  bool have_section_line = true;  // `line` holds the first section header
  for (const Section& s : sections) {
    if (!have_section_line) {
      while (std::getline(in, line)) {
        ++line_number;
        if (!absl::StripAsciiWhitespace(line).empty()) break;
      }
    }
    have_section_line = false;
    if (absl::StripAsciiWhitespace(line) != absl::StrCat("[", s.name, "]")) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": expected section [", s.name,
                       "], got '", line, "'"));
    }
    for (int r = 0; r < s.lines; ++r) {
      if (!std::getline(in, line)) {
        return absl::InvalidArgumentError(
            absl::StrCat("section [", s.name, "] ends after ", r, " of ",
                         s.lines, " lines"));
      }
      ++line_number;
      const auto tokens = Tokens(line);
      if (static_cast<int>(tokens.size()) != s.per_line) {
        return absl::InvalidArgumentError(
            absl::StrCat("line ", line_number, ": expected ", s.per_line,
                         " counts, got ", tokens.size()));
      }
      for (absl::string_view t : tokens) {
        DPEULER_ASSIGN_OR_RETURN(double v, ParseDouble(t, "count"));
        counts.push_back(v);
      }
    }
  }
  DPEULER_ASSIGN_OR_RETURN(
      file.histogram, EulerHistogram::Create(grid, std::move(counts), state));
  return file;
}

absl::Status WriteHistogramFile(const HistogramFile& file,
                                const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    return absl::NotFoundError(
        absl::StrCat("cannot open ", path, " for writing"));
  }
  return WriteHistogram(file, out);
}

absl::StatusOr<HistogramFile> ReadHistogramFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  auto file = ReadHistogram(in);
  if (!file.ok()) {
    return absl::Status(file.status().code(),
                        absl::StrCat(path, ": ", file.status().message()));
  }
  return file;
}

absl::Status WriteBodies(std::span<const UserBody> bodies, std::ostream& out) {
  for (const UserBody& b : bodies) {
    nlohmann::json vertices = nlohmann::json::array();
    for (const Point& p : b.body.vertices()) {
      vertices.push_back({p.x, p.y});
    }
    nlohmann::json record = {{"user_id", b.user_id}, {"vertices", vertices}};
    out << record.dump() << '\n';
  }
  if (!out) return absl::DataLossError("failed writing bodies");
  return absl::OkStatus();
}

absl::StatusOr<std::vector<UserBody>> ReadBodies(std::istream& in) {
  std::vector<UserBody> bodies;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    const auto record = nlohmann::json::parse(line, nullptr, false);
    auto bad = [&](absl::string_view why) {
      return absl::InvalidArgumentError(
          absl::StrCat("bodies line ", line_number, ": ", why));
    };
    if (record.is_discarded() || !record.is_object()) return bad("not JSON");
    if (!record.contains("vertices") || !record["vertices"].is_array()) {
      return bad("missing vertex list");
    }
    std::string user_id = absl::StrCat(line_number);
    if (record.contains("user_id")) {
      const auto& id = record["user_id"];
      user_id = id.is_string() ? id.get<std::string>() : id.dump();
    }
    std::vector<Point> vertices;
    for (const auto& v : record["vertices"]) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
          !v[1].is_number()) {
        return bad("vertices must be [x, y] number pairs");
      }
      vertices.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    auto body = ConvexBody::Create(std::move(vertices));
    if (!body.ok()) return bad(body.status().message());
    bodies.push_back({std::move(user_id), *std::move(body)});
  }
  return bodies;
}

absl::StatusOr<std::vector<UserTrack>> ReadTracks(std::istream& in) {
  std::vector<UserTrack> tracks;
  std::unordered_map<std::string, size_t> slot;
  std::string line;
  int line_number = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_number;
    absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty() || text[0] == '#') continue;
    std::vector<absl::string_view> fields = absl::StrSplit(text, ',');
    for (auto& f : fields) f = absl::StripAsciiWhitespace(f);
    if (fields.size() < 3 || fields.size() > 4) {
      return absl::InvalidArgumentError(
          absl::StrCat("tracks line ", line_number,
                       ": expected 3 or 4 fields, got ", fields.size()));
    }
    auto lat = ParseDouble(fields[1], "latitude");
    if (first && !lat.ok()) {
      first = false;  // header
      continue;
    }
    first = false;
    if (!lat.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "tracks line ", line_number, ": ", lat.status().message()));
    }
    auto lon = ParseDouble(fields[2], "longitude");
    if (!lon.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "tracks line ", line_number, ": ", lon.status().message()));
    }
    std::string user(fields[0]);
    auto [it, inserted] = slot.emplace(user, tracks.size());
    if (inserted) tracks.push_back({user, {}});
    tracks[it->second].points.push_back(
        {*lat, *lon, fields.size() == 4 ? std::string(fields[3]) : ""});
  }
  return tracks;
}

}  // namespace dpeuler
