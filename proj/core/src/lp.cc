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

#include "dpeuler/lp.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "absl/strings/str_cat.h"

namespace dpeuler {

int LinearProgram::AddVariable(double cost, std::string name) {
  if (name.empty()) name = absl::StrCat("v", cost_.size());
  cost_.push_back(cost);
  variable_names_.push_back(std::move(name));
  return static_cast<int>(cost_.size()) - 1;
}

int LinearProgram::AddRow(std::span<const LinearTerm> terms, double rhs,
                          std::string name) {
  if (name.empty()) name = absl::StrCat("r", rhs_.size());
  std::map<int, double> merged;
  for (const LinearTerm& t : terms) merged[t.variable] += t.coefficient;
  for (const auto& [j, a] : merged) {
    if (a != 0.0) terms_.push_back({j, a});
  }
  row_start_.push_back(static_cast<int>(terms_.size()));
  rhs_.push_back(rhs);
  row_names_.push_back(std::move(name));
  return static_cast<int>(rhs_.size()) - 1;
}

double LinearProgram::MaxViolation(std::span<const double> x) const {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (int i = 0; i < num_rows(); ++i) {
    double lhs = 0.0;
    for (const LinearTerm& t : Row(i)) lhs += t.coefficient * x[t.variable];
    worst = std::max(worst, lhs - rhs_[i]);
  }
  return worst;
}

double LinearProgram::Objective(std::span<const double> x) const {
  double total = 0.0;
  for (size_t j = 0; j < cost_.size(); ++j) total += cost_[j] * x[j];
  return total;
}

namespace {

void WriteTerms(std::ostream& out, std::span<const LinearTerm> terms,
                const LinearProgram& lp) {
  int on_line = 0;
  for (const LinearTerm& t : terms) {
    if (on_line == 8) {
      out << "\n   ";
      on_line = 0;
    }
    out << (t.coefficient < 0 ? " - " : " + ") << std::abs(t.coefficient) << ' '
        << lp.variable_name(t.variable);
    ++on_line;
  }
  if (terms.empty()) out << " 0 " << lp.variable_name(0);
}

}  // namespace

void LinearProgram::WriteLpFormat(std::ostream& out) const {
  const auto old_precision = out.precision(17);
  out << "Minimize\n obj:";
  std::vector<LinearTerm> objective;
  for (int j = 0; j < num_variables(); ++j) {
    if (cost_[j] != 0.0) objective.push_back({j, cost_[j]});
  }
  WriteTerms(out, objective, *this);
  out << "\nSubject To\n";
  for (int i = 0; i < num_rows(); ++i) {
    out << ' ' << row_names_[i] << ':';
    WriteTerms(out, Row(i), *this);
    out << " <= " << rhs_[i] << '\n';
  }
  out << "End\n";
  out.precision(old_precision);
}

std::string_view SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

}  // namespace dpeuler
