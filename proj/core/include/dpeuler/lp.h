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

// Sparse linear programs of the form
//
//   minimize c^T x  subject to  A x <= b,  x >= 0
//
// with c >= 0, and a revised dual simplex solver for them. Starting from the
// all-slack basis every such program is dual feasible, so no phase one is
// needed.

#ifndef DPEULER_LP_H_
#define DPEULER_LP_H_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace dpeuler {

struct LinearTerm {
  int variable = 0;
  double coefficient = 0.0;
};

class LinearProgram {
 public:
  // Returns the new variable's index.
  int AddVariable(double cost, std::string name = "");
  // Adds the row sum(terms) <= rhs and returns its index. Repeated variables
  // in `terms` are summed.
  int AddRow(std::span<const LinearTerm> terms, double rhs,
             std::string name = "");

  int num_variables() const { return static_cast<int>(cost_.size()); }
  int num_rows() const { return static_cast<int>(rhs_.size()); }
  std::span<const double> costs() const { return cost_; }
  std::span<const double> rhs() const { return rhs_; }
  std::span<const LinearTerm> Row(int row) const {
    return std::span<const LinearTerm>(terms_).subspan(
        row_start_[row], row_start_[row + 1] - row_start_[row]);
  }
  const std::string& variable_name(int j) const { return variable_names_[j]; }
  const std::string& row_name(int i) const { return row_names_[i]; }

  // Largest violation of A x <= b and x >= 0 (0 when feasible).
  double MaxViolation(std::span<const double> x) const;
  double Objective(std::span<const double> x) const;

  // CPLEX LP text format, rows in insertion order.
  void WriteLpFormat(std::ostream& out) const;

 private:
  std::vector<double> cost_;
  std::vector<std::string> variable_names_;
  std::vector<double> rhs_;
  std::vector<std::string> row_names_;
  std::vector<int> row_start_ = {0};
  std::vector<LinearTerm> terms_;
};

enum class SolveStatus { kOptimal, kInfeasible, kIterationLimit };

std::string_view SolveStatusName(SolveStatus status);

struct SolveOptions {
  // 0 picks 20 (rows + variables).
  int64_t max_iterations = 0;
  int refactor_interval = 100;
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_limit = 50;
  // Optional starting basis: (row, variable) pairs putting the variable in
  // place of the row's slack. Ignored if the resulting basis is singular or
  // not dual feasible.
  std::vector<std::pair<int, int>> initial_basis;
};

struct LpSolution {
  SolveStatus status = SolveStatus::kIterationLimit;
  std::vector<double> x;
  double objective = 0.0;
  int64_t iterations = 0;
  // Max violation of A x <= b and x >= 0 at the returned point.
  double max_violation = 0.0;
  // Most negative reduced cost at the returned basis, as a positive number.
  double max_dual_infeasibility = 0.0;
};

// Fails with InvalidArgument if any cost is negative. A solution is returned
// for every status; x is only meaningful for kOptimal.
absl::StatusOr<LpSolution> SolveDualSimplex(const LinearProgram& lp,
                                            const SolveOptions& options = {});

}  // namespace dpeuler

#endif  // DPEULER_LP_H_
