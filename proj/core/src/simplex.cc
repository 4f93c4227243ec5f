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

// Revised dual simplex on the computational form [A I] z = b, z >= 0, where
// columns n..n+m-1 are the row slacks. The basis inverse is held as a sparse
// LU factorisation of the basis matrix followed by a file of eta (product
// form) updates, and is refactorised every `refactor_interval` pivots.

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpeuler/lp.h"

namespace dpeuler {
namespace {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

struct Eta {
  int pivot_row;
  double pivot_inverse;                         // 1 / alpha_r
  std::vector<std::pair<int, double>> entries;  // (i, -alpha_i / alpha_r)
};

class DualSimplex {
 public:
  DualSimplex(const LinearProgram& lp, const SolveOptions& options)
      : lp_(lp), options_(options), m_(lp.num_rows()), n_(lp.num_variables()) {
    // Column-wise copy of A.
    std::vector<int> count(n_ + 1, 0);
    for (int i = 0; i < m_; ++i) {
      for (const LinearTerm& t : lp.Row(i)) ++count[t.variable + 1];
    }
    col_start_.assign(n_ + 1, 0);
    for (int j = 0; j < n_; ++j)
      col_start_[j + 1] = col_start_[j] + count[j + 1];
    col_row_.resize(col_start_[n_]);
    col_value_.resize(col_start_[n_]);
    std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
    for (int i = 0; i < m_; ++i) {
      for (const LinearTerm& t : lp.Row(i)) {
        col_row_[fill[t.variable]] = i;
        col_value_[fill[t.variable]++] = t.coefficient;
      }
    }
    cost_.assign(n_ + m_, 0.0);
    for (int j = 0; j < n_; ++j) cost_[j] = lp.costs()[j];
  }

  absl::StatusOr<LpSolution> Run();

 private:
  bool IsSlack(int j) const { return j >= n_; }

  // Dense column j of [A I] scattered into `out` (size m, zeroed).
  void ScatterColumn(int j, Eigen::VectorXd& out) const {
    if (IsSlack(j)) {
      out[j - n_] = 1.0;
      return;
    }
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      out[col_row_[k]] = col_value_[k];
    }
  }

  // y^T a_j.
  double DotColumn(int j, const Eigen::VectorXd& y) const {
    if (IsSlack(j)) return y[j - n_];
    double s = 0.0;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      s += col_value_[k] * y[col_row_[k]];
    }
    return s;
  }

  absl::Status Factorize();
  void Ftran(Eigen::VectorXd& v) const;
  void Btran(Eigen::VectorXd& v) const;
  // Recomputes x_B and the reduced costs from scratch.
  void Recompute();
  void SetSlackBasis();
  double MaxDualInfeasibility() const;
  LpSolution Finish(SolveStatus status, int64_t iterations) const;

  const LinearProgram& lp_;
  const SolveOptions& options_;
  const int m_;
  const int n_;
  std::vector<int> col_start_;
  std::vector<int> col_row_;
  std::vector<double> col_value_;
  std::vector<double> cost_;

  std::vector<int> heading_;   // variable basic at each position
  std::vector<int> position_;  // position of each variable, or -1
  Eigen::VectorXd x_basic_;
  std::vector<double> reduced_cost_;

  // transpose() is non-const in Eigen.
  mutable Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu_;
  std::vector<Eta> etas_;
};

void DualSimplex::SetSlackBasis() {
  heading_.resize(m_);
  position_.assign(n_ + m_, -1);
  for (int i = 0; i < m_; ++i) {
    heading_[i] = n_ + i;
    position_[n_ + i] = i;
  }
}

absl::Status DualSimplex::Factorize() {
  std::vector<Eigen::Triplet<double, int>> triplets;
  triplets.reserve(m_ * 3);
  for (int k = 0; k < m_; ++k) {
    const int j = heading_[k];
    if (IsSlack(j)) {
      triplets.emplace_back(j - n_, k, 1.0);
    } else {
      for (int p = col_start_[j]; p < col_start_[j + 1]; ++p) {
        triplets.emplace_back(col_row_[p], k, col_value_[p]);
      }
    }
  }
  SparseMatrix basis(m_, m_);
  basis.setFromTriplets(triplets.begin(), triplets.end());
  basis.makeCompressed();
  lu_.compute(basis);
  etas_.clear();
  if (lu_.info() != Eigen::Success) {
    return absl::InternalError(
        absl::StrCat("basis factorisation failed: ", lu_.lastErrorMessage()));
  }
  return absl::OkStatus();
}

void DualSimplex::Ftran(Eigen::VectorXd& v) const {
  v = lu_.solve(v);
  for (const Eta& eta : etas_) {
    const double t = v[eta.pivot_row];
    if (t == 0.0) continue;
    v[eta.pivot_row] = t * eta.pivot_inverse;
    for (const auto& [i, e] : eta.entries) v[i] += e * t;
  }
}

void DualSimplex::Btran(Eigen::VectorXd& v) const {
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = it->pivot_inverse * v[it->pivot_row];
    for (const auto& [i, e] : it->entries) s += e * v[i];
    v[it->pivot_row] = s;
  }
  v = lu_.transpose().solve(v);
}

void DualSimplex::Recompute() {
  x_basic_ = Eigen::Map<const Eigen::VectorXd>(lp_.rhs().data(), m_);
  Ftran(x_basic_);
  Eigen::VectorXd y(m_);
  for (int k = 0; k < m_; ++k) y[k] = cost_[heading_[k]];
  Btran(y);
  reduced_cost_.assign(n_ + m_, 0.0);
  for (int j = 0; j < n_ + m_; ++j) {
    if (position_[j] >= 0) continue;
    reduced_cost_[j] = cost_[j] - DotColumn(j, y);
  }
}

double DualSimplex::MaxDualInfeasibility() const {
  double worst = 0.0;
  for (int j = 0; j < n_ + m_; ++j) {
    if (position_[j] < 0) worst = std::max(worst, -reduced_cost_[j]);
  }
  return worst;
}

LpSolution DualSimplex::Finish(SolveStatus status, int64_t iterations) const {
  LpSolution s;
  s.status = status;
  s.iterations = iterations;
  s.x.assign(n_, 0.0);
  for (int k = 0; k < m_; ++k) {
    if (!IsSlack(heading_[k])) s.x[heading_[k]] = x_basic_[k];
  }
  if (status == SolveStatus::kOptimal) {
    // Clean round-off below the primal tolerance.
    for (double& v : s.x) {
      if (v < 0.0 && v > -options_.primal_tolerance * 10) v = 0.0;
    }
  }
  s.objective = lp_.Objective(s.x);
  s.max_violation = lp_.MaxViolation(s.x);
  s.max_dual_infeasibility = MaxDualInfeasibility();
  return s;
}

absl::StatusOr<LpSolution> DualSimplex::Run() {
  SetSlackBasis();
  bool ready = false;
  if (!options_.initial_basis.empty()) {
    for (const auto& [row, var] : options_.initial_basis) {
      if (row < 0 || row >= m_ || var < 0 || var >= n_ || position_[var] >= 0 ||
          !IsSlack(heading_[row])) {
        return absl::InvalidArgumentError(absl::StrCat(
            "bad initial basis entry (row ", row, ", variable ", var, ")"));
      }
      position_[heading_[row]] = -1;
      heading_[row] = var;
      position_[var] = row;
    }
    ready = Factorize().ok();
    if (ready) {
      Recompute();
      ready = MaxDualInfeasibility() <= options_.dual_tolerance;
    }
    if (!ready) SetSlackBasis();
  }
  if (!ready) {
    if (absl::Status s = Factorize(); !s.ok()) return s;
    Recompute();
  }

  const int64_t max_iterations = options_.max_iterations > 0
                                     ? options_.max_iterations
                                     : 20 * static_cast<int64_t>(m_ + n_);
  const double ptol = options_.primal_tolerance;
  const double dtol = options_.dual_tolerance;
  const double pivtol = options_.pivot_tolerance;

  Eigen::VectorXd rho(m_);
  Eigen::VectorXd column(m_);
  std::vector<double> alpha(n_ + m_, 0.0);
  std::vector<int> alpha_nonzero;
  std::vector<char> alpha_marked(n_ + m_, 0);
  int degenerate_run = 0;
  bool fresh = true;  // no pivots since the last refactorisation

  for (int64_t iter = 0; iter < max_iterations; ++iter) {
    if (static_cast<int>(etas_.size()) >= options_.refactor_interval) {
      if (absl::Status s = Factorize(); !s.ok()) return s;
      Recompute();
      fresh = true;
    }
    const bool bland = degenerate_run >= options_.degenerate_limit;

    // Leaving row.
    int r = -1;
    double worst = -ptol;
    for (int k = 0; k < m_; ++k) {
      if (x_basic_[k] >= -ptol) continue;
      if (bland) {
        if (r < 0 || heading_[k] < heading_[r]) r = k;
      } else if (x_basic_[k] < worst) {
        worst = x_basic_[k];
        r = k;
      }
    }
    if (r < 0) {
      if (!fresh) {
        if (absl::Status s = Factorize(); !s.ok()) return s;
        Recompute();
        fresh = true;
        --iter;
        continue;
      }
      return Finish(SolveStatus::kOptimal, iter);
    }

    // Pivot row: alpha_j = rho^T a_j with rho = B^-T e_r.
    rho.setZero();
    rho[r] = 1.0;
    Btran(rho);
    for (int j : alpha_nonzero) {
      alpha[j] = 0.0;
      alpha_marked[j] = 0;
    }
    alpha_nonzero.clear();
    for (int i = 0; i < m_; ++i) {
      const double ri = rho[i];
      if (ri == 0.0) continue;
      auto touch = [&](int j, double a) {
        if (position_[j] >= 0) return;
        if (!alpha_marked[j]) {
          alpha_marked[j] = 1;
          alpha_nonzero.push_back(j);
        }
        alpha[j] += a;
      };
      touch(n_ + i, ri);
      for (const LinearTerm& t : lp_.Row(i)) {
        touch(t.variable, ri * t.coefficient);
      }
    }

    // Ratio test (Harris two-pass, or smallest index under Bland).
    double bound = std::numeric_limits<double>::infinity();
    for (int j : alpha_nonzero) {
      if (alpha[j] < -pivtol) {
        bound = std::min(bound,
                         (std::max(reduced_cost_[j], 0.0) + dtol) / -alpha[j]);
      }
    }
    if (!std::isfinite(bound)) {
      if (!fresh) {
        if (absl::Status s = Factorize(); !s.ok()) return s;
        Recompute();
        fresh = true;
        continue;
      }
      return Finish(SolveStatus::kInfeasible, iter);
    }
    int q = -1;
    double best = 0.0;
    for (int j : alpha_nonzero) {
      if (alpha[j] >= -pivtol) continue;
      const double ratio = std::max(reduced_cost_[j], 0.0) / -alpha[j];
      if (ratio > bound) continue;
      if (bland) {
        if (q < 0 || j < q) q = j;
      } else if (-alpha[j] > best) {
        best = -alpha[j];
        q = j;
      }
    }

    // Entering column.
    column.setZero();
    ScatterColumn(q, column);
    Ftran(column);
    const double pivot = column[r];
    if (std::abs(pivot) < 1e-11 || pivot * alpha[q] <= 0.0 ||
        std::abs(pivot - alpha[q]) > 1e-6 * (1.0 + std::abs(pivot))) {
      if (fresh) {
        return absl::InternalError(absl::StrCat("numerically unstable pivot ",
                                                pivot, " vs ", alpha[q],
                                                " at iteration ", iter));
      }
      if (absl::Status s = Factorize(); !s.ok()) return s;
      Recompute();
      fresh = true;
      continue;
    }

    // Dual update.
    const double dq = std::max(reduced_cost_[q], 0.0);
    const double theta_d = dq / alpha[q];
    if (theta_d != 0.0) {
      for (int j : alpha_nonzero) reduced_cost_[j] -= theta_d * alpha[j];
      degenerate_run = 0;
    } else {
      ++degenerate_run;
    }
    const int leaving = heading_[r];
    reduced_cost_[leaving] = -theta_d;
    reduced_cost_[q] = 0.0;

    // Primal update.
    const double theta_p = x_basic_[r] / pivot;
    x_basic_ -= theta_p * column;
    x_basic_[r] = theta_p;

    // Basis update.
    Eta eta;
    eta.pivot_row = r;
    eta.pivot_inverse = 1.0 / pivot;
    for (int i = 0; i < m_; ++i) {
      if (i != r && column[i] != 0.0) {
        eta.entries.emplace_back(i, -column[i] / pivot);
      }
    }
    etas_.push_back(std::move(eta));
    position_[leaving] = -1;
    heading_[r] = q;
    position_[q] = r;
    fresh = false;
  }
  return Finish(SolveStatus::kIterationLimit, max_iterations);
}

}  // namespace

absl::StatusOr<LpSolution> SolveDualSimplex(const LinearProgram& lp,
                                            const SolveOptions& options) {
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (!(lp.costs()[j] >= 0.0) || !std::isfinite(lp.costs()[j])) {
      return absl::InvalidArgumentError(absl::StrCat(
          "variable ", lp.variable_name(j), " has cost ", lp.costs()[j],
          "; the solver needs finite non-negative costs"));
    }
  }
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (!std::isfinite(lp.rhs()[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", lp.row_name(i), " has a non-finite bound"));
    }
  }
  if (lp.num_rows() == 0) {
    LpSolution s;
    s.status = SolveStatus::kOptimal;
    s.x.assign(lp.num_variables(), 0.0);
    return s;
  }
  DualSimplex solver(lp, options);
  return solver.Run();
}

}  // namespace dpeuler
