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
#include <limits>
#include <sstream>
#include <vector>

#include "Eigen/Dense"
#include "dpeuler/random.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace dpeuler {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;

TEST(LinearProgramTest, AddRowMergesAndDropsZeros) {
  LinearProgram lp;
  lp.AddVariable(1.0, "x");
  lp.AddVariable(0.0, "y");
  const LinearTerm terms[] = {{0, 1.0}, {1, 2.0}, {0, 2.0}, {1, -2.0}};
  lp.AddRow(terms, 4.0, "r");
  ASSERT_EQ(lp.Row(0).size(), 1u);
  EXPECT_EQ(lp.Row(0)[0].variable, 0);
  EXPECT_EQ(lp.Row(0)[0].coefficient, 3.0);
}

TEST(LinearProgramTest, ViolationAndObjective) {
  LinearProgram lp;
  lp.AddVariable(2.0);
  lp.AddVariable(1.0);
  const LinearTerm terms[] = {{0, 1.0}, {1, 1.0}};
  lp.AddRow(terms, 1.0);
  const std::vector<double> x = {1.0, 0.5};
  EXPECT_DOUBLE_EQ(lp.MaxViolation(x), 0.5);
  EXPECT_DOUBLE_EQ(lp.Objective(x), 2.5);
  EXPECT_DOUBLE_EQ(lp.MaxViolation(std::vector<double>{-0.25, 0}), 0.25);
}

TEST(LinearProgramTest, WritesCplexLpFormat) {
  LinearProgram lp;
  lp.AddVariable(1.0, "x");
  lp.AddVariable(0.0, "y");
  const LinearTerm terms[] = {{0, -1.0}, {1, 2.5}};
  lp.AddRow(terms, -3.0, "c");
  std::ostringstream out;
  lp.WriteLpFormat(out);
  EXPECT_THAT(out.str(), HasSubstr("Minimize\n obj: + 1 x"));
  EXPECT_THAT(out.str(), HasSubstr("Subject To\n c: - 1 x + 2.5 y <= -3\n"));
  EXPECT_THAT(out.str(), HasSubstr("End\n"));
}

TEST(DualSimplexTest, SmallKnownOptimum) {
  // min 2x + 3y  s.t.  x + y >= 4, x <= 3.
  LinearProgram lp;
  lp.AddVariable(2.0);
  lp.AddVariable(3.0);
  const LinearTerm cover[] = {{0, -1.0}, {1, -1.0}};
  const LinearTerm cap[] = {{0, 1.0}};
  lp.AddRow(cover, -4.0);
  lp.AddRow(cap, 3.0);
  const LpSolution s = SolveDualSimplex(lp).value();
  ASSERT_EQ(s.status, SolveStatus::kOptimal);
  EXPECT_THAT(s.x, ElementsAre(DoubleNear(3, 1e-9), DoubleNear(1, 1e-9)));
  EXPECT_NEAR(s.objective, 9.0, 1e-9);
  EXPECT_LE(s.max_violation, 1e-9);
}

TEST(DualSimplexTest, DetectsInfeasibility) {
  LinearProgram lp;
  lp.AddVariable(1.0);
  const LinearTerm row[] = {{0, 1.0}};
  lp.AddRow(row, -1.0);
  EXPECT_EQ(SolveDualSimplex(lp).value().status, SolveStatus::kInfeasible);
}

TEST(DualSimplexTest, RejectsNegativeCostsAndBadRhs) {
  LinearProgram lp;
  lp.AddVariable(-1.0);
  EXPECT_FALSE(SolveDualSimplex(lp).ok());
  LinearProgram lp2;
  lp2.AddVariable(1.0);
  const LinearTerm row[] = {{0, 1.0}};
  lp2.AddRow(row, std::numeric_limits<double>::infinity());
  EXPECT_FALSE(SolveDualSimplex(lp2).ok());
}

TEST(DualSimplexTest, IterationLimitIsReported) {
  LinearProgram lp;
  lp.AddVariable(1.0);
  lp.AddVariable(1.0);
  const LinearTerm a[] = {{0, -1.0}, {1, -2.0}};
  const LinearTerm b[] = {{0, -2.0}, {1, -1.0}};
  lp.AddRow(a, -3.0);
  lp.AddRow(b, -3.0);
  SolveOptions options;
  options.max_iterations = 1;
  EXPECT_EQ(SolveDualSimplex(lp, options).value().status,
            SolveStatus::kIterationLimit);
}

// Exhaustive vertex enumeration of {A x <= b, x >= 0} for tiny programs.
double VertexEnumerationMinimum(const Eigen::MatrixXd& a,
                                const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  Eigen::MatrixXd all(m + n, n);
  Eigen::VectorXd rhs(m + n);
  all << a, -Eigen::MatrixXd::Identity(n, n);
  rhs << b, Eigen::VectorXd::Zero(n);
  double best = std::numeric_limits<double>::infinity();
  // Iterate over all n-subsets of the m + n constraints.
  std::vector<bool> mask(m + n, false);
  std::fill(mask.begin(), mask.begin() + n, true);
  do {
    Eigen::MatrixXd sub(n, n);
    Eigen::VectorXd sub_rhs(n);
    int k = 0;
    for (int i = 0; i < m + n; ++i) {
      if (!mask[i]) continue;
      sub.row(k) = all.row(i);
      sub_rhs(k++) = rhs(i);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    if (lu.rank() < n) continue;
    const Eigen::VectorXd x = lu.solve(sub_rhs);
    if (((all * x - rhs).array() <= 1e-9).all()) {
      best = std::min(best, c.dot(x));
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

TEST(DualSimplexTest, MatchesVertexEnumerationOnRandomPrograms) {
  SplitMixRng rng(17);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.Below(3));
    const int m = 2 + static_cast<int>(rng.Below(5));
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd b(m), c(n);
    LinearProgram lp;
    for (int j = 0; j < n; ++j) {
      c(j) = static_cast<double>(rng.Below(5));
      lp.AddVariable(c(j));
    }
    for (int i = 0; i < m; ++i) {
      std::vector<LinearTerm> row;
      for (int j = 0; j < n; ++j) {
        a(i, j) = static_cast<double>(rng.Below(7)) - 3.0;
        row.push_back({j, a(i, j)});
      }
      b(i) = static_cast<double>(rng.Below(11)) - 5.0;
      lp.AddRow(row, b(i));
    }
    const double expected = VertexEnumerationMinimum(a, b, c);
    const LpSolution s = SolveDualSimplex(lp).value();
    if (std::isinf(expected)) {
      EXPECT_EQ(s.status, SolveStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ++feasible;
    ASSERT_EQ(s.status, SolveStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective, expected, 1e-7) << "trial " << trial;
    EXPECT_LE(s.max_violation, 1e-7);
  }
  EXPECT_GT(feasible, 50);
}

}  // namespace
}  // namespace dpeuler
