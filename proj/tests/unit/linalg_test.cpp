/*
 Copyright 2026 The hankelcast Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include <gtest/gtest.h>

#include "hankelcast/errors.hpp"
#include "hankelcast/linalg.hpp"
#include "oracles.hpp"

namespace hankelcast {
namespace {

TEST(NumericalRank, VoidMatricesHaveRankZero) {
  EXPECT_EQ(numerical_rank(Matrix(0, 4)), 0);
  EXPECT_EQ(numerical_rank(Matrix(4, 0)), 0);
  EXPECT_EQ(numerical_rank(Matrix(0, 0)), 0);
}

TEST(NumericalRank, IdentityAndProportionalRows) {
  EXPECT_EQ(numerical_rank(Matrix::Identity(3, 3)), 3);
  Matrix m(2, 2);
  m << 1, -1, -1, 1;
  EXPECT_EQ(numerical_rank(m), 1);
  EXPECT_EQ(numerical_rank(Matrix::Zero(3, 5)), 0);
}

TEST(NumericalRank, ThresholdScalesWithMagnitude) {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = 1e-12;
  EXPECT_EQ(numerical_rank(m), 1);
  EXPECT_EQ(numerical_rank(m * 1e8), 1);
  EXPECT_EQ(numerical_rank(m, 1e-14), 2);
}

TEST(KernelBasis, ShapesFollowVoidConventions) {
  EXPECT_EQ(kernel_basis(Matrix(0, 3)).rows(), 3);
  EXPECT_EQ(kernel_basis(Matrix(0, 3)).cols(), 3);
  EXPECT_EQ(kernel_basis(Matrix(3, 0)).cols(), 0);
  Matrix m(1, 2);
  m << 1, 1;
  const Matrix k = kernel_basis(m);
  ASSERT_EQ(k.cols(), 1);
  EXPECT_NEAR((m * k).norm(), 0.0, 1e-14);
  EXPECT_NEAR(k.norm(), 1.0, 1e-14);
}

TEST(SolveMinNorm, ExactSystemAndMinimumNorm) {
  Matrix a(1, 2);
  a << 1, 1;
  Vector b(1);
  b << 2;
  const LeastSquaresSolution s = solve_min_norm(a, b);
  EXPECT_NEAR(s.solution(0), 1.0, 1e-14);
  EXPECT_NEAR(s.solution(1), 1.0, 1e-14);
  EXPECT_NEAR(s.relative_residual, 0.0, 1e-14);
  EXPECT_EQ(s.rank, 1);
  EXPECT_EQ(s.kernel.cols(), 1);
}

TEST(SolveMinNorm, InconsistentSystemReportsRelativeResidual) {
  Matrix a(2, 1);
  a << 1, 1;
  Vector b(2);
  b << 1, -1;
  const LeastSquaresSolution s = solve_min_norm(a, b);
  EXPECT_NEAR(s.solution(0), 0.0, 1e-14);
  EXPECT_NEAR(s.residual_norm, std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(s.relative_residual, 1.0, 1e-14);
}

TEST(SolveMinNorm, VoidColumnsLeaveRightHandSideAsResidual) {
  Vector b(2);
  b << 3, 4;
  const LeastSquaresSolution s = solve_min_norm(Matrix(2, 0), b);
  EXPECT_EQ(s.solution.size(), 0);
  EXPECT_DOUBLE_EQ(s.residual_norm, 5.0);
  EXPECT_DOUBLE_EQ(s.relative_residual, 1.0);
  EXPECT_DOUBLE_EQ(solve_min_norm(Matrix(2, 0), Vector::Zero(2)).relative_residual, 0.0);
}

TEST(SolveMinNorm, RejectsMismatchedRightHandSide) {
  EXPECT_THROW(solve_min_norm(Matrix::Identity(2, 2), Vector::Zero(3)), DimensionError);
}

TEST(SolveMinNorm, MatchesNormalEquationsOnRandomFullRankSystems) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = testing::gaussian(rng, 6, 3);
    const Vector b = testing::gaussian(rng, 6, 1);
    const Vector reference = (a.transpose() * a).ldlt().solve(a.transpose() * b);
    EXPECT_LT((solve_min_norm(a, b).solution - reference).norm(), 1e-10);
  }
}

TEST(Stacking, RoundTripsSignals) {
  Matrix w(2, 3);
  w << 1, 2, 3, 4, 5, 6;
  const Vector v = stacked(w);
  EXPECT_EQ(v(1), 4);  // w(0) = (1, 4) comes first
  EXPECT_EQ(unstacked(v, 2, 3), w);
  EXPECT_EQ(unstacked(Vector(0), 0, 4).cols(), 4);
}

}  // namespace
}  // namespace hankelcast
