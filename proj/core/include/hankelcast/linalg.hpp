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
#ifndef HANKELCAST_LINALG_HPP
#define HANKELCAST_LINALG_HPP

#include <Eigen/Dense>

namespace hankelcast {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative singular-value threshold used for every rank decision.
inline constexpr double kDefaultRankTol = 1e-10;
/// Relative residual below which a linear system counts as solvable.
inline constexpr double kDefaultResidualTol = 1e-8;

/// Number of singular values above rank_tol * max(rows, cols) * sigma_max.
/// Void matrices (zero rows or zero columns) have rank 0.
int numerical_rank(const Matrix& m, double rank_tol = kDefaultRankTol);

/// Orthonormal basis of the numerical kernel, one column per direction.
/// A matrix with zero columns has an n x 0 kernel; a 0 x n matrix has
/// the identity as its kernel.
Matrix kernel_basis(const Matrix& m, double rank_tol = kDefaultRankTol);

struct LeastSquaresSolution {
  Vector solution;           ///< minimum-norm least-squares solution
  double residual_norm = 0;  ///< ||A x - b||
  double relative_residual = 0;  ///< ||A x - b|| / max(1, ||b||)
  int rank = 0;
  Matrix kernel;  ///< orthonormal basis of ker A
};

/// Pseudoinverse solve of A x = b via SVD. Void systems are legal: a
/// matrix with no columns yields the empty solution and residual ||b||.
LeastSquaresSolution solve_min_norm(const Matrix& a, const Vector& b,
                                    double rank_tol = kDefaultRankTol);

/// Stacks the columns of a q x T signal matrix into (w(0); ...; w(T-1)).
inline Vector stacked(const Matrix& signal) {
  return signal.reshaped();
}

/// Inverse of stacked(); v must hold width * samples entries.
inline Matrix unstacked(const Vector& v, Index width, Index samples) {
  return v.reshaped(width, samples);
}

}  // namespace hankelcast

#endif  // HANKELCAST_LINALG_HPP
