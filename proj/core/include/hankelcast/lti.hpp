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
#ifndef HANKELCAST_LTI_HPP
#define HANKELCAST_LTI_HPP

#include <vector>

#include "hankelcast/linalg.hpp"

namespace hankelcast {

/**
 * @brief Discrete-time state-space realization
 *
 *   x(t + 1) = A x(t) + B u(t)
 *   y(t)     = C x(t) + D u(t)
 *
 * Any of n, m, p may be zero. With n = 0 the system is the static map
 * y(t) = D u(t).
 */
class StateSpace {
 public:
  /// Throws DimensionError unless A is n x n, B is n x m, C is p x n and
  /// D is p x m.
  StateSpace(Matrix a, Matrix b, Matrix c, Matrix d);

  const Matrix& a() const { return a_; }
  const Matrix& b() const { return b_; }
  const Matrix& c() const { return c_; }
  const Matrix& d() const { return d_; }

  Index states() const { return a_.rows(); }
  Index inputs() const { return d_.cols(); }
  Index outputs() const { return d_.rows(); }

 private:
  Matrix a_;
  Matrix b_;
  Matrix c_;
  Matrix d_;
};

/// Paired input/output samples. Signals are stored one sample per column:
/// u is m x T and y is p x T.
class Trajectory {
 public:
  Trajectory() = default;
  /// Throws DimensionError if u and y have different lengths.
  Trajectory(Matrix u, Matrix y);

  const Matrix& u() const { return u_; }
  const Matrix& y() const { return y_; }

  Index length() const { return u_.cols(); }
  Index input_width() const { return u_.rows(); }
  Index output_width() const { return y_.rows(); }

  /// Samples [start, start + count).
  Trajectory window(Index start, Index count) const;
  /// Last count samples.
  Trajectory tail(Index count) const { return window(length() - count, count); }
  /// This trajectory followed by other (widths must match).
  Trajectory append(const Trajectory& other) const;

 private:
  Matrix u_{Matrix(0, 0)};
  Matrix y_{Matrix(0, 0)};
};

struct LagReport {
  int lag = 0;
  /// rank O_k for k = 0 .. lag + 1.
  std::vector<int> observability_ranks;
};

/// Output of the system from x0 under inputs u (m x T). Returns p x T.
Matrix simulate(const StateSpace& sys, const Vector& x0, const Matrix& u);

/// State reached after applying u (m x T) from x0.
Vector propagate_state(const StateSpace& sys, const Vector& x0, const Matrix& u);

/// Rows C, CA, ..., CA^{k-1}; the 0 x n void matrix for k = 0.
Matrix observability_matrix(const StateSpace& sys, Index k);

/// Block lower-triangular forced-response map of depth k: block (i, j) is
/// D on the diagonal and C A^{i-j-1} B below it, so that the stacked output
/// over k samples equals O_k x0 + T_k u.
Matrix toeplitz_matrix(const StateSpace& sys, Index k);

/// Least k with rank O_k = rank O_{k+1}, computed on the given realization.
/// For a non-minimal realization this is the realization's lag, which may
/// exceed the lag of its behavior.
LagReport lag(const StateSpace& sys, double rank_tol = kDefaultRankTol);

/// True iff every initial trajectory of length ini_length admits exactly one
/// continuation of length future_length.
bool unique_continuation(const StateSpace& sys, Index ini_length, Index future_length,
                         double rank_tol = kDefaultRankTol);

struct StateEstimate {
  Vector x0;  ///< minimum-norm solution of O_T x0 = y - T_T u
  double relative_residual = 0;
};

/// Initial state best explaining traj under sys. Widths must match.
StateEstimate estimate_initial_state(const StateSpace& sys, const Trajectory& traj,
                                     double rank_tol = kDefaultRankTol);

/// Behavior membership: the initial-state least-squares fit leaves relative
/// residual ||r|| / max(1, ||y||) <= tol. Empty trajectories are members.
bool is_trajectory(const StateSpace& sys, const Trajectory& traj,
                   double tol = kDefaultResidualTol, double rank_tol = kDefaultRankTol);

}  // namespace hankelcast

#endif  // HANKELCAST_LTI_HPP
