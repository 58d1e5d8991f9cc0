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
#include "hankelcast/lti.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "hankelcast/errors.hpp"

namespace hankelcast {
namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_width(const char* what, Index got, Index expected) {
  if (got != expected) {
    throw DimensionError(std::string(what) + " has width " + std::to_string(got) +
                         ", expected " + std::to_string(expected));
  }
}

}  // namespace

StateSpace::StateSpace(Matrix a, Matrix b, Matrix c, Matrix d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const Index n = a_.rows();
  const Index m = d_.cols();
  const Index p = d_.rows();
  if (a_.cols() != n || b_.rows() != n || b_.cols() != m || c_.rows() != p ||
      c_.cols() != n) {
    throw DimensionError("inconsistent state-space dimensions: A " + shape(a_) + ", B " +
                         shape(b_) + ", C " + shape(c_) + ", D " + shape(d_));
  }
}

Trajectory::Trajectory(Matrix u, Matrix y) : u_(std::move(u)), y_(std::move(y)) {
  if (u_.cols() != y_.cols()) {
    throw DimensionError("trajectory input has " + std::to_string(u_.cols()) +
                         " samples but output has " + std::to_string(y_.cols()));
  }
}

Trajectory Trajectory::window(Index start, Index count) const {
  if (start < 0 || count < 0 || start + count > length()) {
    throw PreconditionError("window [" + std::to_string(start) + ", " +
                            std::to_string(start + count) + ") outside trajectory of length " +
                            std::to_string(length()));
  }
  return Trajectory(u_.middleCols(start, count), y_.middleCols(start, count));
}

Trajectory Trajectory::append(const Trajectory& other) const {
  check_width("appended input", other.input_width(), input_width());
  check_width("appended output", other.output_width(), output_width());
  Matrix u(input_width(), length() + other.length());
  Matrix y(output_width(), length() + other.length());
  u << u_, other.u_;
  y << y_, other.y_;
  return Trajectory(std::move(u), std::move(y));
}

Matrix simulate(const StateSpace& sys, const Vector& x0, const Matrix& u) {
  check_width("initial state", x0.size(), sys.states());
  check_width("input", u.rows(), sys.inputs());
  Matrix y(sys.outputs(), u.cols());
  Vector x = x0;
  for (Index t = 0; t < u.cols(); ++t) {
    y.col(t) = sys.c() * x + sys.d() * u.col(t);
    x = sys.a() * x + sys.b() * u.col(t);
  }
  return y;
}

Vector propagate_state(const StateSpace& sys, const Vector& x0, const Matrix& u) {
  check_width("initial state", x0.size(), sys.states());
  check_width("input", u.rows(), sys.inputs());
  Vector x = x0;
  for (Index t = 0; t < u.cols(); ++t) x = sys.a() * x + sys.b() * u.col(t);
  return x;
}

Matrix observability_matrix(const StateSpace& sys, Index k) {
  const Index p = sys.outputs();
  const Index n = sys.states();
  Matrix o(p * k, n);
  Matrix block = sys.c();
  for (Index i = 0; i < k; ++i) {
    o.middleRows(i * p, p) = block;
    block = block * sys.a();
  }
  return o;
}

Matrix toeplitz_matrix(const StateSpace& sys, Index k) {
  const Index p = sys.outputs();
  const Index m = sys.inputs();
  Matrix t = Matrix::Zero(p * k, m * k);
  if (k == 0) return t;
  // markov[d] is the response d samples after an impulse: D, CB, CAB, ...
  std::vector<Matrix> markov;
  markov.reserve(static_cast<std::size_t>(k));
  markov.push_back(sys.d());
  Matrix ca_pow = sys.c();
  for (Index d = 1; d < k; ++d) {
    markov.push_back(ca_pow * sys.b());
    ca_pow = ca_pow * sys.a();
  }
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j <= i; ++j) {
      t.block(i * p, j * m, p, m) = markov[static_cast<std::size_t>(i - j)];
    }
  }
  return t;
}

LagReport lag(const StateSpace& sys, double rank_tol) {
  LagReport report;
  report.observability_ranks.push_back(0);
  for (Index k = 0;; ++k) {
    const int next = numerical_rank(observability_matrix(sys, k + 1), rank_tol);
    report.observability_ranks.push_back(next);
    if (next == report.observability_ranks[static_cast<std::size_t>(k)]) {
      report.lag = static_cast<int>(k);
      return report;
    }
  }
}

bool unique_continuation(const StateSpace& sys, Index ini_length, Index future_length,
                         double rank_tol) {
  if (future_length == 0) return true;
  return ini_length >= lag(sys, rank_tol).lag;
}

StateEstimate estimate_initial_state(const StateSpace& sys, const Trajectory& traj,
                                     double rank_tol) {
  check_width("trajectory input", traj.input_width(), sys.inputs());
  check_width("trajectory output", traj.output_width(), sys.outputs());
  const Index horizon = traj.length();
  const Vector free_response =
      stacked(traj.y()) - toeplitz_matrix(sys, horizon) * stacked(traj.u());
  const LeastSquaresSolution fit =
      solve_min_norm(observability_matrix(sys, horizon), free_response, rank_tol);
  StateEstimate est;
  est.x0 = fit.solution;
  est.relative_residual = fit.residual_norm / std::max(1.0, traj.y().norm());
  return est;
}

bool is_trajectory(const StateSpace& sys, const Trajectory& traj, double tol,
                   double rank_tol) {
  if (traj.length() == 0) {
    check_width("trajectory input", traj.input_width(), sys.inputs());
    check_width("trajectory output", traj.output_width(), sys.outputs());
    return true;
  }
  return estimate_initial_state(sys, traj, rank_tol).relative_residual <= tol;
}

}  // namespace hankelcast
