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
#include "hankelcast/verification.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <utility>

#include "hankelcast/errors.hpp"
#include "hankelcast/hankel.hpp"

namespace hankelcast::verification {
namespace {

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

Matrix row(std::initializer_list<double> values) {
  Matrix r(1, static_cast<Index>(values.size()));
  Index j = 0;
  for (double v : values) r(0, j++) = v;
  return r;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

IoRecursion::IoRecursion(std::vector<Matrix> output_lags, std::vector<Matrix> input_taps)
    : output_lags_(std::move(output_lags)), input_taps_(std::move(input_taps)) {
  if (output_lags_.empty() && input_taps_.empty()) {
    throw DimensionError("recursion needs at least one coefficient");
  }
  if (!input_taps_.empty()) {
    p_ = input_taps_.front().rows();
    m_ = input_taps_.front().cols();
  } else {
    p_ = output_lags_.front().rows();
  }
  for (const Matrix& c : output_lags_) {
    if (c.rows() != p_ || c.cols() != p_) {
      throw DimensionError("output lag coefficients must be p x p");
    }
  }
  for (const Matrix& c : input_taps_) {
    if (c.rows() != p_ || c.cols() != m_) {
      throw DimensionError("input tap coefficients must be p x m");
    }
  }
}

Index IoRecursion::history() const {
  const auto lags = static_cast<Index>(output_lags_.size());
  const auto taps = static_cast<Index>(input_taps_.size());
  return std::max(lags, taps - 1);
}

StateSpace integrator_family(double r) {
  return StateSpace(scalar(1.0), scalar(2.0 * r + 1.0), scalar(1.0), scalar(r));
}

IoRecursion integrator_family_recursion(double r) {
  return IoRecursion({scalar(1.0)}, {scalar(r), scalar(r + 1.0)});
}

bool kernel_uniqueness_oracle(const StateSpace& sys, Index ini_length, Index future_length,
                              double rank_tol) {
  if (future_length < 1) {
    throw PreconditionError("kernel oracle needs a future length of at least 1");
  }
  const Matrix kernel = kernel_basis(observability_matrix(sys, ini_length), rank_tol);
  Matrix a_pow = Matrix::Identity(sys.states(), sys.states());
  for (Index i = 0; i < ini_length; ++i) a_pow = a_pow * sys.a();
  const Matrix readout = observability_matrix(sys, future_length) * a_pow;
  return (readout * kernel).norm() <= 1e-9 * std::max(1.0, readout.norm());
}

Matrix simulate_recursion(const IoRecursion& rec, const Trajectory& ini, const Matrix& u) {
  if (ini.input_width() != rec.inputs() || ini.output_width() != rec.outputs() ||
      u.rows() != rec.inputs()) {
    throw DimensionError("recursion widths do not match the supplied signals");
  }
  const Index start = ini.length();
  if (start < rec.history()) {
    throw PreconditionError("recursion needs " + std::to_string(rec.history()) +
                            " samples of history, got " + std::to_string(start));
  }
  const Index total = start + u.cols();
  Matrix u_all(rec.inputs(), total);
  Matrix y_all = Matrix::Zero(rec.outputs(), total);
  u_all << ini.u(), u;
  y_all.leftCols(start) = ini.y();
  for (Index t = start; t < total; ++t) {
    Vector yt = Vector::Zero(rec.outputs());
    for (std::size_t i = 0; i < rec.output_lags().size(); ++i) {
      yt += rec.output_lags()[i] * y_all.col(t - 1 - static_cast<Index>(i));
    }
    for (std::size_t j = 0; j < rec.input_taps().size(); ++j) {
      yt += rec.input_taps()[j] * u_all.col(t - static_cast<Index>(j));
    }
    y_all.col(t) = yt;
  }
  return y_all.rightCols(u.cols());
}

Matrix continue_from(const StateSpace& sys, const Trajectory& ini, const Matrix& future_inputs,
                     double rank_tol) {
  const Vector x0 = estimate_initial_state(sys, ini, rank_tol).x0;
  return simulate(sys, propagate_state(sys, x0, ini.u()), future_inputs);
}

FamilyAgreement family_agreement_check(std::span<const StateSpace> family,
                                       const Trajectory& ini, const Matrix& future_inputs,
                                       double tol, double rank_tol) {
  FamilyAgreement out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const StateSpace& member = family[i];
    if (!is_trajectory(member, ini, kDefaultResidualTol, rank_tol)) {
      throw PreconditionError("initial trajectory is not a trajectory of family member " +
                              std::to_string(i));
    }
    if (!unique_continuation(member, ini.length(), future_inputs.cols(), rank_tol)) {
      out.non_unique_members.push_back(i);
    }
    out.outputs.push_back(continue_from(member, ini, future_inputs, rank_tol));
  }
  for (std::size_t i = 0; i < out.outputs.size(); ++i) {
    for (std::size_t j = i + 1; j < out.outputs.size(); ++j) {
      out.max_spread = std::max(out.max_spread, max_abs_diff(out.outputs[i], out.outputs[j]));
    }
  }
  out.agree = out.max_spread <= tol;
  return out;
}

StateSpace demo_system() {
  Matrix a(2, 2);
  a << 1.0, 1.0, -1.0, -0.5;
  Matrix b(2, 2);
  b << 1.0, 1.0, 0.0, 1.0;
  return StateSpace(a, b, row({1.0, 0.0}), Matrix::Zero(1, 2));
}

Trajectory demo_initial_trajectory() {
  Matrix u(2, 2);
  u << 6.0, -1.0, 2.0, 5.0;
  return Trajectory(u, Matrix::Zero(1, 2));
}

IoRecursion demo_explaining_recursion() {
  return IoRecursion({scalar(0.648), scalar(-0.324)},
                     {row({-3.259, 4.022}), row({1.987, 1.225}), row({1.041, 0.066})});
}

Trajectory generate_demo_data(std::uint64_t seed, Index length) {
  const StateSpace sys = demo_system();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Vector x0(sys.states());
  for (Index i = 0; i < x0.size(); ++i) x0(i) = unit(rng);
  Matrix u(sys.inputs(), length);
  for (Index t = 0; t < length; ++t) {
    for (Index i = 0; i < u.rows(); ++i) u(i, t) = unit(rng);
  }
  return Trajectory(u, simulate(sys, x0, u));
}

Matrix feasible_future_inputs(const StateSpace& sys, const Trajectory& data,
                              const Trajectory& ini, Index lag_bound, Index horizon,
                              std::mt19937_64& rng, double rank_tol) {
  const Index m = sys.inputs();
  const Index depth = lag_bound + 1;
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  Trajectory running = ini;
  Vector state = propagate_state(sys, estimate_initial_state(sys, ini, rank_tol).x0, ini.u());
  Matrix chosen(m, 0);
  for (Index t = 0; t < horizon; ++t) {
    const std::array<HankelBlock, 2> in{hankel(data.u(), depth), hankel(running.u(), depth)};
    const std::array<HankelBlock, 2> out{hankel(data.y(), depth), hankel(running.y(), depth)};
    const HankelPartition part = split_partition(mosaic(in), mosaic(out), lag_bound);

    Matrix past(part.past_inputs.rows() + part.past_outputs.rows(), part.columns());
    past << part.past_inputs, part.past_outputs;
    const Trajectory recent = running.tail(lag_bound);
    Vector target(past.rows());
    target << stacked(recent.u()), stacked(recent.y());

    const LeastSquaresSolution fit = solve_min_norm(past, target, rank_tol);
    if (fit.relative_residual > kDefaultResidualTol) break;
    // Feasible next inputs form the affine set U_f g0 + range(U_f K). Start
    // from its minimum-norm point and add a bounded random offset inside it,
    // so the inputs stay on the scale of the data instead of compounding.
    Vector next = part.future_inputs * fit.solution;
    if (fit.kernel.cols() > 0) {
      const Matrix free = part.future_inputs * fit.kernel;
      const Eigen::BDCSVD<Matrix> svd(free, Eigen::ComputeThinU);
      // Threshold against U_f itself: free directions of size ~eps are not free.
      const double floor = rank_tol * static_cast<double>(std::max(free.rows(), free.cols())) *
                           std::max(1.0, part.future_inputs.norm());
      Index r = 0;
      while (r < svd.singularValues().size() && svd.singularValues()(r) > floor) ++r;
      const Matrix basis = svd.matrixU().leftCols(r);
      next -= basis * (basis.transpose() * next);
      Vector z(r);
      for (Index i = 0; i < r; ++i) z(i) = unit(rng);
      next += basis * z;
    }
    const Matrix y_next = sys.c() * state + sys.d() * next;
    state = sys.a() * state + sys.b() * next;
    running = running.append(Trajectory(next, y_next));
    chosen.conservativeResize(Eigen::NoChange, chosen.cols() + 1);
    chosen.rightCols(1) = next;
  }
  return chosen;
}

}  // namespace hankelcast::verification
