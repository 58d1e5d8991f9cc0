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
#include "hankelcast/predictor.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "hankelcast/errors.hpp"
#include "hankelcast/hankel.hpp"

namespace hankelcast {
namespace {

void require_width(const char* what, Index got, Index expected) {
  if (got != expected) {
    throw DimensionError(std::string(what) + " has width " + std::to_string(got) +
                         ", expected " + std::to_string(expected));
  }
}

struct StepSolution {
  std::optional<Matrix> future_outputs;
  double residual = 0;
  bool unique_certificate = false;
  double g_norm = 0;
};

/// Solves [U_p; U_f; Y_p] g = [u_past; u_future; y_past] and reads out Y_f g.
StepSolution solve_step(const HankelPartition& part, const Trajectory& past,
                        const Matrix& future_inputs, double residual_tol,
                        double rank_tol) {
  const Index rows_up = part.past_inputs.rows();
  const Index rows_uf = part.future_inputs.rows();
  const Index rows_yp = part.past_outputs.rows();
  Matrix lhs(rows_up + rows_uf + rows_yp, part.columns());
  lhs.topRows(rows_up) = part.past_inputs;
  lhs.middleRows(rows_up, rows_uf) = part.future_inputs;
  lhs.bottomRows(rows_yp) = part.past_outputs;

  Vector rhs(lhs.rows());
  rhs.head(rows_up) = stacked(past.u());
  rhs.segment(rows_up, rows_uf) = stacked(future_inputs);
  rhs.tail(rows_yp) = stacked(past.y());

  const LeastSquaresSolution fit = solve_min_norm(lhs, rhs, rank_tol);
  StepSolution out;
  out.residual = fit.relative_residual;
  out.g_norm = fit.solution.norm();
  if (out.residual > residual_tol) return out;

  const Matrix& yf = part.future_outputs;
  const Index p = past.output_width();
  out.future_outputs = unstacked(yf * fit.solution, p, future_inputs.cols());
  out.unique_certificate =
      (yf * fit.kernel).norm() <= kCertificateTol * std::max(1.0, yf.norm());
  return out;
}

PredictionOutcome to_outcome(StepSolution step) {
  PredictionOutcome out;
  out.future_outputs = std::move(step.future_outputs);
  out.residual = step.residual;
  out.unique_certificate = step.unique_certificate;
  out.g_norm = step.g_norm;
  return out;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Appends the columns of extra to base.
void append_columns(Matrix& base, const Matrix& extra) {
  const Index at = base.cols();
  base.conservativeResize(Eigen::NoChange, at + extra.cols());
  base.rightCols(extra.cols()) = extra;
}

}  // namespace

void validate(const PredictionProblem& problem) {
  const Index m = problem.data.input_width();
  const Index p = problem.data.output_width();
  require_width("initial trajectory input", problem.ini.input_width(), m);
  require_width("initial trajectory output", problem.ini.output_width(), p);
  require_width("future input", problem.future_inputs.rows(), m);
  if (problem.lag_bound < 0) throw PreconditionError("lag bound must be nonnegative");
  if (problem.lag_bound > problem.ini.length()) {
    throw PreconditionError("lag bound " + std::to_string(problem.lag_bound) +
                            " exceeds initial trajectory length " +
                            std::to_string(problem.ini.length()));
  }
}

std::optional<Index> PredictionOutcome::failing_step() const {
  for (const StepDiagnostic& s : steps) {
    if (!s.feasible) return s.step;
  }
  return std::nullopt;
}

PredictionOutcome predict(const PredictionProblem& problem) {
  validate(problem);
  const Index lag = problem.lag_bound;
  const Index depth = lag + problem.horizon();
  const std::array inputs{hankel(problem.data.u(), depth), hankel(problem.ini.u(), depth)};
  const std::array outputs{hankel(problem.data.y(), depth), hankel(problem.ini.y(), depth)};
  const HankelPartition part = split_partition(mosaic(inputs), mosaic(outputs), lag);
  return to_outcome(solve_step(part, problem.ini.tail(lag), problem.future_inputs,
                               problem.residual_tol, problem.rank_tol));
}

Trajectory weave(const Trajectory& first, const Trajectory& second, Index overlap,
                 double tol) {
  require_width("second trajectory input", second.input_width(), first.input_width());
  require_width("second trajectory output", second.output_width(), first.output_width());
  if (overlap < 0 || overlap > first.length() || overlap > second.length()) {
    throw PreconditionError("overlap " + std::to_string(overlap) +
                            " longer than one of the woven trajectories");
  }
  const Trajectory a = first.tail(overlap);
  const Trajectory b = second.window(0, overlap);
  const double gap = std::max(max_abs(a.u() - b.u()), max_abs(a.y() - b.y()));
  if (gap > tol) {
    throw PreconditionError("trajectories differ by " + std::to_string(gap) +
                            " on the overlap");
  }
  return first.append(second.window(overlap, second.length() - overlap));
}

PredictionOutcome predict_and_weave(const PredictionProblem& problem) {
  validate(problem);
  const Index lag = problem.lag_bound;
  const Index depth = lag + 1;

  // Data columns are shared by every step; the running trajectory only ever
  // adds one new window per appended sample.
  Matrix inputs = hankel(problem.data.u(), depth).data();
  Matrix outputs = hankel(problem.data.y(), depth).data();
  append_columns(inputs, hankel(problem.ini.u(), depth).data());
  append_columns(outputs, hankel(problem.ini.y(), depth).data());

  const Index m = problem.data.input_width();
  const Index p = problem.data.output_width();
  Trajectory running = problem.ini;
  Matrix predicted(p, problem.horizon());

  PredictionOutcome out;
  out.unique_certificate = true;
  for (Index t = 0; t < problem.horizon(); ++t) {
    const HankelPartition part =
        split_partition(HankelBlock(inputs, depth, m), HankelBlock(outputs, depth, p), lag);
    StepSolution step = solve_step(part, running.tail(lag), problem.future_inputs.col(t),
                                   problem.residual_tol, problem.rank_tol);

    StepDiagnostic diag;
    diag.step = t;
    diag.feasible = step.future_outputs.has_value();
    diag.residual = step.residual;
    diag.unique_certificate = step.unique_certificate;
    diag.g_norm = step.g_norm;
    out.steps.push_back(diag);
    out.residual = std::max(out.residual, step.residual);
    out.g_norm = std::max(out.g_norm, step.g_norm);

    if (!diag.feasible) {
      out.unique_certificate = false;
      return out;
    }
    out.unique_certificate = out.unique_certificate && step.unique_certificate;
    predicted.col(t) = *step.future_outputs;
    running = running.append(Trajectory(problem.future_inputs.col(t), predicted.col(t)));
    if (running.length() >= depth) {
      const Trajectory window = running.tail(depth);
      append_columns(inputs, stacked(window.u()));
      append_columns(outputs, stacked(window.y()));
    }
  }
  out.future_outputs = std::move(predicted);
  return out;
}

std::string InformativityReport::verdict() const {
  if (sufficient_conditions_hold()) {
    return "sufficient conditions satisfied (under the supplied lag bound): "
           "the prediction is unique";
  }
  if (!ini_covers_lag_bound) {
    return "informativity not established: initial trajectory length " +
           std::to_string(ini_length) + " < lag bound " + std::to_string(lag_bound);
  }
  return "informativity not established: no prediction was produced";
}

InformativityReport check_informativity_conditions(const PredictionProblem& problem,
                                                   const PredictionOutcome& outcome) {
  InformativityReport report;
  report.ini_length = problem.ini.length();
  report.lag_bound = problem.lag_bound;
  report.ini_covers_lag_bound = report.ini_length >= report.lag_bound;
  report.prediction_produced = outcome.has_prediction();
  report.unique_certificate = outcome.has_prediction() && outcome.unique_certificate;
  return report;
}

}  // namespace hankelcast
