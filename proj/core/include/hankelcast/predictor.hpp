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
#ifndef HANKELCAST_PREDICTOR_HPP
#define HANKELCAST_PREDICTOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "hankelcast/linalg.hpp"
#include "hankelcast/lti.hpp"

namespace hankelcast {

/// Absolute tolerance on the overlap when weaving user-supplied trajectories.
inline constexpr double kDefaultWeaveTol = 1e-9;
/// ||Y_f K|| <= kCertificateTol * max(1, ||Y_f||) certifies uniqueness.
inline constexpr double kCertificateTol = 1e-9;

/**
 * @brief Everything needed to predict the response of an unknown system.
 *
 * data is a measured trajectory, ini the most recent trajectory of the
 * system, future_inputs the m x T_f inputs to be applied next. lag_bound is
 * the caller's upper bound on the lag of every system explaining the data;
 * only its last lag_bound samples of ini are used to pin the state.
 */
struct PredictionProblem {
  Trajectory data;
  Trajectory ini;
  Matrix future_inputs;
  Index lag_bound = 0;
  double residual_tol = kDefaultResidualTol;
  double rank_tol = kDefaultRankTol;

  Index horizon() const { return future_inputs.cols(); }
};

/// Throws DimensionError on width mismatches and PreconditionError when
/// lag_bound exceeds the initial trajectory length.
void validate(const PredictionProblem& problem);

struct StepDiagnostic {
  Index step = 0;
  bool feasible = false;
  double residual = 0;
  bool unique_certificate = false;
  double g_norm = 0;
};

struct PredictionOutcome {
  /// p x T_f predicted outputs; absent when the data did not admit a
  /// consistent coefficient vector.
  std::optional<Matrix> future_outputs;
  /// Relative least-squares residual (worst step for weaving).
  double residual = 0;
  /// Y_f annihilates the kernel of [U_p; U_f; Y_p] (every step for weaving).
  bool unique_certificate = false;
  /// Norm of the minimum-norm coefficient vector (largest step for weaving).
  double g_norm = 0;
  /// One entry per attempted step; filled by predict_and_weave only.
  std::vector<StepDiagnostic> steps;

  bool has_prediction() const { return future_outputs.has_value(); }
  /// Index of the step that failed, if weaving stopped early.
  std::optional<Index> failing_step() const;
};

/// One-shot prediction from the mosaic Hankel matrices of data and ini at
/// depth lag_bound + T_f.
PredictionOutcome predict(const PredictionProblem& problem);

/// Splices second onto first over `overlap` shared samples. Throws
/// PreconditionError when the overlapping samples differ by more than tol.
Trajectory weave(const Trajectory& first, const Trajectory& second, Index overlap,
                 double tol = kDefaultWeaveTol);

/// Predicts one step at a time, appending each predicted sample to the
/// running initial trajectory before the next step.
PredictionOutcome predict_and_weave(const PredictionProblem& problem);

struct InformativityReport {
  Index ini_length = 0;
  Index lag_bound = 0;
  bool ini_covers_lag_bound = false;  ///< T_ini >= lag bound
  bool prediction_produced = false;
  bool unique_certificate = false;

  /// Initial trajectory long enough and a prediction produced.
  bool sufficient_conditions_hold() const {
    return ini_covers_lag_bound && prediction_produced;
  }
  /// Human-readable verdict. A failed check reads "not established":
  /// the conditions are sufficient, not necessary.
  std::string verdict() const;
};

InformativityReport check_informativity_conditions(const PredictionProblem& problem,
                                                   const PredictionOutcome& outcome);

}  // namespace hankelcast

#endif  // HANKELCAST_PREDICTOR_HPP
