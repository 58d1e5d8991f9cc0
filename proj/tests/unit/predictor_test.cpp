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

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "hankelcast/errors.hpp"
#include "hankelcast/hankel.hpp"
#include "hankelcast/predictor.hpp"
#include "oracles.hpp"

namespace hankelcast {
namespace {

using testing::row;

PredictionProblem integrator_problem(const Matrix& future_inputs) {
  PredictionProblem prob;
  prob.data = Trajectory(row({1, -1, 1}), row({0, 1, 0}));
  prob.ini = Trajectory(row({-2}), row({1}));
  prob.future_inputs = future_inputs;
  prob.lag_bound = 1;
  return prob;
}

Matrix alternating(Index horizon, double scale, int phase) {
  Matrix r(1, horizon);
  for (Index t = 0; t < horizon; ++t) r(0, t) = scale * ((t + phase) % 2 == 0 ? 1.0 : -1.0);
  return r;
}

TEST(Predict, SingleStepOfIntegratorData) {
  const PredictionOutcome out = predict(integrator_problem(row({2})));
  ASSERT_TRUE(out.has_prediction());
  EXPECT_NEAR((*out.future_outputs)(0, 0), -1.0, 1e-12);
  EXPECT_TRUE(out.unique_certificate);
  // g = (-1, 1) is the unique solution of the two-column system.
  EXPECT_NEAR(out.g_norm, std::sqrt(2.0), 1e-12);
  EXPECT_LT(out.residual, 1e-12);
}

TEST(Predict, FullHorizonOfIntegratorDataIsInfeasible) {
  const PredictionOutcome out = predict(integrator_problem(row({2, -2})));
  EXPECT_FALSE(out.has_prediction());
  EXPECT_GT(out.residual, 1e-8);
  EXPECT_FALSE(out.failing_step().has_value());
}

TEST(Predict, AllZeroProblemPredictsZero) {
  PredictionProblem prob;
  prob.data = Trajectory(Matrix::Zero(1, 5), Matrix::Zero(1, 5));
  prob.ini = Trajectory(Matrix::Zero(1, 1), Matrix::Zero(1, 1));
  prob.future_inputs = Matrix::Zero(1, 2);
  prob.lag_bound = 1;
  const PredictionOutcome out = predict(prob);
  ASSERT_TRUE(out.has_prediction());
  EXPECT_EQ(*out.future_outputs, Matrix::Zero(1, 2));
  EXPECT_EQ(out.residual, 0.0);
}

TEST(Predict, EmptyHorizonReturnsEmptyPrediction) {
  const PredictionOutcome out = predict(integrator_problem(Matrix(1, 0)));
  ASSERT_TRUE(out.has_prediction());
  EXPECT_EQ(out.future_outputs->cols(), 0);
  EXPECT_EQ(out.future_outputs->rows(), 1);
}

TEST(Predict, RejectsLagBoundBeyondIni) {
  PredictionProblem prob = integrator_problem(row({2}));
  prob.lag_bound = 2;
  EXPECT_THROW(predict(prob), PreconditionError);
  EXPECT_THROW(predict_and_weave(prob), PreconditionError);
}

TEST(Predict, RejectsWidthMismatch) {
  PredictionProblem prob = integrator_problem(Matrix::Zero(2, 1));
  EXPECT_THROW(predict(prob), DimensionError);
  prob = integrator_problem(row({2}));
  prob.ini = Trajectory(Matrix::Zero(1, 1), Matrix::Zero(2, 1));
  EXPECT_THROW(predict(prob), DimensionError);
}

TEST(Weave, ZeroOverlapConcatenates) {
  const Trajectory a(row({1, 2}), row({3, 4}));
  const Trajectory b(row({5}), row({6}));
  const Trajectory w = weave(a, b, 0);
  EXPECT_EQ(w.u(), row({1, 2, 5}));
  EXPECT_EQ(w.y(), row({3, 4, 6}));
}

TEST(Weave, AlternatingSegments) {
  const Trajectory first(row({-2, 2}), row({1, -1}));
  const Trajectory second(row({2, -2}), row({-1, 1}));
  const Trajectory w = weave(first, second, 1);
  EXPECT_EQ(w.u(), row({-2, 2, -2}));
  EXPECT_EQ(w.y(), row({1, -1, 1}));
}

TEST(Weave, RejectsMismatchedOverlap) {
  const Trajectory first(row({-2, 2}), row({1, -1}));
  const Trajectory second(row({3, -2}), row({-1, 1}));
  EXPECT_THROW(weave(first, second, 1), PreconditionError);
  const Trajectory close(row({2 + 1e-12, -2}), row({-1, 1}));
  EXPECT_NO_THROW(weave(first, close, 1));
  EXPECT_THROW(weave(first, second, 3), PreconditionError);
}

TEST(PredictAndWeave, AlternatingInputOverSixSteps) {
  const PredictionOutcome out = predict_and_weave(integrator_problem(alternating(6, 2.0, 0)));
  ASSERT_TRUE(out.has_prediction());
  EXPECT_LT(testing::max_abs(*out.future_outputs - alternating(6, 1.0, 1)), 1e-9);
  EXPECT_TRUE(out.unique_certificate);
  ASSERT_EQ(out.steps.size(), 6u);
  for (const StepDiagnostic& s : out.steps) EXPECT_TRUE(s.feasible);
  EXPECT_FALSE(out.failing_step().has_value());
}

TEST(PredictAndWeave, TwoStepHorizon) {
  const PredictionOutcome out = predict_and_weave(integrator_problem(row({2, -2})));
  ASSERT_TRUE(out.has_prediction());
  EXPECT_NEAR((*out.future_outputs)(0, 0), -1.0, 1e-9);
  EXPECT_NEAR((*out.future_outputs)(0, 1), 1.0, 1e-9);
}

TEST(PredictAndWeave, ZeroDataCannotMatchNonzeroInput) {
  PredictionProblem prob;
  prob.data = Trajectory(Matrix::Zero(1, 4), Matrix::Zero(1, 4));
  prob.ini = Trajectory(Matrix::Zero(1, 1), Matrix::Zero(1, 1));
  prob.future_inputs = row({1, 1, 1});
  prob.lag_bound = 1;
  const PredictionOutcome out = predict_and_weave(prob);
  EXPECT_FALSE(out.has_prediction());
  ASSERT_TRUE(out.failing_step().has_value());
  EXPECT_EQ(*out.failing_step(), 0);
  EXPECT_EQ(out.steps.size(), 1u);
}

TEST(Informativity, IntegratorExampleSatisfiesAllConditions) {
  const PredictionProblem prob = integrator_problem(row({2, -2}));
  const InformativityReport r = check_informativity_conditions(prob, predict_and_weave(prob));
  EXPECT_TRUE(r.ini_covers_lag_bound);
  EXPECT_TRUE(r.prediction_produced);
  EXPECT_TRUE(r.unique_certificate);
  EXPECT_TRUE(r.sufficient_conditions_hold());
  EXPECT_NE(r.verdict().find("sufficient conditions satisfied"), std::string::npos);
}

TEST(Informativity, ShortIniIsNotEstablished) {
  PredictionProblem prob;
  prob.data = Trajectory(Matrix::Zero(1, 4), Matrix::Zero(1, 4));
  prob.ini = Trajectory(Matrix::Zero(1, 1), Matrix::Zero(1, 1));
  prob.future_inputs = Matrix::Zero(1, 1);
  prob.lag_bound = 2;
  PredictionOutcome outcome;
  outcome.future_outputs = Matrix::Zero(1, 1);
  const InformativityReport r = check_informativity_conditions(prob, outcome);
  EXPECT_FALSE(r.ini_covers_lag_bound);
  EXPECT_FALSE(r.sufficient_conditions_hold());
  EXPECT_NE(r.verdict().find("not established"), std::string::npos);
  EXPECT_EQ(r.verdict().find("not informative"), std::string::npos);
}

TEST(Informativity, NullOutcomeMeansNoPrediction) {
  const PredictionProblem prob = integrator_problem(row({2, -2}));
  const InformativityReport r = check_informativity_conditions(prob, predict(prob));
  EXPECT_TRUE(r.ini_covers_lag_bound);
  EXPECT_FALSE(r.prediction_produced);
  EXPECT_FALSE(r.unique_certificate);
  EXPECT_NE(r.verdict().find("not established"), std::string::npos);
}

// Randomized properties ----------------------------------------------------

struct Scenario {
  StateSpace sys;
  PredictionProblem prob;
  Matrix truth;
};

/// Data of length 40 and an exact ini of length lag from a random system;
/// truth is the brute-force continuation of ini.
Scenario random_scenario(std::mt19937_64& rng, Index max_horizon = 5) {
  const StateSpace sys = testing::random_minimal_system(
      rng, testing::index_in(rng, 1, 3), testing::index_in(rng, 1, 2),
      testing::index_in(rng, 1, 2));
  const Index lag_value = lag(sys).lag;
  Scenario s{sys, {}, {}};
  s.prob.data = testing::random_trajectory(rng, sys, 40);
  Vector state;
  s.prob.ini = testing::random_trajectory(rng, sys, lag_value, &state);
  s.prob.future_inputs = testing::uniform(rng, sys.inputs(), testing::index_in(rng, 1, max_horizon));
  s.prob.lag_bound = lag_value;
  s.truth = testing::brute_force_response(sys, state, s.prob.future_inputs);
  return s;
}

/// [U_p; U_f; Y_p] and Y_f for a single-trajectory-plus-ini mosaic.
std::pair<Matrix, Matrix> feasibility_system(const PredictionProblem& prob) {
  const Index depth = prob.lag_bound + prob.horizon();
  const std::array in{hankel(prob.data.u(), depth), hankel(prob.ini.u(), depth)};
  const std::array out{hankel(prob.data.y(), depth), hankel(prob.ini.y(), depth)};
  const HankelPartition part = split_partition(mosaic(in), mosaic(out), prob.lag_bound);
  Matrix lhs(part.past_inputs.rows() + part.future_inputs.rows() + part.past_outputs.rows(),
             part.columns());
  lhs << part.past_inputs, part.future_inputs, part.past_outputs;
  return {lhs, part.future_outputs};
}

TEST(PredictorProperties, GroundTruthAgreementBothAlgorithms) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const Scenario s = random_scenario(rng);
    const PredictionOutcome direct = predict(s.prob);
    const PredictionOutcome woven = predict_and_weave(s.prob);
    ASSERT_TRUE(direct.has_prediction()) << "trial " << trial;
    ASSERT_TRUE(woven.has_prediction()) << "trial " << trial;
    EXPECT_LT(testing::relative_error(*direct.future_outputs, s.truth), 1e-6);
    EXPECT_LT(testing::relative_error(*woven.future_outputs, s.truth), 1e-6);
    if (direct.unique_certificate && woven.unique_certificate) {
      EXPECT_LT(testing::max_abs(*direct.future_outputs - *woven.future_outputs), 1e-8);
    }
  }
}

TEST(PredictorProperties, PredictionIsConsistentWithFullStack) {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 100; ++trial) {
    const Scenario s = random_scenario(rng);
    const PredictionOutcome out = predict(s.prob);
    ASSERT_TRUE(out.has_prediction());
    const auto [lhs, yf] = feasibility_system(s.prob);
    Matrix full(lhs.rows() + yf.rows(), lhs.cols());
    full << lhs, yf;
    const Trajectory past = s.prob.ini.tail(s.prob.lag_bound);
    Vector rhs(full.rows());
    rhs << stacked(past.u()), stacked(s.prob.future_inputs), stacked(past.y()),
        stacked(*out.future_outputs);
    // Independent residual via a complete orthogonal decomposition.
    const Vector g = full.completeOrthogonalDecomposition().solve(rhs);
    EXPECT_LE((full * g - rhs).norm() / std::max(1.0, rhs.norm()), 1e-8);
  }
}

TEST(PredictorProperties, CertifiedPredictionIgnoresKernelComponents) {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const Scenario s = random_scenario(rng);
    const PredictionOutcome out = predict(s.prob);
    ASSERT_TRUE(out.has_prediction());
    ASSERT_TRUE(out.unique_certificate);
    const auto [lhs, yf] = feasibility_system(s.prob);
    const Trajectory past = s.prob.ini.tail(s.prob.lag_bound);
    Vector b(lhs.rows());
    b << stacked(past.u()), stacked(s.prob.future_inputs), stacked(past.y());
    // Kernel from a full SVD, independent of the library's solver.
    const Eigen::JacobiSVD<Matrix> svd(lhs, Eigen::ComputeFullV);
    const Vector sv = svd.singularValues();
    Index r = 0;
    while (r < sv.size() && sv(r) > 1e-10 * std::max(lhs.rows(), lhs.cols()) * sv(0)) ++r;
    const Matrix kernel = svd.matrixV().rightCols(lhs.cols() - r);
    const Vector g = lhs.completeOrthogonalDecomposition().solve(b);
    const Vector shifted = g + kernel * testing::gaussian(rng, kernel.cols(), 1);
    EXPECT_LT(testing::max_abs(yf * shifted - stacked(*out.future_outputs)),
              1e-9 * std::max(1.0, testing::max_abs(yf) * shifted.norm()));
  }
}

TEST(PredictorProperties, PersistentlyExcitingDataAlwaysCertifies) {
  std::mt19937_64 rng(104);
  int exercised = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Scenario s = random_scenario(rng);
    const Index order = s.prob.lag_bound + s.prob.horizon() + s.sys.states();
    if (!is_persistently_exciting(s.prob.data.u(), order)) continue;
    ++exercised;
    const PredictionOutcome out = predict(s.prob);
    EXPECT_TRUE(out.has_prediction());
    EXPECT_TRUE(out.unique_certificate);
  }
  EXPECT_GE(exercised, 90);
}

TEST(PredictorProperties, WeavingClosureAtLag) {
  std::mt19937_64 rng(105);
  for (int trial = 0; trial < 100; ++trial) {
    const StateSpace sys = testing::random_minimal_system(
        rng, testing::index_in(rng, 0, 3), testing::index_in(rng, 1, 2),
        testing::index_in(rng, 1, 2));
    const Index overlap = lag(sys).lag + testing::index_in(rng, 0, 2);
    const Index extra = testing::index_in(rng, 0, 5);
    const Vector x0 = testing::gaussian(rng, sys.states(), 1);
    const Matrix u1 = testing::uniform(rng, sys.inputs(), overlap + extra);
    const Trajectory first(u1, testing::brute_force_response(sys, x0, u1));
    // The second segment repeats first's tail and then continues with fresh
    // inputs from the state reached at the start of that tail.
    const Trajectory tail = first.tail(overlap);
    const Vector start = testing::brute_force_state(sys, x0, u1.leftCols(extra));
    Matrix u(sys.inputs(), overlap + 4);
    u << tail.u(), testing::uniform(rng, sys.inputs(), 4);
    const Trajectory second(u, testing::brute_force_response(sys, start, u));
    ASSERT_LT(testing::max_abs(second.window(0, overlap).y() - tail.y()), 1e-9);
    const Trajectory woven = weave(first, second, overlap);
    EXPECT_EQ(woven.length(), first.length() + 4);
    EXPECT_TRUE(is_trajectory(sys, woven)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace hankelcast
