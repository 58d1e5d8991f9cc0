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
#ifndef HANKELCAST_VERIFICATION_HPP
#define HANKELCAST_VERIFICATION_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hankelcast/linalg.hpp"
#include "hankelcast/lti.hpp"

/// Small, explicit oracles for checking predictions against known systems
/// and finite families of explaining systems.
namespace hankelcast::verification {

/**
 * @brief Input-output difference equation
 *
 *   y(t) = sum_i output_lags[i] y(t - 1 - i) + sum_j input_taps[j] u(t - j)
 *
 * output_lags are p x p, input_taps are p x m.
 */
class IoRecursion {
 public:
  /// Throws DimensionError if the coefficients are empty or disagree on widths.
  IoRecursion(std::vector<Matrix> output_lags, std::vector<Matrix> input_taps);

  const std::vector<Matrix>& output_lags() const { return output_lags_; }
  const std::vector<Matrix>& input_taps() const { return input_taps_; }
  Index inputs() const { return m_; }
  Index outputs() const { return p_; }
  /// Samples of history needed to start the recursion.
  Index history() const;

 private:
  std::vector<Matrix> output_lags_;
  std::vector<Matrix> input_taps_;
  Index m_ = 0;
  Index p_ = 0;
};

/// Realization A = 1, B = 2r + 1, C = 1, D = r of the scalar recursion
/// y(t + 1) - y(t) = r u(t + 1) + (r + 1) u(t). r = 0 is the integrator.
StateSpace integrator_family(double r);

/// The recursion y(t+1) = y(t) + r u(t+1) + (r+1) u(t) as an IoRecursion.
IoRecursion integrator_family_recursion(double r);

/// Brute-force uniqueness test: O_{T_f} A^{T_ini} K = 0 for an orthonormal
/// basis K of ker O_{T_ini}. Requires future_length >= 1.
bool kernel_uniqueness_oracle(const StateSpace& sys, Index ini_length, Index future_length,
                              double rank_tol = kDefaultRankTol);

/// Rolls rec forward over u (m x T), seeded by the tail of ini. Throws
/// PreconditionError when ini is shorter than rec.history().
Matrix simulate_recursion(const IoRecursion& rec, const Trajectory& ini, const Matrix& u);

struct FamilyAgreement {
  bool agree = false;
  /// Response of each member, in family order.
  std::vector<Matrix> outputs;
  /// Members whose continuation from ini is not unique (ini shorter than lag).
  std::vector<std::size_t> non_unique_members;
  /// Largest pairwise max-abs difference between member responses.
  double max_spread = 0;
};

/// Continues ini with u_f under every member and compares the responses.
/// Throws PreconditionError if ini is not a trajectory of some member.
FamilyAgreement family_agreement_check(std::span<const StateSpace> family,
                                       const Trajectory& ini, const Matrix& future_inputs,
                                       double tol, double rank_tol = kDefaultRankTol);

/// Response of sys to u_f after ini, from the minimum-norm ini-consistent state.
Matrix continue_from(const StateSpace& sys, const Trajectory& ini, const Matrix& future_inputs,
                     double rank_tol = kDefaultRankTol);

// Two-input demonstration scenario ---------------------------------------

/// Stable 2-state, 2-input, 1-output system with lag 2.
StateSpace demo_system();
/// Length-2 initial trajectory u = ((6, 2), (-1, 5)), y = (0, 0).
Trajectory demo_initial_trajectory();
/// Second-order recursion that explains short non-exciting data of
/// demo_system() but is not demo_system() itself.
IoRecursion demo_explaining_recursion();
/// Length-8 data trajectory of demo_system() driven by seeded uniform inputs
/// in [-1, 1]^2 from a seeded uniform initial state in [-1, 1]^2.
Trajectory generate_demo_data(std::uint64_t seed, Index length = 8);

/**
 * @brief Builds a future input sequence for which step-by-step prediction
 * stays feasible.
 *
 * At every step the admissible next inputs form the affine set
 * { U_f g : [U_p; Y_p] g = [u_past; y_past] }; the next input is its
 * minimum-norm point plus a uniform [-1, 1] offset along each free direction,
 * and the true system's response is appended. Returns the
 * m x horizon inputs, or fewer columns if the set becomes empty.
 */
Matrix feasible_future_inputs(const StateSpace& sys, const Trajectory& data,
                              const Trajectory& ini, Index lag_bound, Index horizon,
                              std::mt19937_64& rng, double rank_tol = kDefaultRankTol);

}  // namespace hankelcast::verification

#endif  // HANKELCAST_VERIFICATION_HPP
