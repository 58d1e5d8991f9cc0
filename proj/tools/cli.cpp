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
#include "cli.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "hankelcast/errors.hpp"
#include "hankelcast/hankel.hpp"
#include "hankelcast/io.hpp"
#include "hankelcast/lti.hpp"
#include "hankelcast/predictor.hpp"
#include "hankelcast/verification.hpp"

namespace hankelcast::cli {
namespace {

namespace ver = hankelcast::verification;
using io::format_number;

constexpr const char* kResidualTolEnv = "HANKELCAST_RESIDUAL_TOL";
constexpr const char* kRankTolEnv = "HANKELCAST_RANK_TOL";
constexpr double kMatchTol = 1e-6;

/// Raised for bad flag values detected after parsing; maps to kUsage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double env_or(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v >= 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string(name) + " must be a nonnegative number, got '" + raw + "'");
  }
  return v;
}

struct Tolerances {
  std::optional<double> residual_flag;
  std::optional<double> rank_flag;

  double residual() const {
    return residual_flag ? *residual_flag : env_or(kResidualTolEnv, kDefaultResidualTol);
  }
  double rank() const { return rank_flag ? *rank_flag : env_or(kRankTolEnv, kDefaultRankTol); }
};

void add_tolerance_flags(CLI::App* cmd, Tolerances& tol, bool with_residual) {
  if (with_residual) {
    cmd->add_option("--residual-tol", tol.residual_flag,
                    "Relative residual for feasibility (env " + std::string(kResidualTolEnv) + ")")
        ->check(CLI::NonNegativeNumber);
  }
  cmd->add_option("--rank-tol", tol.rank_flag,
                  "Relative singular-value threshold (env " + std::string(kRankTolEnv) + ")")
      ->check(CLI::NonNegativeNumber);
}

Trajectory require_trajectory(const std::string& path, const char* role) {
  std::optional<Trajectory> traj = io::load_trajectory(path);
  if (!traj) throw ParseError(std::string(role) + " file '" + path + "' is empty");
  return *traj;
}

Vector parse_state(const std::string& text, Index n) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw UsageError("--x0 holds an invalid number '" + cell + "'");
    }
  }
  if (static_cast<Index>(values.size()) != n) {
    throw UsageError("--x0 has width " + std::to_string(values.size()) +
                     ", expected width n=" + std::to_string(n));
  }
  Vector x(n);
  for (Index i = 0; i < n; ++i) x(i) = values[static_cast<std::size_t>(i)];
  return x;
}

std::string join(const Matrix& m) {
  std::string s;
  for (Index j = 0; j < m.size(); ++j) {
    if (j > 0) s += ',';
    s += format_number(m.reshaped()(j));
  }
  return s;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

const char* yes_no(bool v) { return v ? "true" : "false"; }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

double relative_deviation(const Matrix& predicted, const Matrix& truth) {
  const double scale = truth.size() == 0 ? 1.0 : std::max(1.0, truth.cwiseAbs().maxCoeff());
  return max_abs_diff(predicted, truth) / scale;
}

// simulate ------------------------------------------------------------------

struct SimulateArgs {
  std::string system_file;
  std::string input_file;
  std::optional<std::string> x0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const StateSpace sys = io::load_system(a.system_file);
  std::optional<Trajectory> input = io::load_trajectory(a.input_file);
  Matrix u = input ? input->u() : Matrix(sys.inputs(), 0);
  if (input && input->length() == 0 && input->input_width() == 0) u = Matrix(sys.inputs(), 0);
  if (u.rows() != sys.inputs()) {
    throw DimensionError("input file has " + std::to_string(u.rows()) +
                         " input columns, system expects m=" + std::to_string(sys.inputs()));
  }
  const Vector x0 = a.x0 ? parse_state(*a.x0, sys.states()) : Vector(Vector::Zero(sys.states()));
  const Matrix y = simulate(sys, x0, u);
  io::write_trajectory(out, Trajectory(u, y));
  return kSuccess;
}

// predict -------------------------------------------------------------------

struct PredictArgs {
  std::string data_file;
  std::string ini_file;
  std::string future_file;
  Index lag = 0;
  bool weave = false;
  Tolerances tol;
};

void print_steps(std::ostream& out, const PredictionOutcome& outcome) {
  for (const StepDiagnostic& s : outcome.steps) {
    out << "# step=" << s.step << " status=" << (s.feasible ? "ok" : "infeasible")
        << " residual=" << format_number(s.residual)
        << " unique_certificate=" << yes_no(s.unique_certificate)
        << " g_norm=" << format_number(s.g_norm) << '\n';
  }
}

int cmd_predict(const PredictArgs& a, std::ostream& out) {
  PredictionProblem problem;
  problem.data = require_trajectory(a.data_file, "data");
  problem.ini = require_trajectory(a.ini_file, "initial trajectory");
  std::optional<Trajectory> future = io::load_trajectory(a.future_file);
  problem.future_inputs = future ? future->u() : Matrix(problem.data.input_width(), 0);
  if (future && future->length() == 0 && future->input_width() == 0) {
    problem.future_inputs = Matrix(problem.data.input_width(), 0);
  }
  problem.lag_bound = a.lag;
  problem.residual_tol = a.tol.residual();
  problem.rank_tol = a.tol.rank();
  if (problem.lag_bound > problem.ini.length()) {
    throw UsageError("--lag " + std::to_string(problem.lag_bound) +
                     " exceeds the initial trajectory length " +
                     std::to_string(problem.ini.length()));
  }

  const PredictionOutcome outcome = a.weave ? predict_and_weave(problem) : predict(problem);
  const InformativityReport report = check_informativity_conditions(problem, outcome);

  if (!outcome.has_prediction()) {
    out << "PREDICTION NOT ESTABLISHED\n";
    out << "# mode=" << (a.weave ? "weave" : "direct") << '\n';
    if (const std::optional<Index> step = outcome.failing_step()) {
      out << "# failing_step=" << *step << '\n';
    }
    out << "# residual=" << format_number(outcome.residual) << '\n';
    out << "# residual_tol=" << format_number(problem.residual_tol) << '\n';
    print_steps(out, outcome);
    out << "# verdict=" << report.verdict() << '\n';
    return kNegative;
  }

  io::write_outputs(out, *outcome.future_outputs);
  out << "# mode=" << (a.weave ? "weave" : "direct") << '\n';
  out << "# residual=" << format_number(outcome.residual) << '\n';
  out << "# unique_certificate=" << yes_no(outcome.unique_certificate) << '\n';
  out << "# g_norm=" << format_number(outcome.g_norm) << '\n';
  print_steps(out, outcome);
  out << "# verdict=" << report.verdict() << '\n';
  return kSuccess;
}

// check ---------------------------------------------------------------------

struct CheckArgs {
  std::string file;
  bool lag = false;
  std::optional<Index> pe_order;
  std::vector<Index> unique_continuation;
  Tolerances tol;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const int selected = static_cast<int>(a.lag) + static_cast<int>(a.pe_order.has_value()) +
                       static_cast<int>(!a.unique_continuation.empty());
  if (selected != 1) {
    throw UsageError("choose exactly one of --lag, --pe-order, --unique-continuation");
  }
  const double rank_tol = a.tol.rank();

  if (a.pe_order) {
    const Trajectory data = require_trajectory(a.file, "data");
    const Index order = *a.pe_order;
    const int rank = numerical_rank(hankel(data.u(), order).data(), rank_tol);
    const Index required = data.input_width() * order;
    const bool holds = is_persistently_exciting(data.u(), order, rank_tol);
    out << "persistency of excitation of order " << order << (holds ? " holds" : " fails")
        << ": rank " << rank << (holds ? " = " : " < ") << required << '\n';
    out << "persistently_exciting=" << yes_no(holds) << '\n';
    out << "order=" << order << '\n';
    out << "rank=" << rank << '\n';
    out << "required_rank=" << required << '\n';
    return holds ? kSuccess : kNegative;
  }

  const StateSpace sys = io::load_system(a.file);
  const LagReport report = lag(sys, rank_tol);
  if (a.lag) {
    out << "lag=" << report.lag << '\n';
    out << "observability_ranks=" << join(report.observability_ranks) << '\n';
    return kSuccess;
  }

  const Index ini_length = a.unique_continuation[0];
  const Index future_length = a.unique_continuation[1];
  const bool holds = unique_continuation(sys, ini_length, future_length, rank_tol);
  out << "unique continuation " << (holds ? "holds" : "fails") << ": T_ini=" << ini_length
      << (ini_length >= report.lag ? " >= " : " < ") << "lag=" << report.lag
      << " (T_f=" << future_length << ")\n";
  out << "unique_continuation=" << yes_no(holds) << '\n';
  out << "ini_length=" << ini_length << '\n';
  out << "future_length=" << future_length << '\n';
  out << "lag=" << report.lag << '\n';
  return holds ? kSuccess : kNegative;
}

// hankel --------------------------------------------------------------------

struct HankelArgs {
  std::string file;
  Index depth = 1;
  std::string signal = "u";
};

int cmd_hankel(const HankelArgs& a, std::ostream& out) {
  const Trajectory traj = require_trajectory(a.file, "trajectory");
  Matrix w;
  if (a.signal == "u") {
    w = traj.u();
  } else if (a.signal == "y") {
    w = traj.y();
  } else {
    w.resize(traj.input_width() + traj.output_width(), traj.length());
    w << traj.u(), traj.y();
  }
  const HankelBlock h = hankel(w, a.depth);
  out << "# depth=" << h.depth() << " signal_width=" << h.signal_width()
      << " rows=" << h.data().rows() << " cols=" << h.columns() << '\n';
  io::write_matrix(out, h.data());
  return kSuccess;
}

// reproduce -----------------------------------------------------------------

Matrix scalar_row(std::initializer_list<double> values) {
  Matrix r(1, static_cast<Index>(values.size()));
  Index j = 0;
  for (double v : values) r(0, j++) = v;
  return r;
}

Trajectory integrator_data() {
  return Trajectory(scalar_row({1, -1, 1}), scalar_row({0, 1, 0}));
}

Trajectory integrator_ini() { return Trajectory(scalar_row({-2}), scalar_row({1})); }

bool report_check(std::ostream& out, const std::string& label, bool ok) {
  out << (ok ? "PASS " : "FAIL ") << label << '\n';
  return ok;
}

bool reproduce_ex1(std::ostream& out) {
  PredictionProblem problem{integrator_data(), integrator_ini(), scalar_row({2, -2}), 1};
  const Matrix expected = scalar_row({-1, 1});
  const PredictionOutcome woven = predict_and_weave(problem);
  out << "expected y_f=" << join(expected) << '\n';
  out << "computed y_f=" << (woven.has_prediction() ? join(*woven.future_outputs) : "null")
      << '\n';
  bool ok = report_check(out, "predict_and_weave matches",
                         woven.has_prediction() &&
                             max_abs_diff(*woven.future_outputs, expected) <= 1e-9);

  const std::array<double, 6> rs{-2, -1, 0, 0.5, 1, 3};
  std::vector<StateSpace> family;
  for (double r : rs) family.push_back(ver::integrator_family(r));
  const ver::FamilyAgreement agreement =
      ver::family_agreement_check(family, problem.ini, problem.future_inputs, 1e-8);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    out << "explaining system r=" << format_number(rs[i])
        << " y_f=" << join(agreement.outputs[i]) << '\n';
  }
  ok &= report_check(out, "all explaining systems agree",
                     agreement.agree && max_abs_diff(agreement.outputs.front(), expected) <= 1e-8);
  return ok;
}

bool reproduce_ex2(std::ostream& out) {
  Matrix a(2, 2);
  a << 0, 1, 1, 0;
  Matrix b(2, 1);
  b << 1, 1;
  const StateSpace sys(a, b, scalar_row({0, 1}), Matrix::Zero(1, 1));
  const LagReport lr = lag(sys);

  PredictionProblem at_bound{Trajectory(Matrix::Zero(1, 2), Matrix::Zero(1, 2)),
                             Trajectory(Matrix::Zero(1, 1), Matrix::Zero(1, 1)),
                             Matrix::Zero(1, 1), 1};
  const PredictionOutcome outcome = predict(at_bound);
  PredictionProblem with_model_bound = at_bound;
  with_model_bound.lag_bound = 2;
  const InformativityReport report = check_informativity_conditions(with_model_bound, outcome);

  out << "lag=" << lr.lag << " observability_ranks=" << join(lr.observability_ranks) << '\n';
  if (!report.ini_covers_lag_bound) {
    out << "condition (i) fails: T_ini=" << report.ini_length << " < lag=" << lr.lag << '\n';
  }
  out << "predict(lag bound 1) y_f="
      << (outcome.has_prediction() ? join(*outcome.future_outputs) : "null") << '\n';
  out << "verdict: " << report.verdict() << '\n';

  Vector x_a(2), x_b(2);
  x_a << 0, 0;
  x_b << 1, 0;
  const Matrix u = Matrix::Zero(1, 2);
  const Matrix y_a = simulate(sys, x_a, u);
  const Matrix y_b = simulate(sys, x_b, u);
  out << "x(0)=(0,0) -> y=" << join(y_a) << "; x(0)=(1,0) -> y=" << join(y_b) << '\n';

  bool ok = report_check(out, "lag is 2", lr.lag == 2);
  ok &= report_check(out, "condition (i) reported failing", !report.ini_covers_lag_bound);
  ok &= report_check(out, "same initial output, different future output",
                     y_a(0, 0) == y_b(0, 0) && y_a(0, 1) != y_b(0, 1));
  ok &= report_check(out, "kernel oracle rejects T_ini=1",
                     !ver::kernel_uniqueness_oracle(sys, 1, 1));
  return ok;
}

bool reproduce_ex3(std::ostream& out) {
  constexpr Index kHorizon = 6;
  Matrix u_f(1, kHorizon);
  Matrix expected(1, kHorizon);
  for (Index t = 0; t < kHorizon; ++t) {
    u_f(0, t) = t % 2 == 0 ? 2.0 : -2.0;
    expected(0, t) = t % 2 == 0 ? -1.0 : 1.0;
  }
  const PredictionProblem problem{integrator_data(), integrator_ini(), u_f, 1};
  const PredictionOutcome woven = predict_and_weave(problem);
  const PredictionOutcome direct = predict(problem);
  out << "u_f=" << join(u_f) << '\n';
  out << "expected y_f=" << join(expected) << '\n';
  out << "computed y_f=" << (woven.has_prediction() ? join(*woven.future_outputs) : "null")
      << '\n';
  out << "direct predict (depth " << problem.lag_bound + kHorizon
      << "): " << (direct.has_prediction() ? "returned a prediction" : "null") << '\n';
  bool ok = report_check(out, "woven prediction alternates",
                         woven.has_prediction() &&
                             max_abs_diff(*woven.future_outputs, expected) <= 1e-9);
  ok &= report_check(out, "direct prediction is null", !direct.has_prediction());
  return ok;
}

bool reproduce_sec5(std::ostream& out, std::uint64_t seed) {
  constexpr Index kLag = 2;
  constexpr Index kHorizon = 20;
  const StateSpace sys = ver::demo_system();
  const Trajectory data = ver::generate_demo_data(seed);
  const Trajectory ini = ver::demo_initial_trajectory();
  std::mt19937_64 rng(seed);

  out << "seed=" << seed << '\n';
  out << "data u1=" << join(data.u().row(0)) << '\n';
  out << "data u2=" << join(data.u().row(1)) << '\n';
  out << "data y=" << join(data.y()) << '\n';
  out << "persistently_exciting_order_" << kLag + 1 + sys.states() << '='
      << yes_no(is_persistently_exciting(data.u(), kLag + 1 + sys.states())) << '\n';

  const Matrix good_inputs = ver::feasible_future_inputs(sys, data, ini, kLag, kHorizon, rng);
  bool ok = report_check(out, "constructed a feasible 20-step input", good_inputs.cols() == kHorizon);
  if (good_inputs.cols() == kHorizon) {
    const PredictionOutcome woven = predict_and_weave({data, ini, good_inputs, kLag});
    const Matrix truth = ver::continue_from(sys, ini, good_inputs);
    if (woven.has_prediction()) {
      const double dev = relative_deviation(*woven.future_outputs, truth);
      out << "informative input: max relative deviation from true response="
          << format_number(dev) << '\n';
      ok &= report_check(out, "prediction matches true response", dev <= kMatchTol);
    } else {
      ok &= report_check(out, "prediction produced for the constructed input", false);
    }
  }

  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix random_inputs(sys.inputs(), kHorizon);
  for (Index t = 0; t < kHorizon; ++t) {
    for (Index i = 0; i < sys.inputs(); ++i) random_inputs(i, t) = unit(rng);
  }
  const PredictionOutcome failed = predict_and_weave({data, ini, random_inputs, kLag});
  out << "random input: predict_and_weave "
      << (failed.has_prediction() ? "returned a prediction" : "returned null");
  if (const std::optional<Index> step = failed.failing_step()) out << " at step " << *step;
  out << '\n';
  ok &= report_check(out, "random input is not certified", !failed.has_prediction());

  const Matrix truth = ver::continue_from(sys, ini, random_inputs);
  const Matrix explained = ver::simulate_recursion(ver::demo_explaining_recursion(), ini,
                                                   random_inputs);
  const double divergence = max_abs_diff(truth, explained);
  out << "explaining recursion vs true system: max difference=" << format_number(divergence)
      << '\n';
  ok &= report_check(out, "explaining recursion diverges", divergence > 10 * kMatchTol);
  return ok;
}

struct ReproduceArgs {
  std::string example;
  std::uint64_t seed = 0;
};

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out) {
  bool ok = false;
  if (a.example == "ex1") {
    ok = reproduce_ex1(out);
  } else if (a.example == "ex2") {
    ok = reproduce_ex2(out);
  } else if (a.example == "ex3") {
    ok = reproduce_ex3(out);
  } else if (a.example == "sec5") {
    ok = reproduce_sec5(out, a.seed);
  } else {
    throw UsageError("unknown example '" + a.example + "' (expected ex1, ex2, ex3 or sec5)");
  }
  out << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kSuccess : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Data-driven prediction of LTI system outputs from Hankel matrices",
               "hankelcast"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Simulate a state-space system");
  simulate_cmd->add_option("system", sim.system_file, "System file (JSON)")->required();
  simulate_cmd->add_option("input", sim.input_file, "Input trajectory (CSV)")->required();
  simulate_cmd->add_option("--x0", sim.x0, "Initial state, comma-separated");

  PredictArgs pred;
  CLI::App* predict_cmd = app.add_subcommand("predict", "Predict future outputs from data");
  predict_cmd->add_option("data", pred.data_file, "Data trajectory (CSV)")->required();
  predict_cmd->add_option("ini", pred.ini_file, "Initial trajectory (CSV)")->required();
  predict_cmd->add_option("future", pred.future_file, "Future inputs (CSV)")->required();
  predict_cmd->add_option("--lag", pred.lag, "Upper bound on the lag")
      ->required()
      ->check(CLI::NonNegativeNumber);
  predict_cmd->add_flag("--weave", pred.weave, "Predict one step at a time and weave");
  add_tolerance_flags(predict_cmd, pred.tol, true);

  CheckArgs chk;
  CLI::App* check_cmd = app.add_subcommand("check", "Check lag, uniqueness or excitation");
  check_cmd->add_option("file", chk.file, "System file (JSON) or data trajectory (CSV)")
      ->required();
  check_cmd->add_flag("--lag", chk.lag, "Report the lag of a system");
  check_cmd->add_option("--pe-order", chk.pe_order, "Persistency of excitation order")
      ->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--unique-continuation", chk.unique_continuation,
                        "T_ini T_f: does every initial trajectory continue uniquely?")
      ->expected(2)
      ->check(CLI::NonNegativeNumber);
  add_tolerance_flags(check_cmd, chk.tol, false);

  HankelArgs hk;
  CLI::App* hankel_cmd = app.add_subcommand("hankel", "Print a depth-k Hankel matrix as CSV");
  hankel_cmd->add_option("file", hk.file, "Trajectory (CSV)")->required();
  hankel_cmd->add_option("--depth", hk.depth, "Hankel depth")->required()->check(
      CLI::NonNegativeNumber);
  hankel_cmd->add_option("--signal", hk.signal, "u, y, or w (stacked u and y)")
      ->check(CLI::IsMember({"u", "y", "w"}));

  ReproduceArgs rep;
  CLI::App* reproduce_cmd = app.add_subcommand("reproduce", "Run a worked example end to end");
  reproduce_cmd->add_option("example", rep.example, "ex1, ex2, ex3 or sec5")->required();
  reproduce_cmd->add_option("--seed", rep.seed, "Seed for regenerated data");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("hankelcast");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const std::vector<CLI::App*> chosen = app.get_subcommands();
    out << (chosen.empty() ? app.help() : chosen.back()->help());
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "hankelcast: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(sim, out);
    if (predict_cmd->parsed()) return cmd_predict(pred, out);
    if (check_cmd->parsed()) return cmd_check(chk, out);
    if (hankel_cmd->parsed()) return cmd_hankel(hk, out);
    if (reproduce_cmd->parsed()) return cmd_reproduce(rep, out);
  } catch (const UsageError& e) {
    err << "hankelcast: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "hankelcast: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "hankelcast: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace hankelcast::cli
