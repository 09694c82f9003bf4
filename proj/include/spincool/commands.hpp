/* Copyright 2026 The Spincool Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#pragma once

#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "spincool/config.hpp"
#include "spincool/control_pulse.hpp"
#include "spincool/grape.hpp"
#include "spincool/schedule.hpp"
#include "spincool/text_io.hpp"

namespace spincool {

// Exit code contract: 0 success, 1 invalid configuration or input file,
// 2 numerical failure or non-convergence, 3 pulse target fidelity missed
// (results still written).
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 1;
inline constexpr int kExitNumericalFailure = 2;
inline constexpr int kExitTargetMissed = 3;

namespace detail {

inline void ensure_output_dir(const OutputSpec& output) {
  if (output.directory.empty() || output.directory == ".") return;
  std::error_code ec;
  std::filesystem::create_directories(output.directory, ec);
  if (ec) throw DomainError("cannot create output directory: " + output.directory);
}

inline std::string trajectory_csv_text(const Trajectory& traj,
                                       const std::vector<std::string>& labels) {
  CsvWriter csv({"round", "step_label", "qubit", "bias_over_bath", "bias_absolute",
                 "entropy_bits", "bath_bias"});
  for (const TrajectoryRecord& rec : traj.records) {
    for (int q = 0; q < traj.n_qubits; ++q) {
      csv.row()
          .cell(rec.round)
          .cell(rec.label)
          .cell(labels[static_cast<std::size_t>(q)])
          .cell(rec.biases_over_bath[static_cast<std::size_t>(q)])
          .cell(rec.biases[static_cast<std::size_t>(q)])
          .cell(rec.entropy_bits)
          .cell(rec.bath_bias);
    }
  }
  return csv.str();
}

}  // namespace detail

/// cool run: execute the configured schedule from the uniform state and
/// write the trajectory CSV plus a summary JSON.
inline int cmd_cool_run(const RunConfig& config) {
  detail::ensure_output_dir(config.output);
  const Schedule schedule = config.build_schedule();
  const Trajectory traj =
      run_schedule(uniform_state(config.n_qubits), schedule, config.bath, config.noise);
  const std::vector<std::string> labels = config.resolved_labels();

  write_text_file(config.output.path(config.output.trajectory_csv),
                  detail::trajectory_csv_text(traj, labels));

  const TrajectoryRecord& last = traj.records.back();
  const std::vector<double> compressions = traj.target_over_bath_per_compression(0);
  const double target_over_bath = last.biases_over_bath[0];

  JsonObjectWriter summary;
  summary.field("schedule_type", config.schedule_type);
  summary.field("rounds", config.rounds);
  summary.field("n_qubits", config.n_qubits);
  summary.field("epsilon0", config.bath.epsilon0);
  summary.field("reference_bias", traj.reference_bias);
  summary.field("target_label", labels[0]);
  summary.field("final_biases", last.biases);
  summary.field("final_biases_over_bath", last.biases_over_bath);
  summary.field("target_bias_over_bath_per_compression", compressions);
  summary.field("shannon_bound_exceeded", target_over_bath > 1.5);
  summary.field("final_entropy_bits", last.entropy_bits);
  summary.field("final_bath_bias", last.bath_bias);
  summary.field("noise_convention", config.noise.convention());
  summary.field("depolarizing_per_gate", config.noise.depolarizing_per_gate);
  write_text_file(config.output.path(config.output.summary_json), summary.str());
  return kExitOk;
}

/// cool steady: iterate PPA rounds to the fixed point.
inline int cmd_cool_steady(const RunConfig& config) {
  detail::ensure_output_dir(config.output);
  long rounds_used = 0;
  const double bias = steady_state_bias(config.n_qubits, config.bath, config.noise,
                                        config.steady_tol, config.steady_max_rounds, &rounds_used);
  const double ref = config.bath.efficiency * config.bath.epsilon0;

  JsonObjectWriter out;
  out.field("n_qubits", config.n_qubits);
  out.field("epsilon0", config.bath.epsilon0);
  out.field("efficiency", config.bath.efficiency);
  out.field("steady_bias", bias);
  out.field("steady_bias_over_bath", ref > 0.0 ? bias / ref : 0.0);
  out.field("rounds_used", rounds_used);
  out.field("tol", config.steady_tol);
  out.field("depolarizing_per_gate", config.noise.depolarizing_per_gate);
  out.field("noise_convention", config.noise.convention());
  write_text_file(config.output.path(config.output.steady_json), out.str());
  std::cout << "steady bias " << format_g12(bias) << " after " << rounds_used << " rounds ["
            << config.noise.convention() << "]\n";
  return kExitOk;
}

/// cool sweep: steady-state bias over the (n, epsilon0, depolarizing) grid.
inline int cmd_cool_sweep(const RunConfig& config) {
  detail::ensure_output_dir(config.output);
  CsvWriter csv({"n_qubits", "epsilon0", "depolarizing_per_gate", "steady_bias",
                 "steady_bias_over_bath", "rounds_used"});
  for (int n : config.sweep.n_qubits) {
    for (double eps : config.sweep.epsilon0) {
      for (double p : config.sweep.depolarizing_per_gate) {
        BathModel bath = config.bath;
        bath.epsilon0 = eps;
        NoiseModel noise = config.noise;
        noise.depolarizing_per_gate = p;
        long rounds_used = 0;
        const double bias = steady_state_bias(n, bath, noise, config.steady_tol,
                                              config.steady_max_rounds, &rounds_used);
        const double ref = bath.efficiency * eps;
        csv.row()
            .cell(n)
            .cell(eps)
            .cell(p)
            .cell(bias)
            .cell(ref > 0.0 ? bias / ref : 0.0)
            .cell(rounds_used);
      }
    }
  }
  write_text_file(config.output.path(config.output.sweep_csv), csv.str());
  return kExitOk;
}

/// pulse grape: synthesize a control pulse for the configured goal gate.
inline int cmd_pulse_grape(const RunConfig& config) {
  detail::ensure_output_dir(config.output);
  const Matrix goal = config.goal.build(config.hamiltonian.n_spins);
  const GrapeResult result =
      grape_optimize(config.hamiltonian, goal, config.ensemble, config.grape);

  write_pulse_file(config.output.path(config.output.pulse_file), result.pulse);
  CsvWriter history({"iteration", "objective", "robust_fidelity", "step_size"});
  for (const GrapeIterationRecord& rec : result.history) {
    history.row().cell(rec.iteration).cell(rec.objective).cell(rec.robust_fidelity).cell(
        rec.step_size);
  }
  write_text_file(config.output.path(config.output.history_csv), history.str());

  std::cout << "grape " << to_string(result.termination) << " after " << result.iterations
            << " iterations: robust_fidelity " << format_g12(result.robust_fidelity)
            << ", worst_grid_fidelity " << format_g12(result.worst_grid_fidelity) << "\n";
  return result.robust_fidelity >= config.grape.target_fidelity ? kExitOk : kExitTargetMissed;
}

/// pulse verify: fidelity report for an existing pulse file.
inline int cmd_pulse_verify(const RunConfig& config, const std::string& pulse_path_override = "") {
  detail::ensure_output_dir(config.output);
  const std::string pulse_path = pulse_path_override.empty()
                                     ? config.output.path(config.output.pulse_file)
                                     : pulse_path_override;
  const ControlPulse pulse = read_pulse_file(pulse_path);
  const Matrix goal = config.goal.build(config.hamiltonian.n_spins);

  JsonObjectWriter out;
  out.field("pointwise_fidelity",
            gate_fidelity(goal, propagate(config.hamiltonian, pulse, 1.0, 0.0)));
  out.field("robust_fidelity", robust_fidelity(config.hamiltonian, pulse, goal, config.ensemble));
  out.field("worst_grid_fidelity",
            worst_grid_fidelity(config.hamiltonian, pulse, goal, config.ensemble));
  const std::string text = out.str();
  write_text_file(config.output.path(config.output.verify_json), text);
  std::cout << text;
  return kExitOk;
}

/// Run a command body and map exceptions onto the documented exit codes.
inline int execute_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

}  // namespace spincool
