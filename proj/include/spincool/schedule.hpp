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

#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "spincool/cooling_gates.hpp"
#include "spincool/noise.hpp"
#include "spincool/population_state.hpp"

namespace spincool {

// ---------------------------------------------------------------------------
// Schedule: the circuit structure, one round repeated `rounds` times with an
// optional first-round-only prologue handled by the builder below.

struct StepRefresh {
  int reset_index;
};
struct StepSwap {
  int i, j;
};
struct StepCompress3 {
  int target, a, b;
};
struct StepPpaSort {};

using Step = std::variant<StepRefresh, StepSwap, StepCompress3, StepPpaSort>;

inline std::string step_label(const Step& step) {
  struct Label {
    std::string operator()(const StepRefresh& s) const {
      return "refresh(" + std::to_string(s.reset_index) + ")";
    }
    std::string operator()(const StepSwap& s) const {
      return "swap(" + std::to_string(s.i) + "," + std::to_string(s.j) + ")";
    }
    std::string operator()(const StepCompress3& s) const {
      return "compress3(" + std::to_string(s.target) + "," + std::to_string(s.a) + "," +
             std::to_string(s.b) + ")";
    }
    std::string operator()(const StepPpaSort&) const { return "ppa_sort"; }
  };
  return std::visit(Label{}, step);
}

struct Schedule {
  std::vector<Step> first_round;  // used for round 1; empty means "same as round"
  std::vector<Step> round;        // repeated every round
  int rounds = 0;

  void validate(int n_qubits) const {
    if (rounds < 0) throw DomainError("schedule rounds must be >= 0");
    auto check = [n_qubits](const Step& step) {
      struct Checker {
        int n;
        void operator()(const StepRefresh& s) const {
          if (s.reset_index < 0 || s.reset_index >= n) {
            throw DomainError("schedule: refresh index out of range");
          }
        }
        void operator()(const StepSwap& s) const {
          if (s.i < 0 || s.i >= n || s.j < 0 || s.j >= n || s.i == s.j) {
            throw DomainError("schedule: bad swap indices");
          }
        }
        void operator()(const StepCompress3& s) const {
          for (int q : {s.target, s.a, s.b}) {
            if (q < 0 || q >= n) throw DomainError("schedule: compress3 index out of range");
          }
          if (s.target == s.a || s.target == s.b || s.a == s.b) {
            throw DomainError("schedule: compress3 indices must be distinct");
          }
        }
        void operator()(const StepPpaSort&) const {}
      };
      std::visit(Checker{n_qubits}, step);
    };
    for (const Step& s : first_round) check(s);
    for (const Step& s : round) check(s);
  }
};

/// The three-qubit experiment circuit. Qubit map: target C2 = qubit 0,
/// C1 = qubit 1, reset Cm = qubit 2. Round 1 loads bath polarization onto
/// all three spins (two swap passes); later rounds re-polarize only C1 and
/// Cm before compressing again.
inline Schedule paper_circuit(int rounds) {
  Schedule s;
  s.first_round = {StepRefresh{2}, StepSwap{2, 1},      StepRefresh{2}, StepSwap{2, 0},
                   StepRefresh{2}, StepCompress3{0, 1, 2}};
  s.round = {StepRefresh{2}, StepSwap{2, 1}, StepRefresh{2}, StepCompress3{0, 1, 2}};
  s.rounds = rounds;
  return s;
}

inline Schedule ppa_schedule(int n_qubits, int rounds) {
  Schedule s;
  s.round = {StepRefresh{n_qubits - 1}, StepPpaSort{}};
  s.rounds = rounds;
  return s;
}

// ---------------------------------------------------------------------------
// Trajectory: one record per executed step, in execution order.

struct TrajectoryRecord {
  int round = 0;  // 1-based; 0 is the initial state
  std::string label;
  std::vector<double> biases;           // absolute polarizations
  std::vector<double> biases_over_bath; // relative to the first-refresh unit
  double entropy_bits = 0.0;
  double bath_bias = 0.0;  // bath bias after this step's bookkeeping
};

struct Trajectory {
  int n_qubits = 0;
  double reference_bias = 0.0;  // efficiency * epsilon0, the first-refresh unit
  std::vector<TrajectoryRecord> records;
  PopulationState final_state = uniform_state(1);

  /// target-qubit bias over bath after each compression-type step
  std::vector<double> target_over_bath_per_compression(int target = 0) const {
    std::vector<double> out;
    for (const TrajectoryRecord& r : records) {
      if (r.round >= 1 &&
          (r.label.rfind("compress3", 0) == 0 || r.label == "ppa_sort")) {
        out.push_back(r.biases_over_bath[static_cast<std::size_t>(target)]);
      }
    }
    return out;
  }
};

namespace detail {

class ScheduleRunner {
 public:
  ScheduleRunner(const PopulationState& initial, const BathModel& bath, const NoiseModel& noise)
      : state_(initial), bath_(bath), noise_(noise) {
    bath_.validate();
    noise_.validate();
    trajectory_.n_qubits = initial.n_qubits();
    trajectory_.reference_bias = bath_.efficiency * bath_.epsilon0;
    record(0, "initial");
  }

  void run_round(const std::vector<Step>& steps, int round) {
    for (const Step& step : steps) apply(step, round);
  }

  Trajectory finish() && {
    trajectory_.final_state = std::move(state_);
    return std::move(trajectory_);
  }

  const PopulationState& state() const { return state_; }

 private:
  void apply(const Step& step, int round) {
    struct Apply {
      ScheduleRunner& r;
      void operator()(const StepRefresh& s) {
        const double bias = bath_bias_at(r.bath_, r.refresh_count_, r.elapsed_s_);
        r.state_ = refresh(r.state_, s.reset_index, bias, r.bath_.efficiency);
        r.refresh_count_ += 1;
        r.elapsed_s_ += r.noise_.durations.refresh_s;
        r.maybe_depolarize(r.noise_.noisy_refresh);
      }
      void operator()(const StepSwap& s) {
        r.state_ = swap_qubits(r.state_, s.i, s.j);
        r.elapsed_s_ += r.noise_.durations.swap_s;
        r.maybe_depolarize(r.noise_.noisy_swap);
      }
      void operator()(const StepCompress3& s) {
        r.state_ = compress3(r.state_, s.target, s.a, s.b);
        r.elapsed_s_ += r.noise_.durations.compress_s;
        r.maybe_depolarize(r.noise_.noisy_compress);
      }
      void operator()(const StepPpaSort&) {
        r.state_ = ppa_sort(r.state_);
        r.elapsed_s_ += r.noise_.durations.ppa_sort_s;
        r.maybe_depolarize(r.noise_.noisy_ppa_sort);
      }
    };
    std::visit(Apply{*this}, step);
    record(round, step_label(step));
  }

  void maybe_depolarize(bool noisy) {
    if (!noisy || noise_.depolarizing_per_gate <= 0.0) return;
    state_ = noise_.scope == DepolarizingScope::kGlobal
                 ? apply_depolarizing(state_, noise_.depolarizing_per_gate)
                 : apply_depolarizing_per_qubit(state_, noise_.depolarizing_per_gate);
  }

  void record(int round, const std::string& label) {
    TrajectoryRecord rec;
    rec.round = round;
    rec.label = label;
    rec.biases = all_biases(state_).values();
    rec.biases_over_bath.resize(rec.biases.size());
    const double ref = trajectory_.reference_bias;
    for (std::size_t i = 0; i < rec.biases.size(); ++i) {
      rec.biases_over_bath[i] = ref > 0.0 ? rec.biases[i] / ref : 0.0;
      if (!std::isfinite(rec.biases_over_bath[i]) || !std::isfinite(rec.biases[i])) {
        throw NumericalError("non-finite bias in trajectory at step " + label);
      }
    }
    rec.entropy_bits = shannon_entropy(state_);
    rec.bath_bias = bath_bias_at(bath_, refresh_count_, elapsed_s_);
    trajectory_.records.push_back(std::move(rec));
  }

  PopulationState state_;
  BathModel bath_;
  NoiseModel noise_;
  Trajectory trajectory_;
  long refresh_count_ = 0;
  double elapsed_s_ = 0.0;
};

}  // namespace detail

/// Execute a schedule from `initial`, applying bath drift and per-gate
/// depolarizing as configured. Fully deterministic.
inline Trajectory run_schedule(const PopulationState& initial, const Schedule& schedule,
                               const BathModel& bath, const NoiseModel& noise) {
  schedule.validate(initial.n_qubits());
  detail::ScheduleRunner runner(initial, bath, noise);
  for (int round = 1; round <= schedule.rounds; ++round) {
    const bool use_first = round == 1 && !schedule.first_round.empty();
    runner.run_round(use_first ? schedule.first_round : schedule.round, round);
  }
  return std::move(runner).finish();
}

/// Alternating refresh (reset qubit n-1) and descending sort, from the
/// uniform state.
inline Trajectory run_ppa(int n_qubits, const BathModel& bath, const NoiseModel& noise,
                          int rounds) {
  if (n_qubits < 2) throw DomainError("run_ppa needs n >= 2");
  return run_schedule(uniform_state(n_qubits), ppa_schedule(n_qubits, rounds), bath, noise);
}

/// Iterate PPA rounds to the fixed point and return the qubit-0 bias there.
///
/// Convergence is judged on the full population vector (L-inf change per
/// round < tol), not on the qubit-0 bias alone: during the transient the
/// bias is exactly constant for two rounds at a time while the underlying
/// state still moves, so a bias-only test would stop early on a plateau.
inline double steady_state_bias(int n_qubits, const BathModel& bath, const NoiseModel& noise,
                                double tol = 1e-10, long max_rounds = 100000,
                                long* rounds_used = nullptr) {
  if (!(tol > 0.0)) throw DomainError("steady_state_bias: tol must be > 0");
  if (max_rounds < 1) throw DomainError("steady_state_bias: max_rounds must be >= 1");
  if (n_qubits < 2) throw DomainError("steady_state_bias needs n >= 2");
  bath.validate();
  noise.validate();

  PopulationState state = uniform_state(n_qubits);
  const int reset = n_qubits - 1;
  long refresh_count = 0;
  double elapsed_s = 0.0;
  double prev_bias = qubit_bias(state, 0);
  double last_bias = prev_bias;

  for (long round = 1; round <= max_rounds; ++round) {
    const std::vector<double> before = state.probs();
    state = refresh(state, reset, bath_bias_at(bath, refresh_count, elapsed_s), bath.efficiency);
    refresh_count += 1;
    elapsed_s += noise.durations.refresh_s;
    if (noise.noisy_refresh && noise.depolarizing_per_gate > 0.0) {
      state = noise.scope == DepolarizingScope::kGlobal
                  ? apply_depolarizing(state, noise.depolarizing_per_gate)
                  : apply_depolarizing_per_qubit(state, noise.depolarizing_per_gate);
    }
    state = ppa_sort(state);
    elapsed_s += noise.durations.ppa_sort_s;
    if (noise.noisy_ppa_sort && noise.depolarizing_per_gate > 0.0) {
      state = noise.scope == DepolarizingScope::kGlobal
                  ? apply_depolarizing(state, noise.depolarizing_per_gate)
                  : apply_depolarizing_per_qubit(state, noise.depolarizing_per_gate);
    }

    const double bias = qubit_bias(state, 0);
    if (!std::isfinite(bias)) throw NumericalError("steady_state_bias: non-finite bias");
    prev_bias = last_bias;
    last_bias = bias;
    double delta = 0.0;
    for (std::size_t k = 0; k < before.size(); ++k) {
      delta = std::max(delta, std::abs(state.prob(k) - before[k]));
    }
    if (delta < tol) {
      if (rounds_used != nullptr) *rounds_used = round;
      return bias;
    }
  }
  throw ConvergenceError("steady_state_bias: no fixed point within " +
                             std::to_string(max_rounds) + " rounds (last biases " +
                             std::to_string(prev_bias) + ", " + std::to_string(last_bias) + ")",
                         prev_bias, last_bias);
}

}  // namespace spincool
