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
#include <string>

#include "spincool/population_state.hpp"

namespace spincool {

/// Wall-clock cost of each step kind, in seconds. Only matters when
/// rotating-frame bath relaxation is enabled.
struct GateDurations {
  double swap_s = 1.6e-3;
  double compress_s = 2.2e-3;
  double refresh_s = 35e-6;
  double ppa_sort_s = 2.2e-3;  // plays the compression role

  void validate() const {
    for (double d : {swap_s, compress_s, refresh_s, ppa_sort_s}) {
      if (!(d >= 0.0) || !std::isfinite(d)) {
        throw DomainError("gate duration must be finite and >= 0");
      }
    }
  }
};

/// Whole-register vs independent single-qubit depolarizing.
enum class DepolarizingScope { kGlobal, kPerQubit };

/// Per-gate depolarizing noise plus which step kinds it charges.
struct NoiseModel {
  double depolarizing_per_gate = 0.0;
  DepolarizingScope scope = DepolarizingScope::kGlobal;
  bool noisy_swap = true;
  bool noisy_compress = true;
  bool noisy_ppa_sort = true;
  bool noisy_refresh = false;
  GateDurations durations;

  void validate() const {
    if (!(depolarizing_per_gate >= 0.0 && depolarizing_per_gate <= 1.0)) {
      throw DomainError("depolarizing_per_gate outside [0, 1]");
    }
    durations.validate();
  }

  std::string convention() const {
    std::string kinds;
    if (noisy_swap) kinds += "swap,";
    if (noisy_compress) kinds += "compress,";
    if (noisy_ppa_sort) kinds += "ppa_sort,";
    if (noisy_refresh) kinds += "refresh,";
    if (!kinds.empty()) kinds.pop_back();
    return std::string(scope == DepolarizingScope::kGlobal ? "global" : "per-qubit") +
           " depolarizing applied once after each {" + kinds +
           "} step; other steps leave the register noiseless";
  }
};

/// Heat-bath parameters: its starting bias, finite-size heating per refresh,
/// optional rotating-frame relaxation, and the reset transfer efficiency.
struct BathModel {
  double epsilon0 = 0.01;
  double heating_per_refresh = 0.0;
  double t1rho_s = 0.0;  // <= 0 disables relaxation
  double efficiency = 1.0;

  bool t1rho_enabled() const { return t1rho_s > 0.0; }

  void validate() const {
    if (!(epsilon0 >= 0.0 && epsilon0 <= 1.0)) throw DomainError("epsilon0 outside [0, 1]");
    if (!(heating_per_refresh >= 0.0 && heating_per_refresh < 1.0)) {
      throw DomainError("heating_per_refresh outside [0, 1)");
    }
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) throw DomainError("efficiency outside [0, 1]");
    if (!std::isfinite(t1rho_s)) throw DomainError("t1rho must be finite");
  }
};

/// Bath bias after `refresh_count` refreshes and `elapsed_time` seconds:
/// epsilon0 (1-h)^count exp(-t / T1rho). Non-increasing in both arguments.
inline double bath_bias_at(const BathModel& bath, long refresh_count, double elapsed_time) {
  bath.validate();
  if (refresh_count < 0 || !(elapsed_time >= 0.0)) {
    throw DomainError("bath_bias_at: counts and time must be >= 0");
  }
  double bias = bath.epsilon0 * std::pow(1.0 - bath.heating_per_refresh,
                                         static_cast<double>(refresh_count));
  if (bath.t1rho_enabled()) bias *= std::exp(-elapsed_time / bath.t1rho_s);
  return bias;
}

/// Convex mixture with the uniform state: (1-p) state + p uniform. Every
/// single-qubit bias scales by exactly (1-p).
inline PopulationState apply_depolarizing(const PopulationState& state, double p) {
  state.check_valid();
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarizing probability outside [0, 1]");
  const double floor = p / static_cast<double>(state.dim());
  std::vector<double> out(state.dim());
  for (std::size_t k = 0; k < state.dim(); ++k) {
    out[k] = (1.0 - p) * state.prob(k) + floor;
  }
  return PopulationState(state.n_qubits(), std::move(out));
}

/// Independent single-qubit depolarizing on every qubit: for each qubit in
/// turn, mix with the state whose qubit-i marginal is replaced by uniform.
/// Marginal biases scale by (1-p) just like the global channel; correlations
/// decay faster.
inline PopulationState apply_depolarizing_per_qubit(const PopulationState& state, double p) {
  state.check_valid();
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("depolarizing probability outside [0, 1]");
  const int n = state.n_qubits();
  std::vector<double> probs = state.probs();
  for (int i = 0; i < n; ++i) {
    const std::size_t mask = std::size_t{1} << (n - 1 - i);
    for (std::size_t k = 0; k < probs.size(); ++k) {
      if (!(k & mask)) {
        const double m = (probs[k] + probs[k | mask]) / 2.0;
        probs[k] = (1.0 - p) * probs[k] + p * m;
        probs[k | mask] = (1.0 - p) * probs[k | mask] + p * m;
      }
    }
  }
  return PopulationState(n, std::move(probs));
}

}  // namespace spincool
