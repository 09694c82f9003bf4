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

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "spincool/population_state.hpp"

namespace spincool {

/// Descending stable sort of the populations. This is the optimal
/// entropy-preserving permutation for concentrating polarization on qubit 0
/// under the MSB index convention; ties keep their original index order so
/// the result is deterministic.
inline PopulationState ppa_sort(const PopulationState& state) {
  state.check_valid();
  std::vector<double> sorted = state.probs();
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());
  return PopulationState(state.n_qubits(), std::move(sorted));
}

/// Exchange bits i and j of every basis index (relabels the two qubits).
inline PopulationState swap_qubits(const PopulationState& state, int i, int j) {
  state.check_valid();
  const int n = state.n_qubits();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw DomainError("swap_qubits: index out of range");
  }
  if (i == j) throw DomainError("swap_qubits: indices must differ");
  const std::size_t mask_i = std::size_t{1} << (n - 1 - i);
  const std::size_t mask_j = std::size_t{1} << (n - 1 - j);
  std::vector<double> out(state.dim());
  for (std::size_t k = 0; k < state.dim(); ++k) {
    const std::size_t bi = (k & mask_i) ? 1 : 0;
    const std::size_t bj = (k & mask_j) ? 1 : 0;
    std::size_t k2 = k & ~mask_i & ~mask_j;
    if (bj) k2 |= mask_i;
    if (bi) k2 |= mask_j;
    out[k2] = state.prob(k);
  }
  return PopulationState(n, std::move(out));
}

/// Three-bit compression: the diagonal permutation that, restricted to the
/// bit pattern (target, a, b), transposes 011 <-> 100 and fixes everything
/// else. Applied to three equally polarized qubits it boosts the target
/// polarization from eps to (3 eps - eps^3)/2.
inline PopulationState compress3(const PopulationState& state, int target, int a, int b) {
  state.check_valid();
  const int n = state.n_qubits();
  for (int q : {target, a, b}) {
    if (q < 0 || q >= n) throw DomainError("compress3: index out of range");
  }
  if (target == a || target == b || a == b) {
    throw DomainError("compress3: indices must be distinct");
  }
  const std::size_t mask_t = std::size_t{1} << (n - 1 - target);
  const std::size_t mask_a = std::size_t{1} << (n - 1 - a);
  const std::size_t mask_b = std::size_t{1} << (n - 1 - b);
  std::vector<double> out = state.probs();
  for (std::size_t k = 0; k < state.dim(); ++k) {
    // enumerate each 011/100 pair once, from its 011 side
    if (!(k & mask_t) && (k & mask_a) && (k & mask_b)) {
      const std::size_t partner = (k | mask_t) & ~mask_a & ~mask_b;
      out[k] = state.prob(partner);
      out[partner] = state.prob(k);
    }
  }
  return PopulationState(n, std::move(out));
}

/// Replace the reset qubit's marginal with a thermal state of bias
/// efficiency * bath_bias, leaving the joint distribution of all other
/// qubits untouched (partial trace and re-tensor).
inline PopulationState refresh(const PopulationState& state, int reset_index,
                               double bath_bias, double efficiency) {
  state.check_valid();
  const int n = state.n_qubits();
  if (reset_index < 0 || reset_index >= n) {
    throw DomainError("refresh: reset index out of range");
  }
  if (!(bath_bias >= -1.0 && bath_bias <= 1.0)) {
    throw DomainError("refresh: bath bias outside [-1, 1]");
  }
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw DomainError("refresh: efficiency outside [0, 1]");
  }
  const double beta = efficiency * bath_bias;
  const std::size_t mask = std::size_t{1} << (n - 1 - reset_index);
  std::vector<double> out(state.dim());
  for (std::size_t k = 0; k < state.dim(); ++k) {
    if (!(k & mask)) {
      const double m = state.prob(k) + state.prob(k | mask);
      out[k] = m * (1.0 + beta) / 2.0;
      out[k | mask] = m * (1.0 - beta) / 2.0;
    }
  }
  return PopulationState(n, std::move(out));
}

/// Best qubit-0 bias reachable from `state` by any diagonal permutation,
/// i.e. the closed-system cooling optimum. Equals qubit_bias after ppa_sort.
inline double unitary_cooling_limit(const PopulationState& state) {
  return qubit_bias(ppa_sort(state), 0);
}

}  // namespace spincool
