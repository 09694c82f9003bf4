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
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spincool/errors.hpp"

namespace spincool {

/// Single-qubit polarizations eps_i = P(qubit i = 0) - P(qubit i = 1),
/// each in [-1, 1].
class BiasVector {
 public:
  BiasVector() = default;

  explicit BiasVector(std::vector<double> biases) : values_(std::move(biases)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!(values_[i] >= -1.0 && values_[i] <= 1.0)) {
        throw DomainError("bias[" + std::to_string(i) + "] = " +
                          std::to_string(values_[i]) + " outside [-1, 1]");
      }
    }
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Probability distribution over the 2^n computational basis states of an
/// n-qubit register (the diagonal of the density matrix). Basis index is
/// read with qubit 0 as the most significant bit, so a descending sort of
/// the populations cools qubit 0.
///
/// Value semantics throughout: every operation returns a fresh state and
/// instances can be shared across threads freely.
class PopulationState {
 public:
  /// Dense storage is exact but exponential; refuse absurd sizes.
  static constexpr int kMaxQubits = 20;

  /// Normalization drift up to this much is repaired on construction;
  /// anything worse is treated as caller error.
  static constexpr double kConstructionSlack = 1e-9;

  /// Post-construction the probabilities sum to 1 within this tolerance,
  /// and every gate checks it on entry.
  static constexpr double kNormTolerance = 1e-12;

  PopulationState(int n_qubits, std::vector<double> probs)
      : n_qubits_(n_qubits), probs_(std::move(probs)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
      throw DomainError("n_qubits = " + std::to_string(n_qubits) +
                        " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (probs_.size() != (std::size_t{1} << n_qubits)) {
      throw DomainError("probability vector has " + std::to_string(probs_.size()) +
                        " entries, expected 2^" + std::to_string(n_qubits));
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < probs_.size(); ++k) {
      double p = probs_[k];
      if (!std::isfinite(p) || p < -kNormTolerance || p > 1.0 + kConstructionSlack) {
        throw DomainError("probs[" + std::to_string(k) + "] = " + std::to_string(p) +
                          " is not a probability");
      }
      if (p < 0.0) probs_[k] = 0.0;  // repair sub-tolerance negatives
      sum += probs_[k];
    }
    if (std::abs(sum - 1.0) > kConstructionSlack) {
      throw DomainError("probabilities sum to " + std::to_string(sum) +
                        ", not 1 (drift beyond repair slack)");
    }
    // repair drift only when the invariant is actually violated, so gate
    // outputs pass through bit-exact
    if (std::abs(sum - 1.0) > kNormTolerance) {
      for (double& p : probs_) p /= sum;
    }
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return probs_.size(); }
  double prob(std::size_t index) const { return probs_[index]; }
  const std::vector<double>& probs() const { return probs_; }

  /// Bit value of qubit i in basis index k (qubit 0 = MSB).
  int bit(std::size_t k, int i) const {
    return static_cast<int>((k >> (n_qubits_ - 1 - i)) & 1u);
  }

  /// Gates call this on entry so that normalization bugs surface instead of
  /// drifting silently.
  void check_valid() const {
    double sum = 0.0;
    for (double p : probs_) {
      if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
        throw NumericalError("population state holds a non-probability entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) {
      throw NumericalError("population state normalization drifted to " +
                           std::to_string(sum));
    }
  }

 private:
  int n_qubits_ = 0;
  std::vector<double> probs_;
};

/// Thermal product state: each qubit independently has P(0) = (1 + eps_i)/2.
inline PopulationState thermal_state(const BiasVector& biases) {
  const int n = static_cast<int>(biases.size());
  if (n < 1) throw DomainError("thermal_state needs at least one bias");
  std::vector<double> probs(std::size_t{1} << n, 1.0);
  for (std::size_t k = 0; k < probs.size(); ++k) {
    for (int i = 0; i < n; ++i) {
      const int b = static_cast<int>((k >> (n - 1 - i)) & 1u);
      probs[k] *= b == 0 ? (1.0 + biases[i]) / 2.0 : (1.0 - biases[i]) / 2.0;
    }
  }
  return PopulationState(n, std::move(probs));
}

/// Infinite-temperature register: all 2^n populations equal.
inline PopulationState uniform_state(int n_qubits) {
  if (n_qubits < 1) throw DomainError("uniform_state needs n >= 1");
  if (n_qubits > PopulationState::kMaxQubits) {
    throw DomainError("uniform_state: n beyond dense-storage cap");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  return PopulationState(n_qubits, std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
}

/// Marginal polarization of one qubit: P(bit i = 0) - P(bit i = 1).
inline double qubit_bias(const PopulationState& state, int i) {
  if (i < 0 || i >= state.n_qubits()) {
    throw DomainError("qubit index " + std::to_string(i) + " out of range");
  }
  double bias = 0.0;
  for (std::size_t k = 0; k < state.dim(); ++k) {
    bias += state.bit(k, i) == 0 ? state.prob(k) : -state.prob(k);
  }
  return bias;
}

inline BiasVector all_biases(const PopulationState& state) {
  std::vector<double> biases(state.n_qubits());
  for (int i = 0; i < state.n_qubits(); ++i) {
    double b = qubit_bias(state, i);
    // round-off guard: marginals of a valid state live in [-1, 1]
    if (b > 1.0) b = 1.0;
    if (b < -1.0) b = -1.0;
    biases[i] = b;
  }
  return BiasVector(std::move(biases));
}

/// Shannon entropy of the population distribution, in bits. 0 log 0 := 0.
inline double shannon_entropy(const PopulationState& state) {
  state.check_valid();
  double h = 0.0;
  for (double p : state.probs()) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

/// Joint distribution of all qubits except `without`, ordered by the basis
/// index with that qubit's bit removed.
inline std::vector<double> marginal_without(const PopulationState& state, int without) {
  if (without < 0 || without >= state.n_qubits()) {
    throw DomainError("marginal_without: qubit index out of range");
  }
  const int n = state.n_qubits();
  const std::size_t high = std::size_t{1} << without;           // values of bits above `without`
  const std::size_t low = std::size_t{1} << (n - 1 - without);  // values of bits below
  std::vector<double> marginal(state.dim() / 2, 0.0);
  for (std::size_t h = 0; h < high; ++h) {
    for (std::size_t l = 0; l < low; ++l) {
      const std::size_t base = (h << (n - without)) | l;
      marginal[(h << (n - 1 - without)) | l] = state.prob(base) + state.prob(base | low);
    }
  }
  return marginal;
}

}  // namespace spincool
