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

#include "spincool/spin_system.hpp"

namespace spincool {

// Goal unitaries for pulse synthesis. All are basis permutations (plus X),
// indexed with spin 0 as the most significant bit, matching the population
// convention.

inline Matrix identity_gate(int n_spins) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_spins);
  return Matrix::Identity(d, d);
}

inline Matrix x_gate(int spin, int n_spins) {
  if (spin < 0 || spin >= n_spins) throw DomainError("x_gate: spin out of range");
  return embed_single(pauli_x(), spin, n_spins);
}

inline Matrix swap_gate(int i, int j, int n_spins) {
  if (i < 0 || i >= n_spins || j < 0 || j >= n_spins || i == j) {
    throw DomainError("swap_gate: bad spin indices");
  }
  const std::size_t dim = std::size_t{1} << n_spins;
  const std::size_t mask_i = std::size_t{1} << (n_spins - 1 - i);
  const std::size_t mask_j = std::size_t{1} << (n_spins - 1 - j);
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t k2 = k & ~mask_i & ~mask_j;
    if (k & mask_i) k2 |= mask_j;
    if (k & mask_j) k2 |= mask_i;
    u(static_cast<Eigen::Index>(k2), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return u;
}

/// Permutation matrix of the three-bit compression (011 <-> 100 on the
/// pattern (target, a, b)).
inline Matrix compress3_gate(int target, int a, int b, int n_spins) {
  for (int q : {target, a, b}) {
    if (q < 0 || q >= n_spins) throw DomainError("compress3_gate: spin out of range");
  }
  if (target == a || target == b || a == b) {
    throw DomainError("compress3_gate: spins must be distinct");
  }
  const std::size_t dim = std::size_t{1} << n_spins;
  const std::size_t mask_t = std::size_t{1} << (n_spins - 1 - target);
  const std::size_t mask_a = std::size_t{1} << (n_spins - 1 - a);
  const std::size_t mask_b = std::size_t{1} << (n_spins - 1 - b);
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    std::size_t k2 = k;
    if (!(k & mask_t) && (k & mask_a) && (k & mask_b)) {
      k2 = (k | mask_t) & ~mask_a & ~mask_b;
    } else if ((k & mask_t) && !(k & mask_a) && !(k & mask_b)) {
      k2 = (k & ~mask_t) | mask_a | mask_b;
    }
    u(static_cast<Eigen::Index>(k2), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return u;
}

}  // namespace spincool
