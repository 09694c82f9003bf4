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
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spincool/errors.hpp"

namespace spincool {

using Matrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// The one unit conversion in the spin-dynamics stack: a coupling or shift
/// quoted in kHz enters the Hamiltonian as pi * (1000 x) rad/s, i.e. the
/// frequency-times-pi convention with sigma_z eigenvalues +-1.
inline double angular_from_khz(double khz) { return kPi * 1e3 * khz; }

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}
inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// op acting on spin i of an n-spin register (spin 0 = most significant bit).
inline Matrix embed_single(const Matrix& op, int spin, int n_spins) {
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < n_spins; ++s) {
    out = kron(out, s == spin ? op : Matrix::Identity(2, 2));
  }
  return out;
}

inline Matrix embed_pair(const Matrix& op_i, int i, const Matrix& op_j, int j, int n_spins) {
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < n_spins; ++s) {
    if (s == i) {
      out = kron(out, op_i);
    } else if (s == j) {
      out = kron(out, op_j);
    } else {
      out = kron(out, Matrix::Identity(2, 2));
    }
  }
  return out;
}

/// Chemical shifts plus dipolar and J coupling constants, all in kHz.
/// Couplings are keyed by (i, j) with i < j.
struct SpinSystem {
  int n_spins = 0;
  std::vector<double> chemical_shifts_khz;
  std::map<std::pair<int, int>, double> dipolar_khz;
  std::map<std::pair<int, int>, double> j_khz;

  void validate() const {
    if (n_spins < 1) throw DomainError("spin system needs at least one spin");
    if (static_cast<int>(chemical_shifts_khz.size()) != n_spins) {
      throw DomainError("chemical shift count does not match n_spins");
    }
    for (double w : chemical_shifts_khz) {
      if (!std::isfinite(w)) throw DomainError("non-finite chemical shift");
    }
    auto check_couplings = [this](const std::map<std::pair<int, int>, double>& m,
                                  const char* kind) {
      for (const auto& [key, value] : m) {
        const auto [i, j] = key;
        if (i < 0 || j < 0 || i >= n_spins || j >= n_spins || i >= j) {
          throw DomainError(std::string(kind) + " coupling must be keyed by i < j in range");
        }
        if (!std::isfinite(value)) throw DomainError(std::string(kind) + " coupling not finite");
      }
    };
    check_couplings(dipolar_khz, "dipolar");
    check_couplings(j_khz, "J");
  }

  std::size_t dim() const { return std::size_t{1} << n_spins; }
};

/// Drift Hamiltonian in rad/s:
///   sum_i pi w_i Z_i
/// + sum_{i<j} (pi/2) D_ij (2 Z_i Z_j - X_i X_j - Y_i Y_j)
/// + sum_{i<j} (pi/2) J_ij (  Z_i Z_j + X_i X_j + Y_i Y_j)
inline Matrix build_drift(const SpinSystem& sys) {
  sys.validate();
  const int n = sys.n_spins;
  const auto d = static_cast<Eigen::Index>(sys.dim());
  Matrix h = Matrix::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    h += angular_from_khz(sys.chemical_shifts_khz[i]) * embed_single(pauli_z(), i, n);
  }
  for (const auto& [key, dij] : sys.dipolar_khz) {
    const auto [i, j] = key;
    const Matrix zz = embed_pair(pauli_z(), i, pauli_z(), j, n);
    const Matrix xx = embed_pair(pauli_x(), i, pauli_x(), j, n);
    const Matrix yy = embed_pair(pauli_y(), i, pauli_y(), j, n);
    h += (angular_from_khz(dij) / 2.0) * (2.0 * zz - xx - yy);
  }
  for (const auto& [key, jij] : sys.j_khz) {
    const auto [i, j] = key;
    const Matrix zz = embed_pair(pauli_z(), i, pauli_z(), j, n);
    const Matrix xx = embed_pair(pauli_x(), i, pauli_x(), j, n);
    const Matrix yy = embed_pair(pauli_y(), i, pauli_y(), j, n);
    h += (angular_from_khz(jij) / 2.0) * (zz + xx + yy);
  }
  return h;
}

/// Sum of X (respectively Y) over all spins; the rf drive couples to the
/// whole register at once.
inline Matrix collective_x(int n_spins) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_spins);
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < n_spins; ++i) m += embed_single(pauli_x(), i, n_spins);
  return m;
}

inline Matrix collective_y(int n_spins) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_spins);
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < n_spins; ++i) m += embed_single(pauli_y(), i, n_spins);
  return m;
}

/// Global rf control Hamiltonian pi * rf_scale * (u_x sum X_i + u_y sum Y_i)
/// with the quadrature amplitudes in kHz.
inline Matrix control_generator(const SpinSystem& sys, double u_x, double u_y,
                                double rf_scale = 1.0) {
  sys.validate();
  if (!std::isfinite(u_x) || !std::isfinite(u_y) || !std::isfinite(rf_scale)) {
    throw DomainError("control_generator: non-finite input");
  }
  return rf_scale * (angular_from_khz(u_x) * collective_x(sys.n_spins) +
                     angular_from_khz(u_y) * collective_y(sys.n_spins));
}

/// Static-field offset in Hz, applied as a uniform additive shift to every
/// spin's Z term (one field, one nucleus).
inline Matrix offset_generator(int n_spins, double offset_hz) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_spins);
  Matrix m = Matrix::Zero(d, d);
  for (int i = 0; i < n_spins; ++i) m += kPi * offset_hz * embed_single(pauli_z(), i, n_spins);
  return m;
}

}  // namespace spincool
