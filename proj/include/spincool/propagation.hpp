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
#include <vector>

#include <Eigen/Dense>

#include "spincool/control_pulse.hpp"
#include "spincool/spin_system.hpp"

namespace spincool {

/// exp(-i H dt) for Hermitian H, via eigendecomposition. Exact to machine
/// precision for any step size.
inline Matrix hermitian_step_propagator(const Matrix& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition failed in step propagator");
  }
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index p = 0; p < lambda.size(); ++p) {
    phases(p) = std::exp(Complex(0.0, -lambda(p) * dt));
  }
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

/// Ordered product of the per-sample step propagators (first sample acts
/// first). rf_scale multiplies the control amplitudes; offset_hz shifts the
/// static field seen by every spin.
inline Matrix propagate(const SpinSystem& sys, const ControlPulse& pulse, double rf_scale = 1.0,
                        double offset_hz = 0.0) {
  sys.validate();
  if (!pulse.samples.empty()) pulse.validate();
  const auto d = static_cast<Eigen::Index>(sys.dim());
  Matrix u = Matrix::Identity(d, d);
  if (pulse.samples.empty()) return u;

  const Matrix drift = build_drift(sys) + offset_generator(sys.n_spins, offset_hz);
  const Matrix cx = collective_x(sys.n_spins);
  const Matrix cy = collective_y(sys.n_spins);
  for (const ControlSample& s : pulse.samples) {
    const Matrix h = drift + rf_scale * (angular_from_khz(s.u_x) * cx +
                                         angular_from_khz(s.u_y) * cy);
    u = hermitian_step_propagator(h, pulse.dt_s) * u;
  }
  if (!u.allFinite()) throw NumericalError("propagate produced non-finite entries");
  return u;
}

/// |tr(U_goal^dag U_sim)|^2 / 2^(2n): 1 iff the gates agree up to a global
/// phase, 0 when the overlap is traceless.
inline double gate_fidelity(const Matrix& u_goal, const Matrix& u_sim) {
  if (u_goal.rows() != u_sim.rows() || u_goal.cols() != u_sim.cols() ||
      u_goal.rows() != u_goal.cols()) {
    throw DomainError("gate_fidelity: dimension mismatch");
  }
  const Complex overlap = (u_goal.adjoint() * u_sim).trace();
  const double dim = static_cast<double>(u_goal.rows());
  return std::norm(overlap) / (dim * dim);
}

/// Grid of rf-amplitude scale factors and static-field offsets with
/// normalized weights (row-major: scale index outer, offset index inner).
struct EnsembleSpec {
  std::vector<double> rf_scales;
  std::vector<double> offsets_hz;
  std::vector<double> weights;  // empty means uniform

  static EnsembleSpec single_point() { return EnsembleSpec{{1.0}, {0.0}, {}}; }

  /// 5 x 5 uniform grid over +-5% rf amplitude and +-150 Hz offset.
  static EnsembleSpec default_grid() {
    EnsembleSpec e;
    for (int i = 0; i < 5; ++i) {
      e.rf_scales.push_back(0.95 + 0.025 * i);
      e.offsets_hz.push_back(-150.0 + 75.0 * i);
    }
    return e;
  }

  std::size_t size() const { return rf_scales.size() * offsets_hz.size(); }

  std::vector<double> normalized_weights() const {
    validate();
    std::vector<double> w = weights;
    if (w.empty()) w.assign(size(), 1.0);
    double total = 0.0;
    for (double x : w) total += x;
    for (double& x : w) x /= total;
    return w;
  }

  void validate() const {
    if (rf_scales.empty() || offsets_hz.empty()) {
      throw DomainError("ensemble grids must be non-empty");
    }
    for (double s : rf_scales) {
      if (!std::isfinite(s)) throw DomainError("non-finite rf scale");
    }
    for (double o : offsets_hz) {
      if (!std::isfinite(o)) throw DomainError("non-finite offset");
    }
    if (!weights.empty()) {
      if (weights.size() != size()) throw DomainError("ensemble weight count mismatch");
      double total = 0.0;
      for (double w : weights) {
        if (!(w >= 0.0)) throw DomainError("ensemble weights must be >= 0");
        total += w;
      }
      if (!(total > 0.0)) throw DomainError("ensemble weights sum to zero");
    }
  }
};

/// Weighted mean fidelity over the ensemble grid, accumulated in fixed grid
/// order so results are bit-stable.
inline double robust_fidelity(const SpinSystem& sys, const ControlPulse& pulse,
                              const Matrix& u_goal, const EnsembleSpec& ensemble) {
  const std::vector<double> w = ensemble.normalized_weights();
  double mean = 0.0;
  std::size_t idx = 0;
  for (double scale : ensemble.rf_scales) {
    for (double offset : ensemble.offsets_hz) {
      mean += w[idx++] * gate_fidelity(u_goal, propagate(sys, pulse, scale, offset));
    }
  }
  return mean;
}

/// Smallest pointwise fidelity over the grid; a robustness diagnostic.
inline double worst_grid_fidelity(const SpinSystem& sys, const ControlPulse& pulse,
                                  const Matrix& u_goal, const EnsembleSpec& ensemble) {
  ensemble.validate();
  double worst = 1.0;
  for (double scale : ensemble.rf_scales) {
    for (double offset : ensemble.offsets_hz) {
      worst = std::min(worst, gate_fidelity(u_goal, propagate(sys, pulse, scale, offset)));
    }
  }
  return worst;
}

}  // namespace spincool
