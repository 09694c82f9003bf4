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
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spincool/control_pulse.hpp"
#include "spincool/propagation.hpp"
#include "spincool/spin_system.hpp"

namespace spincool {

enum class GradientMode { kExact, kFiniteDifference };
enum class InitialPulseKind { kRandom, kZeros };
enum class GrapeTermination { kTargetReached, kMaxIterations, kStalled };

inline std::string to_string(GrapeTermination t) {
  switch (t) {
    case GrapeTermination::kTargetReached: return "target_reached";
    case GrapeTermination::kMaxIterations: return "max_iterations";
    case GrapeTermination::kStalled: return "stalled";
  }
  return "unknown";
}

struct GrapeConfig {
  int max_iterations = 2000;
  double target_fidelity = 0.9975;
  double initial_step_size = 64.0;
  double backtrack_factor = 0.5;
  double smoothness_weight = 1e-6;  // lambda, in fidelity per kHz^2
  double amplitude_max_khz = 20.0;
  std::uint64_t seed = 12345;
  GradientMode gradient_mode = GradientMode::kExact;
  InitialPulseKind initial_pulse = InitialPulseKind::kRandom;
  int n_samples = 128;
  double dt_s = 2e-5;

  // stall rules: give up when the line search shrinks below a fraction of
  // the initial step, or the objective gain stays negligible for a stretch
  double min_step_fraction = 1e-12;
  double stall_gain = 1e-12;
  int stall_iterations = 20;

  void validate() const {
    if (!(target_fidelity > 0.0 && target_fidelity <= 1.0)) {
      throw DomainError("grape: target fidelity outside (0, 1]");
    }
    if (!(amplitude_max_khz > 0.0)) throw DomainError("grape: amplitude ceiling must be > 0");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0)) {
      throw DomainError("grape: backtrack factor outside (0, 1)");
    }
    if (!(initial_step_size > 0.0)) throw DomainError("grape: initial step must be > 0");
    if (!(smoothness_weight >= 0.0)) throw DomainError("grape: smoothness weight must be >= 0");
    if (max_iterations < 0 || n_samples < 0) {
      throw DomainError("grape: iteration and sample counts must be >= 0");
    }
    if (!(dt_s > 0.0)) throw DomainError("grape: dt must be > 0");
  }
};

struct GrapeIterationRecord {
  int iteration = 0;
  double objective = 0.0;
  double robust_fidelity = 0.0;
  double step_size = 0.0;
};

struct GrapeResult {
  ControlPulse pulse;
  double robust_fidelity = 0.0;
  double objective = 0.0;
  double worst_grid_fidelity = 0.0;
  int iterations = 0;
  GrapeTermination termination = GrapeTermination::kMaxIterations;
  std::vector<GrapeIterationRecord> history;
};

/// Sum of squared sample-to-sample jumps, with both endpoints tied to zero
/// amplitude; penalizes fast switching.
inline double smoothness_penalty(const ControlPulse& pulse) {
  double penalty = 0.0;
  const std::size_t n = pulse.samples.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dx = pulse.samples[k + 1].u_x - pulse.samples[k].u_x;
    const double dy = pulse.samples[k + 1].u_y - pulse.samples[k].u_y;
    penalty += dx * dx + dy * dy;
  }
  if (n > 0) {
    const ControlSample& first = pulse.samples.front();
    const ControlSample& last = pulse.samples.back();
    penalty += first.u_x * first.u_x + first.u_y * first.u_y;
    penalty += last.u_x * last.u_x + last.u_y * last.u_y;
  }
  return penalty;
}

inline std::vector<ControlSample> smoothness_penalty_gradient(const ControlPulse& pulse) {
  const std::size_t n = pulse.samples.size();
  std::vector<ControlSample> grad(n);
  auto at = [&](std::size_t k, bool x) -> double {
    if (k == 0 || k > n) return 0.0;  // virtual zero endpoints
    return x ? pulse.samples[k - 1].u_x : pulse.samples[k - 1].u_y;
  };
  for (std::size_t k = 1; k <= n; ++k) {
    grad[k - 1].u_x = 2.0 * (2.0 * at(k, true) - at(k - 1, true) - at(k + 1, true));
    grad[k - 1].u_y = 2.0 * (2.0 * at(k, false) - at(k - 1, false) - at(k + 1, false));
  }
  return grad;
}

/// robust_fidelity minus smoothness_weight times the switching penalty.
inline double grape_objective(const SpinSystem& sys, const ControlPulse& pulse,
                              const Matrix& u_goal, const EnsembleSpec& ensemble,
                              double smoothness_weight) {
  return robust_fidelity(sys, pulse, u_goal, ensemble) -
         smoothness_weight * smoothness_penalty(pulse);
}

namespace detail {

inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// Shared precomputation for repeated objective/gradient evaluations of one
// optimization problem.
struct GrapeProblem {
  SpinSystem sys;
  Matrix goal;
  EnsembleSpec ensemble;
  double smoothness_weight = 0.0;
  std::vector<double> weights;
  std::vector<Matrix> drift_per_offset;
  Matrix cx, cy;
  Eigen::Index dim = 0;

  GrapeProblem(const SpinSystem& system, const Matrix& u_goal, const EnsembleSpec& ens,
               double lambda)
      : sys(system), goal(u_goal), ensemble(ens), smoothness_weight(lambda) {
    sys.validate();
    ensemble.validate();
    dim = static_cast<Eigen::Index>(sys.dim());
    if (goal.rows() != dim || goal.cols() != dim) {
      throw DomainError("grape: goal unitary dimension does not match the spin system");
    }
    weights = ensemble.normalized_weights();
    const Matrix drift = build_drift(sys);
    drift_per_offset.reserve(ensemble.offsets_hz.size());
    for (double offset : ensemble.offsets_hz) {
      drift_per_offset.push_back(drift + offset_generator(sys.n_spins, offset));
    }
    cx = collective_x(sys.n_spins);
    cy = collective_y(sys.n_spins);
  }

  struct Value {
    double objective = 0.0;
    double fidelity = 0.0;
  };

  Value evaluate(const ControlPulse& pulse) const {
    Value v;
    std::size_t w_idx = 0;
    for (double scale : ensemble.rf_scales) {
      for (std::size_t oi = 0; oi < ensemble.offsets_hz.size(); ++oi) {
        Matrix u = Matrix::Identity(dim, dim);
        for (const ControlSample& s : pulse.samples) {
          const Matrix h = drift_per_offset[oi] +
                           scale * (angular_from_khz(s.u_x) * cx + angular_from_khz(s.u_y) * cy);
          u = hermitian_step_propagator(h, pulse.dt_s) * u;
        }
        v.fidelity += weights[w_idx++] * gate_fidelity(goal, u);
      }
    }
    v.objective = v.fidelity - smoothness_weight * smoothness_penalty(pulse);
    if (!std::isfinite(v.objective)) throw NumericalError("grape: non-finite objective");
    return v;
  }

  struct ValueGradient {
    double objective = 0.0;
    double fidelity = 0.0;
    std::vector<ControlSample> gradient;
  };

  // Exact derivative of each step propagator through the eigendecomposition
  // of its (Hermitian) generator, chained through prefix/suffix products.
  ValueGradient evaluate_with_gradient(const ControlPulse& pulse) const {
    const std::size_t n = pulse.samples.size();
    const double dt = pulse.dt_s;
    ValueGradient out;
    out.gradient.assign(n, ControlSample{});
    const double amp_slope = kPi * 1e3;  // d(angular)/d(u_khz)

    std::vector<Matrix> step_u(n), eigvecs(n);
    std::vector<Eigen::VectorXd> eigvals(n);
    std::vector<Matrix> prefix(n + 1);  // prefix[k] = U_k ... U_1

    std::size_t w_idx = 0;
    for (double scale : ensemble.rf_scales) {
      for (std::size_t oi = 0; oi < ensemble.offsets_hz.size(); ++oi) {
        const double weight = weights[w_idx++];
        prefix[0] = Matrix::Identity(dim, dim);
        for (std::size_t k = 0; k < n; ++k) {
          const ControlSample& s = pulse.samples[k];
          const Matrix h = drift_per_offset[oi] +
                           scale * (angular_from_khz(s.u_x) * cx + angular_from_khz(s.u_y) * cy);
          Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
          if (eig.info() != Eigen::Success) {
            throw NumericalError("grape: eigendecomposition failed");
          }
          eigvals[k] = eig.eigenvalues();
          eigvecs[k] = eig.eigenvectors();
          Eigen::VectorXcd phases(dim);
          for (Eigen::Index p = 0; p < dim; ++p) {
            phases(p) = std::exp(Complex(0.0, -eigvals[k](p) * dt));
          }
          step_u[k] = eigvecs[k] * phases.asDiagonal() * eigvecs[k].adjoint();
          prefix[k + 1] = step_u[k] * prefix[k];
        }

        const Matrix& u_total = n > 0 ? prefix[n] : prefix[0];
        const Complex overlap = (goal.adjoint() * u_total).trace();
        const double dim_d = static_cast<double>(dim);
        out.fidelity += weight * std::norm(overlap) / (dim_d * dim_d);

        // suffix[k] = goal^dag U_N ... U_{k+1}, walked backwards
        Matrix suffix = goal.adjoint();
        for (std::size_t kk = n; kk-- > 0;) {
          const Matrix& v = eigvecs[kk];
          const Eigen::VectorXd& lam = eigvals[kk];

          // directional derivative factors Gamma_pq
          Matrix gamma(dim, dim);
          for (Eigen::Index p = 0; p < dim; ++p) {
            for (Eigen::Index q = 0; q < dim; ++q) {
              const double mean = 0.5 * (lam(p) + lam(q));
              const double diff = 0.5 * (lam(p) - lam(q));
              gamma(p, q) =
                  Complex(0.0, -dt) * std::exp(Complex(0.0, -mean * dt)) * sinc(diff * dt);
            }
          }
          const Matrix cx_eig = v.adjoint() * (scale * amp_slope * cx) * v;
          const Matrix cy_eig = v.adjoint() * (scale * amp_slope * cy) * v;
          const Matrix dux = v * gamma.cwiseProduct(cx_eig) * v.adjoint();
          const Matrix duy = v * gamma.cwiseProduct(cy_eig) * v.adjoint();

          const Matrix left = prefix[kk] * suffix;  // = P_{k-1} goal^dag S_k
          const Complex dtx = (left * dux).trace();
          const Complex dty = (left * duy).trace();
          const double common = 2.0 * weight / (dim_d * dim_d);
          out.gradient[kk].u_x += common * (std::conj(overlap) * dtx).real();
          out.gradient[kk].u_y += common * (std::conj(overlap) * dty).real();

          suffix = suffix * step_u[kk];
        }
      }
    }

    const std::vector<ControlSample> pen_grad = smoothness_penalty_gradient(pulse);
    for (std::size_t k = 0; k < n; ++k) {
      out.gradient[k].u_x -= smoothness_weight * pen_grad[k].u_x;
      out.gradient[k].u_y -= smoothness_weight * pen_grad[k].u_y;
      if (!std::isfinite(out.gradient[k].u_x) || !std::isfinite(out.gradient[k].u_y)) {
        throw NumericalError("grape: non-finite gradient entry");
      }
    }
    out.objective = out.fidelity - smoothness_weight * smoothness_penalty(pulse);
    return out;
  }

  std::vector<ControlSample> finite_difference_gradient(const ControlPulse& pulse,
                                                        double h_khz) const {
    std::vector<ControlSample> grad(pulse.samples.size());
    ControlPulse probe = pulse;
    for (std::size_t k = 0; k < pulse.samples.size(); ++k) {
      for (int quad = 0; quad < 2; ++quad) {
        double& u = quad == 0 ? probe.samples[k].u_x : probe.samples[k].u_y;
        const double saved = u;
        u = saved + h_khz;
        const double plus = evaluate(probe).objective;
        u = saved - h_khz;
        const double minus = evaluate(probe).objective;
        u = saved;
        const double d = (plus - minus) / (2.0 * h_khz);
        if (quad == 0) {
          grad[k].u_x = d;
        } else {
          grad[k].u_y = d;
        }
      }
    }
    return grad;
  }
};

}  // namespace detail

/// Gradient of grape_objective with respect to every (u_x, u_y) sample.
inline std::vector<ControlSample> grape_gradient(const SpinSystem& sys, const ControlPulse& pulse,
                                                 const Matrix& u_goal,
                                                 const EnsembleSpec& ensemble,
                                                 double smoothness_weight) {
  detail::GrapeProblem problem(sys, u_goal, ensemble, smoothness_weight);
  return problem.evaluate_with_gradient(pulse).gradient;
}

/// Central-difference gradient of the same objective; the slow cross-check.
inline std::vector<ControlSample> grape_gradient_fd(const SpinSystem& sys,
                                                    const ControlPulse& pulse,
                                                    const Matrix& u_goal,
                                                    const EnsembleSpec& ensemble,
                                                    double smoothness_weight,
                                                    double h_khz = 1e-6) {
  detail::GrapeProblem problem(sys, u_goal, ensemble, smoothness_weight);
  return problem.finite_difference_gradient(pulse, h_khz);
}

namespace detail {

// mt19937_64 output mapped to [0, 1); fully specified by the standard, so
// seeded runs are reproducible across platforms.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double next_in(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 engine_;
};

inline void project_to_ceiling(ControlPulse& pulse, double ceiling) {
  for (ControlSample& s : pulse.samples) {
    const double norm = s.norm();
    if (norm > ceiling) {
      const double shrink = ceiling / norm;
      s.u_x *= shrink;
      s.u_y *= shrink;
    }
  }
}

}  // namespace detail

/// Backtracking-line-search gradient ascent on grape_objective from a seeded
/// random (or caller-supplied) initial pulse. Accepted iterates never
/// decrease the objective; the amplitude ceiling is enforced by projection;
/// the whole run is deterministic given the config.
inline GrapeResult grape_optimize(const SpinSystem& sys, const Matrix& u_goal,
                                  const EnsembleSpec& ensemble, const GrapeConfig& config,
                                  std::optional<ControlPulse> initial = std::nullopt) {
  config.validate();
  detail::GrapeProblem problem(sys, u_goal, ensemble, config.smoothness_weight);

  ControlPulse pulse;
  if (initial.has_value()) {
    pulse = *initial;
    pulse.validate();
  } else {
    pulse.dt_s = config.dt_s;
    pulse.samples.resize(static_cast<std::size_t>(config.n_samples));
    if (config.initial_pulse == InitialPulseKind::kRandom) {
      detail::UniformSource rng(config.seed);
      const double span = 0.1 * config.amplitude_max_khz;
      for (ControlSample& s : pulse.samples) {
        s.u_x = rng.next_in(-span, span);
        s.u_y = rng.next_in(-span, span);
      }
    }
  }
  detail::project_to_ceiling(pulse, config.amplitude_max_khz);

  GrapeResult result;
  detail::GrapeProblem::Value current = problem.evaluate(pulse);
  result.history.push_back({0, current.objective, current.fidelity, 0.0});

  double step = config.initial_step_size;
  const double min_step = config.min_step_fraction * config.initial_step_size;
  int stall_count = 0;
  int iterations = 0;
  GrapeTermination termination = GrapeTermination::kMaxIterations;

  if (current.fidelity >= config.target_fidelity) {
    termination = GrapeTermination::kTargetReached;
  } else {
    for (int iter = 1; iter <= config.max_iterations; ++iter) {
      const std::vector<ControlSample> grad =
          config.gradient_mode == GradientMode::kExact
              ? problem.evaluate_with_gradient(pulse).gradient
              : problem.finite_difference_gradient(pulse, 1e-6);

      bool accepted = false;
      double alpha = step;
      ControlPulse candidate;
      detail::GrapeProblem::Value cand_value;
      while (alpha >= min_step) {
        candidate = pulse;
        for (std::size_t k = 0; k < candidate.samples.size(); ++k) {
          candidate.samples[k].u_x += alpha * grad[k].u_x;
          candidate.samples[k].u_y += alpha * grad[k].u_y;
        }
        detail::project_to_ceiling(candidate, config.amplitude_max_khz);
        cand_value = problem.evaluate(candidate);
        if (cand_value.objective >= current.objective) {
          accepted = true;
          break;
        }
        alpha *= config.backtrack_factor;
      }
      if (!accepted) {
        termination = GrapeTermination::kStalled;
        break;
      }

      const double gain = cand_value.objective - current.objective;
      pulse = std::move(candidate);
      current = cand_value;
      iterations = iter;
      result.history.push_back({iter, current.objective, current.fidelity, alpha});
      step = alpha * 2.0;

      if (current.fidelity >= config.target_fidelity) {
        termination = GrapeTermination::kTargetReached;
        break;
      }
      if (gain < config.stall_gain) {
        if (++stall_count >= config.stall_iterations) {
          termination = GrapeTermination::kStalled;
          break;
        }
      } else {
        stall_count = 0;
      }
    }
  }

  result.pulse = std::move(pulse);
  result.objective = current.objective;
  result.robust_fidelity = current.fidelity;
  result.worst_grid_fidelity = worst_grid_fidelity(sys, result.pulse, u_goal, ensemble);
  result.iterations = iterations;
  result.termination = termination;
  return result;
}

}  // namespace spincool
