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
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spincool/errors.hpp"

namespace spincool {

/// One piecewise-constant rf sample: the two quadrature amplitudes in kHz.
struct ControlSample {
  double u_x = 0.0;
  double u_y = 0.0;

  double norm() const { return std::hypot(u_x, u_y); }
};

/// Piecewise-constant two-quadrature rf pulse with a fixed time step.
struct ControlPulse {
  double dt_s = 0.0;
  std::vector<ControlSample> samples;

  double duration_s() const { return dt_s * static_cast<double>(samples.size()); }

  void validate(double max_amplitude_khz = 0.0) const {
    if (!(dt_s > 0.0) || !std::isfinite(dt_s)) {
      throw DomainError("control pulse needs a positive finite time step");
    }
    for (std::size_t k = 0; k < samples.size(); ++k) {
      if (!std::isfinite(samples[k].u_x) || !std::isfinite(samples[k].u_y)) {
        throw DomainError("control sample " + std::to_string(k) + " is not finite");
      }
      if (max_amplitude_khz > 0.0 && samples[k].norm() > max_amplitude_khz * (1.0 + 1e-12)) {
        throw DomainError("control sample " + std::to_string(k) + " exceeds the amplitude bound");
      }
    }
  }
};

// Pulse file layout: two header lines (dt_seconds, n_samples) followed by one
// "u_x_kHz u_y_kHz" line per sample, fixed-point with more than 12
// significant digits so a write/read cycle is lossless for all practical
// amplitudes.

inline std::string pulse_to_text(const ControlPulse& pulse) {
  pulse.validate();
  char buf[96];
  std::string out;
  std::snprintf(buf, sizeof buf, "dt_seconds %.15e\n", pulse.dt_s);
  out += buf;
  std::snprintf(buf, sizeof buf, "n_samples %zu\n", pulse.samples.size());
  out += buf;
  for (const ControlSample& s : pulse.samples) {
    std::snprintf(buf, sizeof buf, "%.15f %.15f\n", s.u_x, s.u_y);
    out += buf;
  }
  return out;
}

inline ControlPulse pulse_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string key;
  ControlPulse pulse;
  std::size_t n_samples = 0;
  if (!(in >> key >> pulse.dt_s) || key != "dt_seconds") {
    throw DomainError("pulse file: expected 'dt_seconds <value>' header");
  }
  if (!(in >> key >> n_samples) || key != "n_samples") {
    throw DomainError("pulse file: expected 'n_samples <count>' header");
  }
  pulse.samples.resize(n_samples);
  for (std::size_t k = 0; k < n_samples; ++k) {
    if (!(in >> pulse.samples[k].u_x >> pulse.samples[k].u_y)) {
      throw DomainError("pulse file: truncated at sample " + std::to_string(k));
    }
  }
  double extra;
  if (in >> extra) throw DomainError("pulse file: trailing data after the declared samples");
  pulse.validate();
  return pulse;
}

inline void write_pulse_file(const std::string& path, const ControlPulse& pulse) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open pulse file for writing: " + path);
  out << pulse_to_text(pulse);
  if (!out) throw DomainError("failed writing pulse file: " + path);
}

inline ControlPulse read_pulse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open pulse file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return pulse_from_text(buffer.str());
}

}  // namespace spincool
