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

#include <stdexcept>
#include <string>

namespace spincool {

/// Invalid argument values: indices out of range, biases outside [-1,1], ...
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Non-finite intermediates or broken numerical invariants at runtime.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point iteration exceeded its round budget. Carries the last two
/// target-bias iterates so callers can inspect how close the run got.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double previous_bias, double last_bias)
      : std::runtime_error(what), previous_bias(previous_bias), last_bias(last_bias) {}

  double previous_bias;
  double last_bias;
};

/// Configuration file rejected (unknown key, bad type, missing value).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spincool
