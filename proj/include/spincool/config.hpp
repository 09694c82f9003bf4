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

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spincool/errors.hpp"
#include "spincool/grape.hpp"
#include "spincool/noise.hpp"
#include "spincool/propagation.hpp"
#include "spincool/schedule.hpp"
#include "spincool/spin_system.hpp"
#include "spincool/target_gates.hpp"

namespace spincool {

using Json = nlohmann::ordered_json;

struct GoalSpec {
  std::string type = "swap";  // identity | x | swap | compress3
  std::vector<int> qubits = {0, 1};

  Matrix build(int n_spins) const {
    auto need = [this](std::size_t count) {
      if (qubits.size() != count) {
        throw ConfigError("grape.goal: '" + type + "' needs " + std::to_string(count) +
                          " qubit indices");
      }
    };
    if (type == "identity") {
      need(0);
      return identity_gate(n_spins);
    }
    if (type == "x") {
      need(1);
      return x_gate(qubits[0], n_spins);
    }
    if (type == "swap") {
      need(2);
      return swap_gate(qubits[0], qubits[1], n_spins);
    }
    if (type == "compress3") {
      need(3);
      return compress3_gate(qubits[0], qubits[1], qubits[2], n_spins);
    }
    throw ConfigError("grape.goal.type must be identity | x | swap | compress3");
  }
};

struct SweepSpec {
  std::vector<int> n_qubits = {3};
  std::vector<double> epsilon0 = {0.01};
  std::vector<double> depolarizing_per_gate = {0.0};
};

struct OutputSpec {
  std::string directory = ".";
  std::string trajectory_csv = "trajectory.csv";
  std::string summary_json = "summary.json";
  std::string steady_json = "steady.json";
  std::string sweep_csv = "sweep.csv";
  std::string pulse_file = "pulse.txt";
  std::string history_csv = "history.csv";
  std::string verify_json = "verify.json";

  std::string path(const std::string& name) const {
    if (directory.empty() || directory == ".") return name;
    return directory + "/" + name;
  }
};

/// Everything a run needs, mirrored 1:1 by the JSON configuration file.
/// Unknown keys anywhere in the file are rejected; `spincool
/// --print-default-config` documents every field and default.
struct RunConfig {
  // system
  int n_qubits = 3;
  int reset_index = -1;  // -1 selects the last qubit
  std::vector<std::string> labels;

  BathModel bath;
  NoiseModel noise;

  // schedule
  std::string schedule_type = "paper-circuit";  // paper-circuit | ppa | explicit
  int rounds = 4;
  std::vector<Step> explicit_steps;
  std::vector<Step> explicit_first_round;
  double steady_tol = 1e-10;
  long steady_max_rounds = 100000;

  SpinSystem hamiltonian;
  EnsembleSpec ensemble = EnsembleSpec::default_grid();
  GrapeConfig grape;
  GoalSpec goal;
  SweepSpec sweep;
  OutputSpec output;

  RunConfig() {
    // shipped stand-in two-spin system for pulse work
    hamiltonian.n_spins = 2;
    hamiltonian.chemical_shifts_khz = {-1.8, 2.4};
    hamiltonian.dipolar_khz[{0, 1}] = 1.6;
    hamiltonian.j_khz[{0, 1}] = 0.05;
  }

  int resolved_reset_index() const { return reset_index < 0 ? n_qubits - 1 : reset_index; }

  std::vector<std::string> resolved_labels() const {
    if (!labels.empty()) return labels;
    if (n_qubits == 3) return {"C2", "C1", "Cm"};
    std::vector<std::string> out;
    for (int i = 0; i < n_qubits; ++i) out.push_back("q" + std::to_string(i));
    return out;
  }

  Schedule build_schedule() const {
    if (schedule_type == "paper-circuit") {
      if (n_qubits != 3) throw ConfigError("the paper-circuit schedule needs n_qubits = 3");
      return paper_circuit(rounds);
    }
    if (schedule_type == "ppa") {
      Schedule s;
      s.round = {StepRefresh{resolved_reset_index()}, StepPpaSort{}};
      s.rounds = rounds;
      return s;
    }
    if (schedule_type == "explicit") {
      Schedule s;
      s.round = explicit_steps;
      s.first_round = explicit_first_round;
      s.rounds = rounds;
      return s;
    }
    throw ConfigError("schedule.type must be paper-circuit | ppa | explicit");
  }

  void validate() const {
    if (n_qubits < 1 || n_qubits > PopulationState::kMaxQubits) {
      throw ConfigError("system.n_qubits outside [1, 20]");
    }
    if (reset_index >= n_qubits) throw ConfigError("system.reset_index out of range");
    if (!labels.empty() && static_cast<int>(labels.size()) != n_qubits) {
      throw ConfigError("system.labels must have one entry per qubit");
    }
    bath.validate();
    noise.validate();
    if (rounds < 0) throw ConfigError("schedule.rounds must be >= 0");
    if (!(steady_tol > 0.0)) throw ConfigError("schedule.steady_tol must be > 0");
    if (steady_max_rounds < 1) throw ConfigError("schedule.steady_max_rounds must be >= 1");
    hamiltonian.validate();
    ensemble.validate();
    grape.validate();
    for (int n : sweep.n_qubits) {
      if (n < 2 || n > 10) throw ConfigError("sweep.n_qubits entries must lie in [2, 10]");
    }
    for (double e : sweep.epsilon0) {
      if (!(e >= 0.0 && e <= 1.0)) throw ConfigError("sweep.epsilon0 entries must lie in [0, 1]");
    }
    for (double p : sweep.depolarizing_per_gate) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("sweep.depolarizing_per_gate entries must lie in [0, 1]");
      }
    }
    if (sweep.n_qubits.empty() || sweep.epsilon0.empty() || sweep.depolarizing_per_gate.empty()) {
      throw ConfigError("sweep grids must be non-empty");
    }
  }
};

namespace detail {

inline void check_keys(const Json& obj, const std::string& where,
                       const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

inline double as_number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + " must be a number");
  return v.get<double>();
}

inline void read_number(const Json& obj, const std::string& where, const char* key,
                        double& target) {
  if (obj.contains(key)) target = as_number(obj.at(key), where + "." + key);
}

inline void read_int(const Json& obj, const std::string& where, const char* key, int& target) {
  if (obj.contains(key)) {
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
    target = v.get<int>();
  }
}

inline void read_long(const Json& obj, const std::string& where, const char* key, long& target) {
  if (obj.contains(key)) {
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
    target = v.get<long>();
  }
}

inline void read_u64(const Json& obj, const std::string& where, const char* key,
                     std::uint64_t& target) {
  if (obj.contains(key)) {
    const Json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + " must be an integer");
    target = v.get<std::uint64_t>();
  }
}

inline void read_string(const Json& obj, const std::string& where, const char* key,
                        std::string& target) {
  if (obj.contains(key)) {
    const Json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + " must be a string");
    target = v.get<std::string>();
  }
}

inline void read_number_list(const Json& obj, const std::string& where, const char* key,
                             std::vector<double>& target) {
  if (!obj.contains(key)) return;
  const Json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of numbers");
  target.clear();
  for (const Json& x : v) target.push_back(as_number(x, where + "." + key + "[]"));
}

inline void read_int_list(const Json& obj, const std::string& where, const char* key,
                          std::vector<int>& target) {
  if (!obj.contains(key)) return;
  const Json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of integers");
  target.clear();
  for (const Json& x : v) {
    if (!x.is_number_integer()) throw ConfigError(where + "." + key + " entries must be integers");
    target.push_back(x.get<int>());
  }
}

inline void read_string_list(const Json& obj, const std::string& where, const char* key,
                             std::vector<std::string>& target) {
  if (!obj.contains(key)) return;
  const Json& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(where + "." + key + " must be an array of strings");
  target.clear();
  for (const Json& x : v) {
    if (!x.is_string()) throw ConfigError(where + "." + key + " entries must be strings");
    target.push_back(x.get<std::string>());
  }
}

inline std::vector<Step> parse_steps(const Json& arr, const std::string& where) {
  if (!arr.is_array()) throw ConfigError(where + " must be an array of step objects");
  std::vector<Step> steps;
  for (const Json& s : arr) {
    if (!s.is_object() || !s.contains("op") || !s.at("op").is_string()) {
      throw ConfigError(where + ": each step needs an 'op' string");
    }
    const std::string op = s.at("op").get<std::string>();
    if (op == "refresh") {
      check_keys(s, where, {"op", "reset"});
      int reset = -1;
      read_int(s, where, "reset", reset);
      steps.push_back(StepRefresh{reset});
    } else if (op == "swap") {
      check_keys(s, where, {"op", "i", "j"});
      int i = -1, j = -1;
      read_int(s, where, "i", i);
      read_int(s, where, "j", j);
      steps.push_back(StepSwap{i, j});
    } else if (op == "compress3") {
      check_keys(s, where, {"op", "target", "a", "b"});
      int target = -1, a = -1, b = -1;
      read_int(s, where, "target", target);
      read_int(s, where, "a", a);
      read_int(s, where, "b", b);
      steps.push_back(StepCompress3{target, a, b});
    } else if (op == "ppa_sort") {
      check_keys(s, where, {"op"});
      steps.push_back(StepPpaSort{});
    } else {
      throw ConfigError(where + ": unknown op '" + op + "'");
    }
  }
  return steps;
}

inline Json steps_to_json(const std::vector<Step>& steps) {
  Json arr = Json::array();
  for (const Step& step : steps) {
    Json s;
    if (const auto* r = std::get_if<StepRefresh>(&step)) {
      s["op"] = "refresh";
      s["reset"] = r->reset_index;
    } else if (const auto* w = std::get_if<StepSwap>(&step)) {
      s["op"] = "swap";
      s["i"] = w->i;
      s["j"] = w->j;
    } else if (const auto* c = std::get_if<StepCompress3>(&step)) {
      s["op"] = "compress3";
      s["target"] = c->target;
      s["a"] = c->a;
      s["b"] = c->b;
    } else {
      s["op"] = "ppa_sort";
    }
    arr.push_back(std::move(s));
  }
  return arr;
}

inline Json couplings_to_json(const std::map<std::pair<int, int>, double>& m) {
  Json arr = Json::array();
  for (const auto& [key, value] : m) {
    arr.push_back(Json::array({key.first, key.second, value}));
  }
  return arr;
}

inline void parse_couplings(const Json& obj, const std::string& where, const char* key,
                            std::map<std::pair<int, int>, double>& target) {
  if (!obj.contains(key)) return;
  const Json& arr = obj.at(key);
  if (!arr.is_array()) throw ConfigError(where + "." + key + " must be an array of [i, j, kHz]");
  target.clear();
  for (const Json& triple : arr) {
    if (!triple.is_array() || triple.size() != 3 || !triple[0].is_number_integer() ||
        !triple[1].is_number_integer() || !triple[2].is_number()) {
      throw ConfigError(where + "." + key + " entries must be [i, j, kHz] triples");
    }
    target[{triple[0].get<int>(), triple[1].get<int>()}] = triple[2].get<double>();
  }
}

}  // namespace detail

inline Json config_to_json(const RunConfig& c) {
  Json j;
  j["system"] = {{"n_qubits", c.n_qubits},
                 {"reset_index", c.reset_index},
                 {"labels", c.labels}};
  j["bath"] = {{"epsilon0", c.bath.epsilon0},
               {"heating_per_refresh", c.bath.heating_per_refresh},
               {"t1rho_seconds", c.bath.t1rho_s},
               {"efficiency", c.bath.efficiency}};
  std::vector<std::string> noisy_steps;
  if (c.noise.noisy_swap) noisy_steps.push_back("swap");
  if (c.noise.noisy_compress) noisy_steps.push_back("compress");
  if (c.noise.noisy_ppa_sort) noisy_steps.push_back("ppa_sort");
  if (c.noise.noisy_refresh) noisy_steps.push_back("refresh");
  j["noise"] = {{"depolarizing_per_gate", c.noise.depolarizing_per_gate},
                {"scope", c.noise.scope == DepolarizingScope::kGlobal ? "global" : "per_qubit"},
                {"noisy_steps", noisy_steps},
                {"gate_durations",
                 {{"swap_seconds", c.noise.durations.swap_s},
                  {"compress_seconds", c.noise.durations.compress_s},
                  {"refresh_seconds", c.noise.durations.refresh_s},
                  {"ppa_sort_seconds", c.noise.durations.ppa_sort_s}}}};
  j["schedule"] = {{"type", c.schedule_type},
                   {"rounds", c.rounds},
                   {"steps", detail::steps_to_json(c.explicit_steps)},
                   {"first_round_steps", detail::steps_to_json(c.explicit_first_round)},
                   {"steady_tol", c.steady_tol},
                   {"steady_max_rounds", c.steady_max_rounds}};
  j["hamiltonian"] = {{"n_spins", c.hamiltonian.n_spins},
                      {"chemical_shifts_khz", c.hamiltonian.chemical_shifts_khz},
                      {"dipolar_khz", detail::couplings_to_json(c.hamiltonian.dipolar_khz)},
                      {"j_khz", detail::couplings_to_json(c.hamiltonian.j_khz)}};
  j["ensemble"] = {{"rf_scales", c.ensemble.rf_scales},
                   {"offsets_hz", c.ensemble.offsets_hz},
                   {"weights", c.ensemble.weights}};
  j["grape"] = {
      {"max_iterations", c.grape.max_iterations},
      {"target_fidelity", c.grape.target_fidelity},
      {"initial_step_size", c.grape.initial_step_size},
      {"backtrack_factor", c.grape.backtrack_factor},
      {"smoothness_weight", c.grape.smoothness_weight},
      {"amplitude_max_khz", c.grape.amplitude_max_khz},
      {"seed", c.grape.seed},
      {"gradient_mode",
       c.grape.gradient_mode == GradientMode::kExact ? "exact" : "finite_difference"},
      {"initial_pulse", c.grape.initial_pulse == InitialPulseKind::kRandom ? "random" : "zeros"},
      {"n_samples", c.grape.n_samples},
      {"dt_seconds", c.grape.dt_s},
      {"goal", {{"type", c.goal.type}, {"qubits", c.goal.qubits}}}};
  j["sweep"] = {{"n_qubits", c.sweep.n_qubits},
                {"epsilon0", c.sweep.epsilon0},
                {"depolarizing_per_gate", c.sweep.depolarizing_per_gate}};
  j["output"] = {{"directory", c.output.directory},
                 {"trajectory_csv", c.output.trajectory_csv},
                 {"summary_json", c.output.summary_json},
                 {"steady_json", c.output.steady_json},
                 {"sweep_csv", c.output.sweep_csv},
                 {"pulse_file", c.output.pulse_file},
                 {"history_csv", c.output.history_csv},
                 {"verify_json", c.output.verify_json}};
  return j;
}

inline RunConfig config_from_json(const Json& j) {
  RunConfig c;
  detail::check_keys(j, "config",
                     {"system", "bath", "noise", "schedule", "hamiltonian", "ensemble", "grape",
                      "sweep", "output"});

  if (j.contains("system")) {
    const Json& s = j.at("system");
    detail::check_keys(s, "system", {"n_qubits", "reset_index", "labels"});
    detail::read_int(s, "system", "n_qubits", c.n_qubits);
    detail::read_int(s, "system", "reset_index", c.reset_index);
    detail::read_string_list(s, "system", "labels", c.labels);
  }

  if (j.contains("bath")) {
    const Json& b = j.at("bath");
    detail::check_keys(b, "bath",
                       {"epsilon0", "heating_per_refresh", "t1rho_seconds", "efficiency"});
    detail::read_number(b, "bath", "epsilon0", c.bath.epsilon0);
    detail::read_number(b, "bath", "heating_per_refresh", c.bath.heating_per_refresh);
    detail::read_number(b, "bath", "t1rho_seconds", c.bath.t1rho_s);
    detail::read_number(b, "bath", "efficiency", c.bath.efficiency);
  }

  if (j.contains("noise")) {
    const Json& n = j.at("noise");
    detail::check_keys(n, "noise",
                       {"depolarizing_per_gate", "scope", "noisy_steps", "gate_durations"});
    detail::read_number(n, "noise", "depolarizing_per_gate", c.noise.depolarizing_per_gate);
    std::string scope = c.noise.scope == DepolarizingScope::kGlobal ? "global" : "per_qubit";
    detail::read_string(n, "noise", "scope", scope);
    if (scope == "global") {
      c.noise.scope = DepolarizingScope::kGlobal;
    } else if (scope == "per_qubit") {
      c.noise.scope = DepolarizingScope::kPerQubit;
    } else {
      throw ConfigError("noise.scope must be global | per_qubit");
    }
    if (n.contains("noisy_steps")) {
      std::vector<std::string> kinds;
      detail::read_string_list(n, "noise", "noisy_steps", kinds);
      c.noise.noisy_swap = c.noise.noisy_compress = c.noise.noisy_ppa_sort =
          c.noise.noisy_refresh = false;
      for (const std::string& k : kinds) {
        if (k == "swap") {
          c.noise.noisy_swap = true;
        } else if (k == "compress") {
          c.noise.noisy_compress = true;
        } else if (k == "ppa_sort") {
          c.noise.noisy_ppa_sort = true;
        } else if (k == "refresh") {
          c.noise.noisy_refresh = true;
        } else {
          throw ConfigError("noise.noisy_steps: unknown step kind '" + k + "'");
        }
      }
    }
    if (n.contains("gate_durations")) {
      const Json& d = n.at("gate_durations");
      detail::check_keys(d, "noise.gate_durations",
                         {"swap_seconds", "compress_seconds", "refresh_seconds",
                          "ppa_sort_seconds"});
      detail::read_number(d, "noise.gate_durations", "swap_seconds", c.noise.durations.swap_s);
      detail::read_number(d, "noise.gate_durations", "compress_seconds",
                          c.noise.durations.compress_s);
      detail::read_number(d, "noise.gate_durations", "refresh_seconds",
                          c.noise.durations.refresh_s);
      detail::read_number(d, "noise.gate_durations", "ppa_sort_seconds",
                          c.noise.durations.ppa_sort_s);
    }
  }

  if (j.contains("schedule")) {
    const Json& s = j.at("schedule");
    detail::check_keys(
        s, "schedule",
        {"type", "rounds", "steps", "first_round_steps", "steady_tol", "steady_max_rounds"});
    detail::read_string(s, "schedule", "type", c.schedule_type);
    detail::read_int(s, "schedule", "rounds", c.rounds);
    if (s.contains("steps")) c.explicit_steps = detail::parse_steps(s.at("steps"), "schedule.steps");
    if (s.contains("first_round_steps")) {
      c.explicit_first_round =
          detail::parse_steps(s.at("first_round_steps"), "schedule.first_round_steps");
    }
    detail::read_number(s, "schedule", "steady_tol", c.steady_tol);
    detail::read_long(s, "schedule", "steady_max_rounds", c.steady_max_rounds);
  }

  if (j.contains("hamiltonian")) {
    const Json& h = j.at("hamiltonian");
    detail::check_keys(h, "hamiltonian", {"n_spins", "chemical_shifts_khz", "dipolar_khz", "j_khz"});
    detail::read_int(h, "hamiltonian", "n_spins", c.hamiltonian.n_spins);
    detail::read_number_list(h, "hamiltonian", "chemical_shifts_khz",
                             c.hamiltonian.chemical_shifts_khz);
    detail::parse_couplings(h, "hamiltonian", "dipolar_khz", c.hamiltonian.dipolar_khz);
    detail::parse_couplings(h, "hamiltonian", "j_khz", c.hamiltonian.j_khz);
  }

  if (j.contains("ensemble")) {
    const Json& e = j.at("ensemble");
    detail::check_keys(e, "ensemble", {"rf_scales", "offsets_hz", "weights"});
    detail::read_number_list(e, "ensemble", "rf_scales", c.ensemble.rf_scales);
    detail::read_number_list(e, "ensemble", "offsets_hz", c.ensemble.offsets_hz);
    detail::read_number_list(e, "ensemble", "weights", c.ensemble.weights);
  }

  if (j.contains("grape")) {
    const Json& g = j.at("grape");
    detail::check_keys(g, "grape",
                       {"max_iterations", "target_fidelity", "initial_step_size",
                        "backtrack_factor", "smoothness_weight", "amplitude_max_khz", "seed",
                        "gradient_mode", "initial_pulse", "n_samples", "dt_seconds", "goal"});
    detail::read_int(g, "grape", "max_iterations", c.grape.max_iterations);
    detail::read_number(g, "grape", "target_fidelity", c.grape.target_fidelity);
    detail::read_number(g, "grape", "initial_step_size", c.grape.initial_step_size);
    detail::read_number(g, "grape", "backtrack_factor", c.grape.backtrack_factor);
    detail::read_number(g, "grape", "smoothness_weight", c.grape.smoothness_weight);
    detail::read_number(g, "grape", "amplitude_max_khz", c.grape.amplitude_max_khz);
    detail::read_u64(g, "grape", "seed", c.grape.seed);
    std::string mode = c.grape.gradient_mode == GradientMode::kExact ? "exact" : "finite_difference";
    detail::read_string(g, "grape", "gradient_mode", mode);
    if (mode == "exact") {
      c.grape.gradient_mode = GradientMode::kExact;
    } else if (mode == "finite_difference") {
      c.grape.gradient_mode = GradientMode::kFiniteDifference;
    } else {
      throw ConfigError("grape.gradient_mode must be exact | finite_difference");
    }
    std::string init = c.grape.initial_pulse == InitialPulseKind::kRandom ? "random" : "zeros";
    detail::read_string(g, "grape", "initial_pulse", init);
    if (init == "random") {
      c.grape.initial_pulse = InitialPulseKind::kRandom;
    } else if (init == "zeros") {
      c.grape.initial_pulse = InitialPulseKind::kZeros;
    } else {
      throw ConfigError("grape.initial_pulse must be random | zeros");
    }
    detail::read_int(g, "grape", "n_samples", c.grape.n_samples);
    detail::read_number(g, "grape", "dt_seconds", c.grape.dt_s);
    if (g.contains("goal")) {
      const Json& goal = g.at("goal");
      detail::check_keys(goal, "grape.goal", {"type", "qubits"});
      detail::read_string(goal, "grape.goal", "type", c.goal.type);
      detail::read_int_list(goal, "grape.goal", "qubits", c.goal.qubits);
    }
  }

  if (j.contains("sweep")) {
    const Json& s = j.at("sweep");
    detail::check_keys(s, "sweep", {"n_qubits", "epsilon0", "depolarizing_per_gate"});
    detail::read_int_list(s, "sweep", "n_qubits", c.sweep.n_qubits);
    detail::read_number_list(s, "sweep", "epsilon0", c.sweep.epsilon0);
    detail::read_number_list(s, "sweep", "depolarizing_per_gate", c.sweep.depolarizing_per_gate);
  }

  if (j.contains("output")) {
    const Json& o = j.at("output");
    detail::check_keys(o, "output",
                       {"directory", "trajectory_csv", "summary_json", "steady_json", "sweep_csv",
                        "pulse_file", "history_csv", "verify_json"});
    detail::read_string(o, "output", "directory", c.output.directory);
    detail::read_string(o, "output", "trajectory_csv", c.output.trajectory_csv);
    detail::read_string(o, "output", "summary_json", c.output.summary_json);
    detail::read_string(o, "output", "steady_json", c.output.steady_json);
    detail::read_string(o, "output", "sweep_csv", c.output.sweep_csv);
    detail::read_string(o, "output", "pulse_file", c.output.pulse_file);
    detail::read_string(o, "output", "history_csv", c.output.history_csv);
    detail::read_string(o, "output", "verify_json", c.output.verify_json);
  }

  c.validate();
  return c;
}

inline RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

inline std::string default_config_text() {
  return config_to_json(RunConfig{}).dump(2) + "\n";
}

}  // namespace spincool
