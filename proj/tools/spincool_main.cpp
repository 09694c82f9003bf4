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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spincool/commands.hpp"
#include "spincool/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"spincool: spin-register cooling simulations and robust pulse synthesis"};
  app.require_subcommand(0, 1);

  bool print_default = false;
  app.add_flag("--print-default-config", print_default,
               "print the full default configuration (all sections, all defaults) and exit");

  std::string config_path;
  std::string pulse_path;

  CLI::App* cool = app.add_subcommand("cool", "diagonal-state cooling simulations");
  cool->require_subcommand(1);
  CLI::App* cool_run = cool->add_subcommand(
      "run", "execute the configured schedule; writes the trajectory CSV and a summary JSON");
  CLI::App* cool_steady = cool->add_subcommand(
      "steady", "iterate cooling rounds to the fixed point; writes a JSON report");
  CLI::App* cool_sweep = cool->add_subcommand(
      "sweep", "steady-state bias over the configured (n, bath bias, noise) grid; writes a CSV");

  CLI::App* pulse = app.add_subcommand("pulse", "robust control-pulse commands");
  pulse->require_subcommand(1);
  CLI::App* pulse_grape = pulse->add_subcommand(
      "grape", "synthesize a pulse for the configured goal gate; writes pulse file + history CSV");
  CLI::App* pulse_verify =
      pulse->add_subcommand("verify", "fidelity report for an existing pulse file");
  pulse_verify->add_option("--pulse", pulse_path,
                           "pulse file to check (default: output.pulse_file from the config)");

  for (CLI::App* sub : {cool_run, cool_steady, cool_sweep, pulse_grape, pulse_verify}) {
    sub->add_option("--config", config_path, "JSON configuration file")->required();
  }

  CLI11_PARSE(app, argc, argv);

  if (print_default) {
    std::cout << spincool::default_config_text();
    return spincool::kExitOk;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return spincool::kExitInvalidConfig;
  }

  return spincool::execute_guarded([&]() -> int {
    const spincool::RunConfig config = spincool::load_config_file(config_path);
    if (cool_run->parsed()) return spincool::cmd_cool_run(config);
    if (cool_steady->parsed()) return spincool::cmd_cool_steady(config);
    if (cool_sweep->parsed()) return spincool::cmd_cool_sweep(config);
    if (pulse_grape->parsed()) return spincool::cmd_pulse_grape(config);
    if (pulse_verify->parsed()) return spincool::cmd_pulse_verify(config, pulse_path);
    std::cerr << app.help();
    return spincool::kExitInvalidConfig;
  });
}
