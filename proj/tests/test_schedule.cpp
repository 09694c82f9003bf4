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

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "spincool/schedule.hpp"
#include "test_util.hpp"

using namespace spincool;
using spincool_test::Rng;

TEST_CASE("ideal paper circuit reproduces the closed-form compression values") {
  BathModel bath;
  bath.epsilon0 = 0.01;
  NoiseModel noiseless;

  const Trajectory traj = run_schedule(uniform_state(3), paper_circuit(4), bath, noiseless);
  const std::vector<double> values = traj.target_over_bath_per_compression(0);
  REQUIRE(values.size() == 4);

  const double ideal[4] = {1.5, 1.75, 1.875, 1.9375};
  for (int k = 0; k < 4; ++k) {
    REQUIRE(std::abs(values[k] - ideal[k]) / ideal[k] <= 5e-4);
  }
  // per-round recurrence b' = b/2 + eps holds to cubic order in eps
  double b = 0.01;  // C2 bias right before the first compression, absolute
  for (int k = 0; k < 4; ++k) {
    const double predicted = b / 2.0 + 0.01;
    const double actual = values[k] * 0.01;
    REQUIRE(std::abs(actual - predicted) <= 10.0 * 0.01 * 0.01 * 0.01);
    b = actual;
  }
}

TEST_CASE("empty schedule leaves the state untouched") {
  const Trajectory traj =
      run_schedule(uniform_state(2), Schedule{}, BathModel{}, NoiseModel{});
  REQUIRE(traj.records.size() == 1);  // just the initial record
  CHECK(traj.records[0].label == "initial");
  CHECK(traj.final_state.probs() == uniform_state(2).probs());
}

TEST_CASE("trajectory bookkeeping") {
  BathModel bath;
  bath.epsilon0 = 0.02;
  bath.heating_per_refresh = 0.005;
  NoiseModel noise;

  const Trajectory traj = run_schedule(uniform_state(3), paper_circuit(2), bath, noise);
  // 6 steps in round 1, 4 steps in round 2, plus the initial record
  REQUIRE(traj.records.size() == 1 + 6 + 4);
  CHECK(traj.records[1].label == "refresh(2)");
  CHECK(traj.records[2].label == "swap(2,1)");
  CHECK(traj.records[6].label == "compress3(0,1,2)");
  CHECK(traj.records[6].round == 1);
  CHECK(traj.records[7].round == 2);

  // bath heats by (1-h) at every refresh; five refreshes in two rounds
  CHECK(traj.records.back().bath_bias ==
        Catch::Approx(0.02 * std::pow(0.995, 5)).margin(1e-15));

  // entropy is conserved by the permutation steps
  for (std::size_t i = 1; i < traj.records.size(); ++i) {
    const TrajectoryRecord& rec = traj.records[i];
    if (rec.label.rfind("refresh", 0) == 0) continue;
    REQUIRE(std::abs(rec.entropy_bits - traj.records[i - 1].entropy_bits) <= 1e-12);
  }
}

TEST_CASE("refresh of a hot uncorrelated reset qubit strictly lowers entropy") {
  Rng rng(91);
  for (int trial = 0; trial < 20; ++trial) {
    const double target = rng.uniform(0.1, 0.9);
    const double below = rng.uniform(0.0, target - 0.05);
    const PopulationState s = thermal_state(
        BiasVector({rng.uniform(0.0, 0.9), rng.uniform(0.0, 0.9), below}));
    const double before = shannon_entropy(s);
    const double after = shannon_entropy(refresh(s, 2, target, 1.0));
    REQUIRE(after < before);
  }
}

TEST_CASE("noise placement: refresh is clean, swap and compression are charged") {
  BathModel bath;
  bath.epsilon0 = 0.5;
  NoiseModel noise;
  noise.depolarizing_per_gate = 0.5;

  Schedule refresh_only;
  refresh_only.round = {StepRefresh{1}};
  refresh_only.rounds = 1;
  const Trajectory t1 = run_schedule(uniform_state(2), refresh_only, bath, noise);
  CHECK(t1.records.back().biases[1] == Catch::Approx(0.5).margin(1e-14));

  Schedule refresh_then_swap;
  refresh_then_swap.round = {StepRefresh{1}, StepSwap{0, 1}};
  refresh_then_swap.rounds = 1;
  const Trajectory t2 = run_schedule(uniform_state(2), refresh_then_swap, bath, noise);
  CHECK(t2.records.back().biases[0] == Catch::Approx(0.25).margin(1e-14));

  SECTION("per-qubit scope scales marginals the same way") {
    noise.scope = DepolarizingScope::kPerQubit;
    const Trajectory t3 = run_schedule(uniform_state(2), refresh_then_swap, bath, noise);
    CHECK(t3.records.back().biases[0] == Catch::Approx(0.25).margin(1e-13));
  }
}

TEST_CASE("rotating-frame relaxation discounts later refreshes") {
  BathModel bath;
  bath.epsilon0 = 0.3;
  bath.t1rho_s = 0.01;
  NoiseModel noise;  // swap duration 1.6 ms

  Schedule s;
  s.round = {StepSwap{0, 1}, StepRefresh{1}};
  s.rounds = 1;
  const Trajectory traj = run_schedule(uniform_state(2), s, bath, noise);
  CHECK(traj.records.back().biases[1] ==
        Catch::Approx(0.3 * std::exp(-1.6e-3 / 0.01)).margin(1e-14));
}

TEST_CASE("run_ppa") {
  NoiseModel noiseless;

  SECTION("zero rounds from uniform leaves zero biases") {
    BathModel bath;
    bath.epsilon0 = 1e-3;
    const Trajectory traj = run_ppa(3, bath, noiseless, 0);
    for (double b : traj.records.back().biases) CHECK(b == 0.0);
  }

  SECTION("needs at least two qubits") {
    CHECK_THROWS_AS(run_ppa(1, BathModel{}, noiseless, 1), DomainError);
  }

  SECTION("two-round recurrence toward the asymptote") {
    BathModel bath;
    bath.epsilon0 = 0.01;
    const double eps = bath.epsilon0;
    const Trajectory traj = run_ppa(3, bath, noiseless, 40);
    const std::vector<double> sorts = traj.target_over_bath_per_compression(0);
    REQUIRE(sorts.size() == 40);
    // the sort alternates a relabeling phase and a compression phase, so the
    // halving recurrence links every second round
    for (std::size_t k = 0; k + 2 < sorts.size(); ++k) {
      const double predicted = sorts[k] * eps / 2.0 + eps;
      REQUIRE(std::abs(sorts[k + 2] * eps - predicted) <= 10.0 * eps * eps * eps);
    }
  }
}

TEST_CASE("steady_state_bias") {
  NoiseModel noiseless;

  SECTION("three qubits approach twice the bath bias") {
    BathModel bath;
    bath.epsilon0 = 1e-3;
    long rounds = 0;
    const double steady = steady_state_bias(3, bath, noiseless, 1e-10, 100000, &rounds);
    CHECK(std::abs(steady - 2e-3) / 2e-3 <= 1e-2);
    CHECK(rounds > 10);
  }

  SECTION("matches the fixed point at eps = 0.01") {
    BathModel bath;
    bath.epsilon0 = 0.01;
    const double steady = steady_state_bias(3, bath, noiseless);
    CHECK(std::abs(steady - 0.02) <= 1e-4);
  }

  SECTION("four qubits reach four times the bath bias") {
    BathModel bath;
    bath.epsilon0 = 1e-4;
    const double steady = steady_state_bias(4, bath, noiseless);
    CHECK(std::abs(steady - 4e-4) / 4e-4 <= 0.02);
  }

  SECTION("zero bath bias pins the register at zero") {
    BathModel bath;
    bath.epsilon0 = 0.0;
    CHECK(steady_state_bias(3, bath, noiseless) == Catch::Approx(0.0).margin(1e-15));
  }

  SECTION("round budget exhaustion raises a convergence error with iterates") {
    BathModel bath;
    bath.epsilon0 = 0.01;
    try {
      steady_state_bias(3, bath, noiseless, 1e-30, 5);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(std::isfinite(e.previous_bias));
      CHECK(std::isfinite(e.last_bias));
      CHECK(e.last_bias >= e.previous_bias - 1e-12);
    }
  }

  SECTION("bad tolerance") {
    CHECK_THROWS_AS(steady_state_bias(3, BathModel{}, noiseless, 0.0, 10), DomainError);
  }
}

TEST_CASE("schedule validation rejects bad indices") {
  Schedule s;
  s.round = {StepSwap{0, 5}};
  s.rounds = 1;
  CHECK_THROWS_AS(run_schedule(uniform_state(2), s, BathModel{}, NoiseModel{}), DomainError);

  Schedule c;
  c.round = {StepCompress3{0, 1, 1}};
  c.rounds = 1;
  CHECK_THROWS_AS(run_schedule(uniform_state(3), c, BathModel{}, NoiseModel{}), DomainError);
}
