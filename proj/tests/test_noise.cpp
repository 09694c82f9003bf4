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

#include "spincool/noise.hpp"
#include "test_util.hpp"

using namespace spincool;
using spincool_test::Rng;

TEST_CASE("apply_depolarizing mixes toward uniform") {
  SECTION("p = 0 is the identity") {
    Rng rng(3);
    const PopulationState s = spincool_test::random_state(rng, 3);
    const PopulationState out = apply_depolarizing(s, 0.0);
    for (std::size_t k = 0; k < s.dim(); ++k) REQUIRE(out.prob(k) == s.prob(k));
  }
  SECTION("p = 1 is the uniform state") {
    Rng rng(4);
    const PopulationState out = apply_depolarizing(spincool_test::random_state(rng, 2), 1.0);
    for (std::size_t k = 0; k < 4; ++k) REQUIRE(out.prob(k) == Catch::Approx(0.25).margin(1e-15));
  }
  SECTION("biases scale by exactly 1 - p") {
    const PopulationState s = thermal_state(BiasVector({0.4, 0.2}));
    const PopulationState out = apply_depolarizing(s, 0.01);
    CHECK(qubit_bias(out, 0) == Catch::Approx(0.396).margin(1e-15));
    CHECK(qubit_bias(out, 1) == Catch::Approx(0.198).margin(1e-15));
  }
  SECTION("probability domain") {
    CHECK_THROWS_AS(apply_depolarizing(uniform_state(1), -0.1), DomainError);
    CHECK_THROWS_AS(apply_depolarizing(uniform_state(1), 1.1), DomainError);
  }
}

TEST_CASE("depolarizing channels stay normalized and compose") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const PopulationState s = spincool_test::random_state(rng, 4);
    const double p = rng.uniform(0.0, 1.0);
    const double q = rng.uniform(0.0, 1.0);

    const PopulationState once = apply_depolarizing(s, p);
    once.check_valid();  // valid state for all p

    const PopulationState twice = apply_depolarizing(once, q);
    const PopulationState merged = apply_depolarizing(s, 1.0 - (1.0 - p) * (1.0 - q));
    for (std::size_t k = 0; k < s.dim(); ++k) {
      REQUIRE(std::abs(twice.prob(k) - merged.prob(k)) <= 1e-14);
    }
  }
}

TEST_CASE("per-qubit depolarizing scales marginals like the global channel") {
  Rng rng(78);
  for (int trial = 0; trial < 10; ++trial) {
    const PopulationState s = spincool_test::random_state(rng, 3);
    const double p = rng.uniform(0.0, 0.5);
    const PopulationState out = apply_depolarizing_per_qubit(s, p);
    out.check_valid();
    for (int i = 0; i < 3; ++i) {
      REQUIRE(qubit_bias(out, i) == Catch::Approx((1.0 - p) * qubit_bias(s, i)).margin(1e-13));
    }
  }
  // but it erases correlations faster than the global channel for p < 1
  const PopulationState corr(2, {0.5, 0.0, 0.0, 0.5});
  const PopulationState global = apply_depolarizing(corr, 0.3);
  const PopulationState local = apply_depolarizing_per_qubit(corr, 0.3);
  CHECK(local.prob(0) < global.prob(0));
}

TEST_CASE("bath_bias_at") {
  BathModel bath;
  bath.epsilon0 = 0.4;

  SECTION("fresh bath") { CHECK(bath_bias_at(bath, 0, 0.0) == 0.4); }

  SECTION("finite-size heating compounds per refresh") {
    bath.heating_per_refresh = 0.005;
    CHECK(bath_bias_at(bath, 4, 0.0) ==
          Catch::Approx(0.4 * std::pow(0.995, 4)).margin(1e-15));
    CHECK(bath_bias_at(bath, 4, 123.0) == bath_bias_at(bath, 4, 0.0));  // no t1rho
  }

  SECTION("rotating-frame relaxation decays exponentially") {
    bath.t1rho_s = 2.5;
    CHECK(bath_bias_at(bath, 0, 2.5) == Catch::Approx(0.4 / std::exp(1.0)).margin(1e-15));
  }

  SECTION("monotone non-increasing along each argument") {
    bath.heating_per_refresh = 0.01;
    bath.t1rho_s = 1.0;
    for (double t : {0.0, 0.1, 0.5, 2.0}) {
      for (long count = 0; count < 5; ++count) {
        REQUIRE(bath_bias_at(bath, count + 1, t) <= bath_bias_at(bath, count, t) + 1e-15);
      }
    }
    for (long count : {0L, 3L}) {
      double previous = bath_bias_at(bath, count, 0.0);
      for (double t : {0.1, 0.5, 2.0}) {
        const double now = bath_bias_at(bath, count, t);
        REQUIRE(now <= previous + 1e-15);
        previous = now;
      }
    }
  }

  SECTION("argument domain") {
    CHECK_THROWS_AS(bath_bias_at(bath, -1, 0.0), DomainError);
    CHECK_THROWS_AS(bath_bias_at(bath, 0, -1.0), DomainError);
  }
}

TEST_CASE("model validation") {
  NoiseModel noise;
  noise.depolarizing_per_gate = 1.2;
  CHECK_THROWS_AS(noise.validate(), DomainError);

  BathModel bath;
  bath.epsilon0 = -0.1;
  CHECK_THROWS_AS(bath.validate(), DomainError);
  bath.epsilon0 = 0.5;
  bath.heating_per_refresh = 1.0;
  CHECK_THROWS_AS(bath.validate(), DomainError);

  GateDurations durations;
  durations.swap_s = -1.0;
  CHECK_THROWS_AS(durations.validate(), DomainError);
}

TEST_CASE("noise convention string names the charged steps") {
  NoiseModel noise;
  CHECK(noise.convention() ==
        "global depolarizing applied once after each {swap,compress,ppa_sort} step; other steps "
        "leave the register noiseless");
}
