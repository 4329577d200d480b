// Copyright 2026 The pzamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pzamp/circuit.hpp"

#include <cmath>

#include "doctest.h"

using namespace pz;

namespace {
const AmplifierConfig kDefaults{};
}

TEST_CASE("midband gain of the reference build is 2e13 V/C") {
  CHECK(midband_gain(kDefaults) == doctest::Approx(2.0e13).epsilon(1e-12));
  // (2/Cf) * (Ra+Rb)/Rb with a different divider ratio.
  AmplifierConfig cfg = kDefaults;
  cfg.r_a = 40e3;
  CHECK(midband_gain(cfg) == doctest::Approx(1.0e13).epsilon(1e-12));
}

TEST_CASE("dominant high-pass pole sits at 1/(2 pi Rb Cb)") {
  CHECK(dominant_pole_hz(kDefaults) == doctest::Approx(159.1549431).epsilon(1e-9));
}

TEST_CASE("first-stage gain magnitude and phase at 100 Hz") {
  // Hand evaluation: |2wRf| = 1.25664e13, wRfCf = 6.28319, so the
  // magnitude is 1.25664e13 / sqrt(1 + 39.478) and the phase is
  // 90 deg - atan(6.28319).
  const Complex g = internal_gain(kDefaults, 100.0);
  CHECK(std::abs(g) == doctest::Approx(1.97513e12).epsilon(1e-5));
  CHECK(std::arg(g) * 180.0 / kPi == doctest::Approx(9.043).epsilon(1e-3));
}

TEST_CASE("first-stage gain approaches 2/Cf well above its corner") {
  CHECK(std::abs(internal_gain(kDefaults, 10e6)) ==
        doctest::Approx(2.0e12).epsilon(1e-9));
}

TEST_CASE("second-stage factor approaches (Ra+Rb)/Rb at high frequency") {
  CHECK(std::abs(stage2_factor(kDefaults, 10e6)) == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("overall gain factors into first stage times the rest") {
  for (double f : {20.0, 100.0, 1e3, 20e3}) {
    const Complex lhs = overall_gain(kDefaults, f);
    const Complex rhs = internal_gain(kDefaults, f) * stage2_factor(kDefaults, f);
    CHECK(std::abs(lhs - rhs) / std::abs(lhs) < 1e-12);
  }
}

TEST_CASE("overall gain plateaus at the midband value") {
  CHECK(std::abs(overall_gain(kDefaults, 5e3)) ==
        doctest::Approx(2.0e13).epsilon(2e-3));
  CHECK(std::abs(overall_gain(kDefaults, 10e6)) ==
        doctest::Approx(2.0e13).epsilon(1e-6));
}

TEST_CASE("zero or negative frequency is rejected") {
  CHECK_THROWS_AS(internal_gain(kDefaults, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(overall_gain(kDefaults, -10.0), std::invalid_argument);
}

TEST_CASE("cut-on satisfies its defining equation") {
  const double f3 = cuton_frequency(kDefaults);
  CHECK(f3 > dominant_pole_hz(kDefaults) * 0.5);
  CHECK(f3 < 1e3);
  const double target = midband_gain(kDefaults) / std::sqrt(2.0);
  CHECK(std::abs(overall_gain(kDefaults, f3)) ==
        doctest::Approx(target).epsilon(1e-5));
}

TEST_CASE("generic cut-on search matches the config-based one") {
  const auto mag = [&](double f) { return std::abs(overall_gain(kDefaults, f)); };
  const double a = cuton_frequency(kDefaults);
  const double b = cuton_frequency_of(mag, midband_gain(kDefaults));
  CHECK(a == doctest::Approx(b).epsilon(1e-6));
}

TEST_CASE("charge from piezo voltage is q = C v") {
  SensorModel sensor;
  CHECK(charge_from_voltage(sensor, 2.0) == doctest::Approx(20e-12).epsilon(1e-12));
  CHECK(charge_from_voltage(SensorModel::unloaded(), 1.0) == 0.0);
}

TEST_CASE("bode on a single-point grid equals the pointwise gain") {
  const TransferFunction tf = bode(kDefaults, {1e3});
  REQUIRE(tf.values.size() == 1);
  CHECK(tf.values[0] == overall_gain(kDefaults, 1e3));
}

TEST_CASE("bode rejects non-increasing grids") {
  CHECK_THROWS_AS(bode(kDefaults, {100.0, 100.0}), std::invalid_argument);
  CHECK_THROWS_AS(bode(kDefaults, {200.0, 100.0}), std::invalid_argument);
}

TEST_CASE("log grids hit both endpoints and the documented row count") {
  const auto g = log_grid_per_decade(10.0, 100e3, 200);
  CHECK(g.size() == 801);
  CHECK(g.front() == doctest::Approx(10.0));
  CHECK(g.back() == doctest::Approx(100e3));
  const auto h = log_grid(10.0, 1000.0, 3);
  REQUIRE(h.size() == 3);
  CHECK(h[1] == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("config validation rejects nonpositive parts") {
  AmplifierConfig cfg = kDefaults;
  cfg.c_f = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = kDefaults;
  cfg.r_b = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
