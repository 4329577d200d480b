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
//
// Exercises the shared library strictly through the C header, the way an
// external binding would.

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "pzamp.h"

namespace {

struct Fixture {
  pz_config* cfg = pz_config_default();
  pz_sensor* sensor = pz_sensor_default();
  pz_registry* reg = pz_registry_builtin();
  ~Fixture() {
    pz_config_free(cfg);
    pz_sensor_free(sensor);
    pz_registry_free(reg);
  }
};

}  // namespace

TEST_CASE("version and error message plumbing") {
  CHECK(std::strlen(pz_version()) > 0);
  CHECK(pz_last_error() != nullptr);
}

TEST_CASE("config handle: defaults, fields, JSON") {
  Fixture fx;
  double v = 0.0;
  CHECK(pz_config_get(fx.cfg, "r_f", &v) == PZ_OK);
  CHECK(v == 10e9);
  CHECK(pz_config_set(fx.cfg, "r_f", 5e9) == PZ_OK);
  CHECK(pz_config_get(fx.cfg, "r_f", &v) == PZ_OK);
  CHECK(v == 5e9);

  CHECK(pz_config_set(fx.cfg, "r_f", -1.0) == PZ_ERR_INVALID);
  CHECK(std::strlen(pz_last_error()) > 0);
  CHECK(pz_config_set(fx.cfg, "bogus", 1.0) == PZ_ERR_INVALID);

  char* json = pz_config_to_json(fx.cfg);
  REQUIRE(json != nullptr);
  pz_config* copy = pz_config_from_json(json);
  REQUIRE(copy != nullptr);
  CHECK(pz_config_get(copy, "r_f", &v) == PZ_OK);
  CHECK(v == 5e9);
  pz_config_free(copy);
  pz_string_free(json);

  CHECK(pz_config_from_json("{broken") == nullptr);
  CHECK(std::strlen(pz_last_error()) > 0);
}

TEST_CASE("opamp selection on the config") {
  Fixture fx;
  CHECK(std::string(pz_config_opamp(fx.cfg, 1)) == "LTC6240");
  CHECK(pz_config_set_opamp(fx.cfg, 1, "LTC6078") == PZ_OK);
  CHECK(std::string(pz_config_opamp(fx.cfg, 1)) == "LTC6078");
  CHECK(pz_config_set_opamp(fx.cfg, 3, "X") == PZ_ERR_INVALID);
}

TEST_CASE("registry lookup") {
  Fixture fx;
  double v_white = 0.0, power = 0.0;
  CHECK(pz_registry_opamp(fx.reg, "ltc6240", &v_white, nullptr, nullptr, nullptr,
                          &power) == PZ_OK);
  CHECK(v_white == 7e-9);
  CHECK(power == 6.7e-3);
  CHECK(pz_registry_opamp(fx.reg, "OPA999", &v_white, nullptr, nullptr, nullptr,
                          nullptr) == PZ_ERR_INVALID);
}

TEST_CASE("gain surface") {
  Fixture fx;
  double gain = 0.0;
  CHECK(pz_midband_gain(fx.cfg, &gain) == PZ_OK);
  CHECK(gain == doctest::Approx(2e13).epsilon(1e-12));
  double pole = 0.0;
  CHECK(pz_dominant_pole(fx.cfg, &pole) == PZ_OK);
  CHECK(pole == doctest::Approx(159.1549).epsilon(1e-6));
  double re = 0.0, im = 0.0;
  CHECK(pz_internal_gain(fx.cfg, 100.0, &re, &im) == PZ_OK);
  CHECK(std::hypot(re, im) == doctest::Approx(1.97513e12).epsilon(1e-5));
  CHECK(pz_overall_gain(fx.cfg, 0.0, &re, &im) == PZ_ERR_INVALID);

  const std::vector<double> freqs{100.0, 1e3, 1e4};
  std::vector<double> mag(3), phase(3);
  CHECK(pz_bode(fx.cfg, freqs.data(), freqs.size(), mag.data(), phase.data()) == PZ_OK);
  CHECK(mag[2] == doctest::Approx(2e13).epsilon(1e-2));
  CHECK(pz_bode(fx.cfg, freqs.data(), 0, mag.data(), phase.data()) == PZ_ERR_INVALID);
}

TEST_CASE("noise and ENC surface") {
  Fixture fx;
  const std::vector<double> freqs{200.0, 1e3, 20e3};
  std::vector<double> density(3);
  CHECK(pz_charge_noise_density(fx.cfg, fx.sensor, fx.reg, freqs.data(), freqs.size(),
                                density.data()) == PZ_OK);
  for (double d : density) CHECK(d > 0);
  double enc = 0.0;
  CHECK(pz_enc(fx.cfg, fx.sensor, fx.reg, 200.0, 20e3, &enc) == PZ_OK);
  CHECK(enc == doctest::Approx(1.98025e-17).epsilon(1e-4));
  CHECK(pz_enc(fx.cfg, fx.sensor, fx.reg, 20e3, 200.0, &enc) == PZ_ERR_INVALID);

  pz_sensor* bare = pz_sensor_unloaded();
  CHECK(pz_enc(fx.cfg, bare, fx.reg, 200.0, 20e3, &enc) == PZ_OK);
  CHECK(enc == doctest::Approx(1.15743e-17).epsilon(1e-4));
  pz_sensor_free(bare);

  // Unknown op-amp reference surfaces as an invalid-argument failure.
  CHECK(pz_config_set_opamp(fx.cfg, 1, "OPA999") == PZ_OK);
  CHECK(pz_enc(fx.cfg, fx.sensor, fx.reg, 200.0, 20e3, &enc) == PZ_ERR_INVALID);
}

TEST_CASE("oracle comparisons through the C API") {
  Fixture fx;
  double err = 1.0;
  CHECK(pz_oracle_gain_error(fx.cfg, fx.sensor, 10.0, 100e3, 50, &err) == PZ_OK);
  CHECK(err < 1e-9);
  CHECK(pz_oracle_noise_error(fx.cfg, fx.sensor, fx.reg, 100.0, 20e3, 20, &err) == PZ_OK);
  CHECK(err < 0.01);
  char* netlist = pz_netlist_json(fx.cfg, fx.sensor);
  REQUIRE(netlist != nullptr);
  CHECK(std::string(netlist).find("vout") != std::string::npos);
  pz_string_free(netlist);
}

TEST_CASE("third-octave band two-call idiom") {
  std::size_t count = 0;
  CHECK(pz_third_octave_bands(100.0, 7000.0, nullptr, nullptr, 0, &count) == PZ_OK);
  CHECK(count == 19);
  std::vector<double> centers(count), widths(count);
  CHECK(pz_third_octave_bands(100.0, 7000.0, centers.data(), widths.data(), count,
                              &count) == PZ_OK);
  CHECK(centers[0] < centers.back());
  std::size_t too_small = 0;
  CHECK(pz_third_octave_bands(100.0, 7000.0, centers.data(), widths.data(), 2,
                              &too_small) == PZ_ERR_INVALID);
  CHECK(pz_a_weight_db(1000.0) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("EIN surface with coverage failure") {
  const std::vector<double> grid{100.0, 1000.0, 10000.0};
  const std::vector<double> density{1e-36, 1e-37, 1e-38};
  const std::vector<double> sens_f{500.0, 2000.0};
  const std::vector<double> sens_v{1e-15, 1e-15};
  std::size_t count = 0;
  CHECK(pz_third_octave_bands(800.0, 1250.0, nullptr, nullptr, 0, &count) == PZ_OK);
  std::vector<double> centers(count), ein(count);
  CHECK(pz_third_octave_bands(800.0, 1250.0, centers.data(), nullptr, count, &count) ==
        PZ_OK);
  CHECK(pz_ein_bands(grid.data(), density.data(), grid.size(), sens_f.data(),
                     sens_v.data(), sens_f.size(), centers.data(), count,
                     ein.data()) == PZ_OK);
  double total = 0.0;
  CHECK(pz_ein_total(ein.data(), centers.data(), count, 1, &total) == PZ_OK);
  CHECK(std::isfinite(total));
  // Sensitivity grid that misses the band entirely.
  const std::vector<double> far_f{20000.0, 40000.0};
  CHECK(pz_ein_bands(grid.data(), density.data(), grid.size(), far_f.data(),
                     sens_v.data(), far_f.size(), centers.data(), count,
                     ein.data()) == PZ_ERR_COVERAGE);
}

TEST_CASE("analysis surface") {
  const double fs = 48000.0;
  std::vector<double> samples(1 << 16);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = std::sin(2.0 * 3.14159265358979 * 1000.0 * static_cast<double>(i) / fs);
  }
  double thd = 1.0;
  CHECK(pz_thd(samples.data(), samples.size(), fs, 1000.0, 5, &thd) == PZ_OK);
  CHECK(thd < 1e-4);

  std::size_t bins = 0;
  CHECK(pz_power_spectrum(samples.data(), samples.size(), fs, 1024, 0.5, nullptr,
                          nullptr, &bins) == PZ_OK);
  CHECK(bins == 513);
  std::vector<double> freqs(bins), density(bins);
  CHECK(pz_power_spectrum(samples.data(), samples.size(), fs, 1024, 0.5, freqs.data(),
                          density.data(), &bins) == PZ_OK);
  CHECK(bins == 513);

  double farads = 0.0;
  CHECK(pz_emi_capacitance(2e13 * 0.6e-15, 1.0, 2e13, &farads) == PZ_OK);
  CHECK(farads == doctest::Approx(0.6e-15).epsilon(1e-9));
}

TEST_CASE("sweep surface") {
  Fixture fx;
  const char* spec = R"({
    "axes": {"oa1": ["LT1792", "LTC6240", "LTC6081", "LTC6078"]},
    "band": [200, 20000]
  })";
  pz_sweep* sweep = pz_sweep_run(spec, fx.reg);
  REQUIRE(sweep != nullptr);
  CHECK(pz_sweep_count(sweep) == 4);
  double best_enc = 1.0;
  std::string best;
  for (std::size_t i = 0; i < 4; ++i) {
    double enc = 0.0;
    CHECK(pz_sweep_point(sweep, i, nullptr, nullptr, &enc, nullptr, nullptr, nullptr,
                         nullptr) == PZ_OK);
    if (enc < best_enc) {
      best_enc = enc;
      best = pz_sweep_opamp(sweep, i, 1);
    }
  }
  CHECK(best == "LTC6240");
  char* csv = pz_sweep_csv(sweep, "manifest.json");
  REQUIRE(csv != nullptr);
  CHECK(std::string(csv).find("pareto") != std::string::npos);
  pz_string_free(csv);
  pz_sweep_free(sweep);

  CHECK(pz_sweep_run("{}", fx.reg) == nullptr);  // no axes
  CHECK(std::strlen(pz_last_error()) > 0);
}
