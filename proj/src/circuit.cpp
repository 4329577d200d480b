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

namespace pz {

namespace {
constexpr Complex kJ{0.0, 1.0};
}

double charge_from_voltage(const SensorModel& sensor, double v_piezo) {
  sensor.validate();
  return sensor.c_piezo * v_piezo;
}

Complex internal_gain(const AmplifierConfig& cfg, double f) {
  cfg.validate();
  require_positive_frequency(f);
  const double w = 2.0 * kPi * f;
  return 2.0 * kJ * w * cfg.r_f / (1.0 + kJ * w * cfg.r_f * cfg.c_f);
}

Complex stage2_factor(const AmplifierConfig& cfg, double f) {
  cfg.validate();
  require_positive_frequency(f);
  const double w = 2.0 * kPi * f;
  const Complex lead =
      (1.0 + kJ * w * (cfg.r_a + cfg.r_b) * cfg.c_b) / (1.0 + kJ * w * cfg.r_b * cfg.c_b);
  const Complex out_hp = kJ * w * cfg.r_o * cfg.c_o / (1.0 + kJ * w * cfg.r_o * cfg.c_o);
  return lead * out_hp;
}

Complex overall_gain(const AmplifierConfig& cfg, double f) {
  return internal_gain(cfg, f) * stage2_factor(cfg, f);
}

double midband_gain(const AmplifierConfig& cfg) {
  cfg.validate();
  return 2.0 / cfg.c_f * (cfg.r_a + cfg.r_b) / cfg.r_b;
}

double dominant_pole_hz(const AmplifierConfig& cfg) {
  cfg.validate();
  return 1.0 / (2.0 * kPi * cfg.r_b * cfg.c_b);
}

double cuton_frequency_of(const std::function<double(double)>& magnitude,
                          double midband) {
  const double target = midband / std::sqrt(2.0);
  double lo = 1.0;
  double hi = 20e3;
  if (magnitude(lo) >= target) {
    throw NumericError("no -3 dB crossing: gain already above target at 1 Hz");
  }
  if (magnitude(hi) < target) {
    throw NumericError("no -3 dB crossing below 20 kHz");
  }
  // Bisection in log frequency; the magnitude is monotone through the
  // crossing for realistic configs.
  double llo = std::log(lo);
  double lhi = std::log(hi);
  while (lhi - llo > 1e-6) {
    const double lmid = 0.5 * (llo + lhi);
    if (magnitude(std::exp(lmid)) < target) {
      llo = lmid;
    } else {
      lhi = lmid;
    }
  }
  return std::exp(0.5 * (llo + lhi));
}

double cuton_frequency(const AmplifierConfig& cfg) {
  cfg.validate();
  return cuton_frequency_of([&](double f) { return std::abs(overall_gain(cfg, f)); },
                            midband_gain(cfg));
}

TransferFunction bode(const AmplifierConfig& cfg, const std::vector<double>& f_grid) {
  require_strictly_increasing(f_grid);
  TransferFunction tf;
  tf.freqs = f_grid;
  tf.values.reserve(f_grid.size());
  for (double f : f_grid) tf.values.push_back(overall_gain(cfg, f));
  return tf;
}

std::vector<double> log_grid(double f_lo, double f_hi, std::size_t points) {
  if (!(0 < f_lo && f_lo < f_hi)) throw std::invalid_argument("need 0 < f_lo < f_hi");
  if (points < 2) throw std::invalid_argument("need at least 2 grid points");
  std::vector<double> grid(points);
  const double llo = std::log10(f_lo);
  const double step = (std::log10(f_hi) - llo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = std::pow(10.0, llo + step * static_cast<double>(i));
  }
  grid.front() = f_lo;
  grid.back() = f_hi;
  return grid;
}

std::vector<double> log_grid_per_decade(double f_lo, double f_hi, std::size_t per_decade) {
  if (!(0 < f_lo && f_lo < f_hi)) throw std::invalid_argument("need 0 < f_lo < f_hi");
  if (per_decade == 0) throw std::invalid_argument("points per decade must be positive");
  const double decades = std::log10(f_hi / f_lo);
  const auto steps = static_cast<std::size_t>(std::llround(decades * static_cast<double>(per_decade)));
  return log_grid(f_lo, f_hi, steps + 1);
}

}  // namespace pz
