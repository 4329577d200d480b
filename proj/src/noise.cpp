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

#include "pzamp/noise.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "pzamp/circuit.hpp"

namespace pz {

namespace {

constexpr Complex kJ{0.0, 1.0};

double v2_oa1_effective(const OpAmpModel& oa1, double f, NoiseOptions opts) {
  double v2 = oa1.v_white * oa1.v_white;
  if (opts.flicker && oa1.flicker_corner > 0.0) {
    v2 *= 1.0 + oa1.flicker_corner / f;
  }
  return v2;
}

// Differential input capacitance seen by the first stage, excluding C_f.
double diff_input_capacitance(const SensorModel& sensor, const OpAmpModel* oa1,
                              NoiseOptions opts) {
  double c = sensor.c_piezo + sensor.c_par + 0.5 * sensor.c_gnd;
  if (opts.include_opamp_cin && oa1 != nullptr) c += 0.5 * oa1->c_in;
  return c;
}

}  // namespace

Complex z_diff(const SensorModel& sensor, double f, const OpAmpModel* oa1,
               NoiseOptions opts) {
  sensor.validate();
  require_positive_frequency(f);
  const double w = 2.0 * kPi * f;
  const double c = diff_input_capacitance(sensor, oa1, opts);
  const double g_leak = std::isinf(sensor.r_par) ? 0.0 : 1.0 / sensor.r_par;
  const Complex y = kJ * w * c + g_leak;
  if (y == Complex{0.0, 0.0}) {
    return Complex{std::numeric_limits<double>::infinity(), 0.0};
  }
  return 1.0 / y;
}

Complex z_feedback(const AmplifierConfig& cfg, double f) {
  cfg.validate();
  require_positive_frequency(f);
  const double w = 2.0 * kPi * f;
  return cfg.r_f / (1.0 + kJ * w * cfg.r_f * cfg.c_f);
}

double c_tot(const AmplifierConfig& cfg, const SensorModel& sensor,
             const OpAmpModel* oa1, NoiseOptions opts) {
  return diff_input_capacitance(sensor, oa1, opts) + 0.5 * cfg.c_f;
}

double johnson_current_density(const AmplifierConfig& cfg, const SensorModel& sensor) {
  cfg.validate();
  sensor.validate();
  return 4.0 * kBoltzmann * cfg.temperature / parallel(2.0 * cfg.r_f, sensor.r_par);
}

double oa1_voltage_noise_density(const AmplifierConfig& cfg, const SensorModel& sensor,
                                 const OpAmpModel& oa1, double f, NoiseOptions opts) {
  oa1.validate();
  sensor.validate();
  const double w = 2.0 * kPi * f;
  // (Z_diff + 2 Z_f) / (G_int Z_diff) rewritten via the input admittance so
  // an unloaded sensor (Z_diff -> infinity) stays finite.
  const double g_leak = std::isinf(sensor.r_par) ? 0.0 : 1.0 / sensor.r_par;
  const Complex y_diff = kJ * w * diff_input_capacitance(sensor, &oa1, opts) + g_leak;
  const Complex zf = z_feedback(cfg, f);
  const Complex ratio = (1.0 + 2.0 * zf * y_diff) / internal_gain(cfg, f);
  return w * w * std::norm(ratio) * 2.0 * v2_oa1_effective(oa1, f, opts);
}

double oa1_current_noise_density(const OpAmpModel& oa1, double f) {
  oa1.validate();
  require_positive_frequency(f);
  const double w = 2.0 * kPi * f;
  return (oa1.i_white * oa1.i_white + w * w * oa1.q_slope * oa1.q_slope) / 2.0;
}

double oa2_noise_density(const AmplifierConfig& cfg, const OpAmpModel& oa2, double f) {
  cfg.validate();
  oa2.validate();
  require_positive_frequency(f);
  const double w = 2.0 * kPi * f;
  const double v2 = oa2.v_white * oa2.v_white;
  return v2 * (1.0 / (cfg.r_f * cfg.r_f) + w * w * cfg.c_f * cfg.c_f);
}

double input_charge_noise_density(const AmplifierConfig& cfg, const SensorModel& sensor,
                                  const OpAmpModel& oa1, const OpAmpModel& oa2, double f,
                                  NoiseOptions opts) {
  require_positive_frequency(f);
  const double w = 2.0 * kPi * f;
  const double i2 = johnson_current_density(cfg, sensor) +
                    oa1_voltage_noise_density(cfg, sensor, oa1, f, opts) +
                    oa1_current_noise_density(oa1, f) +
                    oa2_noise_density(cfg, oa2, f);
  return i2 / (w * w);
}

double input_charge_noise_density_collected(const AmplifierConfig& cfg,
                                            const SensorModel& sensor,
                                            const OpAmpModel& oa1, const OpAmpModel& oa2,
                                            double f, NoiseOptions opts) {
  cfg.validate();
  sensor.validate();
  oa1.validate();
  oa2.validate();
  require_positive_frequency(f);
  const double w = 2.0 * kPi * f;
  const double v2_1 = v2_oa1_effective(oa1, f, opts);
  const double v2_2 = oa2.v_white * oa2.v_white;
  const double ct = c_tot(cfg, sensor, &oa1, opts);
  const double r_sh = parallel(2.0 * cfg.r_f, sensor.r_par);

  const double white = 2.0 * v2_1 * ct * ct +
                       0.5 * oa1.q_slope * oa1.q_slope +
                       v2_2 * cfg.c_f * cfg.c_f;
  const double low = 4.0 * kBoltzmann * cfg.temperature / r_sh +
                     0.5 * oa1.i_white * oa1.i_white +
                     2.0 * v2_1 / (r_sh * r_sh) +
                     v2_2 / (cfg.r_f * cfg.r_f);
  return white + low / (w * w);
}

double enc_over_band(const AmplifierConfig& cfg, const SensorModel& sensor,
                     const OpAmpModel& oa1, const OpAmpModel& oa2,
                     double f_lo, double f_hi, NoiseOptions opts) {
  if (!(0 < f_lo) || !(f_lo <= f_hi) || !std::isfinite(f_hi)) {
    throw std::invalid_argument("enc_over_band requires 0 < f_lo <= f_hi");
  }
  if (f_lo == f_hi) return 0.0;
  // Substitute u = ln f so the integrand spans fewer orders of magnitude.
  const auto integrand = [&](double u) {
    const double f = std::exp(u);
    return input_charge_noise_density(cfg, sensor, oa1, oa2, f, opts) * f;
  };
  double error = 0.0;
  const double q2 = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, std::log(f_lo), std::log(f_hi), 15, 1e-6, &error);
  if (!(q2 >= 0) || !std::isfinite(q2)) {
    throw NumericError("ENC quadrature failed");
  }
  return std::sqrt(q2);
}

Spectrum charge_noise_spectrum(const AmplifierConfig& cfg, const SensorModel& sensor,
                               const OpAmpModel& oa1, const OpAmpModel& oa2,
                               const std::vector<double>& grid, NoiseOptions opts) {
  require_strictly_increasing(grid);
  Spectrum s;
  s.unit = DensityUnit::kCoulomb2PerHz;
  s.freqs = grid;
  s.values.reserve(grid.size());
  for (double f : grid) {
    s.values.push_back(input_charge_noise_density(cfg, sensor, oa1, oa2, f, opts));
  }
  return s;
}

Spectrum output_noise_spectrum(const AmplifierConfig& cfg, const SensorModel& sensor,
                               const OpAmpModel& oa1, const OpAmpModel& oa2,
                               const std::vector<double>& grid, NoiseOptions opts) {
  Spectrum s = charge_noise_spectrum(cfg, sensor, oa1, oa2, grid, opts);
  s.unit = DensityUnit::kVolt2PerHz;
  for (std::size_t i = 0; i < s.freqs.size(); ++i) {
    s.values[i] *= std::norm(overall_gain(cfg, s.freqs[i]));
  }
  return s;
}

}  // namespace pz
