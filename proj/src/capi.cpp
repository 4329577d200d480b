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

#include "pzamp.h"

#include <cstring>
#include <nlohmann/json.hpp>
#include <string>

#include "pzamp/acoustics.hpp"
#include "pzamp/circuit.hpp"
#include "pzamp/dsp.hpp"
#include "pzamp/explore.hpp"
#include "pzamp/mna.hpp"
#include "pzamp/noise.hpp"
#include "pzamp/registry.hpp"
#include "pzamp/serialize.hpp"
#include "pzamp/types.hpp"

struct pz_config {
  pz::AmplifierConfig cfg;
};
struct pz_sensor {
  pz::SensorModel sensor;
};
struct pz_registry {
  pz::OpAmpRegistry reg;
};
struct pz_sweep {
  std::vector<pz::DesignPoint> points;
};

namespace {

thread_local std::string t_last_error = "";

pz_status fail(pz_status code, const char* what) {
  t_last_error = what;
  return code;
}

// Maps C++ exceptions onto status codes.
template <typename Fn>
pz_status guarded(Fn&& fn) {
  try {
    fn();
    return PZ_OK;
  } catch (const pz::CoverageError& e) {
    return fail(PZ_ERR_COVERAGE, e.what());
  } catch (const pz::NumericError& e) {
    return fail(PZ_ERR_NUMERIC, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(PZ_ERR_PARSE, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(PZ_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(PZ_ERR_NUMERIC, e.what());
  }
}

template <typename Fn>
auto guarded_ptr(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return nullptr;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pz_status check_args(bool ok) {
  if (!ok) return fail(PZ_ERR_INVALID, "null argument");
  return PZ_OK;
}

}  // namespace

extern "C" {

const char* pz_last_error(void) { return t_last_error.c_str(); }
const char* pz_version(void) { return "0.1.0"; }
void pz_string_free(char* s) { std::free(s); }

/* ---- config ---- */

pz_config* pz_config_default(void) { return new pz_config{}; }

pz_config* pz_config_from_json(const char* json_text) {
  if (!json_text) {
    t_last_error = "null json";
    return nullptr;
  }
  return guarded_ptr([&]() -> pz_config* {
    try {
      return new pz_config{pz::config_from_json(json_text)};
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("config JSON parse error: ") + e.what());
    }
  });
}

char* pz_config_to_json(const pz_config* cfg) {
  if (!cfg) return nullptr;
  return dup_string(pz::config_to_json(cfg->cfg));
}

void pz_config_free(pz_config* cfg) { delete cfg; }

pz_status pz_config_set(pz_config* cfg, const char* field, double value) {
  if (auto s = check_args(cfg && field); s != PZ_OK) return s;
  return guarded([&] {
    pz::AmplifierConfig c = cfg->cfg;
    const std::string f = field;
    if (f == "r_f") c.r_f = value;
    else if (f == "c_f") c.c_f = value;
    else if (f == "r_a") c.r_a = value;
    else if (f == "r_b") c.r_b = value;
    else if (f == "c_b") c.c_b = value;
    else if (f == "r_o") c.r_o = value;
    else if (f == "c_o") c.c_o = value;
    else if (f == "temperature") c.temperature = value;
    else throw std::invalid_argument("unknown config field: " + f);
    c.validate();
    cfg->cfg = c;
  });
}

pz_status pz_config_get(const pz_config* cfg, const char* field, double* value) {
  if (auto s = check_args(cfg && field && value); s != PZ_OK) return s;
  return guarded([&] {
    const pz::AmplifierConfig& c = cfg->cfg;
    const std::string f = field;
    if (f == "r_f") *value = c.r_f;
    else if (f == "c_f") *value = c.c_f;
    else if (f == "r_a") *value = c.r_a;
    else if (f == "r_b") *value = c.r_b;
    else if (f == "c_b") *value = c.c_b;
    else if (f == "r_o") *value = c.r_o;
    else if (f == "c_o") *value = c.c_o;
    else if (f == "temperature") *value = c.temperature;
    else throw std::invalid_argument("unknown config field: " + f);
  });
}

pz_status pz_config_set_opamp(pz_config* cfg, int stage, const char* name) {
  if (auto s = check_args(cfg && name); s != PZ_OK) return s;
  if (stage == 1) cfg->cfg.oa1_ref = name;
  else if (stage == 2) cfg->cfg.oa2_ref = name;
  else return fail(PZ_ERR_INVALID, "stage must be 1 or 2");
  return PZ_OK;
}

const char* pz_config_opamp(const pz_config* cfg, int stage) {
  if (!cfg) return "";
  return stage == 2 ? cfg->cfg.oa2_ref.c_str() : cfg->cfg.oa1_ref.c_str();
}

/* ---- sensor ---- */

pz_sensor* pz_sensor_default(void) { return new pz_sensor{}; }
pz_sensor* pz_sensor_unloaded(void) { return new pz_sensor{pz::SensorModel::unloaded()}; }

pz_sensor* pz_sensor_from_json(const char* json_text) {
  if (!json_text) {
    t_last_error = "null json";
    return nullptr;
  }
  return guarded_ptr([&]() -> pz_sensor* {
    try {
      return new pz_sensor{pz::sensor_from_json(json_text)};
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("sensor JSON parse error: ") + e.what());
    }
  });
}

char* pz_sensor_to_json(const pz_sensor* sensor) {
  if (!sensor) return nullptr;
  return dup_string(pz::sensor_to_json(sensor->sensor));
}

void pz_sensor_free(pz_sensor* sensor) { delete sensor; }

pz_status pz_sensor_set(pz_sensor* sensor, const char* field, double value) {
  if (auto s = check_args(sensor && field); s != PZ_OK) return s;
  return guarded([&] {
    pz::SensorModel m = sensor->sensor;
    const std::string f = field;
    if (f == "c_piezo") m.c_piezo = value;
    else if (f == "c_par") m.c_par = value;
    else if (f == "r_par") m.r_par = value;
    else if (f == "c_gnd") m.c_gnd = value;
    else throw std::invalid_argument("unknown sensor field: " + f);
    m.validate();
    sensor->sensor = m;
  });
}

pz_status pz_sensor_get(const pz_sensor* sensor, const char* field, double* value) {
  if (auto s = check_args(sensor && field && value); s != PZ_OK) return s;
  return guarded([&] {
    const pz::SensorModel& m = sensor->sensor;
    const std::string f = field;
    if (f == "c_piezo") *value = m.c_piezo;
    else if (f == "c_par") *value = m.c_par;
    else if (f == "r_par") *value = m.r_par;
    else if (f == "c_gnd") *value = m.c_gnd;
    else throw std::invalid_argument("unknown sensor field: " + f);
  });
}

/* ---- registry ---- */

pz_registry* pz_registry_builtin(void) {
  return new pz_registry{pz::OpAmpRegistry::builtin()};
}

pz_registry* pz_registry_from_json(const char* json_text) {
  if (!json_text) {
    t_last_error = "null json";
    return nullptr;
  }
  return guarded_ptr([&]() -> pz_registry* {
    try {
      return new pz_registry{pz::OpAmpRegistry::from_json(json_text)};
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("registry JSON parse error: ") + e.what());
    }
  });
}

char* pz_registry_to_json(const pz_registry* reg) {
  if (!reg) return nullptr;
  return dup_string(reg->reg.to_json());
}

void pz_registry_free(pz_registry* reg) { delete reg; }

pz_status pz_registry_opamp(const pz_registry* reg, const char* name, double* v_white,
                            double* i_white, double* q_slope, double* c_in, double* power) {
  if (auto s = check_args(reg && name); s != PZ_OK) return s;
  return guarded([&] {
    const pz::OpAmpModel& m = reg->reg.get(name);
    if (v_white) *v_white = m.v_white;
    if (i_white) *i_white = m.i_white;
    if (q_slope) *q_slope = m.q_slope;
    if (c_in) *c_in = m.c_in;
    if (power) *power = m.power;
  });
}

/* ---- transfer functions ---- */

pz_status pz_internal_gain(const pz_config* cfg, double f, double* re, double* im) {
  if (auto s = check_args(cfg && re && im); s != PZ_OK) return s;
  return guarded([&] {
    const pz::Complex g = pz::internal_gain(cfg->cfg, f);
    *re = g.real();
    *im = g.imag();
  });
}

pz_status pz_overall_gain(const pz_config* cfg, double f, double* re, double* im) {
  if (auto s = check_args(cfg && re && im); s != PZ_OK) return s;
  return guarded([&] {
    const pz::Complex g = pz::overall_gain(cfg->cfg, f);
    *re = g.real();
    *im = g.imag();
  });
}

pz_status pz_midband_gain(const pz_config* cfg, double* gain) {
  if (auto s = check_args(cfg && gain); s != PZ_OK) return s;
  return guarded([&] { *gain = pz::midband_gain(cfg->cfg); });
}

pz_status pz_dominant_pole(const pz_config* cfg, double* f) {
  if (auto s = check_args(cfg && f); s != PZ_OK) return s;
  return guarded([&] { *f = pz::dominant_pole_hz(cfg->cfg); });
}

pz_status pz_cuton_frequency(const pz_config* cfg, double* f) {
  if (auto s = check_args(cfg && f); s != PZ_OK) return s;
  return guarded([&] { *f = pz::cuton_frequency(cfg->cfg); });
}

pz_status pz_charge_from_voltage(const pz_sensor* sensor, double v_piezo, double* coulombs) {
  if (auto s = check_args(sensor && coulombs); s != PZ_OK) return s;
  return guarded([&] { *coulombs = pz::charge_from_voltage(sensor->sensor, v_piezo); });
}

pz_status pz_bode(const pz_config* cfg, const double* freqs, size_t n, double* mag,
                  double* phase_deg) {
  if (auto s = check_args(cfg && freqs && mag && phase_deg && n > 0); s != PZ_OK) return s;
  return guarded([&] {
    const std::vector<double> grid(freqs, freqs + n);
    const pz::TransferFunction tf = pz::bode(cfg->cfg, grid);
    for (size_t i = 0; i < n; ++i) {
      mag[i] = std::abs(tf.values[i]);
      phase_deg[i] = std::arg(tf.values[i]) * 180.0 / pz::kPi;
    }
  });
}

/* ---- noise ---- */

namespace {

struct ResolvedOpAmps {
  pz::OpAmpModel oa1;
  pz::OpAmpModel oa2;
};

ResolvedOpAmps resolve(const pz_config* cfg, const pz_registry* reg) {
  return {reg->reg.get(cfg->cfg.oa1_ref), reg->reg.get(cfg->cfg.oa2_ref)};
}

}  // namespace

pz_status pz_charge_noise_density(const pz_config* cfg, const pz_sensor* sensor,
                                  const pz_registry* reg, const double* freqs, size_t n,
                                  double* density) {
  if (auto s = check_args(cfg && sensor && reg && freqs && density && n > 0); s != PZ_OK)
    return s;
  return guarded([&] {
    const auto [oa1, oa2] = resolve(cfg, reg);
    for (size_t i = 0; i < n; ++i) {
      density[i] =
          pz::input_charge_noise_density(cfg->cfg, sensor->sensor, oa1, oa2, freqs[i]);
    }
  });
}

pz_status pz_output_noise_density(const pz_config* cfg, const pz_sensor* sensor,
                                  const pz_registry* reg, const double* freqs, size_t n,
                                  double* density) {
  if (auto s = check_args(cfg && sensor && reg && freqs && density && n > 0); s != PZ_OK)
    return s;
  return guarded([&] {
    const auto [oa1, oa2] = resolve(cfg, reg);
    const std::vector<double> grid(freqs, freqs + n);
    const pz::Spectrum s2 =
        pz::output_noise_spectrum(cfg->cfg, sensor->sensor, oa1, oa2, grid);
    for (size_t i = 0; i < n; ++i) density[i] = s2.values[i];
  });
}

pz_status pz_enc(const pz_config* cfg, const pz_sensor* sensor, const pz_registry* reg,
                 double f_lo, double f_hi, double* coulombs) {
  if (auto s = check_args(cfg && sensor && reg && coulombs); s != PZ_OK) return s;
  return guarded([&] {
    const auto [oa1, oa2] = resolve(cfg, reg);
    *coulombs = pz::enc_over_band(cfg->cfg, sensor->sensor, oa1, oa2, f_lo, f_hi);
  });
}

/* ---- oracle ---- */

pz_status pz_oracle_gain_error(const pz_config* cfg, const pz_sensor* sensor, double f_lo,
                               double f_hi, size_t n, double* max_rel_err) {
  if (auto s = check_args(cfg && sensor && max_rel_err && n >= 2); s != PZ_OK) return s;
  return guarded([&] {
    const auto grid = pz::log_grid(f_lo, f_hi, n);
    double worst = 0.0;
    for (double f : grid) {
      const pz::Complex closed = pz::overall_gain(cfg->cfg, f);
      const pz::Complex solved = pz::mna::chain_gain(cfg->cfg, sensor->sensor, f);
      worst = std::max(worst, std::abs(closed - solved) / std::abs(closed));
    }
    *max_rel_err = worst;
  });
}

pz_status pz_oracle_noise_error(const pz_config* cfg, const pz_sensor* sensor,
                                const pz_registry* reg, double f_lo, double f_hi, size_t n,
                                double* max_rel_err) {
  if (auto s = check_args(cfg && sensor && reg && max_rel_err && n >= 2); s != PZ_OK)
    return s;
  return guarded([&] {
    const auto [oa1, oa2] = resolve(cfg, reg);
    const auto grid = pz::log_grid(f_lo, f_hi, n);
    double worst = 0.0;
    for (double f : grid) {
      const double closed =
          pz::input_charge_noise_density(cfg->cfg, sensor->sensor, oa1, oa2, f);
      const double solved =
          pz::mna::noise_by_superposition(cfg->cfg, sensor->sensor, oa1, oa2, f);
      worst = std::max(worst, std::abs(closed - solved) / closed);
    }
    *max_rel_err = worst;
  });
}

char* pz_netlist_json(const pz_config* cfg, const pz_sensor* sensor) {
  if (!cfg || !sensor) return nullptr;
  return guarded_ptr([&]() -> char* {
    const pz::mna::Netlist n = pz::mna::build_chain_netlist(cfg->cfg, sensor->sensor);
    return dup_string(n.to_json());
  });
}

/* ---- acoustics ---- */

pz_status pz_third_octave_bands(double f_lo, double f_hi, double* centers,
                                double* bandwidths, size_t cap, size_t* count) {
  if (auto s = check_args(count != nullptr); s != PZ_OK) return s;
  return guarded([&] {
    const auto bands = pz::third_octave_bands(f_lo, f_hi);
    *count = bands.size();
    if (!centers) return;  // size query
    if (cap < bands.size()) throw std::invalid_argument("band buffer too small");
    for (size_t i = 0; i < bands.size(); ++i) {
      centers[i] = bands[i].center;
      if (bandwidths) bandwidths[i] = bands[i].bandwidth;
    }
  });
}

double pz_a_weight_db(double f) {
  try {
    return pz::a_weight_db(f);
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return -999.0;
  }
}

namespace {

std::vector<pz::ThirdOctaveBand> bands_from_centers(const double* centers, size_t n_bands) {
  const double edge = std::pow(2.0, 1.0 / 6.0);
  std::vector<pz::ThirdOctaveBand> bands;
  bands.reserve(n_bands);
  for (size_t i = 0; i < n_bands; ++i) {
    bands.push_back({centers[i], centers[i] * (edge - 1.0 / edge)});
  }
  return bands;
}

pz::Spectrum spectrum_from_arrays(const double* grid, const double* density, size_t n) {
  pz::Spectrum s;
  s.unit = pz::DensityUnit::kCoulomb2PerHz;
  s.freqs.assign(grid, grid + n);
  s.values.assign(density, density + n);
  s.validate();
  return s;
}

}  // namespace

pz_status pz_band_integrate(const double* grid, const double* density, size_t n,
                            const double* centers, size_t n_bands, double* rms) {
  if (auto s = check_args(grid && density && centers && rms && n > 1 && n_bands > 0);
      s != PZ_OK)
    return s;
  return guarded([&] {
    const auto out = pz::band_integrate(spectrum_from_arrays(grid, density, n),
                                        bands_from_centers(centers, n_bands));
    for (size_t i = 0; i < n_bands; ++i) rms[i] = out[i];
  });
}

pz_status pz_ein_bands(const double* grid, const double* density, size_t n,
                       const double* sens_freqs, const double* sens_values, size_t n_sens,
                       const double* centers, size_t n_bands, double* ein_db) {
  if (auto s = check_args(grid && density && sens_freqs && sens_values && centers && ein_db &&
                          n > 1 && n_sens > 0 && n_bands > 0);
      s != PZ_OK)
    return s;
  return guarded([&] {
    pz::SensitivitySpectrum sens;
    sens.freqs.assign(sens_freqs, sens_freqs + n_sens);
    sens.values.assign(sens_values, sens_values + n_sens);
    const auto out = pz::ein_spectrum(spectrum_from_arrays(grid, density, n), sens,
                                      bands_from_centers(centers, n_bands));
    for (size_t i = 0; i < n_bands; ++i) ein_db[i] = out[i];
  });
}

pz_status pz_ein_total(const double* ein_db, const double* centers, size_t n_bands,
                       int a_weighted, double* total_db) {
  if (auto s = check_args(ein_db && centers && total_db && n_bands > 0); s != PZ_OK) return s;
  return guarded([&] {
    const std::vector<double> ein(ein_db, ein_db + n_bands);
    if (a_weighted) {
      *total_db = pz::ein_aweighted_total(ein, bands_from_centers(centers, n_bands));
    } else {
      *total_db = pz::ein_flat_total(ein);
    }
  });
}

pz_status pz_apply_pinna(const double* sens_freqs, double* sens_values, size_t n_sens,
                         const double* pinna_freqs, const double* pinna_db, size_t n_pinna) {
  if (auto s = check_args(sens_freqs && sens_values && pinna_freqs && pinna_db &&
                          n_sens > 0 && n_pinna > 0);
      s != PZ_OK)
    return s;
  return guarded([&] {
    pz::SensitivitySpectrum sens;
    sens.freqs.assign(sens_freqs, sens_freqs + n_sens);
    sens.values.assign(sens_values, sens_values + n_sens);
    pz::PinnaGainTable pinna;
    pinna.freqs.assign(pinna_freqs, pinna_freqs + n_pinna);
    pinna.gain_db.assign(pinna_db, pinna_db + n_pinna);
    const auto out = pz::apply_pinna(sens, pinna);
    for (size_t i = 0; i < n_sens; ++i) sens_values[i] = out.values[i];
  });
}

/* ---- recorded-signal analysis ---- */

pz_status pz_power_spectrum(const double* samples, size_t n, double sample_rate,
                            size_t segment_length, double overlap, double* freqs,
                            double* density, size_t* bins) {
  if (auto s = check_args(samples && bins && n > 1); s != PZ_OK) return s;
  return guarded([&] {
    *bins = segment_length / 2 + 1;
    if (!freqs || !density) return;  // size query
    pz::TimeSeries ts;
    ts.sample_rate = sample_rate;
    ts.samples.assign(samples, samples + n);
    const pz::Spectrum s2 = pz::power_spectrum(ts, segment_length, overlap);
    *bins = s2.freqs.size();
    for (size_t i = 0; i < s2.freqs.size(); ++i) {
      freqs[i] = s2.freqs[i];
      density[i] = s2.values[i];
    }
  });
}

pz_status pz_thd(const double* samples, size_t n, double sample_rate, double f0,
                 int n_harmonics, double* thd) {
  if (auto s = check_args(samples && thd && n > 1); s != PZ_OK) return s;
  return guarded([&] {
    pz::TimeSeries ts;
    ts.sample_rate = sample_rate;
    ts.samples.assign(samples, samples + n);
    *thd = pz::thd(ts, f0, n_harmonics);
  });
}

pz_status pz_linearity_fit(const double* stimulus_db, const double* response_rms, size_t n,
                           double* slope, double* max_deviation_db) {
  if (auto s = check_args(stimulus_db && response_rms && slope && max_deviation_db && n > 0);
      s != PZ_OK)
    return s;
  return guarded([&] {
    pz::LevelSweep sweep;
    sweep.stimulus_db_spl.assign(stimulus_db, stimulus_db + n);
    sweep.response_rms.assign(response_rms, response_rms + n);
    const pz::LinearityFit fit = pz::linearity_fit(sweep);
    *slope = fit.slope_db_per_db;
    *max_deviation_db = fit.max_deviation_db;
  });
}

pz_status pz_cmrr_db(const double* diff_mag, const double* cm_mag, size_t n, double* cmrr) {
  if (auto s = check_args(diff_mag && cm_mag && cmrr && n > 0); s != PZ_OK) return s;
  return guarded([&] {
    for (size_t i = 0; i < n; ++i) {
      if (!(diff_mag[i] > 0) || !(cm_mag[i] > 0)) {
        throw std::invalid_argument("gains must be positive magnitudes");
      }
      cmrr[i] = 20.0 * std::log10(diff_mag[i] / cm_mag[i]);
    }
  });
}

pz_status pz_emi_capacitance(double v_out_rms, double v_applied_rms, double charge_gain,
                             double* farads) {
  if (auto s = check_args(farads != nullptr); s != PZ_OK) return s;
  return guarded(
      [&] { *farads = pz::emi_capacitance(v_out_rms, v_applied_rms, charge_gain); });
}

/* ---- design exploration ---- */

pz_sweep* pz_sweep_run(const char* spec_json, const pz_registry* reg) {
  if (!spec_json || !reg) {
    t_last_error = "null argument";
    return nullptr;
  }
  return guarded_ptr([&]() -> pz_sweep* {
    try {
      const pz::SweepSpec spec = pz::SweepSpec::from_json(spec_json);
      return new pz_sweep{pz::sweep(spec, reg->reg)};
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("sweep spec JSON parse error: ") + e.what());
    }
  });
}

size_t pz_sweep_count(const pz_sweep* sweep) { return sweep ? sweep->points.size() : 0; }

pz_status pz_sweep_point(const pz_sweep* sweep, size_t index, double* r_f, double* c_f,
                         double* enc, double* midband_gain, double* cuton_hz,
                         double* power_w, int* pareto) {
  if (auto s = check_args(sweep && index < sweep->points.size()); s != PZ_OK) return s;
  const pz::DesignPoint& p = sweep->points[index];
  if (r_f) *r_f = p.cfg.r_f;
  if (c_f) *c_f = p.cfg.c_f;
  if (enc) *enc = p.enc;
  if (midband_gain) *midband_gain = p.midband_gain;
  if (cuton_hz) *cuton_hz = p.cuton_hz;
  if (power_w) *power_w = p.power_w;
  if (pareto) *pareto = p.pareto ? 1 : 0;
  return PZ_OK;
}

const char* pz_sweep_opamp(const pz_sweep* sweep, size_t index, int stage) {
  if (!sweep || index >= sweep->points.size()) return "";
  return stage == 2 ? sweep->points[index].oa2.c_str() : sweep->points[index].oa1.c_str();
}

char* pz_sweep_csv(const pz_sweep* sweep, const char* manifest_ref) {
  if (!sweep) return nullptr;
  return dup_string(pz::sweep_to_csv(sweep->points, manifest_ref ? manifest_ref : ""));
}

void pz_sweep_free(pz_sweep* sweep) { delete sweep; }

} /* extern "C" */
