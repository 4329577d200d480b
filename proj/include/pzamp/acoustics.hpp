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
// Acoustic metrics: base-2 third-octave bands, A-weighting, equivalent
// input noise in dB SPL, and pinna-gain extrapolation.

#ifndef PZAMP_ACOUSTICS_HPP_
#define PZAMP_ACOUSTICS_HPP_

#include <vector>

#include "pzamp/types.hpp"

namespace pz {

struct ThirdOctaveBand {
  double center;     // Hz
  double bandwidth;  // Hz, f_c (2^{1/6} - 2^{-1/6})
  double lower() const;
  double upper() const;
};

// Charge sensitivity, C/Pa on a strictly increasing Hz grid.
struct SensitivitySpectrum {
  std::vector<double> freqs;
  std::vector<double> values;  // C/Pa, must be positive
  void validate() const;
};

// Free-field to ear-canal pressure gain in dB.
struct PinnaGainTable {
  std::vector<double> freqs;
  std::vector<double> gain_db;
  void validate() const;
};

// Base-2 third-octave bands (ratio 2^{1/3} between edges, 1 kHz anchor)
// overlapping [f_lo, f_hi].
std::vector<ThirdOctaveBand> third_octave_bands(double f_lo, double f_hi);

// Per band, √(∫ density df). Each grid interval is treated as a log-log
// power-law segment and integrated in closed form.
std::vector<double> band_integrate(const Spectrum& density,
                                   const std::vector<ThirdOctaveBand>& bands);

// IEC A-weighting from the four-pole analytic form, normalized so that
// A(1 kHz) = 0.
double a_weight_db(double f);

// Per band: 20 log10(band_rms_charge / sens(f_c) / 20 µPa). Sensitivity is
// interpolated at the band center (linear in dB vs log frequency).
std::vector<double> ein_spectrum(const Spectrum& noise, const SensitivitySpectrum& sens,
                                 const std::vector<ThirdOctaveBand>& bands);

// Power sum over bands with per-band A-weighting:
// 10 log10 Σ 10^{(EIN_b + A(f_c))/10}.
double ein_aweighted_total(const std::vector<double>& ein_db,
                           const std::vector<ThirdOctaveBand>& bands);

// Same power sum without weighting.
double ein_flat_total(const std::vector<double>& ein_db);

// sens × 10^{gain_db/20}, pinna gain interpolated at the sensitivity grid
// (linear in dB vs log frequency).
SensitivitySpectrum apply_pinna(const SensitivitySpectrum& sens, const PinnaGainTable& pinna);

// Pinna gain interpolated at one frequency.
double pinna_gain_at(const PinnaGainTable& pinna, double f);

// Sensitivity interpolated at one frequency (dB vs log-f interpolation).
double sensitivity_at(const SensitivitySpectrum& sens, double f);

}  // namespace pz

#endif  // PZAMP_ACOUSTICS_HPP_
