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
// Measurement-record analysis: Welch spectra, third-octave smoothing, THD,
// level-sweep linearity, CMRR and EMI-capacitance extraction.

#ifndef PZAMP_DSP_HPP_
#define PZAMP_DSP_HPP_

#include <string>
#include <vector>

#include "pzamp/acoustics.hpp"
#include "pzamp/types.hpp"

namespace pz {

struct TimeSeries {
  double sample_rate = 0.0;  // Hz
  std::vector<double> samples;
  std::string label;

  void validate() const;
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

struct LevelSweep {
  std::vector<double> stimulus_db_spl;  // strictly increasing
  std::vector<double> response_rms;     // volts, nonnegative

  void validate() const;
};

struct LinearityFit {
  double slope_db_per_db = 0.0;
  double intercept_db = 0.0;
  double max_deviation_db = 0.0;
};

// Welch-averaged one-sided PSD, Hann window, V²/Hz. Normalized so that a
// sine integrates to A²/2 and white noise of variance σ² comes out flat at
// 2σ²/fs.
Spectrum power_spectrum(const TimeSeries& ts, std::size_t segment_length,
                        double overlap_fraction);

// band_integrate over third-octave bands; returns per-band RMS.
std::vector<double> smooth_third_octave(const Spectrum& spec,
                                        const std::vector<ThirdOctaveBand>& bands);

// √(Σ_{k=2..n} P_k / P_1). Harmonic power is taken bin-locally (peak ± 1
// bin) to tolerate small clock mismatch.
double thd(const TimeSeries& ts, double f0, int n_harmonics = 5);

// Least-squares fit of 20 log10(response) against stimulus dB.
LinearityFit linearity_fit(const LevelSweep& sweep);

// 20 log10 |G_diff / G_cm| pointwise; grids must match exactly.
std::vector<double> cmrr_db(const TransferFunction& diff_gain,
                            const TransferFunction& cm_gain);

// C = v_out / (charge_gain · v_applied).
double emi_capacitance(double v_out_rms, double v_applied_rms, double charge_gain);

}  // namespace pz

#endif  // PZAMP_DSP_HPP_
