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

#include "pzamp/dsp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace pz {

namespace {

// FFTW planning is not thread safe; execution of a ready plan is.
std::mutex g_fftw_mutex;

// |X_k|² of the real-input FFT, unnormalized FFTW convention.
std::vector<double> fft_power(const std::vector<double>& x) {
  const std::size_t n = x.size();
  const std::size_t nbins = n / 2 + 1;
  std::vector<double> in(x);
  std::vector<fftw_complex> out(nbins);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_plan plan =
        fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }
  std::vector<double> power(nbins);
  for (std::size_t k = 0; k < nbins; ++k) {
    power[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
  }
  return power;
}

// Periodic Hann window.
std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)));
  }
  return w;
}

}  // namespace

void TimeSeries::validate() const {
  if (!(sample_rate > 0)) throw std::invalid_argument("sample_rate must be positive");
  if (samples.size() < 2) throw std::invalid_argument("need at least 2 samples");
}

void LevelSweep::validate() const {
  if (stimulus_db_spl.size() != response_rms.size()) {
    throw std::invalid_argument("sweep stimulus/response length mismatch");
  }
  for (std::size_t i = 1; i < stimulus_db_spl.size(); ++i) {
    if (!(stimulus_db_spl[i] > stimulus_db_spl[i - 1])) {
      throw std::invalid_argument("stimulus levels must be strictly increasing");
    }
  }
  for (double r : response_rms) {
    if (!(r >= 0)) throw std::invalid_argument("responses must be nonnegative");
  }
}

Spectrum power_spectrum(const TimeSeries& ts, std::size_t segment_length,
                        double overlap_fraction) {
  ts.validate();
  if (segment_length < 4 || segment_length > ts.samples.size()) {
    throw std::invalid_argument("segment_length must be in [4, record length]");
  }
  if (!(overlap_fraction >= 0.0) || overlap_fraction >= 1.0) {
    throw std::invalid_argument("overlap_fraction must be in [0, 1)");
  }
  const std::size_t hop = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(
             static_cast<double>(segment_length) * (1.0 - overlap_fraction))));
  const std::vector<double> w = hann(segment_length);
  double window_power = 0.0;  // Σ w²
  for (double v : w) window_power += v * v;

  const std::size_t nbins = segment_length / 2 + 1;
  std::vector<double> acc(nbins, 0.0);
  std::size_t segments = 0;
  std::vector<double> seg(segment_length);
  for (std::size_t start = 0; start + segment_length <= ts.samples.size(); start += hop) {
    for (std::size_t i = 0; i < segment_length; ++i) {
      seg[i] = ts.samples[start + i] * w[i];
    }
    const std::vector<double> p = fft_power(seg);
    for (std::size_t k = 0; k < nbins; ++k) acc[k] += p[k];
    ++segments;
  }

  const double scale = 1.0 / (ts.sample_rate * window_power * static_cast<double>(segments));
  Spectrum s;
  s.unit = DensityUnit::kVolt2PerHz;
  s.freqs.reserve(nbins);
  s.values.reserve(nbins);
  const double df = ts.sample_rate / static_cast<double>(segment_length);
  for (std::size_t k = 0; k < nbins; ++k) {
    // One-sided density; DC and Nyquist bins are not doubled. The DC bin is
    // reported at a nominal df/2 to keep the grid strictly positive.
    const double one_sided = (k == 0 || k == nbins - 1) ? 1.0 : 2.0;
    s.freqs.push_back(k == 0 ? df / 2.0 : df * static_cast<double>(k));
    s.values.push_back(acc[k] * scale * one_sided);
  }
  return s;
}

std::vector<double> smooth_third_octave(const Spectrum& spec,
                                        const std::vector<ThirdOctaveBand>& bands) {
  return band_integrate(spec, bands);
}

double thd(const TimeSeries& ts, double f0, int n_harmonics) {
  ts.validate();
  require_positive_frequency(f0);
  if (n_harmonics < 2) throw std::invalid_argument("need at least 2 harmonics");
  const double fs = ts.sample_rate;
  const std::size_t n = ts.samples.size();
  if (static_cast<double>(n_harmonics) * f0 >= fs / 2.0) {
    throw std::invalid_argument("harmonic above Nyquist");
  }
  if (static_cast<double>(n) / fs < 10.0 / f0) {
    throw std::invalid_argument("record shorter than 10 cycles of f0");
  }

  const std::vector<double> w = hann(n);
  std::vector<double> xw(n);
  for (std::size_t i = 0; i < n; ++i) xw[i] = ts.samples[i] * w[i];
  const std::vector<double> power = fft_power(xw);
  const double df = fs / static_cast<double>(n);

  // Local power around a bin: the Hann main lobe spans three bins.
  const auto local_power = [&](std::size_t center) {
    double p = 0.0;
    for (std::size_t k = (center > 0 ? center - 1 : 0);
         k <= std::min(center + 1, power.size() - 1); ++k) {
      p += power[k];
    }
    return p;
  };
  // Peak bin within ±2 of the nominal location.
  const auto peak_near = [&](double f) {
    const auto nominal = static_cast<std::size_t>(std::llround(f / df));
    std::size_t best = nominal;
    for (std::size_t k = (nominal > 2 ? nominal - 2 : 1);
         k <= std::min(nominal + 2, power.size() - 1); ++k) {
      if (power[k] > power[best]) best = k;
    }
    return best;
  };

  const std::size_t k1 = peak_near(f0);
  const double p1 = local_power(k1);
  // The fundamental must stand clearly above the record's mean bin power.
  double mean = 0.0;
  for (double p : power) mean += p;
  mean /= static_cast<double>(power.size());
  if (!(power[k1] > 100.0 * mean)) {
    throw NumericError("fundamental not found above the noise at the requested f0");
  }

  const double f0_refined = static_cast<double>(k1) * df;
  double harmonic_sum = 0.0;
  for (int m = 2; m <= n_harmonics; ++m) {
    harmonic_sum += local_power(peak_near(static_cast<double>(m) * f0_refined));
  }
  return std::sqrt(harmonic_sum / p1);
}

LinearityFit linearity_fit(const LevelSweep& sweep) {
  sweep.validate();
  if (sweep.stimulus_db_spl.size() < 3) {
    throw std::invalid_argument("linearity fit needs at least 3 points");
  }
  std::vector<double> y;
  y.reserve(sweep.response_rms.size());
  for (double r : sweep.response_rms) {
    if (!(r > 0)) throw std::invalid_argument("responses must be positive for a dB fit");
    y.push_back(20.0 * std::log10(r));
  }
  const auto& x = sweep.stimulus_db_spl;
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw NumericError("degenerate sweep: all stimuli equal");
  LinearityFit fit;
  fit.slope_db_per_db = (n * sxy - sx * sy) / denom;
  fit.intercept_db = (sy - fit.slope_db_per_db * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    fit.max_deviation_db = std::max(
        fit.max_deviation_db,
        std::abs(y[i] - (fit.slope_db_per_db * x[i] + fit.intercept_db)));
  }
  return fit;
}

std::vector<double> cmrr_db(const TransferFunction& diff_gain, const TransferFunction& cm_gain) {
  diff_gain.validate();
  cm_gain.validate();
  if (diff_gain.freqs != cm_gain.freqs) {
    throw std::invalid_argument("CMRR requires matching frequency grids");
  }
  std::vector<double> out;
  out.reserve(diff_gain.freqs.size());
  for (std::size_t i = 0; i < diff_gain.freqs.size(); ++i) {
    out.push_back(20.0 *
                  std::log10(std::abs(diff_gain.values[i]) / std::abs(cm_gain.values[i])));
  }
  return out;
}

double emi_capacitance(double v_out_rms, double v_applied_rms, double charge_gain) {
  if (!(v_out_rms >= 0)) throw std::invalid_argument("v_out must be nonnegative");
  if (!(v_applied_rms > 0)) throw std::invalid_argument("v_applied must be positive");
  if (!(charge_gain > 0)) throw std::invalid_argument("charge gain must be positive");
  return v_out_rms / (charge_gain * v_applied_rms);
}

}  // namespace pz
