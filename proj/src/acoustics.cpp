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

#include "pzamp/acoustics.hpp"

#include <algorithm>
#include <cmath>

namespace pz {

namespace {

const double kEdgeRatio = std::pow(2.0, 1.0 / 6.0);  // center to edge

// Linear interpolation of y over x = log f. Extrapolation is refused.
double interp_logf(const std::vector<double>& freqs, const std::vector<double>& ys,
                   double f, const char* what) {
  if (freqs.empty()) throw CoverageError(std::string(what) + " table is empty");
  if (f < freqs.front() || f > freqs.back()) {
    throw CoverageError(std::string(what) + " does not cover " + std::to_string(f) + " Hz");
  }
  auto it = std::lower_bound(freqs.begin(), freqs.end(), f);
  if (it == freqs.begin()) return ys.front();
  const std::size_t hi = static_cast<std::size_t>(it - freqs.begin());
  const std::size_t lo = hi - 1;
  if (freqs[hi] == f) return ys[hi];
  const double t = std::log(f / freqs[lo]) / std::log(freqs[hi] / freqs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

double ThirdOctaveBand::lower() const { return center / kEdgeRatio; }
double ThirdOctaveBand::upper() const { return center * kEdgeRatio; }

void SensitivitySpectrum::validate() const {
  if (freqs.size() != values.size()) throw std::invalid_argument("sensitivity size mismatch");
  require_strictly_increasing(freqs);
  for (double v : values) {
    if (!(v > 0)) throw std::invalid_argument("sensitivity values must be positive");
  }
}

void PinnaGainTable::validate() const {
  if (freqs.size() != gain_db.size()) throw std::invalid_argument("pinna table size mismatch");
  require_strictly_increasing(freqs);
  for (double g : gain_db) {
    if (!std::isfinite(g)) throw std::invalid_argument("pinna gain must be finite");
  }
}

std::vector<ThirdOctaveBand> third_octave_bands(double f_lo, double f_hi) {
  if (!(0 < f_lo && f_lo < f_hi)) throw std::invalid_argument("need 0 < f_lo < f_hi");
  // Centers at 1000 · 2^{k/3}; keep bands that overlap [f_lo, f_hi].
  const int k_min = static_cast<int>(std::floor(3.0 * std::log2(f_lo / 1000.0))) - 2;
  const int k_max = static_cast<int>(std::ceil(3.0 * std::log2(f_hi / 1000.0))) + 2;
  std::vector<ThirdOctaveBand> bands;
  for (int k = k_min; k <= k_max; ++k) {
    const double fc = 1000.0 * std::pow(2.0, k / 3.0);
    ThirdOctaveBand band{fc, fc * (kEdgeRatio - 1.0 / kEdgeRatio)};
    if (band.upper() > f_lo && band.lower() < f_hi) bands.push_back(band);
  }
  if (bands.empty()) throw std::invalid_argument("no third-octave band overlaps the range");
  return bands;
}

std::vector<double> band_integrate(const Spectrum& density,
                                   const std::vector<ThirdOctaveBand>& bands) {
  density.validate();
  if (bands.empty()) throw std::invalid_argument("no bands given");
  const auto& f = density.freqs;
  const auto& d = density.values;
  if (f.size() < 2) throw CoverageError("density grid needs at least two points");

  // Integral of a log-log power-law segment of d between f1 and f2,
  // evaluated over the clipped interval [a, b].
  const auto segment_integral = [&](std::size_t i, double a, double b) {
    const double f1 = f[i], f2 = f[i + 1];
    const double d1 = d[i], d2 = d[i + 1];
    const auto trapezoid = [&] {
      const double da = d1 + (d2 - d1) * (a - f1) / (f2 - f1);
      const double db = d1 + (d2 - d1) * (b - f1) / (f2 - f1);
      return 0.5 * (da + db) * (b - a);
    };
    // Exact zeros have no log-log representation; sharp spectral lines on a
    // fine linear grid produce exponents too extreme for stable power-law
    // evaluation. Both get the plain trapezoid.
    if (d1 <= 0.0 || d2 <= 0.0) return trapezoid();
    const double alpha = std::log(d2 / d1) / std::log(f2 / f1);
    if (std::abs(alpha) > 50.0) return trapezoid();
    if (std::abs(alpha + 1.0) < 1e-12) {
      return d1 * f1 * std::log(b / a);
    }
    const double k = d1 / std::pow(f1, alpha);
    return k / (alpha + 1.0) * (std::pow(b, alpha + 1.0) - std::pow(a, alpha + 1.0));
  };

  std::vector<double> rms;
  rms.reserve(bands.size());
  for (const ThirdOctaveBand& band : bands) {
    const double lo = band.lower();
    const double hi = band.upper();
    if (lo < f.front() || hi > f.back()) {
      throw CoverageError("density grid does not cover band at " +
                          std::to_string(band.center) + " Hz");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      const double a = std::max(lo, f[i]);
      const double b = std::min(hi, f[i + 1]);
      if (a < b) sum += segment_integral(i, a, b);
    }
    rms.push_back(std::sqrt(std::max(0.0, sum)));
  }
  return rms;
}

double a_weight_db(double f) {
  require_positive_frequency(f);
  const double f2 = f * f;
  const auto r = [](double f2) {
    const double p1 = 20.598997 * 20.598997;
    const double p2 = 107.65265 * 107.65265;
    const double p3 = 737.86223 * 737.86223;
    const double p4 = 12194.217 * 12194.217;
    return p4 * f2 * f2 /
           ((f2 + p1) * std::sqrt((f2 + p2) * (f2 + p3)) * (f2 + p4));
  };
  return 20.0 * std::log10(r(f2) / r(1000.0 * 1000.0));
}

std::vector<double> ein_spectrum(const Spectrum& noise, const SensitivitySpectrum& sens,
                                 const std::vector<ThirdOctaveBand>& bands) {
  sens.validate();
  if (noise.unit != DensityUnit::kCoulomb2PerHz) {
    throw std::invalid_argument("EIN needs a charge variance density (C²/Hz)");
  }
  const std::vector<double> rms = band_integrate(noise, bands);
  std::vector<double> ein;
  ein.reserve(bands.size());
  for (std::size_t i = 0; i < bands.size(); ++i) {
    const double s = sensitivity_at(sens, bands[i].center);
    ein.push_back(20.0 * std::log10(rms[i] / s / kReferencePressure));
  }
  return ein;
}

double ein_aweighted_total(const std::vector<double>& ein_db,
                           const std::vector<ThirdOctaveBand>& bands) {
  if (ein_db.empty() || ein_db.size() != bands.size()) {
    throw std::invalid_argument("EIN/band list mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < ein_db.size(); ++i) {
    acc += std::pow(10.0, (ein_db[i] + a_weight_db(bands[i].center)) / 10.0);
  }
  return 10.0 * std::log10(acc);
}

double ein_flat_total(const std::vector<double>& ein_db) {
  if (ein_db.empty()) throw std::invalid_argument("no EIN bands");
  double acc = 0.0;
  for (double e : ein_db) acc += std::pow(10.0, e / 10.0);
  return 10.0 * std::log10(acc);
}

double pinna_gain_at(const PinnaGainTable& pinna, double f) {
  pinna.validate();
  return interp_logf(pinna.freqs, pinna.gain_db, f, "pinna gain table");
}

double sensitivity_at(const SensitivitySpectrum& sens, double f) {
  sens.validate();
  std::vector<double> db(sens.values.size());
  for (std::size_t i = 0; i < db.size(); ++i) db[i] = 20.0 * std::log10(sens.values[i]);
  const double v = interp_logf(sens.freqs, db, f, "sensitivity");
  return std::pow(10.0, v / 20.0);
}

SensitivitySpectrum apply_pinna(const SensitivitySpectrum& sens, const PinnaGainTable& pinna) {
  sens.validate();
  pinna.validate();
  SensitivitySpectrum out = sens;
  for (std::size_t i = 0; i < out.freqs.size(); ++i) {
    const double g = interp_logf(pinna.freqs, pinna.gain_db, out.freqs[i], "pinna gain table");
    out.values[i] *= std::pow(10.0, g / 20.0);
  }
  return out;
}

}  // namespace pz
