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

#ifndef PZAMP_TYPES_HPP_
#define PZAMP_TYPES_HPP_

#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pz {

using Complex = std::complex<double>;

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K
inline constexpr double kDefaultTemperature = 293.0;  // K
inline constexpr double kReferencePressure = 20e-6;   // Pa RMS (0 dB SPL)
inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Thrown when a spectrum or band request falls outside the available grid.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a linear solve or root search cannot produce a result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Differential charge amplifier component values. All SI base units.
// Defaults are the reference hardware build: Rf = 10 GΩ, Cf = 1 pF,
// Ra = 90 kΩ, Rb = 10 kΩ, Cb = 100 nF, Ro = 100 kΩ, Co = 100 nF.
struct AmplifierConfig {
  double r_f = 10e9;     // feedback resistor, Ω (per input stage)
  double c_f = 1e-12;    // feedback capacitor, F (per input stage)
  double r_a = 90e3;     // lead stage feedback resistor, Ω
  double r_b = 10e3;     // lead stage series resistor, Ω
  double c_b = 100e-9;   // lead stage series capacitor, F
  double r_o = 100e3;    // output high-pass resistor, Ω
  double c_o = 100e-9;   // output high-pass capacitor, F
  std::string oa1_ref = "LTC6240";  // input stage op amp
  std::string oa2_ref = "AD8617";   // difference/lead stage op amp
  double temperature = kDefaultTemperature;  // K

  void validate() const;
};

struct Spectrum;

// Piezoelectric sensor with its parasitics. r_par may be infinity, which
// every consumer treats as an absent leakage path.
struct SensorModel {
  double c_piezo = 10e-12;  // F
  double c_par = 1e-12;     // F
  double r_par = 1e12;      // Ω, leakage across the differential input
  double c_gnd = 0.6e-15;   // F, each input to ground
  // Optional charge sensitivity, C/Pa vs Hz.
  std::optional<std::vector<std::pair<double, double>>> sensitivity;

  void validate() const;

  // Bare amplifier, nothing connected to the input.
  static SensorModel unloaded() {
    SensorModel s;
    s.c_piezo = 0.0;
    s.c_par = 0.0;
    s.r_par = std::numeric_limits<double>::infinity();
    s.c_gnd = 0.0;
    s.sensitivity.reset();
    return s;
  }
};

// First-stage op amp noise and power parameters.
// Current noise density follows i² = i_white² + ω²·q_slope².
struct OpAmpModel {
  std::string name;
  double v_white = 0.0;        // V/√Hz
  double flicker_corner = 0.0; // Hz; 0 means no flicker term
  double i_white = 0.0;        // A/√Hz
  double q_slope = 0.0;        // C/√Hz, ω-proportional current noise
  double c_in = 0.0;           // F per input
  double power = 0.0;          // W

  void validate() const;
};

enum class DensityUnit { kAmp2PerHz, kCoulomb2PerHz, kVolt2PerHz, kPascal2PerHz };

// Real-valued variance density on a strictly increasing frequency grid.
struct Spectrum {
  std::vector<double> freqs;   // Hz
  std::vector<double> values;
  DensityUnit unit = DensityUnit::kCoulomb2PerHz;

  void validate() const;
};

// Complex transfer function, V/C, on a strictly increasing grid.
struct TransferFunction {
  std::vector<double> freqs;    // Hz
  std::vector<Complex> values;  // V/C

  void validate() const;
};

// a ∥ b with infinity treated as an open branch.
inline double parallel(double a, double b) {
  if (std::isinf(a)) return b;
  if (std::isinf(b)) return a;
  return a * b / (a + b);
}

void require_positive_frequency(double f);
void require_strictly_increasing(const std::vector<double>& freqs);

}  // namespace pz

#endif  // PZAMP_TYPES_HPP_
