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
// Closed-form small-signal transfer functions of the differential charge
// amplifier. Op amps are treated as ideal; the high-frequency roll-off set
// by op-amp dynamics is above the audio band and is not modeled, so the
// modeled response has no upper -3 dB point.

#ifndef PZAMP_CIRCUIT_HPP_
#define PZAMP_CIRCUIT_HPP_

#include <cstddef>
#include <functional>

#include "pzamp/types.hpp"

namespace pz {

// Charge produced by the sensor for a given piezo voltage: q = C_piezo · v.
double charge_from_voltage(const SensorModel& sensor, double v_piezo);

// First-stage charge-to-voltage gain, 2jωRf / (1 + jωRfCf). High-pass with
// asymptotic magnitude 2/Cf.
Complex internal_gain(const AmplifierConfig& cfg, double f);

// Full-chain charge-to-voltage gain: internal gain times the lead stage
// (1 + jω(Ra+Rb)Cb) / (1 + jωRbCb) and the output high-pass
// jωRoCo / (1 + jωRoCo).
Complex overall_gain(const AmplifierConfig& cfg, double f);

// The lead-stage and output-filter factor, i.e. overall_gain / internal_gain.
Complex stage2_factor(const AmplifierConfig& cfg, double f);

// Mid-band plateau magnitude, (2/Cf) · (Ra+Rb)/Rb.
double midband_gain(const AmplifierConfig& cfg);

// Dominant high-pass pole estimate, 1 / (2π Rb Cb).
double dominant_pole_hz(const AmplifierConfig& cfg);

// Lowest frequency where |G_out| crosses midband/√2, found by bisection in
// log frequency over [1 Hz, 20 kHz]. Relative tolerance 1e-6.
double cuton_frequency(const AmplifierConfig& cfg);

// Same search applied to an arbitrary |gain|(f), used to cross-check the
// closed form against the nodal-analysis solver.
double cuton_frequency_of(const std::function<double(double)>& magnitude,
                          double midband);

// Tabulates overall_gain over a grid.
TransferFunction bode(const AmplifierConfig& cfg, const std::vector<double>& f_grid);

// Log-spaced grid, inclusive of both endpoints.
std::vector<double> log_grid(double f_lo, double f_hi, std::size_t points);

// Log-spaced grid with a fixed number of points per decade (endpoint included).
std::vector<double> log_grid_per_decade(double f_lo, double f_hi, std::size_t per_decade);

}  // namespace pz

#endif  // PZAMP_CIRCUIT_HPP_
