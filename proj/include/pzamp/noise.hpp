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
// Input-referred noise budget of the sensor + amplifier chain. Four source
// groups are modeled: Johnson noise of the feedback and leakage resistors,
// first-stage op-amp voltage noise referred through Z_diff and Z_f,
// first-stage op-amp current noise, and difference-stage voltage noise.
// All sources are mutually independent.

#ifndef PZAMP_NOISE_HPP_
#define PZAMP_NOISE_HPP_

#include "pzamp/types.hpp"

namespace pz {

struct NoiseOptions {
  // Add one op-amp input capacitance per input to the differential input
  // capacitance (enters as c_in/2, like c_gnd). Off by default: the
  // reference behavior counts only sensor parasitics and C_f.
  bool include_opamp_cin = false;
  // Multiply the first-stage voltage variance density by (1 + corner/f).
  // Off by default; the corner comes from OpAmpModel::flicker_corner.
  bool flicker = false;
};

// Differential source impedance: R_par ∥ 1/(jω(C_piezo + C_par + C_gnd/2)).
Complex z_diff(const SensorModel& sensor, double f,
               const OpAmpModel* oa1 = nullptr, NoiseOptions opts = {});

// Feedback impedance R_f ∥ 1/(jωC_f).
Complex z_feedback(const AmplifierConfig& cfg, double f);

// Effective capacitance multiplying first-stage voltage noise:
// C_piezo + C_par + C_f/2 + C_gnd/2 (+ C_in/2 when opted in).
double c_tot(const AmplifierConfig& cfg, const SensorModel& sensor,
             const OpAmpModel* oa1 = nullptr, NoiseOptions opts = {});

// White input-referred current variance density of the resistors:
// 4 k_B T / ((2 R_f) ∥ R_par).
double johnson_current_density(const AmplifierConfig& cfg, const SensorModel& sensor);

// First-stage voltage noise referred to an input current variance density:
// ω² |(Z_diff + 2 Z_f) / (G_int Z_diff)|² · 2 v̄²_oa1.  A²/Hz.
double oa1_voltage_noise_density(const AmplifierConfig& cfg, const SensorModel& sensor,
                                 const OpAmpModel& oa1, double f, NoiseOptions opts = {});

// Differential pair of op-amp current noises: (ι² + ω² q²) / 2.  A²/Hz.
double oa1_current_noise_density(const OpAmpModel& oa1, double f);

// Difference-stage voltage noise referred to the input:
// v̄²_oa2 (1/R_f² + ω² C_f²).  A²/Hz.
double oa2_noise_density(const AmplifierConfig& cfg, const OpAmpModel& oa2, double f);

// Total input-referred charge variance density: the four current densities
// summed and divided by ω².  C²/Hz.
double input_charge_noise_density(const AmplifierConfig& cfg, const SensorModel& sensor,
                                  const OpAmpModel& oa1, const OpAmpModel& oa2, double f,
                                  NoiseOptions opts = {});

// Same quantity from the collected closed form
//   2 v̄²_oa1 C_tot² + q̄²_oa1/2 + v̄²_oa2 C_f²
//   + (1/ω²) [4kT/((2Rf)∥Rpar) + ι²/2 + 2v̄²_oa1/((2Rf)∥Rpar)² + v̄²_oa2/Rf²].
// Algebraically identical to the summed form; kept as a second route for
// cross-checking.
double input_charge_noise_density_collected(const AmplifierConfig& cfg,
                                            const SensorModel& sensor,
                                            const OpAmpModel& oa1, const OpAmpModel& oa2,
                                            double f, NoiseOptions opts = {});

// Equivalent noise charge over a band: √(∫ q̄²_in df), adaptive quadrature on
// a log-frequency substrate, relative tolerance 1e-6.
double enc_over_band(const AmplifierConfig& cfg, const SensorModel& sensor,
                     const OpAmpModel& oa1, const OpAmpModel& oa2,
                     double f_lo, double f_hi, NoiseOptions opts = {});

// Input charge density tabulated over a grid.
Spectrum charge_noise_spectrum(const AmplifierConfig& cfg, const SensorModel& sensor,
                               const OpAmpModel& oa1, const OpAmpModel& oa2,
                               const std::vector<double>& grid, NoiseOptions opts = {});

// Output-referred voltage noise density: q̄²_in · |G_out|².  V²/Hz.
Spectrum output_noise_spectrum(const AmplifierConfig& cfg, const SensorModel& sensor,
                               const OpAmpModel& oa1, const OpAmpModel& oa2,
                               const std::vector<double>& grid, NoiseOptions opts = {});

}  // namespace pz

#endif  // PZAMP_NOISE_HPP_
