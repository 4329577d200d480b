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
// Component-selection sweeps: evaluate ENC / gain / cut-on / power over a
// grid of candidate parts and values, then report the (ENC, power) Pareto
// front. Grid sweep only; the objective is cheap and grids are auditable.

#ifndef PZAMP_EXPLORE_HPP_
#define PZAMP_EXPLORE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "pzamp/registry.hpp"
#include "pzamp/types.hpp"

namespace pz {

struct DesignPoint {
  AmplifierConfig cfg;
  std::string oa1;
  std::string oa2;
  double enc = 0.0;           // C over the sweep band
  double midband_gain = 0.0;  // V/C
  double cuton_hz = 0.0;
  double power_w = 0.0;
  std::optional<double> ein_db_spl;  // needs sensor sensitivity
  bool pareto = false;
};

struct SweepSpec {
  std::vector<double> r_f_values;       // empty = keep fixed value
  std::vector<double> c_f_values;
  std::vector<std::string> oa1_values;
  AmplifierConfig fixed;
  SensorModel sensor;
  double band_lo = 200.0;
  double band_hi = 20e3;
  std::size_t grid_cap = 100000;

  static SweepSpec from_json(const std::string& json_text);
  void validate() const;
};

// All metrics for one candidate. Power counts the first-stage part twice
// (one per input) plus one difference/lead package.
DesignPoint evaluate(const AmplifierConfig& cfg, const std::string& oa1,
                     const std::string& oa2, const SensorModel& sensor,
                     double band_lo, double band_hi, const OpAmpRegistry& registry);

// Cartesian product in deterministic order (r_f slowest, oa1 fastest).
std::vector<DesignPoint> sweep(const SweepSpec& spec, const OpAmpRegistry& registry);

// Non-dominated subset under minimization of (enc, power), ordered by ENC.
std::vector<DesignPoint> pareto_front(const std::vector<DesignPoint>& points);

// Marks the pareto flag in place and returns the input.
std::vector<DesignPoint> mark_pareto(std::vector<DesignPoint> points);

// CSV: r_f_ohm,c_f_f,oa1,oa2,enc_c,midband_gain_v_per_c,cuton_hz,power_w,pareto
std::string sweep_to_csv(const std::vector<DesignPoint>& points,
                         const std::string& manifest_ref = "");

}  // namespace pz

#endif  // PZAMP_EXPLORE_HPP_
