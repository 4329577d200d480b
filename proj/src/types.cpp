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

#include "pzamp/types.hpp"

#include <cmath>

namespace pz {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void AmplifierConfig::validate() const {
  require(r_f > 0 && std::isfinite(r_f), "r_f must be positive and finite");
  require(c_f > 0 && std::isfinite(c_f), "c_f must be positive and finite");
  require(r_a > 0 && std::isfinite(r_a), "r_a must be positive and finite");
  require(r_b > 0 && std::isfinite(r_b), "r_b must be positive and finite");
  require(c_b > 0 && std::isfinite(c_b), "c_b must be positive and finite");
  require(r_o > 0 && std::isfinite(r_o), "r_o must be positive and finite");
  require(c_o > 0 && std::isfinite(c_o), "c_o must be positive and finite");
  require(temperature > 0, "temperature must be positive");
}

void SensorModel::validate() const {
  require(c_piezo >= 0, "c_piezo must be nonnegative");
  require(c_par >= 0, "c_par must be nonnegative");
  require(c_gnd >= 0, "c_gnd must be nonnegative");
  require(r_par > 0, "r_par must be positive (infinity allowed)");
  if (sensitivity) {
    double prev = 0.0;
    for (const auto& [f, s] : *sensitivity) {
      require(f > prev, "sensitivity grid must be strictly increasing");
      require(s >= 0, "sensitivity values must be nonnegative");
      prev = f;
    }
  }
}

void OpAmpModel::validate() const {
  require(v_white > 0, "v_white must be positive");
  require(i_white >= 0, "i_white must be nonnegative");
  require(q_slope >= 0, "q_slope must be nonnegative");
  require(c_in >= 0, "c_in must be nonnegative");
  require(power >= 0, "power must be nonnegative");
  require(flicker_corner >= 0, "flicker_corner must be nonnegative");
}

void Spectrum::validate() const {
  require(freqs.size() == values.size(), "freqs/values size mismatch");
  require_strictly_increasing(freqs);
  for (double v : values) require(v >= 0, "density values must be nonnegative");
}

void TransferFunction::validate() const {
  require(freqs.size() == values.size(), "freqs/values size mismatch");
  require_strictly_increasing(freqs);
}

void require_positive_frequency(double f) {
  if (!(f > 0) || !std::isfinite(f)) {
    throw std::invalid_argument("frequency must be positive and finite");
  }
}

void require_strictly_increasing(const std::vector<double>& freqs) {
  double prev = 0.0;
  for (double f : freqs) {
    if (!(f > prev)) {
      throw std::invalid_argument("frequency grid must be strictly increasing and positive");
    }
    prev = f;
  }
}

}  // namespace pz
