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

#include "pzamp/registry.hpp"

#include <algorithm>
#include <cctype>
#include <nlohmann/json.hpp>

namespace pz {

std::string OpAmpRegistry::key(const std::string& name) {
  std::string k = name;
  std::transform(k.begin(), k.end(), k.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return k;
}

OpAmpRegistry OpAmpRegistry::builtin() {
  OpAmpRegistry reg;
  // name, v_white, flicker_corner, i_white, q_slope, c_in, power
  reg.put({"LT1792", 4.2e-9, 0.0, 10e-15, 0.0, 27e-12, 76e-3});
  reg.put({"LTC6240", 7e-9, 0.0, 0.56e-15, 0.0, 3.5e-12, 6.7e-3});
  reg.put({"LTC6081", 13e-9, 0.0, 0.5e-15, 0.0, 3e-12, 1.2e-3});
  reg.put({"LTC6078", 18e-9, 0.0, 0.56e-15, 0.0, 10e-12, 200e-6});
  // Dual micropower difference/lead stage part; power covers the package.
  reg.put({"AD8617", 25e-9, 0.0, 0.05e-15, 0.0, 2e-12, 180e-6});
  return reg;
}

OpAmpRegistry OpAmpRegistry::from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  OpAmpRegistry reg;
  for (auto& [name, entry] : j.items()) {
    OpAmpModel m;
    m.name = name;
    m.v_white = entry.at("v_white").get<double>();
    m.i_white = entry.value("i_white", 0.0);
    m.q_slope = entry.value("q_slope", 0.0);
    m.c_in = entry.value("c_in", 0.0);
    m.power = entry.value("power", 0.0);
    m.flicker_corner = entry.value("flicker_corner", 0.0);
    m.validate();
    reg.put(m);
  }
  return reg;
}

std::string OpAmpRegistry::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, m] : entries_) {
    j[m.name] = {{"v_white", m.v_white},   {"i_white", m.i_white},
                 {"q_slope", m.q_slope},   {"c_in", m.c_in},
                 {"power", m.power},       {"flicker_corner", m.flicker_corner}};
  }
  return j.dump(2);
}

const OpAmpModel& OpAmpRegistry::get(const std::string& name) const {
  auto it = entries_.find(key(name));
  if (it == entries_.end()) {
    throw std::invalid_argument("unknown op amp: " + name);
  }
  return it->second;
}

bool OpAmpRegistry::contains(const std::string& name) const {
  return entries_.count(key(name)) > 0;
}

void OpAmpRegistry::put(const OpAmpModel& model) {
  entries_[key(model.name)] = model;
}

}  // namespace pz
