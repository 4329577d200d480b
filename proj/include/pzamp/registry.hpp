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

#ifndef PZAMP_REGISTRY_HPP_
#define PZAMP_REGISTRY_HPP_

#include <map>
#include <string>

#include "pzamp/types.hpp"

namespace pz {

// Op-amp catalog keyed by (case-insensitive) part name.
class OpAmpRegistry {
 public:
  // Datasheet values for the parts used by the reference design:
  // LT1792, LTC6240, LTC6081, LTC6078 input candidates plus the AD8617
  // difference/lead stage part.
  static OpAmpRegistry builtin();

  static OpAmpRegistry from_json(const std::string& json_text);
  std::string to_json() const;

  const OpAmpModel& get(const std::string& name) const;  // throws on miss
  bool contains(const std::string& name) const;
  void put(const OpAmpModel& model);

  const std::map<std::string, OpAmpModel>& entries() const { return entries_; }

 private:
  static std::string key(const std::string& name);
  std::map<std::string, OpAmpModel> entries_;
};

}  // namespace pz

#endif  // PZAMP_REGISTRY_HPP_
