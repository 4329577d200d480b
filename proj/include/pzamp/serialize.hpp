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
// JSON config I/O and the CSV formats shared by the CLI and tests. All
// numeric fields are SI base units; there is no implicit pF/GΩ scaling in
// data files.

#ifndef PZAMP_SERIALIZE_HPP_
#define PZAMP_SERIALIZE_HPP_

#include <string>
#include <vector>

#include "pzamp/types.hpp"

namespace pz {

AmplifierConfig config_from_json(const std::string& json_text);
std::string config_to_json(const AmplifierConfig& cfg);

SensorModel sensor_from_json(const std::string& json_text);
std::string sensor_to_json(const SensorModel& sensor);

// CSV: freq_hz,mag_v_per_c,phase_deg
std::string transfer_to_csv(const TransferFunction& tf, const std::string& manifest_ref = "");

// CSV: freq_hz,density,unit
std::string spectrum_to_csv(const Spectrum& s, const std::string& manifest_ref = "");
Spectrum spectrum_from_csv(const std::string& text);

// Uniformly sampled record: "# sample_rate_hz=<value>" then one sample per line.
struct TimeSeriesFile {
  double sample_rate = 0.0;
  std::vector<double> samples;
  std::string label;
};
TimeSeriesFile timeseries_from_csv(const std::string& text);
std::string timeseries_to_csv(const TimeSeriesFile& ts);

// Two-column CSV with a header line, used for sensitivity (freq_hz,
// coulombs_per_pascal), pinna gain (freq_hz,gain_db) and level sweeps
// (stimulus_db_spl,response_rms_v).
struct TwoColumnCsv {
  std::vector<double> first;
  std::vector<double> second;
};
TwoColumnCsv two_column_from_csv(const std::string& text);
std::string two_column_to_csv(const std::string& header, const TwoColumnCsv& data,
                              const std::string& manifest_ref = "");

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a 64-bit content hash, hex encoded; used by run manifests.
std::string content_hash(const std::string& content);

}  // namespace pz

#endif  // PZAMP_SERIALIZE_HPP_
