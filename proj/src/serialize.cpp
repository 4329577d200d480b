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

#include "pzamp/serialize.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace pz {

namespace {

// Shortest round-trippable decimal form.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double parsed = 0.0;
  for (int prec = 1; prec <= 16; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    std::sscanf(buf, "%lf", &parsed);
    if (parsed == v) return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* unit_name(DensityUnit u) {
  switch (u) {
    case DensityUnit::kAmp2PerHz: return "A2_per_hz";
    case DensityUnit::kCoulomb2PerHz: return "C2_per_hz";
    case DensityUnit::kVolt2PerHz: return "V2_per_hz";
    case DensityUnit::kPascal2PerHz: return "Pa2_per_hz";
  }
  return "unknown";
}

DensityUnit unit_from_name(const std::string& s) {
  if (s == "A2_per_hz") return DensityUnit::kAmp2PerHz;
  if (s == "C2_per_hz") return DensityUnit::kCoulomb2PerHz;
  if (s == "V2_per_hz") return DensityUnit::kVolt2PerHz;
  if (s == "Pa2_per_hz") return DensityUnit::kPascal2PerHz;
  throw std::invalid_argument("unknown density unit: " + s);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos != s.size()) throw std::invalid_argument("bad numeric field: " + s);
  return v;
}

}  // namespace

AmplifierConfig config_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  AmplifierConfig cfg;
  cfg.r_f = j.value("r_f", cfg.r_f);
  cfg.c_f = j.value("c_f", cfg.c_f);
  cfg.r_a = j.value("r_a", cfg.r_a);
  cfg.r_b = j.value("r_b", cfg.r_b);
  cfg.c_b = j.value("c_b", cfg.c_b);
  cfg.r_o = j.value("r_o", cfg.r_o);
  cfg.c_o = j.value("c_o", cfg.c_o);
  cfg.oa1_ref = j.value("oa1", cfg.oa1_ref);
  cfg.oa2_ref = j.value("oa2", cfg.oa2_ref);
  cfg.temperature = j.value("temperature", cfg.temperature);
  cfg.validate();
  return cfg;
}

std::string config_to_json(const AmplifierConfig& cfg) {
  nlohmann::json j{{"r_f", cfg.r_f}, {"c_f", cfg.c_f}, {"r_a", cfg.r_a},
                   {"r_b", cfg.r_b}, {"c_b", cfg.c_b}, {"r_o", cfg.r_o},
                   {"c_o", cfg.c_o}, {"oa1", cfg.oa1_ref}, {"oa2", cfg.oa2_ref},
                   {"temperature", cfg.temperature}};
  return j.dump(2);
}

SensorModel sensor_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  SensorModel s;
  s.c_piezo = j.value("c_piezo", s.c_piezo);
  s.c_par = j.value("c_par", s.c_par);
  s.c_gnd = j.value("c_gnd", s.c_gnd);
  if (j.contains("r_par")) {
    if (j["r_par"].is_string() && (j["r_par"] == "inf" || j["r_par"] == "infinity")) {
      s.r_par = std::numeric_limits<double>::infinity();
    } else {
      s.r_par = j["r_par"].get<double>();
    }
  }
  if (j.contains("sensitivity")) {
    const auto& sens = j["sensitivity"];
    std::vector<std::pair<double, double>> table;
    const auto& fs = sens.at("freq_hz");
    const auto& vs = sens.at("c_per_pa");
    if (fs.size() != vs.size()) {
      throw std::invalid_argument("sensitivity freq/value length mismatch");
    }
    for (std::size_t i = 0; i < fs.size(); ++i) {
      table.emplace_back(fs[i].get<double>(), vs[i].get<double>());
    }
    s.sensitivity = std::move(table);
  }
  s.validate();
  return s;
}

std::string sensor_to_json(const SensorModel& sensor) {
  nlohmann::json j{{"c_piezo", sensor.c_piezo}, {"c_par", sensor.c_par},
                   {"c_gnd", sensor.c_gnd}};
  if (std::isinf(sensor.r_par)) {
    j["r_par"] = "inf";
  } else {
    j["r_par"] = sensor.r_par;
  }
  if (sensor.sensitivity) {
    nlohmann::json fs = nlohmann::json::array();
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& [f, v] : *sensor.sensitivity) {
      fs.push_back(f);
      vs.push_back(v);
    }
    j["sensitivity"] = {{"freq_hz", fs}, {"c_per_pa", vs}};
  }
  return j.dump(2);
}

std::string transfer_to_csv(const TransferFunction& tf, const std::string& manifest_ref) {
  tf.validate();
  std::ostringstream out;
  if (!manifest_ref.empty()) out << "# manifest: " << manifest_ref << "\n";
  out << "freq_hz,mag_v_per_c,phase_deg\n";
  for (std::size_t i = 0; i < tf.freqs.size(); ++i) {
    const double mag = std::abs(tf.values[i]);
    const double phase = std::arg(tf.values[i]) * 180.0 / kPi;
    out << fmt(tf.freqs[i]) << ',' << fmt(mag) << ',' << fmt(phase) << '\n';
  }
  return out.str();
}

std::string spectrum_to_csv(const Spectrum& s, const std::string& manifest_ref) {
  s.validate();
  std::ostringstream out;
  if (!manifest_ref.empty()) out << "# manifest: " << manifest_ref << "\n";
  out << "freq_hz,density,unit\n";
  for (std::size_t i = 0; i < s.freqs.size(); ++i) {
    out << fmt(s.freqs[i]) << ',' << fmt(s.values[i]) << ',' << unit_name(s.unit) << '\n';
  }
  return out.str();
}

Spectrum spectrum_from_csv(const std::string& text) {
  Spectrum s;
  bool have_unit = false;
  for (const std::string& line : split_lines(text)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("freq_hz", 0) == 0) continue;  // header
    const auto fields = split_fields(line);
    if (fields.size() < 2) throw std::invalid_argument("bad spectrum row: " + line);
    s.freqs.push_back(parse_double(fields[0]));
    s.values.push_back(parse_double(fields[1]));
    if (fields.size() >= 3 && !have_unit) {
      s.unit = unit_from_name(fields[2]);
      have_unit = true;
    }
  }
  s.validate();
  return s;
}

TimeSeriesFile timeseries_from_csv(const std::string& text) {
  TimeSeriesFile ts;
  for (const std::string& line : split_lines(text)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("sample_rate_hz=");
      if (pos != std::string::npos) {
        ts.sample_rate = parse_double(line.substr(pos + 15));
      }
      const auto lpos = line.find("label=");
      if (lpos != std::string::npos) ts.label = line.substr(lpos + 6);
      continue;
    }
    ts.samples.push_back(parse_double(line));
  }
  if (!(ts.sample_rate > 0)) {
    throw std::invalid_argument("time series is missing '# sample_rate_hz=' header");
  }
  if (ts.samples.size() < 2) throw std::invalid_argument("time series needs >= 2 samples");
  return ts;
}

std::string timeseries_to_csv(const TimeSeriesFile& ts) {
  std::ostringstream out;
  out << "# sample_rate_hz=" << fmt(ts.sample_rate) << '\n';
  if (!ts.label.empty()) out << "# label=" << ts.label << '\n';
  for (double v : ts.samples) out << fmt(v) << '\n';
  return out.str();
}

TwoColumnCsv two_column_from_csv(const std::string& text) {
  TwoColumnCsv data;
  for (const std::string& line : split_lines(text)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_fields(line);
    if (fields.size() < 2) throw std::invalid_argument("expected two CSV columns: " + line);
    // Skip a non-numeric header row.
    try {
      const double a = parse_double(fields[0]);
      const double b = parse_double(fields[1]);
      data.first.push_back(a);
      data.second.push_back(b);
    } catch (const std::exception&) {
      if (!data.first.empty()) throw;
    }
  }
  return data;
}

std::string two_column_to_csv(const std::string& header, const TwoColumnCsv& data,
                              const std::string& manifest_ref) {
  std::ostringstream out;
  if (!manifest_ref.empty()) out << "# manifest: " << manifest_ref << "\n";
  out << header << '\n';
  for (std::size_t i = 0; i < data.first.size(); ++i) {
    out << fmt(data.first[i]) << ',' << fmt(data.second[i]) << '\n';
  }
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string content_hash(const std::string& content) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : content) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace pz
