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
// Batch front end for the charge-amplifier model. Every subcommand writes
// its results under --out-dir along with a manifest.json recording the tool
// version, the command, and content hashes of all inputs and outputs. Data
// files are byte-identical across runs with identical inputs; only the
// manifest carries a timestamp.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pzamp.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail_input(const std::string& msg) { throw CliError{kExitInput, msg}; }
[[noreturn]] void fail_numeric(const std::string& msg) { throw CliError{kExitNumeric, msg}; }

// Library failures map onto the exit-code contract: numeric/solver problems
// are exit 3, everything else (bad arguments, parsing, coverage) is exit 2.
void check(pz_status s) {
  if (s == PZ_OK) return;
  if (s == PZ_ERR_NUMERIC) fail_numeric(pz_last_error());
  fail_input(pz_last_error());
}

std::string format_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_input("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_input("cannot write " + path.string());
  out << body;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// RAII wrappers over the C handles.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  explicit Handle(T* p) : ptr(p) {}
  ~Handle() {
    if (ptr) Free(ptr);
  }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  T* get() const { return ptr; }
};
using ConfigHandle = Handle<pz_config, pz_config_free>;
using SensorHandle = Handle<pz_sensor, pz_sensor_free>;
using RegistryHandle = Handle<pz_registry, pz_registry_free>;

std::string owned_string(char* s) {
  if (!s) fail_input(pz_last_error());
  std::string out = s;
  pz_string_free(s);
  return out;
}

// Gathers the files a command reads and writes, then serializes the record.
class Manifest {
 public:
  Manifest(std::string command, bool quiet) : command_(std::move(command)), quiet_(quiet) {}

  void add_input(const fs::path& path, const std::string& content) {
    inputs_[path.string()] = fnv1a_hex(content);
  }

  void emit(const fs::path& out_dir, const std::string& name, const std::string& body) {
    fs::create_directories(out_dir);
    write_file(out_dir / name, body);
    outputs_[name] = fnv1a_hex(body);
    if (!quiet_) std::cout << "wrote " << (out_dir / name).string() << "\n";
  }

  void finish(const fs::path& out_dir) {
    json j;
    j["command"] = command_;
    j["tool_version"] = pz_version();
    j["inputs"] = inputs_;
    j["outputs"] = outputs_;
    char stamp[32];
    std::time_t now = std::time(nullptr);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = stamp;
    fs::create_directories(out_dir);
    write_file(out_dir / "manifest.json", j.dump(2) + "\n");
  }

 private:
  std::string command_;
  bool quiet_;
  std::map<std::string, std::string> inputs_;
  std::map<std::string, std::string> outputs_;
};

struct CommonOpts {
  std::string out_dir = "out";
  std::string format = "csv";
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--out-dir", opts->out_dir, "Output directory")->capture_default_str();
  cmd->add_option("--format", opts->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_flag("--quiet", opts->quiet, "Suppress progress messages");
}

ConfigHandle load_config(const std::string& path, Manifest& manifest) {
  if (path.empty()) return ConfigHandle(pz_config_default());
  const std::string text = read_file(path);
  manifest.add_input(path, text);
  pz_config* cfg = pz_config_from_json(text.c_str());
  if (!cfg) fail_input(std::string("config: ") + pz_last_error());
  return ConfigHandle(cfg);
}

SensorHandle load_sensor(const std::string& path, bool unloaded, Manifest& manifest) {
  if (unloaded) return SensorHandle(pz_sensor_unloaded());
  if (path.empty()) return SensorHandle(pz_sensor_default());
  const std::string text = read_file(path);
  manifest.add_input(path, text);
  pz_sensor* s = pz_sensor_from_json(text.c_str());
  if (!s) fail_input(std::string("sensor: ") + pz_last_error());
  return SensorHandle(s);
}

RegistryHandle load_registry(const std::string& path, Manifest& manifest) {
  if (path.empty()) return RegistryHandle(pz_registry_builtin());
  const std::string text = read_file(path);
  manifest.add_input(path, text);
  pz_registry* r = pz_registry_from_json(text.c_str());
  if (!r) fail_input(std::string("op-amp registry: ") + pz_last_error());
  return RegistryHandle(r);
}

std::vector<double> log_grid_per_decade(double f_lo, double f_hi, int per_decade) {
  if (!(0 < f_lo && f_lo < f_hi) || per_decade < 1) {
    fail_input("grid needs 0 < f_lo < f_hi and at least one point per decade");
  }
  const double decades = std::log10(f_hi / f_lo);
  const auto n = static_cast<std::size_t>(std::lround(decades * per_decade)) + 1;
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = f_lo * std::pow(10.0, static_cast<double>(i) / per_decade);
  }
  grid.back() = f_hi;
  return grid;
}

constexpr const char* kManifestRef = "# manifest: manifest.json\n";

// Two-column table with an optional "# sample_rate_hz=" style comment header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
  std::map<std::string, double> attrs;
};

CsvTable parse_csv(const std::string& text, const std::string& origin) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        std::string key = line.substr(1, eq - 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        try {
          table.attrs[key] = std::stod(line.substr(eq + 1));
        } catch (const std::exception&) {
          fail_input(origin + ": bad attribute line: " + line);
        }
      }
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (table.header.empty()) {
      table.header = cells;
      table.columns.resize(cells.size());
      continue;
    }
    if (cells.size() != table.header.size()) {
      fail_input(origin + ": ragged row: " + line);
    }
    // Text columns (such as a unit tag) parse as NaN and are rejected only
    // if something actually reads them as numbers.
    for (std::size_t i = 0; i < cells.size(); ++i) {
      double v = std::numeric_limits<double>::quiet_NaN();
      try {
        v = std::stod(cells[i]);
      } catch (const std::exception&) {
      }
      table.columns[i].push_back(v);
    }
  }
  if (table.header.empty()) fail_input(origin + ": no header row");
  return table;
}

const std::vector<double>& column(const CsvTable& t, const std::string& name,
                                  const std::string& origin) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] != name) continue;
    for (double v : t.columns[i]) {
      if (std::isnan(v)) fail_input(origin + ": non-numeric cell in column '" + name + "'");
    }
    return t.columns[i];
  }
  fail_input(origin + ": missing column '" + name + "'");
}

// Shared band-edge flags.
struct BandOpts {
  double f_lo = 200.0;
  double f_hi = 20e3;
};

void add_band(CLI::App* cmd, BandOpts* band) {
  cmd->add_option("--f-lo", band->f_lo, "Band lower edge, Hz")->capture_default_str();
  cmd->add_option("--f-hi", band->f_hi, "Band upper edge, Hz")->capture_default_str();
}

void require_band(const BandOpts& band) {
  if (!(0 < band.f_lo && band.f_lo < band.f_hi)) {
    fail_input("band must satisfy 0 < f-lo < f-hi");
  }
}

/* ---- bode --------------------------------------------------------------- */

struct BodeOpts {
  CommonOpts common;
  std::string config_path;
  double f_lo = 10.0;
  double f_hi = 100e3;
  int per_decade = 200;
};

int run_bode(const BodeOpts& o) {
  Manifest manifest("bode", o.common.quiet);
  ConfigHandle cfg = load_config(o.config_path, manifest);
  const auto grid = log_grid_per_decade(o.f_lo, o.f_hi, o.per_decade);
  std::vector<double> mag(grid.size()), phase(grid.size());
  check(pz_bode(cfg.get(), grid.data(), grid.size(), mag.data(), phase.data()));
  if (o.common.format == "json") {
    json j;
    j["freq_hz"] = grid;
    j["mag_v_per_c"] = mag;
    j["phase_deg"] = phase;
    manifest.emit(o.common.out_dir, "bode.json", j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << kManifestRef << "freq_hz,mag_v_per_c,phase_deg\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << format_num(grid[i]) << ',' << format_num(mag[i]) << ','
          << format_num(phase[i]) << '\n';
    }
    manifest.emit(o.common.out_dir, "bode.csv", out.str());
  }
  manifest.finish(o.common.out_dir);
  return kExitOk;
}

/* ---- noise / enc --------------------------------------------------------- */

struct NoiseOpts {
  CommonOpts common;
  std::string config_path;
  std::string sensor_path;
  std::string registry_path;
  bool unloaded = false;
  BandOpts band{100.0, 20e3};
  int per_decade = 100;
  bool output_referred = false;
};

int run_noise(const NoiseOpts& o) {
  Manifest manifest("noise", o.common.quiet);
  ConfigHandle cfg = load_config(o.config_path, manifest);
  SensorHandle sensor = load_sensor(o.sensor_path, o.unloaded, manifest);
  RegistryHandle reg = load_registry(o.registry_path, manifest);
  require_band(o.band);
  const auto grid = log_grid_per_decade(o.band.f_lo, o.band.f_hi, o.per_decade);
  std::vector<double> density(grid.size());
  const char* unit = o.output_referred ? "V^2/Hz" : "C^2/Hz";
  if (o.output_referred) {
    check(pz_output_noise_density(cfg.get(), sensor.get(), reg.get(), grid.data(),
                                  grid.size(), density.data()));
  } else {
    check(pz_charge_noise_density(cfg.get(), sensor.get(), reg.get(), grid.data(),
                                  grid.size(), density.data()));
  }
  if (o.common.format == "json") {
    json j;
    j["freq_hz"] = grid;
    j["density"] = density;
    j["unit"] = unit;
    manifest.emit(o.common.out_dir, "noise.json", j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << kManifestRef << "freq_hz,density,unit\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << format_num(grid[i]) << ',' << format_num(density[i]) << ',' << unit << '\n';
    }
    manifest.emit(o.common.out_dir, "noise.csv", out.str());
  }
  manifest.finish(o.common.out_dir);
  return kExitOk;
}

struct EncOpts {
  CommonOpts common;
  std::string config_path;
  std::string sensor_path;
  std::string registry_path;
  bool unloaded = false;
  BandOpts band;
};

int run_enc(const EncOpts& o) {
  Manifest manifest("enc", o.common.quiet);
  ConfigHandle cfg = load_config(o.config_path, manifest);
  SensorHandle sensor = load_sensor(o.sensor_path, o.unloaded, manifest);
  RegistryHandle reg = load_registry(o.registry_path, manifest);
  require_band(o.band);
  double enc = 0.0;
  check(pz_enc(cfg.get(), sensor.get(), reg.get(), o.band.f_lo, o.band.f_hi, &enc));
  json j;
  j["enc_c"] = enc;
  j["enc_electrons"] = enc / 1.602176634e-19;
  j["band_hz"] = {o.band.f_lo, o.band.f_hi};
  // Published bench measurements of the same front end, for orientation.
  const double reference = o.unloaded ? 30e-18 : 62e-18;
  j["reference"]["label"] = o.unloaded ? "bench, input open" : "bench, sensor attached";
  j["reference"]["enc_c"] = reference;
  j["reference"]["model_over_reference"] = enc / reference;
  manifest.emit(o.common.out_dir, "enc.json", j.dump(2) + "\n");
  manifest.finish(o.common.out_dir);
  if (!o.common.quiet) {
    std::cout << "ENC " << format_num(enc) << " C over " << format_num(o.band.f_lo) << "-"
              << format_num(o.band.f_hi) << " Hz (reference " << format_num(reference)
              << " C, ratio " << format_num(enc / reference) << ")\n";
  }
  return kExitOk;
}

/* ---- ein ----------------------------------------------------------------- */

struct EinOpts {
  CommonOpts common;
  std::string config_path;
  std::string sensor_path;
  std::string registry_path;
  std::string noise_csv;
  std::string sensitivity_csv;
  std::string pinna_csv;
  BandOpts band{200.0, 6e3};
};

int run_ein(const EinOpts& o) {
  Manifest manifest("ein", o.common.quiet);
  require_band(o.band);
  if (o.sensitivity_csv.empty()) fail_input("ein requires --sensitivity");

  // Noise density either from a prior noise run or computed from a config.
  std::vector<double> grid, density;
  if (!o.noise_csv.empty()) {
    const std::string text = read_file(o.noise_csv);
    manifest.add_input(o.noise_csv, text);
    const CsvTable t = parse_csv(text, o.noise_csv);
    grid = column(t, "freq_hz", o.noise_csv);
    density = column(t, "density", o.noise_csv);
  } else {
    ConfigHandle cfg = load_config(o.config_path, manifest);
    SensorHandle sensor = load_sensor(o.sensor_path, false, manifest);
    RegistryHandle reg = load_registry(o.registry_path, manifest);
    // Bands overlapping the range can reach a third-octave past its edges,
    // so compute the density on a correspondingly wider grid.
    const double pad = std::pow(2.0, 1.0 / 3.0) * 1.001;
    grid = log_grid_per_decade(o.band.f_lo / pad, o.band.f_hi * pad, 200);
    density.resize(grid.size());
    check(pz_charge_noise_density(cfg.get(), sensor.get(), reg.get(), grid.data(),
                                  grid.size(), density.data()));
  }

  const std::string sens_text = read_file(o.sensitivity_csv);
  manifest.add_input(o.sensitivity_csv, sens_text);
  const CsvTable sens_table = parse_csv(sens_text, o.sensitivity_csv);
  const auto& sens_freqs = column(sens_table, "freq_hz", o.sensitivity_csv);
  std::vector<double> sens_values = column(sens_table, "coulombs_per_pascal", o.sensitivity_csv);

  if (!o.pinna_csv.empty()) {
    const std::string pinna_text = read_file(o.pinna_csv);
    manifest.add_input(o.pinna_csv, pinna_text);
    const CsvTable pinna = parse_csv(pinna_text, o.pinna_csv);
    const auto& pf = column(pinna, "freq_hz", o.pinna_csv);
    const auto& pg = column(pinna, "gain_db", o.pinna_csv);
    check(pz_apply_pinna(sens_freqs.data(), sens_values.data(), sens_values.size(),
                         pf.data(), pg.data(), pf.size()));
  }

  std::size_t n_bands = 0;
  check(pz_third_octave_bands(o.band.f_lo, o.band.f_hi, nullptr, nullptr, 0, &n_bands));
  if (n_bands == 0) fail_input("no 1/3-octave bands overlap the requested range");
  std::vector<double> centers(n_bands), bandwidths(n_bands), ein(n_bands);
  check(pz_third_octave_bands(o.band.f_lo, o.band.f_hi, centers.data(), bandwidths.data(),
                              n_bands, &n_bands));
  check(pz_ein_bands(grid.data(), density.data(), grid.size(), sens_freqs.data(),
                     sens_values.data(), sens_freqs.size(), centers.data(), n_bands,
                     ein.data()));
  double total_a = 0.0, total_flat = 0.0;
  check(pz_ein_total(ein.data(), centers.data(), n_bands, 1, &total_a));
  check(pz_ein_total(ein.data(), centers.data(), n_bands, 0, &total_flat));

  if (o.common.format == "json") {
    json j;
    j["band_center_hz"] = centers;
    j["ein_db_spl"] = ein;
    json weights = json::array();
    for (double c : centers) weights.push_back(pz_a_weight_db(c));
    j["a_weight_db"] = weights;
    j["total_db_spl_a_weighted"] = total_a;
    j["total_db_spl"] = total_flat;
    manifest.emit(o.common.out_dir, "ein.json", j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << kManifestRef << "band_center_hz,ein_db_spl,a_weight_db\n";
    for (std::size_t i = 0; i < n_bands; ++i) {
      out << format_num(centers[i]) << ',' << format_num(ein[i]) << ','
          << format_num(pz_a_weight_db(centers[i])) << '\n';
    }
    manifest.emit(o.common.out_dir, "ein.csv", out.str());
    json totals;
    totals["total_db_spl_a_weighted"] = total_a;
    totals["total_db_spl"] = total_flat;
    manifest.emit(o.common.out_dir, "ein_total.json", totals.dump(2) + "\n");
  }
  manifest.finish(o.common.out_dir);
  if (!o.common.quiet) {
    std::cout << "EIN total " << format_num(total_flat) << " dB SPL ("
              << format_num(total_a) << " dB SPL A-weighted)\n";
  }
  return kExitOk;
}

/* ---- analyze -------------------------------------------------------------- */

struct AnalyzeOpts {
  CommonOpts common;
  std::string mode;
  std::string input;
  std::string second_input;  // cmrr: common-mode gain CSV
  double f0 = 1000.0;
  int harmonics = 10;
  std::size_t segment_length = 4096;
  double overlap = 0.5;
  double v_out = 0.0;
  double v_applied = 0.0;
  double gain = 2e13;
};

struct LoadedSeries {
  double sample_rate = 0.0;
  std::vector<double> samples;
};

// Format: "# sample_rate_hz=<value>" comment, then one sample per line.
LoadedSeries load_timeseries(const std::string& path, Manifest& manifest) {
  const std::string text = read_file(path);
  manifest.add_input(path, text);
  LoadedSeries s;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("sample_rate_hz=");
      if (pos != std::string::npos) {
        try {
          s.sample_rate = std::stod(line.substr(pos + 15));
        } catch (const std::exception&) {
          fail_input(path + ": bad sample rate: " + line);
        }
      }
      continue;
    }
    try {
      s.samples.push_back(std::stod(line));
    } catch (const std::exception&) {
      fail_input(path + ": non-numeric sample '" + line + "'");
    }
  }
  if (!(s.sample_rate > 0)) fail_input(path + ": missing '# sample_rate_hz=' header");
  if (s.samples.size() < 2) fail_input(path + ": too few samples");
  return s;
}

int run_analyze(const AnalyzeOpts& o) {
  Manifest manifest("analyze " + o.mode, o.common.quiet);
  json report;
  report["mode"] = o.mode;

  if (o.mode == "thd") {
    const LoadedSeries s = load_timeseries(o.input, manifest);
    double thd = 0.0;
    check(pz_thd(s.samples.data(), s.samples.size(), s.sample_rate, o.f0, o.harmonics,
                 &thd));
    report["f0_hz"] = o.f0;
    report["thd"] = thd;
    if (!o.common.quiet) std::cout << "THD " << format_num(thd) << "\n";
  } else if (o.mode == "spectrum") {
    const LoadedSeries s = load_timeseries(o.input, manifest);
    std::size_t bins = 0;
    check(pz_power_spectrum(s.samples.data(), s.samples.size(), s.sample_rate,
                            o.segment_length, o.overlap, nullptr, nullptr, &bins));
    std::vector<double> freqs(bins), density(bins);
    check(pz_power_spectrum(s.samples.data(), s.samples.size(), s.sample_rate,
                            o.segment_length, o.overlap, freqs.data(), density.data(),
                            &bins));
    std::ostringstream out;
    out << kManifestRef << "freq_hz,density,unit\n";
    for (std::size_t i = 0; i < bins; ++i) {
      out << format_num(freqs[i]) << ',' << format_num(density[i]) << ",V^2/Hz\n";
    }
    manifest.emit(o.common.out_dir, "spectrum.csv", out.str());
    report["bins"] = bins;
  } else if (o.mode == "linearity") {
    const std::string text = read_file(o.input);
    manifest.add_input(o.input, text);
    const CsvTable t = parse_csv(text, o.input);
    const auto& stim = column(t, "stimulus_db_spl", o.input);
    const auto& resp = column(t, "response_rms_v", o.input);
    double slope = 0.0, max_dev = 0.0;
    check(pz_linearity_fit(stim.data(), resp.data(), stim.size(), &slope, &max_dev));
    report["slope_db_per_db"] = slope;
    report["max_deviation_db"] = max_dev;
    if (!o.common.quiet) {
      std::cout << "slope " << format_num(slope) << " dB/dB, max deviation "
                << format_num(max_dev) << " dB\n";
    }
  } else if (o.mode == "cmrr") {
    if (o.second_input.empty()) fail_input("cmrr needs --common-mode CSV");
    const std::string diff_text = read_file(o.input);
    const std::string cm_text = read_file(o.second_input);
    manifest.add_input(o.input, diff_text);
    manifest.add_input(o.second_input, cm_text);
    const CsvTable diff = parse_csv(diff_text, o.input);
    const CsvTable cm = parse_csv(cm_text, o.second_input);
    const auto& freqs = column(diff, "freq_hz", o.input);
    const auto& diff_mag = column(diff, "mag_v_per_c", o.input);
    const auto& cm_freqs = column(cm, "freq_hz", o.second_input);
    const auto& cm_mag = column(cm, "mag_v_per_c", o.second_input);
    if (freqs != cm_freqs) fail_input("cmrr inputs must share the same frequency grid");
    std::vector<double> cmrr(freqs.size());
    check(pz_cmrr_db(diff_mag.data(), cm_mag.data(), freqs.size(), cmrr.data()));
    std::ostringstream out;
    out << kManifestRef << "freq_hz,cmrr_db\n";
    for (std::size_t i = 0; i < freqs.size(); ++i) {
      out << format_num(freqs[i]) << ',' << format_num(cmrr[i]) << '\n';
    }
    manifest.emit(o.common.out_dir, "cmrr.csv", out.str());
  } else if (o.mode == "emi-cap") {
    double farads = 0.0;
    check(pz_emi_capacitance(o.v_out, o.v_applied, o.gain, &farads));
    report["coupling_capacitance_f"] = farads;
    if (!o.common.quiet) std::cout << "coupling capacitance " << format_num(farads) << " F\n";
  } else {
    fail_input("unknown analyze mode: " + o.mode);
  }

  manifest.emit(o.common.out_dir, "analyze.json", report.dump(2) + "\n");
  manifest.finish(o.common.out_dir);
  return kExitOk;
}

/* ---- explore -------------------------------------------------------------- */

struct ExploreOpts {
  CommonOpts common;
  std::string spec_path;
  std::string registry_path;
};

int run_explore(const ExploreOpts& o) {
  Manifest manifest("explore", o.common.quiet);
  if (o.spec_path.empty()) fail_input("explore requires --spec");
  const std::string spec_text = read_file(o.spec_path);
  manifest.add_input(o.spec_path, spec_text);
  RegistryHandle reg = load_registry(o.registry_path, manifest);
  pz_sweep* sweep = pz_sweep_run(spec_text.c_str(), reg.get());
  if (!sweep) fail_input(pz_last_error());
  const std::string csv = owned_string(pz_sweep_csv(sweep, "manifest.json"));
  if (o.common.format == "json") {
    json rows = json::array();
    const std::size_t n = pz_sweep_count(sweep);
    for (std::size_t i = 0; i < n; ++i) {
      double r_f, c_f, enc, gain, cuton, power;
      int pareto;
      check(pz_sweep_point(sweep, i, &r_f, &c_f, &enc, &gain, &cuton, &power, &pareto));
      rows.push_back({{"r_f_ohm", r_f},
                      {"c_f_f", c_f},
                      {"oa1", pz_sweep_opamp(sweep, i, 1)},
                      {"oa2", pz_sweep_opamp(sweep, i, 2)},
                      {"enc_c", enc},
                      {"midband_gain_v_per_c", gain},
                      {"cuton_hz", cuton},
                      {"power_w", power},
                      {"pareto", pareto != 0}});
    }
    manifest.emit(o.common.out_dir, "explore.json", rows.dump(2) + "\n");
  } else {
    manifest.emit(o.common.out_dir, "explore.csv", csv);
  }
  pz_sweep_free(sweep);
  manifest.finish(o.common.out_dir);
  return kExitOk;
}

/* ---- oracle-check ----------------------------------------------------------- */

struct OracleOpts {
  CommonOpts common;
  std::string config_path;
  std::string sensor_path;
  std::string registry_path;
  bool unloaded = false;
  std::size_t gain_points = 200;
  std::size_t noise_points = 50;
};

int run_oracle_check(const OracleOpts& o) {
  Manifest manifest("oracle-check", o.common.quiet);
  ConfigHandle cfg = load_config(o.config_path, manifest);
  SensorHandle sensor = load_sensor(o.sensor_path, o.unloaded, manifest);
  RegistryHandle reg = load_registry(o.registry_path, manifest);
  double gain_err = 0.0, noise_err = 0.0;
  check(pz_oracle_gain_error(cfg.get(), sensor.get(), 10.0, 100e3, o.gain_points,
                             &gain_err));
  check(pz_oracle_noise_error(cfg.get(), sensor.get(), reg.get(), 100.0, 20e3,
                              o.noise_points, &noise_err));
  json j;
  j["gain_max_rel_err"] = gain_err;
  j["noise_max_rel_err"] = noise_err;
  j["gain_points"] = o.gain_points;
  j["noise_points"] = o.noise_points;
  manifest.emit(o.common.out_dir, "oracle.json", j.dump(2) + "\n");
  manifest.finish(o.common.out_dir);
  std::cout << "gain max relative error " << format_num(gain_err) << "\n"
            << "noise max relative error " << format_num(noise_err) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piezo charge-amplifier signal chain modeling toolkit"};
  app.require_subcommand(1);

  BodeOpts bode;
  CLI::App* cmd_bode = app.add_subcommand("bode", "Transfer function over a log grid");
  add_common(cmd_bode, &bode.common);
  cmd_bode->add_option("--config", bode.config_path, "Amplifier config JSON");
  cmd_bode->add_option("--f-lo", bode.f_lo, "Grid start, Hz")->capture_default_str();
  cmd_bode->add_option("--f-hi", bode.f_hi, "Grid end, Hz")->capture_default_str();
  cmd_bode->add_option("--points-per-decade", bode.per_decade, "Log grid density")
      ->capture_default_str();

  NoiseOpts noise;
  CLI::App* cmd_noise = app.add_subcommand("noise", "Input-referred noise density spectrum");
  add_common(cmd_noise, &noise.common);
  cmd_noise->add_option("--config", noise.config_path, "Amplifier config JSON");
  cmd_noise->add_option("--sensor", noise.sensor_path, "Sensor model JSON");
  cmd_noise->add_option("--opamps", noise.registry_path, "Op-amp registry JSON");
  cmd_noise->add_flag("--unloaded", noise.unloaded, "No sensor attached to the input");
  add_band(cmd_noise, &noise.band);
  cmd_noise->add_option("--points-per-decade", noise.per_decade, "Log grid density")
      ->capture_default_str();
  cmd_noise->add_flag("--output-referred", noise.output_referred,
                      "Emit output voltage noise instead of input charge noise");

  EncOpts enc;
  CLI::App* cmd_enc = app.add_subcommand("enc", "Equivalent noise charge over a band");
  add_common(cmd_enc, &enc.common);
  cmd_enc->add_option("--config", enc.config_path, "Amplifier config JSON");
  cmd_enc->add_option("--sensor", enc.sensor_path, "Sensor model JSON");
  cmd_enc->add_option("--opamps", enc.registry_path, "Op-amp registry JSON");
  cmd_enc->add_flag("--unloaded", enc.unloaded, "No sensor attached to the input");
  add_band(cmd_enc, &enc.band);

  EinOpts ein;
  CLI::App* cmd_ein = app.add_subcommand("ein", "Equivalent input noise in 1/3-octave bands");
  add_common(cmd_ein, &ein.common);
  cmd_ein->add_option("--config", ein.config_path, "Amplifier config JSON");
  cmd_ein->add_option("--sensor", ein.sensor_path, "Sensor model JSON");
  cmd_ein->add_option("--opamps", ein.registry_path, "Op-amp registry JSON");
  cmd_ein->add_option("--noise-csv", ein.noise_csv, "Precomputed charge noise density CSV");
  cmd_ein->add_option("--sensitivity", ein.sensitivity_csv,
                      "Sensitivity CSV freq_hz,coulombs_per_pascal");
  cmd_ein->add_option("--pinna", ein.pinna_csv, "Pinna gain CSV freq_hz,gain_db");
  add_band(cmd_ein, &ein.band);

  AnalyzeOpts analyze;
  CLI::App* cmd_analyze = app.add_subcommand("analyze", "Recorded-signal analysis");
  add_common(cmd_analyze, &analyze.common);
  cmd_analyze
      ->add_option("--mode", analyze.mode, "thd | spectrum | linearity | cmrr | emi-cap")
      ->required()
      ->check(CLI::IsMember({"thd", "spectrum", "linearity", "cmrr", "emi-cap"}));
  cmd_analyze->add_option("--input", analyze.input, "Primary input CSV");
  cmd_analyze->add_option("--common-mode", analyze.second_input,
                          "Common-mode gain CSV (cmrr mode)");
  cmd_analyze->add_option("--f0", analyze.f0, "Fundamental, Hz (thd)")->capture_default_str();
  cmd_analyze->add_option("--harmonics", analyze.harmonics, "Harmonic count (thd)")
      ->capture_default_str();
  cmd_analyze->add_option("--segment-length", analyze.segment_length, "FFT segment (spectrum)")
      ->capture_default_str();
  cmd_analyze->add_option("--overlap", analyze.overlap, "Segment overlap fraction")
      ->capture_default_str();
  cmd_analyze->add_option("--v-out", analyze.v_out, "Output RMS, V (emi-cap)");
  cmd_analyze->add_option("--v-applied", analyze.v_applied, "Applied RMS, V (emi-cap)");
  cmd_analyze->add_option("--gain", analyze.gain, "Charge gain, V/C (emi-cap)")
      ->capture_default_str();

  ExploreOpts explore;
  CLI::App* cmd_explore = app.add_subcommand("explore", "Component-selection sweep");
  add_common(cmd_explore, &explore.common);
  cmd_explore->add_option("--spec", explore.spec_path, "Sweep spec JSON")->required();
  cmd_explore->add_option("--opamps", explore.registry_path, "Op-amp registry JSON");

  OracleOpts oracle;
  CLI::App* cmd_oracle =
      app.add_subcommand("oracle-check", "Closed form vs nodal-analysis comparison");
  add_common(cmd_oracle, &oracle.common);
  cmd_oracle->add_option("--config", oracle.config_path, "Amplifier config JSON");
  cmd_oracle->add_option("--sensor", oracle.sensor_path, "Sensor model JSON");
  cmd_oracle->add_option("--opamps", oracle.registry_path, "Op-amp registry JSON");
  cmd_oracle->add_flag("--unloaded", oracle.unloaded, "No sensor attached to the input");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (cmd_bode->parsed()) return run_bode(bode);
    if (cmd_noise->parsed()) return run_noise(noise);
    if (cmd_enc->parsed()) return run_enc(enc);
    if (cmd_ein->parsed()) return run_ein(ein);
    if (cmd_analyze->parsed()) return run_analyze(analyze);
    if (cmd_explore->parsed()) return run_explore(explore);
    if (cmd_oracle->parsed()) return run_oracle_check(oracle);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}
