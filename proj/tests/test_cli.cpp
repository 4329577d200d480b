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
// Black-box tests of the command-line binary: exit codes, file layout,
// and byte-level reproducibility.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return PZAMP_CLI_PATH; }

int run(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "pzamp_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("no subcommand or unknown flags exit 2") {
  CHECK(run("") == 2);
  CHECK(run("bode --no-such-flag") == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("bode writes the documented CSV with a manifest reference") {
  const fs::path out = scratch() / "bode";
  REQUIRE(run("bode --quiet --out-dir " + out.string()) == 0);
  const std::string csv = slurp(out / "bode.csv");
  CHECK(csv.rfind("# manifest: manifest.json\n", 0) == 0);
  CHECK(csv.find("freq_hz,mag_v_per_c,phase_deg\n") != std::string::npos);
  // Manifest comment + header + 801 grid rows.
  CHECK(count_lines(csv) == 803);
  // The 20 V/pC plateau appears in the data: check the last row's magnitude.
  const auto last_nl = csv.find_last_of('\n', csv.size() - 2);
  const std::string last = csv.substr(last_nl + 1);
  const auto comma = last.find(',');
  const double top_mag = std::stod(last.substr(comma + 1));
  CHECK(std::abs(top_mag - 2e13) / 2e13 < 2e-3);
  const std::string manifest = slurp(out / "manifest.json");
  CHECK(manifest.find("\"command\": \"bode\"") != std::string::npos);
  CHECK(manifest.find("bode.csv") != std::string::npos);
}

TEST_CASE("identical runs produce byte-identical data files") {
  const fs::path a = scratch() / "rep_a";
  const fs::path b = scratch() / "rep_b";
  REQUIRE(run("bode --quiet --out-dir " + a.string()) == 0);
  REQUIRE(run("bode --quiet --out-dir " + b.string()) == 0);
  CHECK(slurp(a / "bode.csv") == slurp(b / "bode.csv"));
}

TEST_CASE("bad config JSON exits 2") {
  const fs::path bad = scratch() / "bad.json";
  spit(bad, "{this is not json");
  CHECK(run("bode --quiet --config " + bad.string() + " --out-dir " +
            (scratch() / "bad_out").string()) == 2);
  CHECK(run("bode --quiet --config /nonexistent.json --out-dir " +
            (scratch() / "bad_out2").string()) == 2);
}

TEST_CASE("enc reports the scalar and the bench reference") {
  const fs::path out = scratch() / "enc";
  REQUIRE(run("enc --quiet --unloaded --out-dir " + out.string()) == 0);
  const std::string body = slurp(out / "enc.json");
  CHECK(body.find("enc_c") != std::string::npos);
  CHECK(body.find("1.15743") != std::string::npos);
  CHECK(body.find("3e-17") != std::string::npos);
  CHECK(body.find("model_over_reference") != std::string::npos);
}

TEST_CASE("inverted band exits 2") {
  CHECK(run("enc --quiet --f-lo 20000 --f-hi 200 --out-dir " +
            (scratch() / "inv").string()) == 2);
}

TEST_CASE("noise density CSV has the unit column") {
  const fs::path out = scratch() / "noise";
  REQUIRE(run("noise --quiet --out-dir " + out.string()) == 0);
  const std::string csv = slurp(out / "noise.csv");
  CHECK(csv.find("freq_hz,density,unit\n") != std::string::npos);
  CHECK(csv.find("C^2/Hz") != std::string::npos);
}

TEST_CASE("ein round trip through files") {
  // Flat sensitivity plus a pink density that carries 40 dB SPL per band.
  const double sens = 0.5e-15;
  const double p40 = 20e-6 * std::pow(10.0, 40.0 / 20.0);
  const double k = p40 * p40 / (std::log(2.0) / 3.0);
  std::ostringstream noise;
  noise << "freq_hz,density,unit\n";
  for (int i = 0; i <= 300; ++i) {
    const double f = 100.0 * std::pow(10.0, i / 150.0);  // 100 Hz - 10 kHz
    noise << f << ',' << sens * sens * k / f << ",C^2/Hz\n";
  }
  const fs::path noise_csv = scratch() / "pink.csv";
  spit(noise_csv, noise.str());
  const fs::path sens_csv = scratch() / "sens.csv";
  spit(sens_csv, "freq_hz,coulombs_per_pascal\n50,5e-16\n20000,5e-16\n");

  const fs::path out = scratch() / "ein";
  REQUIRE(run("ein --quiet --noise-csv " + noise_csv.string() + " --sensitivity " +
              sens_csv.string() + " --f-lo 200 --f-hi 6000 --out-dir " + out.string()) ==
          0);
  const std::string csv = slurp(out / "ein.csv");
  CHECK(csv.find("band_center_hz,ein_db_spl,a_weight_db\n") != std::string::npos);
  // Every band reads 40 dB SPL within rounding.
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);  // manifest
  std::getline(rows, line);  // header
  int bands = 0;
  while (std::getline(rows, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double ein = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(std::abs(ein - 40.0) < 0.1);
    ++bands;
  }
  CHECK(bands >= 15);

  // A +20 dB flat pinna shifts the totals down 20 dB.
  const fs::path pinna_csv = scratch() / "pinna.csv";
  spit(pinna_csv, "freq_hz,gain_db\n50,20\n20000,20\n");
  const fs::path out2 = scratch() / "ein_pinna";
  REQUIRE(run("ein --quiet --noise-csv " + noise_csv.string() + " --sensitivity " +
              sens_csv.string() + " --pinna " + pinna_csv.string() +
              " --f-lo 200 --f-hi 6000 --out-dir " + out2.string()) == 0);
  const std::string t1 = slurp(out / "ein_total.json");
  const std::string t2 = slurp(out2 / "ein_total.json");
  const auto total_of = [](const std::string& body) {
    const auto pos = body.find("total_db_spl\": ");
    return std::stod(body.substr(pos + 15));
  };
  CHECK(std::abs(total_of(t1) - total_of(t2) - 20.0) < 0.05);
}

TEST_CASE("ein without band coverage exits 2") {
  const fs::path sens_csv = scratch() / "narrow.csv";
  spit(sens_csv, "freq_hz,coulombs_per_pascal\n900,5e-16\n1100,5e-16\n");
  CHECK(run("ein --quiet --sensitivity " + sens_csv.string() +
            " --f-lo 200 --f-hi 6000 --out-dir " + (scratch() / "einfail").string()) ==
        2);
}

TEST_CASE("analyze thd on a constructed 0.1 percent waveform") {
  std::ostringstream ts;
  ts << "# sample_rate_hz=48000\n";
  for (int i = 0; i < 96000; ++i) {
    const double t = i / 48000.0;
    const double pi = 3.14159265358979323846;
    ts << std::sin(2 * pi * 1000.0 * t) + 0.001 * std::sin(2 * pi * 2000.0 * t) << "\n";
  }
  const fs::path wav = scratch() / "tone.csv";
  spit(wav, ts.str());
  const fs::path out = scratch() / "thd";
  REQUIRE(run("analyze --quiet --mode thd --f0 1000 --input " + wav.string() +
              " --out-dir " + out.string()) == 0);
  const std::string body = slurp(out / "analyze.json");
  const auto pos = body.find("\"thd\": ");
  REQUIRE(pos != std::string::npos);
  const double thd = std::stod(body.substr(pos + 7));
  CHECK(std::abs(thd - 0.001) < 0.00005);
}

TEST_CASE("analyze emi-cap recovers the constructed capacitance") {
  const fs::path out = scratch() / "emi";
  REQUIRE(run("analyze --quiet --mode emi-cap --v-out 1.2e-2 --v-applied 1.0 "
              "--gain 2e13 --out-dir " +
              out.string()) == 0);
  const std::string body = slurp(out / "analyze.json");
  const auto pos = body.find("\"coupling_capacitance_f\": ");
  REQUIRE(pos != std::string::npos);
  const double farads = std::stod(body.substr(pos + 26));
  CHECK(std::abs(farads - 0.6e-15) / 0.6e-15 < 0.005);
}

TEST_CASE("explore marks the efficient designs") {
  const fs::path spec = scratch() / "sweep.json";
  spit(spec, R"({"axes": {"oa1": ["LT1792", "LTC6240", "LTC6081", "LTC6078"]},
                 "band": [200, 20000]})");
  const fs::path out = scratch() / "explore";
  REQUIRE(run("explore --quiet --spec " + spec.string() + " --out-dir " + out.string()) ==
          0);
  const std::string csv = slurp(out / "explore.csv");
  CHECK(csv.find("r_f_ohm,c_f_f,oa1,oa2,enc_c,midband_gain_v_per_c,cuton_hz,power_w,"
                 "pareto\n") != std::string::npos);
  // LT1792 is dominated; the quietest and the lowest-power parts are not.
  std::istringstream rows(csv);
  std::string line;
  while (std::getline(rows, line)) {
    if (line.find("LT1792") != std::string::npos) CHECK(line.back() == '0');
    if (line.find("LTC6240") != std::string::npos) CHECK(line.back() == '1');
    if (line.find("LTC6078") != std::string::npos) CHECK(line.back() == '1');
  }
}

TEST_CASE("explore rejects empty and oversized grids with exit 2") {
  const fs::path empty = scratch() / "empty.json";
  spit(empty, R"({"axes": {}})");
  CHECK(run("explore --quiet --spec " + empty.string() + " --out-dir " +
            (scratch() / "x1").string()) == 2);
  const fs::path big = scratch() / "big.json";
  spit(big, R"({"axes": {"oa1": ["LTC6240", "LTC6078"]}, "grid_cap": 1})");
  CHECK(run("explore --quiet --spec " + big.string() + " --out-dir " +
            (scratch() / "x2").string()) == 2);
}

TEST_CASE("oracle-check passes on the reference build") {
  const fs::path out = scratch() / "oracle";
  REQUIRE(run("oracle-check --quiet --out-dir " + out.string()) == 0);
  const std::string body = slurp(out / "oracle.json");
  CHECK(body.find("gain_max_rel_err") != std::string::npos);
}

TEST_CASE("json output format is honored") {
  const fs::path out = scratch() / "bode_json";
  REQUIRE(run("bode --quiet --format json --out-dir " + out.string()) == 0);
  CHECK(fs::exists(out / "bode.json"));
  CHECK_FALSE(fs::exists(out / "bode.csv"));
}
