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

#include "pzamp/explore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "pzamp/acoustics.hpp"
#include "pzamp/circuit.hpp"
#include "pzamp/noise.hpp"
#include "pzamp/serialize.hpp"

namespace pz {

SweepSpec SweepSpec::from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  SweepSpec spec;
  if (j.contains("fixed")) spec.fixed = config_from_json(j["fixed"].dump());
  if (j.contains("sensor")) spec.sensor = sensor_from_json(j["sensor"].dump());
  if (j.contains("band")) {
    spec.band_lo = j["band"].at(0).get<double>();
    spec.band_hi = j["band"].at(1).get<double>();
  }
  if (j.contains("grid_cap")) spec.grid_cap = j["grid_cap"].get<std::size_t>();
  if (j.contains("axes")) {
    const auto& axes = j["axes"];
    if (axes.contains("r_f")) spec.r_f_values = axes["r_f"].get<std::vector<double>>();
    if (axes.contains("c_f")) spec.c_f_values = axes["c_f"].get<std::vector<double>>();
    if (axes.contains("oa1")) spec.oa1_values = axes["oa1"].get<std::vector<std::string>>();
  }
  spec.validate();
  return spec;
}

void SweepSpec::validate() const {
  fixed.validate();
  sensor.validate();
  if (!(0 < band_lo && band_lo < band_hi)) {
    throw std::invalid_argument("sweep band must satisfy 0 < lo < hi");
  }
  if (r_f_values.empty() && c_f_values.empty() && oa1_values.empty()) {
    throw std::invalid_argument("sweep needs at least one nonempty axis");
  }
  for (double v : r_f_values) {
    if (!(v > 0)) throw std::invalid_argument("r_f candidates must be positive");
  }
  for (double v : c_f_values) {
    if (!(v > 0)) throw std::invalid_argument("c_f candidates must be positive");
  }
  for (const auto& n : oa1_values) {
    if (n.empty()) throw std::invalid_argument("empty op-amp name in axis");
  }
}

DesignPoint evaluate(const AmplifierConfig& cfg, const std::string& oa1,
                     const std::string& oa2, const SensorModel& sensor,
                     double band_lo, double band_hi, const OpAmpRegistry& registry) {
  const OpAmpModel& m1 = registry.get(oa1);
  const OpAmpModel& m2 = registry.get(oa2);
  DesignPoint p;
  p.cfg = cfg;
  p.cfg.oa1_ref = m1.name;
  p.cfg.oa2_ref = m2.name;
  p.oa1 = m1.name;
  p.oa2 = m2.name;
  p.enc = enc_over_band(cfg, sensor, m1, m2, band_lo, band_hi);
  p.midband_gain = midband_gain(cfg);
  p.cuton_hz = cuton_frequency(cfg);
  p.power_w = 2.0 * m1.power + m2.power;
  if (sensor.sensitivity && !sensor.sensitivity->empty()) {
    SensitivitySpectrum sens;
    for (const auto& [f, v] : *sensor.sensitivity) {
      sens.freqs.push_back(f);
      sens.values.push_back(v);
    }
    const double lo = std::max(band_lo, sens.freqs.front());
    const double hi = std::min(band_hi, sens.freqs.back());
    if (lo < hi) {
      const auto bands = third_octave_bands(lo, hi);
      // Clip to bands the noise grid and sensitivity can actually cover.
      std::vector<ThirdOctaveBand> covered;
      for (const auto& b : bands) {
        if (b.lower() >= sens.freqs.front() && b.upper() <= sens.freqs.back()) {
          covered.push_back(b);
        }
      }
      if (!covered.empty()) {
        const auto grid = log_grid(covered.front().lower(), covered.back().upper(), 200);
        const Spectrum noise =
            charge_noise_spectrum(cfg, sensor, m1, m2, grid);
        const auto ein = ein_spectrum(noise, sens, covered);
        p.ein_db_spl = ein_aweighted_total(ein, covered);
      }
    }
  }
  return p;
}

std::vector<DesignPoint> sweep(const SweepSpec& spec, const OpAmpRegistry& registry) {
  spec.validate();
  const std::vector<double> rfs =
      spec.r_f_values.empty() ? std::vector<double>{spec.fixed.r_f} : spec.r_f_values;
  const std::vector<double> cfs =
      spec.c_f_values.empty() ? std::vector<double>{spec.fixed.c_f} : spec.c_f_values;
  const std::vector<std::string> oa1s = spec.oa1_values.empty()
                                            ? std::vector<std::string>{spec.fixed.oa1_ref}
                                            : spec.oa1_values;
  const std::size_t total = rfs.size() * cfs.size() * oa1s.size();
  if (total > spec.grid_cap) {
    throw std::invalid_argument("sweep grid of " + std::to_string(total) +
                                " points exceeds the cap of " +
                                std::to_string(spec.grid_cap));
  }
  std::vector<DesignPoint> points;
  points.reserve(total);
  for (double rf : rfs) {
    for (double cf : cfs) {
      for (const std::string& oa1 : oa1s) {
        AmplifierConfig cfg = spec.fixed;
        cfg.r_f = rf;
        cfg.c_f = cf;
        points.push_back(evaluate(cfg, oa1, spec.fixed.oa2_ref, spec.sensor,
                                  spec.band_lo, spec.band_hi, registry));
      }
    }
  }
  return mark_pareto(std::move(points));
}

namespace {

bool dominates(const DesignPoint& a, const DesignPoint& b) {
  return a.enc <= b.enc && a.power_w <= b.power_w &&
         (a.enc < b.enc || a.power_w < b.power_w);
}

}  // namespace

std::vector<DesignPoint> mark_pareto(std::vector<DesignPoint> points) {
  for (DesignPoint& p : points) {
    p.pareto = std::none_of(points.begin(), points.end(),
                            [&](const DesignPoint& q) { return dominates(q, p); });
  }
  return points;
}

std::vector<DesignPoint> pareto_front(const std::vector<DesignPoint>& points) {
  if (points.empty()) throw std::invalid_argument("pareto_front needs at least one point");
  std::vector<DesignPoint> front;
  for (const DesignPoint& p : points) {
    const bool dominated = std::any_of(points.begin(), points.end(),
                                       [&](const DesignPoint& q) { return dominates(q, p); });
    if (!dominated) {
      // Drop exact duplicates already on the front.
      const bool dup = std::any_of(front.begin(), front.end(), [&](const DesignPoint& q) {
        return q.enc == p.enc && q.power_w == p.power_w && q.oa1 == p.oa1 &&
               q.cfg.r_f == p.cfg.r_f && q.cfg.c_f == p.cfg.c_f;
      });
      if (!dup) front.push_back(p);
    }
  }
  std::stable_sort(front.begin(), front.end(),
                   [](const DesignPoint& a, const DesignPoint& b) { return a.enc < b.enc; });
  for (DesignPoint& p : front) p.pareto = true;
  return front;
}

std::string sweep_to_csv(const std::vector<DesignPoint>& points,
                         const std::string& manifest_ref) {
  std::ostringstream out;
  if (!manifest_ref.empty()) out << "# manifest: " << manifest_ref << "\n";
  out << "r_f_ohm,c_f_f,oa1,oa2,enc_c,midband_gain_v_per_c,cuton_hz,power_w,pareto\n";
  char buf[64];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };
  for (const DesignPoint& p : points) {
    out << num(p.cfg.r_f) << ',' << num(p.cfg.c_f) << ',' << p.oa1 << ',' << p.oa2 << ','
        << num(p.enc) << ',' << num(p.midband_gain) << ',' << num(p.cuton_hz) << ','
        << num(p.power_w) << ',' << (p.pareto ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace pz
