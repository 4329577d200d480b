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

#include "pzamp/mna.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <nlohmann/json.hpp>

namespace pz::mna {

namespace {
constexpr Complex kJ{0.0, 1.0};
}

int Netlist::node(const std::string& name) {
  if (name == "0" || name == "gnd") return kGround;
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  const int idx = static_cast<int>(names_.size());
  names_.push_back(name);
  index_.emplace(name, idx);
  return idx;
}

std::string Netlist::to_json() const {
  nlohmann::json j;
  j["nodes"] = names_;
  nlohmann::json elems = nlohmann::json::array();
  for (const Element& e : elements_) {
    nlohmann::json je;
    std::visit(
        [&](const auto& el) {
          using T = std::decay_t<decltype(el)>;
          if constexpr (std::is_same_v<T, Resistor>) {
            je = {{"type", "resistor"},
                  {"nodes", {names_[el.n1], names_[el.n2]}},
                  {"ohms", el.ohms}};
          } else if constexpr (std::is_same_v<T, Capacitor>) {
            je = {{"type", "capacitor"},
                  {"nodes", {names_[el.n1], names_[el.n2]}},
                  {"farads", el.farads}};
          } else if constexpr (std::is_same_v<T, CurrentSource>) {
            je = {{"type", "current_source"},
                  {"nodes", {names_[el.n_from], names_[el.n_to]}},
                  {"amps", {el.amps.real(), el.amps.imag()}}};
          } else if constexpr (std::is_same_v<T, VoltageSource>) {
            je = {{"type", "voltage_source"},
                  {"nodes", {names_[el.n_plus], names_[el.n_minus]}},
                  {"volts", {el.volts.real(), el.volts.imag()}}};
          } else if constexpr (std::is_same_v<T, OpAmp>) {
            je = {{"type", "opamp"},
                  {"nodes", {names_[el.in_plus], names_[el.in_minus], names_[el.out]}}};
          } else if constexpr (std::is_same_v<T, Vcvs>) {
            je = {{"type", "vcvs"},
                  {"nodes", {names_[el.in_plus], names_[el.in_minus], names_[el.out]}},
                  {"gain", el.gain}};
          }
        },
        e);
    elems.push_back(je);
  }
  j["elements"] = elems;
  return j.dump(2);
}

Complex AcSolution::at(const Netlist& n, const std::string& name) const {
  for (int i = 0; i < n.node_count(); ++i) {
    if (n.node_name(i) == name) return node_voltages.at(i);
  }
  throw std::invalid_argument("unknown node: " + name);
}

AcSolution solve_ac(const Netlist& netlist, double f) {
  require_positive_frequency(f);
  const double w = 2.0 * kPi * f;

  // Count branch unknowns (one current each).
  int branches = 0;
  for (const Element& e : netlist.elements()) {
    if (std::holds_alternative<VoltageSource>(e) || std::holds_alternative<OpAmp>(e) ||
        std::holds_alternative<Vcvs>(e)) {
      ++branches;
    }
  }
  const int nv = netlist.node_count() - 1;  // ground eliminated
  const int dim = nv + branches;
  if (dim == 0) throw NumericError("empty netlist");

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(dim);

  // Node n maps to row/column n-1; ground contributions are dropped.
  const auto stamp = [&](int row, int col, Complex v) {
    if (row > 0 && col > 0) a(row - 1, col - 1) += v;
  };
  const auto stamp_rhs = [&](int row, Complex v) {
    if (row > 0) b(row - 1) += v;
  };

  int branch = nv;  // next branch row/column
  for (const Element& e : netlist.elements()) {
    std::visit(
        [&](const auto& el) {
          using T = std::decay_t<decltype(el)>;
          if constexpr (std::is_same_v<T, Resistor>) {
            const Complex y = 1.0 / el.ohms;
            stamp(el.n1, el.n1, y);
            stamp(el.n2, el.n2, y);
            stamp(el.n1, el.n2, -y);
            stamp(el.n2, el.n1, -y);
          } else if constexpr (std::is_same_v<T, Capacitor>) {
            const Complex y = kJ * w * el.farads;
            stamp(el.n1, el.n1, y);
            stamp(el.n2, el.n2, y);
            stamp(el.n1, el.n2, -y);
            stamp(el.n2, el.n1, -y);
          } else if constexpr (std::is_same_v<T, CurrentSource>) {
            stamp_rhs(el.n_to, el.amps);
            stamp_rhs(el.n_from, -el.amps);
          } else if constexpr (std::is_same_v<T, VoltageSource>) {
            const int k = branch++;
            if (el.n_plus > 0) a(el.n_plus - 1, k) += 1.0;
            if (el.n_minus > 0) a(el.n_minus - 1, k) -= 1.0;
            if (el.n_plus > 0) a(k, el.n_plus - 1) += 1.0;
            if (el.n_minus > 0) a(k, el.n_minus - 1) -= 1.0;
            b(k) = el.volts;
          } else if constexpr (std::is_same_v<T, OpAmp>) {
            // Nullor: output current unknown, v+ = v- constraint row.
            const int k = branch++;
            if (el.out > 0) a(el.out - 1, k) += 1.0;
            if (el.in_plus > 0) a(k, el.in_plus - 1) += 1.0;
            if (el.in_minus > 0) a(k, el.in_minus - 1) -= 1.0;
          } else if constexpr (std::is_same_v<T, Vcvs>) {
            const int k = branch++;
            if (el.out > 0) a(el.out - 1, k) += 1.0;
            if (el.out > 0) a(k, el.out - 1) += 1.0;
            if (el.in_plus > 0) a(k, el.in_plus - 1) -= el.gain;
            if (el.in_minus > 0) a(k, el.in_minus - 1) += el.gain;
          }
        },
        e);
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const Eigen::VectorXcd x = lu.solve(b);
  if (!x.allFinite()) throw NumericError("singular MNA system");

  const double scale = a.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff() +
                       b.cwiseAbs().maxCoeff();
  const double residual = (a * x - b).cwiseAbs().maxCoeff();
  if (!(scale > 0) || residual > 1e-9 * scale) {
    throw NumericError("MNA solve failed the KCL residual check");
  }

  AcSolution sol;
  sol.rcond = lu.rcond();
  sol.ill_conditioned = sol.rcond < 1e-12;
  sol.node_voltages.assign(netlist.node_count(), Complex{0.0, 0.0});
  for (int i = 1; i <= nv; ++i) sol.node_voltages[i] = x(i - 1);
  return sol;
}

Netlist build_chain_netlist(const AmplifierConfig& cfg, const SensorModel& sensor,
                            const ChainOptions& opts) {
  cfg.validate();
  sensor.validate();
  Netlist n;
  const int gnd = Netlist::kGround;
  const int vinp = n.node("vin+");
  const int vinm = n.node("vin-");
  const int voutm = n.node("vout-");
  const int voutp = n.node("vout+");
  const int d1 = n.node("diff-");
  const int d2 = n.node("diff+");
  const int vint = n.node("vint");
  const int leadfb = n.node("lead_fb");
  const int leadmid = n.node("lead_mid");
  const int outamp = n.node("lead_out");
  const int vout = n.node("vout");

  const auto opamp = [&](int in_plus, int in_minus, int out) {
    if (opts.finite_gain > 0) {
      n.add(Vcvs{in_plus, in_minus, out, opts.finite_gain});
    } else {
      n.add(OpAmp{in_plus, in_minus, out});
    }
  };

  // Sensor branch: v_piezo in series with C_piezo across the inputs.
  if (opts.stimulus == Stimulus::kPiezoVoltage) {
    if (!(sensor.c_piezo > 0)) {
      throw std::invalid_argument("piezo voltage drive needs c_piezo > 0");
    }
    const int pz = n.node("piezo");
    n.add(VoltageSource{pz, vinm, Complex{1.0, 0.0}});
    n.add(Capacitor{pz, vinp, sensor.c_piezo});
  } else if (sensor.c_piezo > 0) {
    n.add(Capacitor{vinm, vinp, sensor.c_piezo});
  }
  if (sensor.c_par > 0) n.add(Capacitor{vinm, vinp, sensor.c_par});
  if (!std::isinf(sensor.r_par)) n.add(Resistor{vinm, vinp, sensor.r_par});
  if (sensor.c_gnd > 0) {
    n.add(Capacitor{vinp, gnd, sensor.c_gnd});
    n.add(Capacitor{vinm, gnd, sensor.c_gnd});
  }

  // Input stages with R_f ∥ C_f feedback. The noninverting pins sit at
  // ground unless a series noise voltage is being injected.
  int oa1_plus = gnd;
  if (opts.stimulus == Stimulus::kOa1Voltage1) {
    oa1_plus = n.node("noise_v1");
    n.add(VoltageSource{oa1_plus, gnd, Complex{1.0, 0.0}});
  }
  opamp(oa1_plus, vinp, voutm);
  n.add(Resistor{vinp, voutm, cfg.r_f});
  n.add(Capacitor{vinp, voutm, cfg.c_f});

  int oa2_plus = gnd;
  if (opts.stimulus == Stimulus::kOa1Voltage2) {
    oa2_plus = n.node("noise_v2");
    n.add(VoltageSource{oa2_plus, gnd, Complex{1.0, 0.0}});
  }
  opamp(oa2_plus, vinm, voutp);
  n.add(Resistor{vinm, voutp, cfg.r_f});
  n.add(Capacitor{vinm, voutp, cfg.c_f * (1.0 + opts.c_f_mismatch)});

  // Unity difference stage.
  n.add(Resistor{voutm, d1, kDiffStageResistor});
  n.add(Resistor{d1, vint, kDiffStageResistor});
  n.add(Resistor{voutp, d2, kDiffStageResistor});
  n.add(Resistor{d2, gnd, kDiffStageResistor});
  int diff_plus = d2;
  if (opts.stimulus == Stimulus::kOa2Voltage) {
    diff_plus = n.node("noise_v3");
    n.add(VoltageSource{diff_plus, d2, Complex{1.0, 0.0}});
  }
  opamp(diff_plus, d1, vint);

  // Noninverting lead stage: gain 1 + Ra / (Rb + 1/jωCb).
  opamp(vint, leadfb, outamp);
  n.add(Resistor{outamp, leadfb, cfg.r_a});
  n.add(Resistor{leadfb, leadmid, cfg.r_b});
  n.add(Capacitor{leadmid, gnd, cfg.c_b});

  // Output high-pass.
  n.add(Capacitor{outamp, vout, cfg.c_o});
  n.add(Resistor{vout, gnd, cfg.r_o});

  // Stimulus current sources.
  switch (opts.stimulus) {
    case Stimulus::kChargeInput:
      // q_in = 1 C, differential: i = jω into vin+, out of vin-. The builder
      // stamps the 1 Hz value; chain_gain rescales it per frequency.
      n.add(CurrentSource{vinm, vinp, kJ * (2.0 * kPi)});
      break;
    case Stimulus::kCommonModeInput:
      n.add(CurrentSource{gnd, vinp, Complex{0.5, 0.0}});
      n.add(CurrentSource{gnd, vinm, Complex{0.5, 0.0}});
      break;
    case Stimulus::kJohnsonRf1:
      n.add(CurrentSource{voutm, vinp, Complex{1.0, 0.0}});
      break;
    case Stimulus::kJohnsonRf2:
      n.add(CurrentSource{voutp, vinm, Complex{1.0, 0.0}});
      break;
    case Stimulus::kJohnsonRpar:
      n.add(CurrentSource{vinm, vinp, Complex{1.0, 0.0}});
      break;
    case Stimulus::kOa1Current1:
      n.add(CurrentSource{gnd, vinp, Complex{1.0, 0.0}});
      break;
    case Stimulus::kOa1Current2:
      n.add(CurrentSource{gnd, vinm, Complex{1.0, 0.0}});
      break;
    default:
      break;
  }
  return n;
}

namespace {

// The unit-charge stimulus needs its magnitude fixed per frequency
// (i = jω q); build_chain_netlist cannot know f, so patch it here.
Netlist chain_with_charge(const AmplifierConfig& cfg, const SensorModel& sensor,
                          double f, ChainOptions opts) {
  opts.stimulus = Stimulus::kChargeInput;
  Netlist n = build_chain_netlist(cfg, sensor, opts);
  // Rebuild the element list with the correct source value.
  Netlist out;
  // Recreate nodes in the same order so indices match.
  for (int i = 1; i < n.node_count(); ++i) out.node(n.node_name(i));
  for (Element e : n.elements()) {
    if (auto* src = std::get_if<CurrentSource>(&e)) {
      src->amps = kJ * (2.0 * kPi * f);
    }
    out.add(e);
  }
  return out;
}

}  // namespace

Complex chain_gain(const AmplifierConfig& cfg, const SensorModel& sensor, double f,
                   const ChainOptions& opts) {
  const Netlist n = chain_with_charge(cfg, sensor, f, opts);
  const AcSolution sol = solve_ac(n, f);
  return sol.at(n, "vout");
}

Complex chain_common_mode_gain(const AmplifierConfig& cfg, const SensorModel& sensor,
                               double f, const ChainOptions& opts) {
  ChainOptions o = opts;
  o.stimulus = Stimulus::kCommonModeInput;
  Netlist n = build_chain_netlist(cfg, sensor, o);
  // Common-mode charge of 1 C total: i = jω/2 into each input.
  Netlist out;
  for (int i = 1; i < n.node_count(); ++i) out.node(n.node_name(i));
  for (Element e : n.elements()) {
    if (auto* src = std::get_if<CurrentSource>(&e)) {
      src->amps = kJ * (kPi * f);  // jω/2 with ω = 2πf
    }
    out.add(e);
  }
  const AcSolution sol = solve_ac(out, f);
  return sol.at(out, "vout");
}

std::vector<NoiseSource> default_noise_sources(const SensorModel& sensor) {
  std::vector<NoiseSource> s = {
      NoiseSource::kJohnsonRf1, NoiseSource::kJohnsonRf2,
      NoiseSource::kOa1Voltage1, NoiseSource::kOa1Voltage2,
      NoiseSource::kOa1Current1, NoiseSource::kOa1Current2,
      NoiseSource::kOa2Voltage,
  };
  if (!std::isinf(sensor.r_par)) s.push_back(NoiseSource::kJohnsonRpar);
  return s;
}

double noise_by_superposition(const AmplifierConfig& cfg, const SensorModel& sensor,
                              const OpAmpModel& oa1, const OpAmpModel& oa2, double f,
                              const std::vector<NoiseSource>& sources) {
  oa1.validate();
  oa2.validate();
  const double w = 2.0 * kPi * f;
  const double gain2 = std::norm(chain_gain(cfg, sensor, f));

  const auto stimulus_of = [](NoiseSource s) {
    switch (s) {
      case NoiseSource::kJohnsonRf1: return Stimulus::kJohnsonRf1;
      case NoiseSource::kJohnsonRf2: return Stimulus::kJohnsonRf2;
      case NoiseSource::kJohnsonRpar: return Stimulus::kJohnsonRpar;
      case NoiseSource::kOa1Voltage1: return Stimulus::kOa1Voltage1;
      case NoiseSource::kOa1Voltage2: return Stimulus::kOa1Voltage2;
      case NoiseSource::kOa1Current1: return Stimulus::kOa1Current1;
      case NoiseSource::kOa1Current2: return Stimulus::kOa1Current2;
      case NoiseSource::kOa2Voltage: return Stimulus::kOa2Voltage;
    }
    throw std::invalid_argument("unknown noise source");
  };
  const auto density_of = [&](NoiseSource s) {
    switch (s) {
      case NoiseSource::kJohnsonRf1:
      case NoiseSource::kJohnsonRf2:
        return 4.0 * kBoltzmann * cfg.temperature / cfg.r_f;
      case NoiseSource::kJohnsonRpar:
        return std::isinf(sensor.r_par)
                   ? 0.0
                   : 4.0 * kBoltzmann * cfg.temperature / sensor.r_par;
      case NoiseSource::kOa1Voltage1:
      case NoiseSource::kOa1Voltage2:
        return oa1.v_white * oa1.v_white;
      case NoiseSource::kOa1Current1:
      case NoiseSource::kOa1Current2:
        return oa1.i_white * oa1.i_white + w * w * oa1.q_slope * oa1.q_slope;
      case NoiseSource::kOa2Voltage:
        return oa2.v_white * oa2.v_white;
    }
    throw std::invalid_argument("unknown noise source");
  };

  double total = 0.0;
  for (NoiseSource s : sources) {
    const double density = density_of(s);
    if (density == 0.0) continue;
    ChainOptions opts;
    opts.stimulus = stimulus_of(s);
    const Netlist n = build_chain_netlist(cfg, sensor, opts);
    const AcSolution sol = solve_ac(n, f);
    total += density * std::norm(sol.at(n, "vout"));
  }
  return total / gain2;
}

double noise_by_superposition(const AmplifierConfig& cfg, const SensorModel& sensor,
                              const OpAmpModel& oa1, const OpAmpModel& oa2, double f) {
  return noise_by_superposition(cfg, sensor, oa1, oa2, f, default_noise_sources(sensor));
}

}  // namespace pz::mna
