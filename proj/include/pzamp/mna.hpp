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
// Brute-force complex modified nodal analysis of the amplifier chain. This
// is the independent check on every closed-form gain and noise expression:
// it knows nothing about the formulas, only about the schematic.

#ifndef PZAMP_MNA_HPP_
#define PZAMP_MNA_HPP_

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "pzamp/types.hpp"

namespace pz::mna {

struct Resistor {
  int n1, n2;
  double ohms;
};
struct Capacitor {
  int n1, n2;
  double farads;
};
// Current flows from n_from through the source into n_to.
struct CurrentSource {
  int n_from, n_to;
  Complex amps;
};
struct VoltageSource {
  int n_plus, n_minus;
  Complex volts;
};
// Ideal op amp (nullor): v(in_plus) = v(in_minus), zero input current,
// unconstrained output current at node `out`.
struct OpAmp {
  int in_plus, in_minus, out;
};
// Finite-gain substitute: v(out) = gain * (v(in_plus) - v(in_minus)).
struct Vcvs {
  int in_plus, in_minus, out;
  double gain;
};

using Element = std::variant<Resistor, Capacitor, CurrentSource, VoltageSource, OpAmp, Vcvs>;

class Netlist {
 public:
  static constexpr int kGround = 0;

  // Returns the node index, creating it if needed. "0" / "gnd" is ground.
  int node(const std::string& name);
  int node_count() const { return static_cast<int>(names_.size()); }
  const std::string& node_name(int idx) const { return names_.at(idx); }

  void add(Element e) { elements_.push_back(e); }
  const std::vector<Element>& elements() const { return elements_; }

  std::string to_json() const;

 private:
  std::vector<std::string> names_{"gnd"};
  std::map<std::string, int> index_{{"gnd", 0}};
  std::vector<Element> elements_;
};

struct AcSolution {
  std::vector<Complex> node_voltages;  // indexed by node id; ground is 0
  double rcond = 1.0;                  // reciprocal condition estimate
  bool ill_conditioned = false;        // condition number above 1e12

  Complex at(const Netlist& n, const std::string& name) const;
};

// Complex linear solve at one frequency. Throws NumericError on a singular
// system. KCL residual is verified to 1e-12 relative.
AcSolution solve_ac(const Netlist& netlist, double f);

// Which single stimulus the builder wires into the chain.
enum class Stimulus {
  kNone,
  kChargeInput,     // unit charge q_in = 1 C as a differential current jω·1
  kPiezoVoltage,    // v_piezo = 1 V in series with C_piezo
  kCommonModeInput, // unit current from ground into both inputs (EMI-like)
  kJohnsonRf1,      // unit current source across the upper feedback network
  kJohnsonRf2,
  kJohnsonRpar,     // unit current source across the differential input
  kOa1Voltage1,     // unit voltage in series with the upper oa1 + terminal
  kOa1Voltage2,
  kOa1Current1,     // unit current from ground into one input
  kOa1Current2,
  kOa2Voltage,      // unit voltage in series with the difference-stage + pin
};

struct ChainOptions {
  Stimulus stimulus = Stimulus::kChargeInput;
  // Relative mismatch applied to the lower feedback capacitor; nonzero
  // values unbalance the stages for CMRR studies.
  double c_f_mismatch = 0.0;
  // Replace every nullor with a finite-gain VCVS when > 0.
  double finite_gain = 0.0;
};

// The canonical schematic: sensor branch, parasitics, two feedback input
// stages, unity difference stage (four equal 10 kΩ), lead stage and output
// high-pass. Zero-valued parasitics and infinite R_par are omitted from the
// netlist rather than stamped with sentinel values.
Netlist build_chain_netlist(const AmplifierConfig& cfg, const SensorModel& sensor,
                            const ChainOptions& opts = {});

// Difference-stage resistor value fixed by the schematic.
inline constexpr double kDiffStageResistor = 10e3;

// Full-chain transfer v_out / q_in from the solver.
Complex chain_gain(const AmplifierConfig& cfg, const SensorModel& sensor, double f,
                   const ChainOptions& opts = {});

// Common-mode transfer v_out per unit common-mode input charge.
Complex chain_common_mode_gain(const AmplifierConfig& cfg, const SensorModel& sensor,
                               double f, const ChainOptions& opts = {});

enum class NoiseSource {
  kJohnsonRf1,
  kJohnsonRf2,
  kJohnsonRpar,
  kOa1Voltage1,
  kOa1Voltage2,
  kOa1Current1,
  kOa1Current2,
  kOa2Voltage,
};

// All sources applicable to the given sensor (R_par Johnson drops out when
// the leakage path is absent).
std::vector<NoiseSource> default_noise_sources(const SensorModel& sensor);

// Input-referred charge variance density by per-source superposition:
// Σ S_k |v_out,k|² / |G_out|².  C²/Hz.
double noise_by_superposition(const AmplifierConfig& cfg, const SensorModel& sensor,
                              const OpAmpModel& oa1, const OpAmpModel& oa2, double f,
                              const std::vector<NoiseSource>& sources);

double noise_by_superposition(const AmplifierConfig& cfg, const SensorModel& sensor,
                              const OpAmpModel& oa1, const OpAmpModel& oa2, double f);

}  // namespace pz::mna

#endif  // PZAMP_MNA_HPP_
