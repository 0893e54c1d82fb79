// Copyright 2025 The rydtqd Authors
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


#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydtqd/atom.hpp"
#include "rydtqd/dynamics.hpp"
#include "rydtqd/noise.hpp"
#include "rydtqd/optimize.hpp"
#include "rydtqd/pulse.hpp"

namespace rydtqd::config {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& key, const std::string& message);
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

enum class OptimizeMode { Pulse, Phases, Iso, Speedup };

struct ExperimentConfig {
  atom::ExcitationKind excitation = atom::ExcitationKind::Dipole;
  pulse::Family family = pulse::Family::Adiabatic;
  double gate_time = 0.0;  // us

  // LCG (dipole). Frequencies in rad/us.
  double omega0 = 0.0, delta0 = 0.0, tau_ratio = 0.0;
  // ZCHG (quadrupole).
  double omega_b0 = 0.0, omega_r0 = 0.0, delta_b = 0.0, tau_b_ratio = 0.0, tau_r_ratio = 0.0;

  bool phase_search = false;
  double phi_r = 0.0, phi_R = 0.0;  // rad
  bool mirror_second = false;
  double blockade = 0.0;  // rad/us; 0 keeps the model default

  noise::NoiseToggles noise;  // full-noise ensemble toggles
  bool run_decay_only = true;
  bool run_monte_carlo = true;
  std::size_t mc_runs = 100;
  dynamics::IntegratorConfig integrator;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out_dir;  // empty: no files written
  std::size_t waveform_samples = 1000;

  std::string scan_variable;  // "T_g" or "Omega_max"
  std::vector<double> scan_values;  // us or rad/us

  OptimizeMode optimize_mode = OptimizeMode::Pulse;
  optimize::DeConfig de;
  double iso_target = 0.0;            // 0 selects the family default
  std::vector<double> iso_gate_times;  // us
  std::vector<double> arp_gate_times;  // us, speedup mode
  std::vector<double> ctqd_gate_times; // us, speedup mode
  std::vector<double> speedup_omegas;  // MHz (Omega_max / 2pi)
  double phase_resolution = kPi / 100.0;
  double iso_amplitude_max = 0.0;  // rad/us; 0 selects the mode default

  // Canonical "key=value" lines of every explicitly set key, sorted by key.
  std::map<std::string, std::string> canonical;

  // FNV-1a over the canonical lines, as 16 hex digits.
  std::string hash() const;
  // Single-pulse duration: T_g / 2 (adiabatic) or T_g / 4 (cTQD).
  double pulse_duration() const;
  atom::AtomModel model() const;
  pulse::BasePulse base_pulse() const;
  pulse::PulseSchedule schedule(double phi_r, double phi_R) const;
  pulse::PulseSchedule schedule() const { return schedule(phi_r, phi_R); }
  void validate() const;
};

// Parses the key-value format. Throws ConfigError with the offending line and key.
ExperimentConfig parse(const std::string& text);
ExperimentConfig load(const std::string& path);
// Applies one "key = value" assignment as if appended to the document.
void apply(ExperimentConfig& cfg, const std::string& key, const std::string& value, int line = 0);

// Names of all accepted keys.
const std::vector<std::string>& known_keys();

}  // namespace rydtqd::config
