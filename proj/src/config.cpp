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


#include "rydtqd/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace rydtqd::config {

ConfigError::ConfigError(int line, const std::string& key, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? "" : "'" + key + "': ") + message),
      line_(line),
      key_(key) {}

namespace {

enum class Quantity { Frequency, Time, Angle, Ratio, Count };

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return char(std::tolower(c)); });
  return s;
}

double unit_scale(Quantity q, const std::string& unit) {
  const std::string u = lower(unit);
  switch (q) {
    case Quantity::Frequency:
      if (u == "mhz") return kTwoPi;
      if (u == "khz") return kTwoPi * 1e-3;
      if (u == "ghz") return kTwoPi * 1e3;
      if (u == "rad/us") return 1.0;
      break;
    case Quantity::Time:
      if (u == "us") return 1.0;
      if (u == "ns") return 1e-3;
      break;
    case Quantity::Angle:
      if (u == "pi") return kPi;
      if (u == "rad") return 1.0;
      if (u == "deg") return kPi / 180.0;
      break;
    case Quantity::Ratio:
    case Quantity::Count:
      if (u.empty()) return 1.0;
      break;
  }
  if (u.empty()) throw std::invalid_argument("missing unit");
  throw std::invalid_argument("unit '" + unit + "' does not fit this key");
}

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("'" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("'" + s + "' is not a number");
  return v;
}

// "1.5 MHz" or "1.5MHz": the unit is whatever follows the last digit.
std::pair<std::string, std::string> split_unit(const std::string& text) {
  const std::string t = trim(text);
  const auto last = t.find_last_of("0123456789.");
  if (last == std::string::npos) return {t, ""};
  return {trim(t.substr(0, last + 1)), trim(t.substr(last + 1))};
}

double parse_quantity(const std::string& text, Quantity q) {
  const auto [num, unit] = split_unit(text);
  return parse_number(num) * unit_scale(q, unit);
}

// Comma list "a, b, c unit" or range "start:stop:step unit"; the trailing unit applies to every entry.
std::vector<double> parse_list(const std::string& text, Quantity q) {
  const auto [body, unit] = split_unit(text);
  const double scale = unit_scale(q, unit);
  std::vector<double> out;
  if (body.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(parse_number(trim(item)));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
      throw std::invalid_argument("range must be start:stop:step with step > 0");
    const auto n = std::size_t(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) out.push_back((parts[0] + double(i) * parts[2]) * scale);
  } else {
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)) * scale);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

bool parse_bool(const std::string& text) {
  const std::string v = lower(trim(text));
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw std::invalid_argument("expected on/off");
}

std::uint64_t parse_count(const std::string& text) {
  const std::string v = trim(text);
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw std::invalid_argument("expected a non-negative integer");
  return std::stoull(v);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

using Setter = std::function<std::string(ExperimentConfig&, const std::string&)>;

Setter number(double ExperimentConfig::*field, Quantity q) {
  return [field, q](ExperimentConfig& c, const std::string& v) {
    c.*field = parse_quantity(v, q);
    return fmt(c.*field);
  };
}

Setter flag(bool ExperimentConfig::*field) {
  return [field](ExperimentConfig& c, const std::string& v) {
    c.*field = parse_bool(v);
    return std::string(c.*field ? "on" : "off");
  };
}

Setter noise_flag(bool noise::NoiseToggles::*field) {
  return [field](ExperimentConfig& c, const std::string& v) {
    c.noise.*field = parse_bool(v);
    return std::string(c.noise.*field ? "on" : "off");
  };
}

Setter list(std::vector<double> ExperimentConfig::*field, Quantity q) {
  return [field, q](ExperimentConfig& c, const std::string& v) {
    c.*field = parse_list(v, q);
    return fmt_list(c.*field);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["excitation"] = [](ExperimentConfig& c, const std::string& v) {
      const std::string s = lower(trim(v));
      if (s == "dipole") c.excitation = atom::ExcitationKind::Dipole;
      else if (s == "quadrupole") c.excitation = atom::ExcitationKind::Quadrupole;
      else throw std::invalid_argument("expected dipole or quadrupole");
      return s;
    };
    t["family"] = [](ExperimentConfig& c, const std::string& v) {
      const std::string s = lower(trim(v));
      if (s == "adiabatic") c.family = pulse::Family::Adiabatic;
      else if (s == "ctqd") c.family = pulse::Family::Ctqd;
      else throw std::invalid_argument("expected adiabatic or ctqd");
      return s;
    };
    t["gate_time"] = number(&ExperimentConfig::gate_time, Quantity::Time);
    t["omega0"] = number(&ExperimentConfig::omega0, Quantity::Frequency);
    t["delta0"] = number(&ExperimentConfig::delta0, Quantity::Frequency);
    t["tau_ratio"] = number(&ExperimentConfig::tau_ratio, Quantity::Ratio);
    t["omega_b0"] = number(&ExperimentConfig::omega_b0, Quantity::Frequency);
    t["omega_r0"] = number(&ExperimentConfig::omega_r0, Quantity::Frequency);
    t["delta_b"] = number(&ExperimentConfig::delta_b, Quantity::Frequency);
    t["tau_b_ratio"] = number(&ExperimentConfig::tau_b_ratio, Quantity::Ratio);
    t["tau_r_ratio"] = number(&ExperimentConfig::tau_r_ratio, Quantity::Ratio);
    t["phases"] = [](ExperimentConfig& c, const std::string& v) {
      const std::string s = lower(trim(v));
      if (s == "search") c.phase_search = true;
      else if (s == "fixed") c.phase_search = false;
      else throw std::invalid_argument("expected search or fixed");
      return s;
    };
    t["phi_r"] = number(&ExperimentConfig::phi_r, Quantity::Angle);
    t["phi_R"] = number(&ExperimentConfig::phi_R, Quantity::Angle);
    t["mirror_second"] = flag(&ExperimentConfig::mirror_second);
    t["blockade"] = number(&ExperimentConfig::blockade, Quantity::Frequency);
    t["decay"] = noise_flag(&noise::NoiseToggles::decay);
    t["position_noise"] = noise_flag(&noise::NoiseToggles::position);
    t["intensity_noise"] = noise_flag(&noise::NoiseToggles::intensity);
    t["doppler_noise"] = noise_flag(&noise::NoiseToggles::doppler);
    t["magnetic_noise"] = noise_flag(&noise::NoiseToggles::magnetic);
    t["decay_only_run"] = flag(&ExperimentConfig::run_decay_only);
    t["monte_carlo"] = flag(&ExperimentConfig::run_monte_carlo);
    t["mc_runs"] = [](ExperimentConfig& c, const std::string& v) {
      c.mc_runs = parse_count(v);
      return std::to_string(c.mc_runs);
    };
    t["max_step"] = [](ExperimentConfig& c, const std::string& v) {
      c.integrator.max_step = parse_quantity(v, Quantity::Time);
      return fmt(c.integrator.max_step);
    };
    t["stability"] = [](ExperimentConfig& c, const std::string& v) {
      c.integrator.stability = parse_quantity(v, Quantity::Ratio);
      return fmt(c.integrator.stability);
    };
    t["density_stability"] = [](ExperimentConfig& c, const std::string& v) {
      c.integrator.density_stability = parse_quantity(v, Quantity::Ratio);
      return fmt(c.integrator.density_stability);
    };
    t["sample_every"] = [](ExperimentConfig& c, const std::string& v) {
      c.integrator.sample_every = int(parse_count(v));
      return std::to_string(c.integrator.sample_every);
    };
    t["seed"] = [](ExperimentConfig& c, const std::string& v) {
      c.seed = parse_count(v);
      return std::to_string(c.seed);
    };
    t["workers"] = [](ExperimentConfig& c, const std::string& v) {
      c.workers = int(parse_count(v));
      return std::to_string(c.workers);
    };
    t["out_dir"] = [](ExperimentConfig& c, const std::string& v) {
      c.out_dir = trim(v);
      return c.out_dir;
    };
    t["waveform_samples"] = [](ExperimentConfig& c, const std::string& v) {
      c.waveform_samples = parse_count(v);
      return std::to_string(c.waveform_samples);
    };
    t["scan_variable"] = [](ExperimentConfig& c, const std::string& v) {
      const std::string s = trim(v);
      if (s != "T_g" && s != "Omega_max") throw std::invalid_argument("expected T_g or Omega_max");
      c.scan_variable = s;
      return s;
    };
    t["scan_values"] = [](ExperimentConfig& c, const std::string& v) {
      // Units decide the quantity: times for T_g grids, frequencies for Omega_max grids.
      try {
        c.scan_values = parse_list(v, Quantity::Time);
      } catch (const std::invalid_argument&) {
        c.scan_values = parse_list(v, Quantity::Frequency);
      }
      return fmt_list(c.scan_values);
    };
    t["optimize_mode"] = [](ExperimentConfig& c, const std::string& v) {
      const std::string s = lower(trim(v));
      if (s == "pulse") c.optimize_mode = OptimizeMode::Pulse;
      else if (s == "phases") c.optimize_mode = OptimizeMode::Phases;
      else if (s == "iso") c.optimize_mode = OptimizeMode::Iso;
      else if (s == "speedup") c.optimize_mode = OptimizeMode::Speedup;
      else throw std::invalid_argument("expected pulse, phases, iso or speedup");
      return s;
    };
    t["de_population"] = [](ExperimentConfig& c, const std::string& v) {
      c.de.population = parse_count(v);
      return std::to_string(c.de.population);
    };
    t["de_generations"] = [](ExperimentConfig& c, const std::string& v) {
      c.de.max_generations = int(parse_count(v));
      return std::to_string(c.de.max_generations);
    };
    t["de_weight"] = [](ExperimentConfig& c, const std::string& v) {
      c.de.differential_weight = parse_quantity(v, Quantity::Ratio);
      return fmt(c.de.differential_weight);
    };
    t["de_crossover"] = [](ExperimentConfig& c, const std::string& v) {
      c.de.crossover_rate = parse_quantity(v, Quantity::Ratio);
      return fmt(c.de.crossover_rate);
    };
    t["iso_target"] = number(&ExperimentConfig::iso_target, Quantity::Ratio);
    t["iso_gate_times"] = list(&ExperimentConfig::iso_gate_times, Quantity::Time);
    t["arp_gate_times"] = list(&ExperimentConfig::arp_gate_times, Quantity::Time);
    t["ctqd_gate_times"] = list(&ExperimentConfig::ctqd_gate_times, Quantity::Time);
    t["speedup_omegas"] = [](ExperimentConfig& c, const std::string& v) {
      // Plain numbers in MHz of Omega_max / 2pi.
      c.speedup_omegas = parse_list(v, Quantity::Ratio);
      return fmt_list(c.speedup_omegas);
    };
    t["iso_amplitude_max"] = number(&ExperimentConfig::iso_amplitude_max, Quantity::Frequency);
    t["phase_resolution"] = number(&ExperimentConfig::phase_resolution, Quantity::Angle);
    return t;
  }();
  return table;
}

// Keys that do not change numerical results and stay out of the hash.
bool hashed(const std::string& key) { return key != "workers" && key != "out_dir" && key != "seed"; }

void fill_defaults(ExperimentConfig& c) {
  const auto unset = [&](const char* k) { return c.canonical.find(k) == c.canonical.end(); };
  if (c.excitation == atom::ExcitationKind::Dipole) {
    if (unset("omega0")) c.omega0 = kTwoPi * 24.92;
    if (unset("delta0")) c.delta0 = kTwoPi * 49.55;
    if (unset("tau_ratio")) c.tau_ratio = 0.266;
    if (unset("phi_r")) c.phi_r = 0.4 * kPi;
    if (unset("phi_R")) c.phi_R = 1.9 * kPi;
  } else {
    if (unset("omega_b0")) c.omega_b0 = kTwoPi * 300.0;
    if (unset("omega_r0")) c.omega_r0 = kTwoPi * 300.0;
    if (unset("delta_b")) c.delta_b = -kTwoPi * 1762.90;
    if (unset("tau_b_ratio")) c.tau_b_ratio = 0.35;
    if (unset("tau_r_ratio")) c.tau_r_ratio = 0.35;
    if (unset("phi_r")) c.phi_r = 0.6 * kPi;
    if (unset("phi_R")) c.phi_R = 0.0;
  }
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, s] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void apply(ExperimentConfig& cfg, const std::string& key, const std::string& value, int line) {
  const auto& t = setters();
  const auto it = t.find(key);
  if (it == t.end()) throw ConfigError(line, key, "unknown key");
  try {
    cfg.canonical[key] = it->second(cfg, value);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(line, key, e.what());
  } catch (const std::out_of_range&) {
    throw ConfigError(line, key, "value out of range");
  }
  fill_defaults(cfg);
}

ExperimentConfig parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  std::map<std::string, int> seen;
  std::vector<std::pair<std::string, std::pair<std::string, int>>> assignments;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "", "expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "", "missing key");
    if (value.empty()) throw ConfigError(line, key, "missing value");
    if (seen.count(key)) throw ConfigError(line, key, "duplicate key (first set on line " + std::to_string(seen[key]) + ")");
    seen[key] = line;
    assignments.push_back({key, {value, line}});
  }
  // Excitation first so that unit-free defaults match the chosen kind.
  std::stable_sort(assignments.begin(), assignments.end(),
                   [](const auto& a, const auto& b) { return a.first == "excitation" && b.first != "excitation"; });
  for (const auto& [key, vl] : assignments) apply(cfg, key, vl.first, vl.second);
  for (const char* req : {"excitation", "family", "gate_time"})
    if (!cfg.canonical.count(req)) throw ConfigError(0, req, "required key missing");
  fill_defaults(cfg);
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(0, "", e.what());
  }
  return cfg;
}

ExperimentConfig load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError(0, "", "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& [k, v] : canonical) {
    if (!hashed(k)) continue;
    for (char ch : k + "=" + v + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double ExperimentConfig::pulse_duration() const { return gate_time / (family == pulse::Family::Ctqd ? 4.0 : 2.0); }

atom::AtomModel ExperimentConfig::model() const {
  atom::AtomModel m = atom::default_model(excitation);
  if (blockade > 0.0) m.blockade_shift = blockade;
  return m;
}

pulse::BasePulse ExperimentConfig::base_pulse() const {
  const double T = pulse_duration();
  if (excitation == atom::ExcitationKind::Dipole) return pulse::BasePulse::lcg({T, omega0, tau_ratio * T, delta0}, family);
  return pulse::BasePulse::zchg({T, omega_b0, omega_r0, tau_b_ratio * T, tau_r_ratio * T, delta_b}, family);
}

pulse::PulseSchedule ExperimentConfig::schedule(double pr, double pR) const {
  const pulse::BasePulse b = base_pulse();
  return family == pulse::Family::Ctqd ? pulse::build_sequence(b, pr, pR, mirror_second)
                                       : pulse::build_double(b, mirror_second);
}

void ExperimentConfig::validate() const {
  if (!(gate_time > 0.0)) throw InvalidArgument("gate_time must be positive");
  if (!(integrator.max_step > 0.0) || !(integrator.stability > 0.0) ||
      !(integrator.density_stability > 0.0))
    throw InvalidArgument("integrator step must be positive");
  if (integrator.sample_every < 1) throw InvalidArgument("sample_every must be at least 1");
  if (mc_runs < 1) throw InvalidArgument("mc_runs must be at least 1");
  if (workers < 1) throw InvalidArgument("workers must be at least 1");
  if (waveform_samples < 2) throw InvalidArgument("waveform_samples must be at least 2");
  if (!(phase_resolution > 0.0)) throw InvalidArgument("phase_resolution must be positive");
  if (iso_amplitude_max < 0.0) throw InvalidArgument("iso_amplitude_max must be non-negative");
  if (iso_target < 0.0 || iso_target >= 1.0) throw InvalidArgument("iso_target must lie in [0, 1)");
  de.validate();
  base_pulse();  // validates the pulse parameters
}

}  // namespace rydtqd::config
