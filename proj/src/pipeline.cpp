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


#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>

#include "rydtqd/gate.hpp"
#include "rydtqd/noise.hpp"
#include "rydtqd/optimize.hpp"
#include "rydtqd/parallel.hpp"

namespace rydtqd::pipeline {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;

double mhz(double rad_per_us) { return rad_per_us / kTwoPi; }

std::string schema_tag(const std::string& kind) { return "rydtqd." + kind + "/" + std::to_string(kSchemaVersion); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

fs::path output_path(const config::ExperimentConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return fs::path(cfg.out_dir) / name;
}

// CSV file whose first line names the schema, the config hash and the seed.
class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::string& kind, const std::string& hash, std::uint64_t seed,
            const std::vector<std::string>& columns, bool append = false)
      : out_(path, append ? std::ios::app : std::ios::trunc) {
    if (!out_) throw IoError("cannot write " + path.string());
    if (!append) {
      out_ << "# schema=" << schema_tag(kind) << " config_hash=" << hash << " seed=" << seed << "\n";
      for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
      out_ << "\n";
      out_.flush();
    }
  }
  void row(const std::vector<std::string>& cells) {
    std::lock_guard<std::mutex> lock(mu_);
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << "\n";
    out_.flush();
  }

 private:
  std::ofstream out_;
  std::mutex mu_;
};

struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw IoError(path.string() + ": missing schema line");
  for (const auto& tok : split(line.substr(2), ' ')) {
    const auto eq = tok.find('=');
    if (eq != std::string::npos) t.meta[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  if (!std::getline(in, line)) throw IoError(path.string() + ": missing header");
  t.columns = split(line, ',');
  int n = 2;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (cells.size() != t.columns.size())
      throw IoError(path.string() + ":" + std::to_string(n) + ": expected " + std::to_string(t.columns.size()) + " cells");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

std::size_t column(const CsvTable& t, const std::string& name, const std::string& path) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  if (it == t.columns.end()) throw IoError(path + ": missing column " + name);
  return std::size_t(it - t.columns.begin());
}

double cell_number(const std::string& s, const std::string& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw IoError(path + ": malformed number '" + s + "'");
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

json header(const config::ExperimentConfig& cfg, const std::string& command) {
  return {{"command", command}, {"config_hash", cfg.hash()}, {"seed", cfg.seed}, {"config", cfg.canonical}};
}

struct PhaseChoice {
  double phi_r, phi_R;
  bool searched;
  double f0_search;
};

PhaseChoice choose_phases(const config::ExperimentConfig& cfg, const atom::AtomModel& m) {
  if (cfg.family != pulse::Family::Ctqd || !cfg.phase_search) return {cfg.phi_r, cfg.phi_R, false, 0.0};
  const gate::PhaseComposer composer(m, cfg.schedule(0.0, 0.0), cfg.integrator);
  const auto r = optimize::find_phase_shifts(composer, cfg.phase_resolution, true);
  return {r.phi_r, r.phi_R, true, r.f0};
}

double schedule_peak(const pulse::BasePulse& base) { return pulse::peak_rabi(base); }

void write_trajectory(const fs::path& path, const config::ExperimentConfig& cfg, const dynamics::Trajectory& traj) {
  std::vector<std::string> cols{"t_us"};
  for (const auto& [name, v] : traj.series) cols.push_back(name);
  CsvWriter w(path, "trajectory", cfg.hash(), cfg.seed, cols);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::vector<std::string> row{fmt(traj.times[i])};
    for (const auto& [name, v] : traj.series) row.push_back(fmt(v[i]));
    w.row(row);
  }
}

// Unwrapped phases of |01>, |10>, |11> along a unitary trajectory.
void add_phase_series(dynamics::Trajectory& traj) {
  for (const char* label : {"01", "10", "11"}) {
    std::vector<std::size_t> skipped;
    traj.series[std::string("phi_") + label] = dynamics::accumulated_phase(traj, label, &skipped);
    if (!skipped.empty())
      traj.flags.push_back(std::string("phi_") + label + ": " + std::to_string(skipped.size()) + " samples held");
  }
  const auto& p10 = traj.series["phi_10"];
  const auto& p11 = traj.series["phi_11"];
  std::vector<double> rel(p10.size());
  for (std::size_t i = 0; i < rel.size(); ++i) rel[i] = p11[i] - 2.0 * p10[i];
  traj.series["phi_11_minus_2phi_10"] = rel;
}

double wrapped_distance_to_pi(double a) {
  const double m = a - kTwoPi * std::floor(a / kTwoPi);
  return std::abs(m - kPi);
}

struct GatePoint {
  json report;
  double f0, f, sigma_f, omega_max;
};

GatePoint evaluate_gate(const config::ExperimentConfig& cfg, bool record, const fs::path* traj_path) {
  const atom::AtomModel m = cfg.model();
  const PhaseChoice ph = choose_phases(cfg, m);
  const pulse::PulseSchedule s = cfg.schedule(ph.phi_r, ph.phi_R);
  gate::UnitaryRun u = gate::run_unitary(m, s, cfg.integrator, record);
  const pulse::PulseArea area = pulse::pulse_area(s);
  GatePoint g;
  g.omega_max = schedule_peak(cfg.base_pulse());
  g.f0 = u.f0;
  json r;
  r["excitation"] = atom::to_string(cfg.excitation);
  r["family"] = pulse::to_string(cfg.family);
  r["T_g_us"] = s.total_duration();
  r["F0"] = u.f0;
  r["bell_overlap"] = u.overlap;
  r["bell_target"] = "beta_" + std::to_string(u.target.i) + std::to_string(u.target.j);
  r["phi_01"] = u.phi01;
  r["phi_10"] = u.phi10;
  r["phi_11"] = u.phi11;
  r["phase_relation"] = u.phase_relation;
  r["phase_relation_distance_to_pi"] = wrapped_distance_to_pi(u.phase_relation);
  r["gate_class"] = gate::gate_class(u.phi10);
  r["P01_final"] = u.p01;
  r["P10_final"] = u.p10;
  r["P11_final"] = u.p11;
  r["phi_r"] = ph.phi_r;
  r["phi_R"] = ph.phi_R;
  r["phases_searched"] = ph.searched;
  r["pulse_area_over_2pi"] = area.generalized_over_2pi;
  r["rabi_area_over_2pi"] = area.rabi_over_2pi;
  r["omega_max_mhz"] = mhz(g.omega_max);
  if (record) {
    add_phase_series(u.trajectory);
    r["trajectory_flags"] = u.trajectory.flags;
    if (traj_path) write_trajectory(*traj_path, cfg, u.trajectory);
  }
  g.f = std::nan("");
  g.sigma_f = std::nan("");
  if (cfg.run_decay_only) {
    const auto d = gate::run_realistic(m, s, {}, {}, true, u.phi10, cfg.integrator);
    r["F_s"] = d.fidelity;
    r["decay_only_max_trace_error"] = d.max_trace_error;
    r["decay_only_max_hermiticity_error"] = d.max_hermiticity_error;
    g.f = d.fidelity;
    g.sigma_f = 0.0;
  }
  if (cfg.run_monte_carlo) {
    const auto mc = noise::run_monte_carlo(m, s, u.phi10, cfg.noise, cfg.mc_runs, cfg.seed, cfg.workers, cfg.integrator);
    r["F"] = mc.mean;
    r["sigma_F"] = mc.std_error;
    r["mc_runs"] = mc.n_runs;
    r["mc_max_trace_error"] = mc.max_trace_error;
    r["mc_fidelities"] = mc.fidelities;
    g.f = mc.mean;
    g.sigma_f = mc.std_error;
  }
  g.report = r;
  return g;
}

config::ExperimentConfig with_value(const config::ExperimentConfig& base, const std::string& var, double v) {
  config::ExperimentConfig c = base;
  if (var == "T_g") {
    c.gate_time = v;
  } else if (c.excitation == atom::ExcitationKind::Dipole) {
    c.omega0 = v;
  } else {
    c.omega_b0 = v;
    c.omega_r0 = v;
  }
  c.validate();
  return c;
}

std::vector<double> default_grid(double lo, double hi, double step) {
  std::vector<double> g;
  // Rounded to 1e-9 so that grid values print cleanly.
  for (int k = 0; lo + k * step <= hi + 1e-9; ++k) g.push_back(std::round((lo + k * step) * 1e9) / 1e9);
  return g;
}

json iso_rows(const std::vector<optimize::IsoPoint>& pts) {
  json rows = json::array();
  for (const auto& p : pts)
    rows.push_back({{"t_gate_us", p.t_gate},
                    {"reachable", p.reachable},
                    {"omega0_mhz", mhz(p.omega0)},
                    {"omega_max_mhz", mhz(p.omega_max)},
                    {"F0", p.f0},
                    {"phi_r", p.phi_r},
                    {"phi_R", p.phi_R}});
  return rows;
}

void write_iso(const config::ExperimentConfig& cfg, const std::string& name, const std::vector<optimize::IsoPoint>& pts) {
  CsvWriter w(output_path(cfg, name), "iso", cfg.hash(), cfg.seed,
              {"T_bar", "reachable", "omega0_mhz", "omega_max_mhz", "F0", "phi_r_over_pi", "phi_R_over_pi"});
  for (const auto& p : pts)
    w.row({fmt(p.t_gate), p.reachable ? "1" : "0", fmt(mhz(p.omega0)), fmt(mhz(p.omega_max)), fmt(p.f0),
           fmt(p.phi_r / kPi), fmt(p.phi_R / kPi)});
}

json fit_json(const optimize::FitResult& f) {
  json j{{"model", f.model}, {"r_squared", f.r_squared}, {"iterations", f.iterations}, {"converged", f.converged}};
  for (std::size_t i = 0; i < f.params.size(); ++i) {
    j["params"][f.names[i]] = f.params[i];
    j["sigmas"][f.names[i]] = f.sigmas[i];
  }
  return j;
}

json try_power_fit(const std::vector<optimize::IsoPoint>& pts) {
  std::vector<double> x, y;
  for (const auto& p : pts)
    if (p.reachable) x.push_back(p.t_gate), y.push_back(mhz(p.omega_max));
  if (x.size() < 4) return {{"error", "fewer than 4 reachable points"}};
  try {
    return fit_json(optimize::fit_power_law(x, y));
  } catch (const std::exception& e) {
    return {{"error", e.what()}};
  }
}

optimize::IsoConfig iso_config(const config::ExperimentConfig& cfg, double target, double default_cap) {
  optimize::IsoConfig iso;
  iso.omega0_hi = cfg.iso_amplitude_max > 0.0 ? cfg.iso_amplitude_max : default_cap;
  iso.shape = {cfg.pulse_duration(), cfg.omega0, cfg.tau_ratio * cfg.pulse_duration(), cfg.delta0};
  iso.target = target;
  iso.phase_resolution = std::max(cfg.phase_resolution, kPi / 50.0);
  return iso;
}

}  // namespace

json simulate(const config::ExperimentConfig& cfg) {
  cfg.validate();
  const bool files = !cfg.out_dir.empty();
  fs::path traj;
  if (files) traj = output_path(cfg, "trajectory_unitary.csv");
  GatePoint g = evaluate_gate(cfg, true, files ? &traj : nullptr);
  json out = header(cfg, "simulate");
  out["report"] = g.report;
  if (files) {
    if (g.report.contains("mc_fidelities")) {
      CsvWriter w(output_path(cfg, "mc_fidelities.csv"), "mc", cfg.hash(), cfg.seed, {"run", "fidelity"});
      const auto& f = g.report["mc_fidelities"];
      for (std::size_t i = 0; i < f.size(); ++i) w.row({std::to_string(i), fmt(f[i].get<double>())});
    }
    write_json(output_path(cfg, "report.json"), out);
  }
  return out;
}

json scan(const config::ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.scan_variable.empty()) throw InvalidArgument("scan_variable must be set");
  if (cfg.scan_values.empty()) throw InvalidArgument("scan_values must be set");
  const std::string var = cfg.scan_variable;
  const bool files = !cfg.out_dir.empty();
  const std::string name = "scan_" + var + ".csv";
  const std::vector<std::string> cols{var == "T_g" ? "T_g_us" : "Omega0_mhz", "status", "F0", "F", "sigma_F",
                                      "omega_max_mhz", "phi_10", "phi_r_over_pi", "phi_R_over_pi"};

  // Resume: keep rows of an earlier run with the same schema and config hash.
  std::set<std::string> done;
  bool append = false;
  if (files && fs::exists(output_path(cfg, name))) {
    try {
      CsvTable t = read_csv(output_path(cfg, name));
      if (t.meta["schema"] == schema_tag("scan") && t.meta["config_hash"] == cfg.hash() && t.columns == cols) {
        for (const auto& r : t.rows)
          if (r[1] == "ok") done.insert(r[0]);
        append = true;
      }
    } catch (const IoError&) {
    }
  }
  std::unique_ptr<CsvWriter> w;
  if (files) w = std::make_unique<CsvWriter>(output_path(cfg, name), "scan", cfg.hash(), cfg.seed, cols, append);

  config::ExperimentConfig inner = cfg;
  inner.workers = 1;
  json rows = json::array();
  std::vector<json> results(cfg.scan_values.size());
  std::size_t failures = 0, skipped = 0;
  std::mutex mu;
  parallel_for(cfg.scan_values.size(), cfg.workers, [&](std::size_t i) {
    const double v = cfg.scan_values[i];
    const double shown = var == "T_g" ? v : mhz(v);
    const std::string key = fmt(shown);
    if (done.count(key)) {
      std::lock_guard<std::mutex> lock(mu);
      ++skipped;
      results[i] = {{"value", shown}, {"status", "resumed"}};
      return;
    }
    try {
      const GatePoint g = evaluate_gate(with_value(inner, var, v), false, nullptr);
      results[i] = {{"value", shown},         {"status", "ok"},         {"F0", g.f0},
                    {"F", g.f},               {"sigma_F", g.sigma_f},   {"omega_max_mhz", mhz(g.omega_max)},
                    {"phi_10", g.report["phi_10"]}, {"phi_r", g.report["phi_r"]}, {"phi_R", g.report["phi_R"]}};
      if (w)
        w->row({key, "ok", fmt(g.f0), fmt(g.f), fmt(g.sigma_f), fmt(mhz(g.omega_max)),
                fmt(g.report["phi_10"].get<double>()), fmt(g.report["phi_r"].get<double>() / kPi),
                fmt(g.report["phi_R"].get<double>() / kPi)});
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(mu);
      ++failures;
      results[i] = {{"value", shown}, {"status", "error"}, {"error", e.what()}};
      if (w) w->row({key, "error", "nan", "nan", "nan", "nan", "nan", "nan", "nan"});
    }
  });
  for (auto& r : results) rows.push_back(r);
  json out = header(cfg, "scan");
  out["variable"] = var;
  out["rows"] = rows;
  out["failures"] = failures;
  out["resumed"] = skipped;
  if (files) write_json(output_path(cfg, "scan_" + var + ".json"), out);
  return out;
}

json optimize(const config::ExperimentConfig& cfg) {
  cfg.validate();
  const bool files = !cfg.out_dir.empty();
  const atom::AtomModel m = cfg.model();
  json out = header(cfg, "optimize");
  std::string name;
  switch (cfg.optimize_mode) {
    case config::OptimizeMode::Pulse: {
      optimize::DeConfig de = cfg.de;
      de.seed = cfg.seed;
      de.workers = cfg.workers;
      const auto r = optimize::search_pulse(m, de, cfg.integrator);
      out["mode"] = "pulse";
      out["F0"] = r.f0;
      out["feasible"] = r.feasible;
      out["threshold"] = optimize::feasibility_threshold(cfg.excitation);
      out["generations"] = r.de.generations;
      out["evaluations"] = r.de.evaluations;
      out["stopped_early"] = r.de.stopped_early;
      if (cfg.excitation == atom::ExcitationKind::Dipole)
        out["params"] = {{"T_us", r.lcg.T},
                         {"omega0_mhz", mhz(r.lcg.omega0)},
                         {"delta0_mhz", mhz(r.lcg.delta0)},
                         {"tau_over_T", r.lcg.tau / r.lcg.T}};
      else
        out["params"] = {{"T_us", r.zchg.T},
                         {"omega_b0_mhz", mhz(r.zchg.omega_b0)},
                         {"omega_r0_mhz", mhz(r.zchg.omega_r0)},
                         {"delta_b_mhz", mhz(r.zchg.delta_b)},
                         {"tau_b_over_T", r.zchg.tau_b / r.zchg.T},
                         {"tau_r_over_T", r.zchg.tau_r / r.zchg.T}};
      name = "optimize_pulse.json";
      break;
    }
    case config::OptimizeMode::Phases: {
      if (cfg.family != pulse::Family::Ctqd) throw InvalidArgument("phase search needs family = ctqd");
      const gate::PhaseComposer composer(m, cfg.schedule(0.0, 0.0), cfg.integrator);
      const auto r = optimize::find_phase_shifts(composer, cfg.phase_resolution, true);
      out["mode"] = "phases";
      out["phi_r_over_pi"] = r.phi_r / kPi;
      out["phi_R_over_pi"] = r.phi_R / kPi;
      out["F0"] = r.f0;
      out["flat"] = r.flat;
      out["evaluations"] = r.evaluations;
      name = "optimize_phases.json";
      break;
    }
    case config::OptimizeMode::Iso: {
      const double target =
          cfg.iso_target > 0.0 ? cfg.iso_target : (cfg.family == pulse::Family::Ctqd ? 0.9989 : 0.989);
      const auto times = cfg.iso_gate_times.empty() ? default_grid(0.12, 1.0, 0.04) : cfg.iso_gate_times;
      const auto pts = optimize::iso_fidelity_scan(m, cfg.family, times, iso_config(cfg, target, kTwoPi * 25.0), cfg.integrator,
                                                   cfg.workers);
      out["mode"] = "iso";
      out["family"] = pulse::to_string(cfg.family);
      out["target"] = target;
      out["points"] = iso_rows(pts);
      out["fit"] = try_power_fit(pts);
      if (files) write_iso(cfg, std::string("iso_") + pulse::to_string(cfg.family) + ".csv", pts);
      name = std::string("optimize_iso_") + pulse::to_string(cfg.family) + ".json";
      break;
    }
    case config::OptimizeMode::Speedup: {
      const double target = cfg.iso_target > 0.0 ? cfg.iso_target : 0.99;
      const auto ta = cfg.arp_gate_times.empty() ? default_grid(0.2, 2.0, 0.05) : cfg.arp_gate_times;
      const auto tc = cfg.ctqd_gate_times.empty() ? default_grid(0.03, 1.0, 0.02) : cfg.ctqd_gate_times;
      const auto omegas = cfg.speedup_omegas.empty() ? default_grid(10.0, 40.0, 2.0) : cfg.speedup_omegas;
      const auto iso = iso_config(cfg, target, kTwoPi * *std::max_element(omegas.begin(), omegas.end()));
      const auto arp = optimize::iso_fidelity_scan(m, pulse::Family::Adiabatic, ta, iso, cfg.integrator, cfg.workers);
      const auto ctqd = optimize::iso_fidelity_scan(m, pulse::Family::Ctqd, tc, iso, cfg.integrator, cfg.workers);
      const auto sp = optimize::speedup_scan(arp, ctqd, omegas);
      out["mode"] = "speedup";
      out["target"] = target;
      json rows = json::array();
      std::vector<double> x, y;
      for (const auto& p : sp) {
        rows.push_back({{"omega_max_bar", p.omega_max_bar}, {"t_arp_us", p.t_arp}, {"t_ctqd_us", p.t_ctqd},
                        {"speedup", p.speedup}});
        x.push_back(p.omega_max_bar);
        y.push_back(p.speedup);
      }
      out["points"] = rows;
      out["arp_iso"] = iso_rows(arp);
      out["ctqd_iso"] = iso_rows(ctqd);
      if (x.size() >= 5) {
        try {
          out["fit"] = fit_json(optimize::fit_logistic(x, y));
        } catch (const std::exception& e) {
          out["fit"] = {{"error", e.what()}};
        }
      } else {
        out["fit"] = {{"error", "fewer than 5 speedup points"}};
      }
      if (files) {
        write_iso(cfg, "iso_arp_speedup.csv", arp);
        write_iso(cfg, "iso_ctqd_speedup.csv", ctqd);
        CsvWriter w(output_path(cfg, "speedup.csv"), "speedup", cfg.hash(), cfg.seed,
                    {"omega_max_bar", "t_arp_us", "t_ctqd_us", "speedup"});
        for (const auto& p : sp) w.row({fmt(p.omega_max_bar), fmt(p.t_arp), fmt(p.t_ctqd), fmt(p.speedup)});
      }
      name = "optimize_speedup.json";
      break;
    }
  }
  if (files) write_json(output_path(cfg, name), out);
  return out;
}

json fit(const std::string& csv_path, const std::string& model, const std::string& out_dir) {
  if (model != "power" && model != "logistic") throw InvalidArgument("fit model must be power or logistic");
  const CsvTable t = read_csv(csv_path);
  const std::string schema = t.meta.count("schema") ? t.meta.at("schema") : "";
  std::vector<double> x, y;
  if (schema == schema_tag("xy")) {
    const auto cx = column(t, "x", csv_path), cy = column(t, "y", csv_path);
    for (const auto& r : t.rows) x.push_back(cell_number(r[cx], csv_path)), y.push_back(cell_number(r[cy], csv_path));
  } else if (model == "power" && schema == schema_tag("iso")) {
    const auto cx = column(t, "T_bar", csv_path), cy = column(t, "omega_max_mhz", csv_path);
    const auto ok = column(t, "reachable", csv_path);
    for (const auto& r : t.rows)
      if (r[ok] == "1") x.push_back(cell_number(r[cx], csv_path)), y.push_back(cell_number(r[cy], csv_path));
  } else if (model == "logistic" && schema == schema_tag("speedup")) {
    const auto cx = column(t, "omega_max_bar", csv_path), cy = column(t, "speedup", csv_path);
    for (const auto& r : t.rows) x.push_back(cell_number(r[cx], csv_path)), y.push_back(cell_number(r[cy], csv_path));
  } else {
    throw IoError(csv_path + ": schema '" + schema + "' does not match fit model " + model);
  }
  const auto f = model == "power" ? optimize::fit_power_law(x, y) : optimize::fit_logistic(x, y);
  json out = fit_json(f);
  out["command"] = "fit";
  out["source"] = csv_path;
  out["source_schema"] = schema;
  if (t.meta.count("config_hash")) out["config_hash"] = t.meta.at("config_hash");
  if (t.meta.count("seed")) out["seed"] = t.meta.at("seed");
  out["points"] = x.size();
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_json(fs::path(out_dir) / ("fit_" + model + ".json"), out);
  }
  return out;
}

json waveform(const config::ExperimentConfig& cfg) {
  cfg.validate();
  const pulse::PulseSchedule s = cfg.schedule();
  const std::size_t n = cfg.waveform_samples;
  const double T = s.total_duration();
  const bool dipole = cfg.excitation == atom::ExcitationKind::Dipole;
  std::vector<std::string> cols{"t_us", "segment", "phase_rad"};
  if (dipole) {
    cols.insert(cols.end(), {"omega_mhz", "delta_mhz"});
  } else {
    cols.insert(cols.end(), {"omega_b_mhz", "omega_r_mhz", "delta_b_mhz", "omega_eff_mhz", "delta_eff_mhz"});
  }
  std::unique_ptr<CsvWriter> w;
  if (!cfg.out_dir.empty()) w = std::make_unique<CsvWriter>(output_path(cfg, "waveform.csv"), "waveform", cfg.hash(), cfg.seed, cols);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = T * double(i) / double(n - 1);
    const std::size_t k = s.segment_at(t);
    const atom::Drive d = s.drive_at(t);
    std::vector<std::string> row{fmt(t), std::to_string(k), fmt(d.phase)};
    if (dipole) {
      peak = std::max(peak, std::abs(d.omega));
      row.insert(row.end(), {fmt(mhz(d.omega)), fmt(mhz(d.delta))});
    } else {
      double oe, de;
      pulse::effective_coefficients(d.omega_b, d.omega_r, d.delta_b, oe, de);
      peak = std::max({peak, std::abs(d.omega_b), std::abs(d.omega_r)});
      row.insert(row.end(), {fmt(mhz(d.omega_b)), fmt(mhz(d.omega_r)), fmt(mhz(d.delta_b)), fmt(mhz(oe)), fmt(mhz(de))});
    }
    if (w) w->row(row);
  }
  json out = header(cfg, "waveform");
  out["samples"] = n;
  out["T_g_us"] = T;
  out["peak_rabi_mhz"] = mhz(peak);
  out["pulse_area_over_2pi"] = pulse::pulse_area(s).generalized_over_2pi;
  return out;
}

}  // namespace rydtqd::pipeline
