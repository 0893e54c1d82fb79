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


// Command-line front end over the C interface.

#include <CLI11.hpp>
#include <cstdio>
#include <memory>
#include <string>

#include "rydtqd/rydtqd.h"

namespace {

struct ConfigDeleter {
  void operator()(rtqd_config* c) const { rtqd_config_free(c); }
};
struct ReportDeleter {
  void operator()(rtqd_report* r) const { rtqd_report_free(r); }
};
using ConfigPtr = std::unique_ptr<rtqd_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<rtqd_report, ReportDeleter>;

int report_failure(const char* what, rtqd_status s) {
  std::fprintf(stderr, "rydtqd %s: %s: %s\n", what, rtqd_status_name(s), rtqd_last_error());
  return 10 + int(s);
}

struct CommonFlags {
  std::string config;
  std::string seed;
  std::string workers;
  std::string out_dir = "out";
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config, "experiment configuration file")->required()->check(CLI::ExistingFile);
  app->add_option("--seed", f.seed, "random seed (overrides the config)");
  app->add_option("--workers", f.workers, "worker threads (overrides the config)");
  app->add_option("--out-dir", f.out_dir, "output directory")->capture_default_str();
}

int load(const CommonFlags& f, ConfigPtr& out) {
  rtqd_config* c = nullptr;
  rtqd_status s = rtqd_config_load(f.config.c_str(), &c);
  if (s != RTQD_OK) return report_failure("config", s);
  out.reset(c);
  const std::pair<const char*, const std::string*> overrides[] = {
      {"seed", &f.seed}, {"workers", &f.workers}, {"out_dir", &f.out_dir}};
  for (const auto& [key, value] : overrides) {
    if (value->empty()) continue;
    s = rtqd_config_set(c, key, value->c_str());
    if (s != RTQD_OK) return report_failure("config", s);
  }
  return 0;
}

int emit(rtqd_status s, rtqd_report* const* raw, const char* what) {
  ReportPtr r(*raw);
  if (s != RTQD_OK) return report_failure(what, s);
  const char* text = nullptr;
  rtqd_report_json(r.get(), &text);
  std::printf("%s\n", text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg-blockade controlled-phase gate simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rtqd_version()));

  CommonFlags sim_f, scan_f, opt_f, wave_f;
  auto* sim = app.add_subcommand("simulate", "intrinsic, decay-only and Monte Carlo fidelities of one gate");
  add_common(sim, sim_f);

  auto* scan = app.add_subcommand("scan", "fidelities over a grid of gate times or amplitudes");
  add_common(scan, scan_f);
  std::string variable, values;
  scan->add_option("--variable", variable, "T_g or Omega_max (overrides scan_variable)");
  scan->add_option("--values", values, "grid such as '0.12:0.48:0.04 us' (overrides scan_values)");

  auto* opt = app.add_subcommand("optimize", "pulse search, phase search, iso-fidelity or speedup scans");
  add_common(opt, opt_f);
  std::string mode;
  opt->add_option("--mode", mode, "pulse, phases, iso or speedup (overrides optimize_mode)");

  auto* wave = app.add_subcommand("waveform", "export the synthesized drive of a gate");
  add_common(wave, wave_f);

  auto* fit = app.add_subcommand("fit", "fit a power law or logistic curve to scan output");
  std::string csv, model = "power", fit_out = "out";
  fit->add_option("csv", csv, "input CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("--model", model, "power or logistic")->check(CLI::IsMember({"power", "logistic"}))->capture_default_str();
  fit->add_option("--out-dir", fit_out, "output directory")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  ConfigPtr cfg;
  rtqd_report* report = nullptr;
  if (*sim) {
    if (int rc = load(sim_f, cfg)) return rc;
    return emit(rtqd_simulate(cfg.get(), &report), &report, "simulate");
  }
  if (*scan) {
    if (int rc = load(scan_f, cfg)) return rc;
    if (!variable.empty() && rtqd_config_set(cfg.get(), "scan_variable", variable.c_str()) != RTQD_OK)
      return report_failure("scan", RTQD_CONFIG);
    if (!values.empty() && rtqd_config_set(cfg.get(), "scan_values", values.c_str()) != RTQD_OK)
      return report_failure("scan", RTQD_CONFIG);
    return emit(rtqd_scan(cfg.get(), &report), &report, "scan");
  }
  if (*opt) {
    if (int rc = load(opt_f, cfg)) return rc;
    if (!mode.empty() && rtqd_config_set(cfg.get(), "optimize_mode", mode.c_str()) != RTQD_OK)
      return report_failure("optimize", RTQD_CONFIG);
    return emit(rtqd_optimize(cfg.get(), &report), &report, "optimize");
  }
  if (*wave) {
    if (int rc = load(wave_f, cfg)) return rc;
    return emit(rtqd_waveform(cfg.get(), &report), &report, "waveform");
  }
  return emit(rtqd_fit(csv.c_str(), model.c_str(), fit_out.c_str(), &report), &report, "fit");
}
