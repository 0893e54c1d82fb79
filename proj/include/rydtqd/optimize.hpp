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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rydtqd/atom.hpp"
#include "rydtqd/dynamics.hpp"
#include "rydtqd/gate.hpp"
#include "rydtqd/pulse.hpp"

namespace rydtqd::optimize {

// Strict feasibility threshold: F0 > 0.9989 (dipole) or F0 > 0.989 (quadrupole).
double feasibility_threshold(atom::ExcitationKind kind);
bool feasible(double f0, atom::ExcitationKind kind);

struct SearchDomain {
  std::vector<std::pair<double, double>> bounds;
  std::vector<std::string> names;
  std::size_t dim() const { return bounds.size(); }
  void validate() const;
};

// x = (T us, Omega0 rad/us, Delta0 rad/us, tau/T).
SearchDomain lcg_domain();
// x = (T us, OmegaB0 rad/us, OmegaR0 rad/us, |DeltaB| rad/us, tauB/T, tauR/T).
SearchDomain zchg_domain();

struct DeConfig {
  std::size_t population = 0;  // 0 selects 15 x dim
  int max_generations = 300;
  double differential_weight = 0.8;
  double crossover_rate = 0.9;
  std::uint64_t seed = 1;
  int workers = 1;
  void validate() const;
};

struct DeResult {
  std::vector<double> x;
  double value = 0.0;
  int generations = 0;
  std::size_t evaluations = 0;
  bool stopped_early = false;
};

// DE/rand/1/bin minimizing `objective`. Trial points are clamped into the domain. `stop`
// is checked on the best value after every generation.
DeResult differential_evolution(const std::function<double(const std::vector<double>&)>& objective,
                                const SearchDomain& domain, const DeConfig& cfg,
                                const std::function<bool(double)>& stop = {});

// Parameter vectors of the two domains mapped back to pulse parameters. The quadrupole
// intermediate detuning takes the sign of `delta_b_sign`.
pulse::LcgParams lcg_from_vector(const std::vector<double>& x);
pulse::ZchgParams zchg_from_vector(const std::vector<double>& x, double delta_b_sign = -1.0);

// F0 of the double-pulse adiabatic gate (double LCG for dipole, double ZCHG for quadrupole).
double adiabatic_f0(const atom::AtomModel& model, const pulse::BasePulse& base, const dynamics::IntegratorConfig& cfg,
                    bool mirror_second = false);

struct PulseSearchResult {
  DeResult de;
  double f0 = 0.0;
  bool feasible = false;
  pulse::LcgParams lcg;
  pulse::ZchgParams zchg;
};
// DE over lcg_domain (dipole) or zchg_domain (quadrupole), maximizing the adiabatic F0 and
// stopping as soon as the feasibility threshold is crossed.
PulseSearchResult search_pulse(const atom::AtomModel& model, const DeConfig& de, const dynamics::IntegratorConfig& cfg);

struct PhaseSearchResult {
  double phi_r = 0.0;
  double phi_R = 0.0;
  double f0 = 0.0;
  bool flat = false;  // objective constant over the grid; first grid point returned
  std::size_t evaluations = 0;
};

// Grid search over [0, 2pi)^2 at `resolution`, then compass refinement of the best point.
PhaseSearchResult find_phase_shifts(const gate::PhaseComposer& composer, double resolution = kPi / 100.0,
                                    bool refine = true);

struct IsoPoint {
  double t_gate = 0.0;     // us
  double omega0 = 0.0;     // base amplitude, rad/us
  double omega_max = 0.0;  // peak synthesized single-laser Rabi frequency, rad/us
  double f0 = 0.0;
  double phi_r = 0.0, phi_R = 0.0;  // cTQD only
  bool reachable = false;
};

struct IsoConfig {
  pulse::LcgParams shape;  // Delta0 and tau/T are kept; T and Omega0 are overwritten
  double target = 0.9989;
  double omega0_lo = kTwoPi * 0.5;
  double omega0_hi = kTwoPi * 25.0;  // upper Omega0 bound of the LCG search domain
  double omega0_step = kTwoPi * 0.5;
  double refine_tol = kTwoPi * 0.01;
  double phase_resolution = kPi / 50.0;
};

// Smallest peak Rabi frequency reaching F0 > target at gate time t_gate for the dipole
// ARP double pulse (Omega_max = Omega0) or the cTQD sequence (Omega_max = max Omega~,
// segment phases searched at every amplitude).
IsoPoint min_omega_search(const atom::AtomModel& model, pulse::Family family, double t_gate, const IsoConfig& iso,
                          const dynamics::IntegratorConfig& cfg);

std::vector<IsoPoint> iso_fidelity_scan(const atom::AtomModel& model, pulse::Family family,
                                        const std::vector<double>& t_gates, const IsoConfig& iso,
                                        const dynamics::IntegratorConfig& cfg, int workers = 1);

// Smallest gate time at which an iso-fidelity curve drops to omega_max, interpolated
// linearly between scan points. Empty when the curve never reaches it.
std::optional<double> invert_iso_curve(const std::vector<IsoPoint>& curve, double omega_max);

struct SpeedupPoint {
  double omega_max_bar = 0.0;  // Omega_max / 2pi in MHz
  double t_arp = 0.0, t_ctqd = 0.0;
  double speedup = 0.0;
};
std::vector<SpeedupPoint> speedup_scan(const std::vector<IsoPoint>& arp, const std::vector<IsoPoint>& ctqd,
                                       const std::vector<double>& omega_bar);

struct FitResult {
  std::string model;
  std::vector<std::string> names;
  std::vector<double> params;
  std::vector<double> sigmas;
  double r_squared = 0.0;
  double ss_res = 0.0;
  int iterations = 0;
  bool converged = false;
};

double power_law(double t, double nu1, double nu2, double p);
double logistic(double x, double a, double b, double c, double d);
double r_squared(const std::vector<double>& y, const std::vector<double>& fitted);

// y = nu1 x^-p + nu2 (at least 4 points) and y = a / (1 + e^{-b x + c}) + d (at least 5).
FitResult fit_power_law(const std::vector<double>& x, const std::vector<double>& y);
FitResult fit_logistic(const std::vector<double>& x, const std::vector<double>& y);

// Damped Gauss-Newton on a generic residual model with an analytic Jacobian.
struct LmProblem {
  std::function<double(double, const std::vector<double>&)> f;
  std::function<std::vector<double>(double, const std::vector<double>&)> grad;
};
FitResult levenberg_marquardt(const LmProblem& problem, const std::vector<double>& x, const std::vector<double>& y,
                              std::vector<double> start, int max_iterations = 500);

}  // namespace rydtqd::optimize
