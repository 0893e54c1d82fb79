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

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rydtqd/core.hpp"

namespace rydtqd::dynamics {

// Piecewise-smooth Hamiltonian: `eval(k, t_local, H)` fills H for segment k.
// Steps never straddle a segment edge.
struct TimeDependentHamiltonian {
  std::vector<double> segment_durations;
  std::function<void(std::size_t, double, core::SparseMatrix&)> eval;
  double total_duration() const;
};

struct IntegratorConfig {
  double max_step = 1e-4;   // us
  double stability = 0.075;         // state vectors: step <= stability / ||H||
  double density_stability = 0.2;  // the same bound for GKSL runs
  double fixed_step = 0.0;  // us; when positive, used as the step bound instead of the automatic rule
  int sample_every = 10;    // record observables every this many steps (and at every edge)
};

// Named observables sampled on a shared time grid.
struct Trajectory {
  std::vector<double> times;
  std::map<std::string, std::vector<double>> series;
  std::vector<std::string> flags;  // e.g. skipped phase samples
  double step = 0.0;               // integrator step actually used (largest segment step)
  void record(double t, const std::map<std::string, double>& values);
};

// Observable extractors called at each sample time.
using StateObserver = std::function<std::map<std::string, double>(const core::StateVector&)>;
using DensityObserver = std::function<std::map<std::string, double>(const core::Matrix&)>;

// Step used on a segment of the given duration under the config and a norm bound.
int steps_for(double duration, double norm_bound, const IntegratorConfig& cfg);
double norm_bound(const TimeDependentHamiltonian& h);

struct UnitaryResult {
  core::StateVector final_state;
  Trajectory trajectory;
};

// i dpsi/dt = H psi by fixed-step RK4. Throws NumericError on norm drift > 1e-5.
UnitaryResult propagate_unitary(const TimeDependentHamiltonian& h, const core::StateVector& psi0,
                                const IntegratorConfig& cfg, const StateObserver& observe = {});

// Propagator of each segment alone, with the step rule of the whole schedule.
std::vector<core::Matrix> segment_propagators(const TimeDependentHamiltonian& h, const IntegratorConfig& cfg);

struct GkslResult {
  core::Matrix final_rho;
  Trajectory trajectory;
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  bool positivity_ok = true;
};

// drho/dt = i[rho, H] + sum_c (c rho c^+ - {c^+ c, rho}/2), symmetrized after every step.
// Throws NumericError on trace drift > 1e-5 or an eigenvalue below -1e-6.
GkslResult propagate_gksl(const TimeDependentHamiltonian& h, const std::vector<core::Matrix>& collapse,
                          const core::Matrix& rho0, const IntegratorConfig& cfg, const DensityObserver& observe = {},
                          int positivity_every = 200);

// Two-level sector trajectory for adiabaticity monitoring.
struct SectorTrajectory {
  std::vector<double> times;
  std::vector<core::StateVector> states;  // 2-dim
  std::vector<std::size_t> segment;       // segment index per sample
};

// Minimum over samples of |<E(t)|psi(t)>|^2, where E is the instantaneous eigenvector of
// h2_of_t selected at each segment start by maximal overlap and then followed continuously.
double adiabaticity_monitor(const SectorTrajectory& traj,
                            const std::function<core::Matrix(std::size_t, double)>& h2_of_t,
                            const std::vector<double>& segment_starts);

// Propagates a 2x2 Hamiltonian and samples every `sample_every` steps.
SectorTrajectory propagate_sector(const std::vector<double>& segment_durations,
                                  const std::function<core::Matrix(std::size_t, double)>& h2,
                                  const core::StateVector& psi0, const IntegratorConfig& cfg);

// Unwrapped argument of an amplitude series. Samples with magnitude below 1e-6 are skipped
// and their indices returned through `skipped`.
std::vector<double> accumulated_phase(const std::vector<cplx>& amplitudes, std::vector<std::size_t>* skipped = nullptr);
// Same, reading the amplitude of `label` from the series "re_<label>" and "im_<label>".
std::vector<double> accumulated_phase(const Trajectory& traj, const std::string& label,
                                      std::vector<std::size_t>* skipped = nullptr);

}  // namespace rydtqd::dynamics
