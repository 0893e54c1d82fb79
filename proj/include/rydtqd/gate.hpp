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

#include <string>
#include <vector>

#include "rydtqd/atom.hpp"
#include "rydtqd/dynamics.hpp"
#include "rydtqd/pulse.hpp"

namespace rydtqd::gate {

// Bell state |beta_ij> of Fig. 2 conventions, embedded in the 25-dim space:
// beta_00 = (|00>+|11>)/sqrt2, beta_01 = (|01>+|10>)/sqrt2,
// beta_10 = (|00>-|11>)/sqrt2, beta_11 = (|01>-|10>)/sqrt2.
struct BellTarget {
  int i = 0;
  int j = 1;
  core::StateVector vector;
};
BellTarget bell_target(int i, int j);

// (|0>-|1>)(|0>-|1>)/2 in the 25-dim space.
core::StateVector initial_state();

// Qubit-block indices {|00>,|01>,|10>,|11>} in the 25-dim space.
const std::vector<unsigned>& qubit_indices();

// R_phi (x) R_phi, then 1 (x) H, returning the 4x4 computational block. Leakage outside the
// block is dropped, so the trace can be below one.
core::Matrix finalize_state(const core::Matrix& rho25, double phi);
core::StateVector finalize_state(const core::StateVector& psi25, double phi);  // 4-dim, unnormalized

// (rho_0101 + rho_1010)/2 + |rho_1001| on a 4x4 qubit block.
double fidelity(const core::Matrix& block);
// |<beta|psi>|^2 for a finalized 4-dim state.
double intrinsic_fidelity(const core::StateVector& psi4, const BellTarget& target);

// Single-qubit phase phi_10 read from the final noiseless state (relative to |psi0>).
double extract_phi(const core::StateVector& psi_final);
// Accumulated phase of |label> relative to its initial amplitude; label in {"01","10","11"}.
double relative_phase(const core::StateVector& psi_final, const std::string& label);

// Two-atom Hamiltonian of a schedule with per-atom noise.
dynamics::TimeDependentHamiltonian gate_hamiltonian(const atom::AtomModel& model, const pulse::PulseSchedule& s,
                                                    const atom::AtomNoise& a = {}, const atom::AtomNoise& b = {});

struct UnitaryRun {
  core::StateVector final_state;
  dynamics::Trajectory trajectory;
  double phi01 = 0.0, phi10 = 0.0, phi11 = 0.0;
  double phase_relation = 0.0;  // phi11 - 2 phi10
  double f0 = 0.0;              // fidelity() of the finalized pure state
  double overlap = 0.0;         // |<beta|psi_f>|^2 with the reported target
  BellTarget target;
  double p01 = 0.0, p10 = 0.0, p11 = 0.0;  // final computational populations (|amplitude|^2 / 1/4)
};

// Noiseless (or fixed-noise) unitary run from |psi0>; samples populations and amplitudes.
UnitaryRun run_unitary(const atom::AtomModel& model, const pulse::PulseSchedule& s,
                       const dynamics::IntegratorConfig& cfg, bool record = true);

struct RealisticRun {
  double fidelity = 0.0;
  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  dynamics::Trajectory trajectory;
};

// GKSL run from |psi0><psi0| with the given noise and decay toggle; finalized with phi.
RealisticRun run_realistic(const atom::AtomModel& model, const pulse::PulseSchedule& s, const atom::AtomNoise& a,
                           const atom::AtomNoise& b, bool decay, double phi, const dynamics::IntegratorConfig& cfg,
                           bool record = false);

// Segment propagators of a noiseless schedule, recombined cheaply for any segment phases
// through U(phi) = D(phi) U(0) D(phi)^+ with D = diag(1,1,1,e^{-i phi},e^{-i phi}) per atom.
class PhaseComposer {
 public:
  PhaseComposer(const atom::AtomModel& model, const pulse::PulseSchedule& s, const dynamics::IntegratorConfig& cfg);

  std::size_t segments() const { return props_.size(); }
  core::StateVector final_state(const std::vector<double>& phases) const;
  // Compensated fidelity of the finalized state for the given segment phases.
  double f0(const std::vector<double>& phases) const;

 private:
  std::vector<core::Matrix> props_;
};

// Segment phases of the cTQD sequence.
std::vector<double> sequence_phases(double phi_r, double phi_R);

// Gate-time classification used in reports.
std::string gate_class(double phi10);

}  // namespace rydtqd::gate
