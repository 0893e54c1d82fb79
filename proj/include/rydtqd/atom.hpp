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

#include <array>
#include <string>
#include <vector>

#include "rydtqd/core.hpp"

namespace rydtqd::atom {

// Level order is fixed everywhere: |0>, |1>, |g>, |p>, |r>.
enum Level : unsigned { kZero = 0, kOne = 1, kG = 2, kP = 3, kR = 4 };
inline constexpr unsigned kLevels = 5;
inline constexpr unsigned kPairDim = kLevels * kLevels;

// Two-atom basis index of |a b>.
constexpr unsigned pair_index(unsigned a, unsigned b) { return kLevels * a + b; }

enum class ExcitationKind { Dipole, Quadrupole };

const char* to_string(ExcitationKind k);

struct DecayChannel {
  unsigned from_level;
  unsigned to_level;
  double rate;  // b_jk * gamma_j, 1/us
};

struct LaserGeometry {
  std::string name;
  double waist_um;
  double rayleigh_um;
};

struct AtomModel {
  ExcitationKind excitation = ExcitationKind::Dipole;
  double blockade_shift = 0.0;  // rad/us
  std::vector<DecayChannel> decay_channels;
  std::vector<LaserGeometry> lasers;  // dipole: {single}; quadrupole: {blue, red}
  double k_eff = 0.0;                 // 1/um
  double t2_doppler = 0.0;            // us
  double t2_magnetic = 0.0;           // us
  std::vector<double> intensity_sigma;  // per laser
  std::array<double, 3> position_sigma{0.0, 0.0, 0.0};  // um

  // Total decay rate out of `level`.
  double total_rate(unsigned level) const;
  // Throws InvalidArgument on a broken invariant.
  void validate() const;
};

AtomModel default_model(ExcitationKind kind);

// Both c (x) 1 and 1 (x) c for every single-atom channel c = sqrt(rate) |to><from|.
std::vector<core::Matrix> collapse_operators(const AtomModel& model);

// Instantaneous drive of one atom. Dipole uses (omega, delta); quadrupole uses
// (omega_b, omega_r, delta_b, delta_br). `phase` multiplies the |1><r| (dipole)
// or |1><p| (quadrupole, blue laser) element as e^{i phase}.
struct Drive {
  double omega = 0.0;
  double delta = 0.0;
  double omega_b = 0.0;
  double omega_r = 0.0;
  double delta_b = 0.0;
  double delta_br = 0.0;
  double phase = 0.0;
};

// Static per-atom imperfection factors. Index 0 is the dipole (or blue) laser, 1 the red laser.
struct AtomNoise {
  std::array<double, 2> spatial{1.0, 1.0};
  std::array<double, 2> intensity{1.0, 1.0};
  double detuning_shift = 0.0;  // Doppler plus magnetic, rad/us
};

core::Matrix single_atom_hamiltonian(const AtomModel& model, const Drive& drive, const AtomNoise& noise = {});

core::Matrix two_atom_hamiltonian(const AtomModel& model, const Drive& drive_a, const AtomNoise& noise_a,
                                  const Drive& drive_b, const AtomNoise& noise_b);

// Same operator as two_atom_hamiltonian, assembled directly in sparse form.
void two_atom_hamiltonian_sparse(const AtomModel& model, const Drive& drive_a, const AtomNoise& noise_a,
                                 const Drive& drive_b, const AtomNoise& noise_b, core::SparseMatrix& out);

}  // namespace rydtqd::atom
