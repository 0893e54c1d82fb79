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

#include "rydtqd/atom.hpp"

#include <cmath>

namespace rydtqd::atom {

namespace {

// Energy rank used to check that decay runs downhill.
int energy_rank(unsigned level) {
  switch (level) {
    case kR: return 3;
    case kP: return 2;
    default: return 1;
  }
}

}  // namespace

const char* to_string(ExcitationKind k) { return k == ExcitationKind::Dipole ? "dipole" : "quadrupole"; }

double AtomModel::total_rate(unsigned level) const {
  double s = 0.0;
  for (const auto& c : decay_channels)
    if (c.from_level == level) s += c.rate;
  return s;
}

void AtomModel::validate() const {
  if (!(blockade_shift > 0.0) || !std::isfinite(blockade_shift)) throw InvalidArgument("blockade shift must be positive");
  for (const auto& c : decay_channels) {
    if (c.from_level >= kLevels || c.to_level >= kLevels) throw InvalidArgument("decay channel level out of range");
    if (!(c.rate >= 0.0)) throw InvalidArgument("decay rate must be non-negative");
    if (energy_rank(c.from_level) <= energy_rank(c.to_level))
      throw InvalidArgument("decay channel must end on a lower level");
  }
  const std::size_t want = excitation == ExcitationKind::Dipole ? 1 : 2;
  if (lasers.size() != want || intensity_sigma.size() != want)
    throw InvalidArgument("laser list does not match the excitation kind");
  for (const auto& l : lasers)
    if (!(l.waist_um > 0.0) || !(l.rayleigh_um > 0.0)) throw InvalidArgument("laser geometry must be positive");
  for (double s : intensity_sigma)
    if (!(s >= 0.0)) throw InvalidArgument("intensity sigma must be non-negative");
  for (double s : position_sigma)
    if (!(s >= 0.0)) throw InvalidArgument("position sigma must be non-negative");
  if (!(t2_doppler > 0.0) || !(t2_magnetic > 0.0) || !(k_eff > 0.0))
    throw InvalidArgument("dephasing times and k_eff must be positive");
}

AtomModel default_model(ExcitationKind kind) {
  AtomModel m;
  m.excitation = kind;
  if (kind == ExcitationKind::Dipole) {
    const double gr = 1.0 / 593.0;
    m.blockade_shift = kTwoPi * 3000.0;
    m.decay_channels = {{kR, kZero, gr / 16.0}, {kR, kOne, gr / 16.0}, {kR, kG, gr * 7.0 / 8.0}};
    m.lasers = {{"uv", 2.5, 61.5}};
    m.k_eff = 19.7;
    m.t2_doppler = 4.0;
    m.t2_magnetic = 50.0;
    m.intensity_sigma = {0.05};
  } else {
    const double gr = 1.0 / 367.0;
    const double gp = 1.0 / 0.155;
    m.blockade_shift = kTwoPi * 2000.0;
    m.decay_channels = {{kR, kZero, gr / 32.0}, {kR, kOne, gr / 32.0}, {kR, kG, gr * 7.0 / 16.0},
                        {kR, kP, gr / 2.0},     {kP, kZero, gp / 16.0}, {kP, kOne, gp / 16.0},
                        {kP, kG, gp * 7.0 / 8.0}};
    m.lasers = {{"blue", 3.0, 61.6}, {"red", 3.0, 27.2}};
    m.k_eff = 7.63;
    m.t2_doppler = 10.5;
    m.t2_magnetic = 34.0;
    m.intensity_sigma = {0.01, 0.01};
  }
  m.position_sigma = {0.24, 0.24, 0.92};
  return m;
}

std::vector<core::Matrix> collapse_operators(const AtomModel& model) {
  std::vector<core::Matrix> ops;
  const core::Matrix id = core::Matrix::identity(kLevels);
  for (const auto& ch : model.decay_channels) {
    core::Matrix c(kLevels, kLevels);
    c(ch.to_level, ch.from_level) = std::sqrt(ch.rate);
    ops.push_back(core::kron(c, id));
    ops.push_back(core::kron(id, c));
  }
  return ops;
}

core::Matrix single_atom_hamiltonian(const AtomModel& model, const Drive& d, const AtomNoise& n) {
  core::Matrix h(kLevels, kLevels);
  const cplx ph = std::polar(1.0, d.phase);
  if (model.excitation == ExcitationKind::Dipole) {
    const cplx c = 0.5 * n.spatial[0] * n.intensity[0] * d.omega * ph;
    h(kOne, kR) = c;
    h(kR, kOne) = std::conj(c);
    const double det = d.delta + n.detuning_shift;
    h(kOne, kOne) = -0.5 * det;
    h(kR, kR) = 0.5 * det;
  } else {
    const cplx cb = 0.5 * n.spatial[0] * n.intensity[0] * d.omega_b * ph;
    const double cr = 0.5 * n.spatial[1] * n.intensity[1] * d.omega_r;
    h(kOne, kP) = cb;
    h(kP, kOne) = std::conj(cb);
    h(kP, kR) = cr;
    h(kR, kP) = cr;
    h(kP, kP) = d.delta_b;
    h(kR, kR) = d.delta_br + n.detuning_shift;
  }
  return h;
}

core::Matrix two_atom_hamiltonian(const AtomModel& model, const Drive& da, const AtomNoise& na, const Drive& db,
                                  const AtomNoise& nb) {
  const core::Matrix id = core::Matrix::identity(kLevels);
  core::Matrix h = core::kron(single_atom_hamiltonian(model, da, na), id) +
                   core::kron(id, single_atom_hamiltonian(model, db, nb));
  h(pair_index(kR, kR), pair_index(kR, kR)) += model.blockade_shift;
  return h;
}

void two_atom_hamiltonian_sparse(const AtomModel& model, const Drive& da, const AtomNoise& na, const Drive& db,
                                 const AtomNoise& nb, core::SparseMatrix& out) {
  const core::Matrix ha = single_atom_hamiltonian(model, da, na);
  const core::Matrix hb = single_atom_hamiltonian(model, db, nb);
  // Off-diagonal slots from the two atoms never coincide, so no accumulation is needed.
  out = core::SparseMatrix(kPairDim);
  std::vector<cplx> diag(kPairDim);
  for (unsigned a = 0; a < kLevels; ++a)
    for (unsigned b = 0; b < kLevels; ++b) diag[pair_index(a, b)] = ha(a, a) + hb(b, b);
  diag[pair_index(kR, kR)] += model.blockade_shift;
  out.reserve(64);
  for (unsigned k = 0; k < kPairDim; ++k)
    if (diag[k] != cplx{}) out.push(k, k, diag[k]);
  for (unsigned i = 0; i < kLevels; ++i)
    for (unsigned j = 0; j < kLevels; ++j) {
      if (i == j) continue;
      if (ha(i, j) != cplx{})
        for (unsigned k = 0; k < kLevels; ++k) out.push(pair_index(i, k), pair_index(j, k), ha(i, j));
      if (hb(i, j) != cplx{})
        for (unsigned k = 0; k < kLevels; ++k) out.push(pair_index(k, i), pair_index(k, j), hb(i, j));
    }
}

}  // namespace rydtqd::atom
