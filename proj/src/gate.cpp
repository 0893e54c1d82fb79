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

#include "rydtqd/gate.hpp"

#include <cmath>

#include "rydtqd/reduction.hpp"

namespace rydtqd::gate {

namespace {

using atom::kOne;
using atom::kPairDim;
using atom::kR;
using atom::kZero;
using atom::pair_index;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Single-qubit frame correction (R_phi (x) R_phi) followed by H on the target, on the 4-dim block.
core::Matrix finalize_unitary(double phi) {
  const cplx e = std::polar(1.0, -phi);
  const core::Matrix r = core::Matrix::diagonal({1.0, e});
  core::Matrix h(2, 2);
  h(0, 0) = kInvSqrt2;
  h(0, 1) = kInvSqrt2;
  h(1, 0) = kInvSqrt2;
  h(1, 1) = -kInvSqrt2;
  return core::kron(core::Matrix::identity(2), h) * core::kron(r, r);
}

std::map<std::string, double> unitary_observables(const core::StateVector& psi) {
  const auto& v = psi.amplitudes();
  const auto pop = [&](unsigned a, unsigned b) { return std::norm(v[pair_index(a, b)]); };
  const cplx plus = (v[pair_index(kOne, kR)] + v[pair_index(kR, kOne)]) * kInvSqrt2;
  const cplx minus = (v[pair_index(kOne, kR)] - v[pair_index(kR, kOne)]) * kInvSqrt2;
  std::map<std::string, double> m;
  m["P00"] = pop(kZero, kZero);
  m["P01"] = pop(kZero, kOne);
  m["P10"] = pop(kOne, kZero);
  m["P11"] = pop(kOne, kOne);
  m["Pplus"] = std::norm(plus);
  m["Pminus"] = std::norm(minus);
  m["Prr"] = pop(kR, kR);
  double pp = 0.0;
  for (unsigned k = 0; k < atom::kLevels; ++k) pp += pop(atom::kP, k) + pop(k, atom::kP);
  m["Pp"] = pp;
  m["abs00"] = std::abs(v[pair_index(kZero, kZero)]);
  const std::pair<const char*, unsigned> amps[] = {{"01", pair_index(kZero, kOne)},
                                                   {"10", pair_index(kOne, kZero)},
                                                   {"11", pair_index(kOne, kOne)}};
  for (const auto& [name, idx] : amps) {
    // Amplitude relative to its initial sign, so phases start at zero.
    const cplx a = v[idx] * (idx == pair_index(kOne, kOne) ? 1.0 : -1.0);
    m[std::string("re_") + name] = a.real();
    m[std::string("im_") + name] = a.imag();
  }
  return m;
}

}  // namespace

BellTarget bell_target(int i, int j) {
  if ((i != 0 && i != 1) || (j != 0 && j != 1)) throw InvalidArgument("Bell indices must be 0 or 1");
  std::vector<cplx> v(kPairDim);
  v[pair_index(kZero, unsigned(j))] = kInvSqrt2;
  v[pair_index(kOne, unsigned(1 - j))] = (i == 0 ? 1.0 : -1.0) * kInvSqrt2;
  return {i, j, core::StateVector(std::move(v))};
}

core::StateVector initial_state() {
  std::vector<cplx> v(kPairDim);
  v[pair_index(kZero, kZero)] = 0.5;
  v[pair_index(kZero, kOne)] = -0.5;
  v[pair_index(kOne, kZero)] = -0.5;
  v[pair_index(kOne, kOne)] = 0.5;
  return core::StateVector(std::move(v));
}

const std::vector<unsigned>& qubit_indices() {
  static const std::vector<unsigned> q{pair_index(kZero, kZero), pair_index(kZero, kOne), pair_index(kOne, kZero),
                                       pair_index(kOne, kOne)};
  return q;
}

core::Matrix finalize_state(const core::Matrix& rho, double phi) {
  if (rho.rows() != kPairDim || rho.cols() != kPairDim) throw InvalidArgument("finalize_state needs a 25x25 matrix");
  const auto& q = qubit_indices();
  core::Matrix block(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) block(i, j) = rho(q[i], q[j]);
  const core::Matrix u = finalize_unitary(phi);
  return u * block * u.adjoint();
}

core::StateVector finalize_state(const core::StateVector& psi, double phi) {
  if (psi.dim() != kPairDim) throw InvalidArgument("finalize_state needs a 25-dim state");
  const auto& q = qubit_indices();
  std::vector<cplx> v(4);
  for (std::size_t i = 0; i < 4; ++i) v[i] = psi[q[i]];
  return core::StateVector(finalize_unitary(phi) * v);
}

double fidelity(const core::Matrix& b) {
  if (b.rows() != 4 || b.cols() != 4) throw InvalidArgument("fidelity needs a 4x4 block");
  return 0.5 * (b(1, 1).real() + b(2, 2).real()) + std::abs(b(2, 1));
}

double intrinsic_fidelity(const core::StateVector& psi4, const BellTarget& target) {
  if (psi4.dim() != 4) throw InvalidArgument("intrinsic_fidelity needs a 4-dim state");
  const auto& q = qubit_indices();
  cplx s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += std::conj(target.vector[q[i]]) * psi4[i];
  return std::norm(s);
}

double relative_phase(const core::StateVector& psi, const std::string& label) {
  cplx a;
  if (label == "01")
    a = -psi[pair_index(kZero, kOne)];
  else if (label == "10")
    a = -psi[pair_index(kOne, kZero)];
  else if (label == "11")
    a = psi[pair_index(kOne, kOne)];
  else
    throw InvalidArgument("unknown phase label " + label);
  if (std::abs(a) < 1e-6) throw NumericError("amplitude vanishes; phase undefined");
  return std::arg(a);
}

double extract_phi(const core::StateVector& psi) { return relative_phase(psi, "10"); }

dynamics::TimeDependentHamiltonian gate_hamiltonian(const atom::AtomModel& model, const pulse::PulseSchedule& s,
                                                    const atom::AtomNoise& a, const atom::AtomNoise& b) {
  dynamics::TimeDependentHamiltonian h;
  for (const auto& seg : s.segments()) h.segment_durations.push_back(seg.duration);
  h.eval = [&model, &s, a, b](std::size_t k, double t, core::SparseMatrix& m) {
    const atom::Drive d = s.drive(k, t);
    atom::two_atom_hamiltonian_sparse(model, d, a, d, b, m);
  };
  return h;
}

UnitaryRun run_unitary(const atom::AtomModel& model, const pulse::PulseSchedule& s, const dynamics::IntegratorConfig& cfg,
                       bool record) {
  const auto h = gate_hamiltonian(model, s);
  dynamics::StateObserver obs;
  if (record) obs = unitary_observables;
  auto r = dynamics::propagate_unitary(h, initial_state(), cfg, obs);
  UnitaryRun u;
  u.final_state = r.final_state;
  u.trajectory = std::move(r.trajectory);
  u.phi01 = relative_phase(u.final_state, "01");
  u.phi10 = relative_phase(u.final_state, "10");
  u.phi11 = relative_phase(u.final_state, "11");
  u.phase_relation = u.phi11 - 2.0 * u.phi10;
  const core::StateVector f = finalize_state(u.final_state, u.phi10);
  u.f0 = fidelity(f.projector());
  u.target = bell_target(1, 1);
  u.overlap = intrinsic_fidelity(f, u.target);
  u.p01 = 4.0 * std::norm(u.final_state[pair_index(kZero, kOne)]);
  u.p10 = 4.0 * std::norm(u.final_state[pair_index(kOne, kZero)]);
  u.p11 = 4.0 * std::norm(u.final_state[pair_index(kOne, kOne)]);
  return u;
}

RealisticRun run_realistic(const atom::AtomModel& model, const pulse::PulseSchedule& s, const atom::AtomNoise& a,
                           const atom::AtomNoise& b, bool decay, double phi, const dynamics::IntegratorConfig& cfg,
                           bool record) {
  const auto h = gate_hamiltonian(model, s, a, b);
  const auto collapse = decay ? atom::collapse_operators(model) : std::vector<core::Matrix>{};
  dynamics::DensityObserver obs;
  if (record)
    obs = [](const core::Matrix& rho) {
      std::map<std::string, double> m;
      m["P00"] = rho(0, 0).real();
      m["P11"] = rho(pair_index(kOne, kOne), pair_index(kOne, kOne)).real();
      m["Prr"] = rho(pair_index(kR, kR), pair_index(kR, kR)).real();
      m["trace"] = rho.trace().real();
      return m;
    };
  auto g = dynamics::propagate_gksl(h, collapse, initial_state().projector(), cfg, obs);
  RealisticRun r;
  r.fidelity = fidelity(finalize_state(g.final_rho, phi));
  r.max_trace_error = g.max_trace_error;
  r.max_hermiticity_error = g.max_hermiticity_error;
  r.trajectory = std::move(g.trajectory);
  return r;
}

PhaseComposer::PhaseComposer(const atom::AtomModel& model, const pulse::PulseSchedule& s,
                             const dynamics::IntegratorConfig& cfg) {
  // Propagate with zero phases; identical segments share one propagator.
  std::vector<pulse::Segment> zero = s.segments();
  for (auto& seg : zero) seg.phase = 0.0;
  const pulse::PulseSchedule base(s.base(), zero);
  const auto h = gate_hamiltonian(model, base);
  const double bound = dynamics::norm_bound(h);
  dynamics::IntegratorConfig c = cfg;
  if (c.fixed_step <= 0.0) c.fixed_step = std::min(cfg.max_step, bound > 0.0 ? cfg.stability / bound : cfg.max_step);
  std::vector<core::Matrix> cache[2];
  for (std::size_t k = 0; k < zero.size(); ++k) {
    auto& slot = cache[zero[k].mirrored ? 1 : 0];
    if (!slot.empty() && std::abs(zero[k].duration - zero[0].duration) < 1e-15) {
      props_.push_back(slot.front());
      continue;
    }
    pulse::PulseSchedule one(s.base(), {{0.0, zero[k].duration, zero[k].mirrored, 0.0}});
    auto u = dynamics::segment_propagators(gate_hamiltonian(model, one), c);
    slot.push_back(u.front());
    props_.push_back(u.front());
  }
}

core::StateVector PhaseComposer::final_state(const std::vector<double>& phases) const {
  if (phases.size() != props_.size()) throw InvalidArgument("one phase per segment required");
  std::vector<cplx> v = initial_state().amplitudes(), w(kPairDim);
  for (std::size_t k = 0; k < props_.size(); ++k) {
    const cplx e = std::polar(1.0, -phases[k]);
    cplx d1[atom::kLevels] = {1.0, 1.0, 1.0, e, e};
    for (unsigned a = 0; a < atom::kLevels; ++a)
      for (unsigned b = 0; b < atom::kLevels; ++b) v[pair_index(a, b)] *= std::conj(d1[a] * d1[b]);
    const core::Matrix& u = props_[k];
    for (unsigned i = 0; i < kPairDim; ++i) {
      cplx s = 0.0;
      const cplx* row = u.data() + std::size_t(i) * kPairDim;
      for (unsigned j = 0; j < kPairDim; ++j) s += row[j] * v[j];
      w[i] = s;
    }
    for (unsigned a = 0; a < atom::kLevels; ++a)
      for (unsigned b = 0; b < atom::kLevels; ++b) v[pair_index(a, b)] = w[pair_index(a, b)] * d1[a] * d1[b];
  }
  return core::StateVector(std::move(v));
}

double PhaseComposer::f0(const std::vector<double>& phases) const {
  const core::StateVector psi = final_state(phases);
  const cplx a10 = -psi[pair_index(kOne, kZero)];
  const double phi = std::abs(a10) > 1e-12 ? std::arg(a10) : 0.0;
  return fidelity(finalize_state(psi, phi).projector());
}

std::vector<double> sequence_phases(double phi_r, double phi_R) { return {0.0, phi_r, phi_R, phi_R + phi_r}; }

std::string gate_class(double phi10) {
  const double d = std::abs(std::remainder(phi10 - kPi, kTwoPi));
  return d < 0.1 * kPi ? "CZ_pi" : "CZ_phi";
}

}  // namespace rydtqd::gate
