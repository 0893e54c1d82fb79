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


#include <doctest.h>

#include <random>

#include "rydtqd/atom.hpp"

using namespace rydtqd;
using namespace rydtqd::atom;
using core::Matrix;

TEST_CASE("default models carry the tabulated constants") {
  const AtomModel d = default_model(ExcitationKind::Dipole);
  CHECK(d.blockade_shift / kTwoPi == doctest::Approx(3000.0));
  CHECK(d.total_rate(kR) == doctest::Approx(1.0 / 593.0).epsilon(1e-12));
  CHECK(d.k_eff == 19.7);
  CHECK(d.t2_doppler == 4.0);
  CHECK(d.t2_magnetic == 50.0);

  const AtomModel q = default_model(ExcitationKind::Quadrupole);
  CHECK(q.blockade_shift / kTwoPi == doctest::Approx(2000.0));
  CHECK(q.total_rate(kP) == doctest::Approx(1.0 / 0.155).epsilon(1e-12));
  double rp = 0.0;
  for (const auto& ch : q.decay_channels)
    if (ch.from_level == kR && ch.to_level == kP) rp = ch.rate;
  CHECK(rp / q.total_rate(kR) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_NOTHROW(d.validate());
  CHECK_NOTHROW(q.validate());
}

TEST_CASE("collapse operator count and weights") {
  for (auto kind : {ExcitationKind::Dipole, ExcitationKind::Quadrupole}) {
    const AtomModel m = default_model(kind);
    const auto ops = collapse_operators(m);
    CHECK(ops.size() == 2 * m.decay_channels.size());
    double total = 0.0;
    for (std::size_t k = 0; k < m.decay_channels.size(); ++k) {
      const auto& ch = m.decay_channels[k];
      const Matrix& c = ops[2 * k];
      std::size_t nonzero = 0;
      for (auto v : c.entries()) nonzero += v != cplx{} ? 1 : 0;
      CHECK(nonzero == kLevels);  // one entry per spectator level
      CHECK(std::abs(c(pair_index(ch.to_level, 0), pair_index(ch.from_level, 0))) ==
            doctest::Approx(std::sqrt(ch.rate)));
      if (ch.from_level == kR) total += ch.rate;
    }
    CHECK(std::abs(total - m.total_rate(kR)) < 1e-12);
  }
  CHECK(collapse_operators(default_model(ExcitationKind::Dipole)).size() == 6);
  CHECK(collapse_operators(default_model(ExcitationKind::Quadrupole)).size() == 14);
}

TEST_CASE("broken models are rejected") {
  AtomModel m = default_model(ExcitationKind::Dipole);
  m.decay_channels[0].rate = -1.0;
  CHECK_THROWS_AS(m.validate(), InvalidArgument);
  m = default_model(ExcitationKind::Quadrupole);
  m.decay_channels.push_back({kZero, kR, 1.0});
  CHECK_THROWS_AS(m.validate(), InvalidArgument);
}

TEST_CASE("single-atom Hamiltonian entries") {
  const AtomModel d = default_model(ExcitationKind::Dipole);
  CHECK(single_atom_hamiltonian(d, Drive{}).max_abs() == 0.0);

  Drive drv;
  drv.omega = kTwoPi;
  const Matrix h = single_atom_hamiltonian(d, drv);
  CHECK(std::abs(h(kOne, kR) - cplx(kPi, 0.0)) < 1e-14);
  CHECK(h.is_hermitian(1e-14));

  const AtomModel q = default_model(ExcitationKind::Quadrupole);
  Drive qd;
  qd.omega_b = 2.0;
  qd.omega_r = 3.0;
  qd.delta_b = -5.0;
  qd.phase = 0.7;
  AtomNoise n;
  n.spatial = {0.9, 0.8};
  n.intensity = {1.1, 0.95};
  n.detuning_shift = 0.3;
  const Matrix hq = single_atom_hamiltonian(q, qd, n);
  Matrix expect(kLevels, kLevels);
  expect(kOne, kP) = 0.5 * 0.9 * 1.1 * 2.0 * std::polar(1.0, 0.7);
  expect(kP, kOne) = std::conj(expect(kOne, kP));
  expect(kP, kR) = expect(kR, kP) = 0.5 * 0.8 * 0.95 * 3.0;
  expect(kP, kP) = -5.0;
  expect(kR, kR) = 0.3;
  CHECK(core::distance(hq, expect) < 1e-14);
  CHECK(hq.is_hermitian(1e-14));
}

TEST_CASE("two-atom Hamiltonian structure") {
  for (auto kind : {ExcitationKind::Dipole, ExcitationKind::Quadrupole}) {
    const AtomModel m = default_model(kind);
    const Matrix h0 = two_atom_hamiltonian(m, Drive{}, AtomNoise{}, Drive{}, AtomNoise{});
    for (unsigned i = 0; i < kPairDim; ++i)
      for (unsigned j = 0; j < kPairDim; ++j) {
        const bool rr = i == j && i == pair_index(kR, kR);
        CHECK(h0(i, j) == (rr ? cplx(m.blockade_shift, 0.0) : cplx{}));
      }

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    Drive a{u(rng), u(rng), u(rng), u(rng), u(rng), 0.0, u(rng)};
    Drive b{u(rng), u(rng), u(rng), u(rng), u(rng), 0.0, u(rng)};
    AtomNoise na, nb;
    na.spatial = {0.95, 0.9};
    nb.detuning_shift = 0.4;
    const Matrix dense = two_atom_hamiltonian(m, a, na, b, nb);
    CHECK(dense.is_hermitian(1e-12));
    const Matrix id = Matrix::identity(kLevels);
    Matrix brute = core::kron(single_atom_hamiltonian(m, a, na), id) + core::kron(id, single_atom_hamiltonian(m, b, nb));
    brute(pair_index(kR, kR), pair_index(kR, kR)) += m.blockade_shift;
    CHECK(core::distance(dense, brute) < 1e-12);

    core::SparseMatrix sp;
    two_atom_hamiltonian_sparse(m, a, na, b, nb, sp);
    CHECK(core::distance(sp.dense(), dense) < 1e-12);
  }
}

TEST_CASE("symmetric noiseless drive commutes with atom exchange") {
  const AtomModel m = default_model(ExcitationKind::Dipole);
  Drive d;
  d.omega = 13.0;
  d.delta = -4.0;
  const Matrix h = two_atom_hamiltonian(m, d, {}, d, {});
  Matrix swap(kPairDim, kPairDim);
  for (unsigned a = 0; a < kLevels; ++a)
    for (unsigned b = 0; b < kLevels; ++b) swap(pair_index(a, b), pair_index(b, a)) = 1.0;
  CHECK(core::distance(swap * h, h * swap) < 1e-12);
}
