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
#include "rydtqd/reduction.hpp"

using namespace rydtqd;
using namespace rydtqd::reduction;
using core::Matrix;

namespace {

bool orthogonal(const Matrix& m) { return core::distance(m.transpose() * m, Matrix::identity(m.rows())) < 1e-12; }

bool projector(const Matrix& m) { return core::distance(m * m, m) < 1e-12 && core::distance(m, m.transpose()) < 1e-12; }

Matrix dipole_pair(double omega, double delta, double blockade) {
  atom::AtomModel m = atom::default_model(atom::ExcitationKind::Dipole);
  m.blockade_shift = blockade;
  atom::Drive d;
  d.omega = omega;
  d.delta = delta;
  return atom::two_atom_hamiltonian(m, d, {}, d, {});
}

}  // namespace

TEST_CASE("reduction factors") {
  const ReductionOperator r = build_reduction();
  CHECK(orthogonal(r.P1));
  CHECK(orthogonal(r.P2));
  CHECK(orthogonal(r.Q));
  CHECK(projector(r.pi1));
  CHECK(projector(r.pi2));
  CHECK(core::distance(r.R, r.pi2 * r.Q * r.P2 * r.pi1 * r.P1) == 0.0);
  for (auto v : r.R.entries()) CHECK(v.imag() == 0.0);
  const Matrix rrt = r.R * r.R.transpose();
  CHECK(projector(rrt));
  CHECK(std::abs(rrt.trace() - 2.0) < 1e-12);
}

TEST_CASE("effective block of the dipole pair Hamiltonian") {
  CHECK(project_effective(Matrix::zeros(atom::kPairDim)).max_abs() == 0.0);
  const double omega = kTwoPi, delta = 3.7;
  const Matrix h2 = project_effective(dipole_pair(omega, delta, 1e9));
  // Identity shift removed: traceless part against the two-level closed form.
  const cplx half = 0.5 * h2.trace();
  CHECK(std::abs(h2(0, 0) - half - cplx(-0.5 * delta)) < 1e-12);
  CHECK(std::abs(h2(1, 1) - half - cplx(0.5 * delta)) < 1e-12);
  CHECK(std::abs(h2(0, 1) - cplx(std::sqrt(2.0) * omega / 2.0)) < 1e-12);
  CHECK(h2.is_hermitian(1e-12));

  Matrix b = Matrix::zeros(atom::kPairDim);
  b(atom::pair_index(atom::kR, atom::kR), atom::pair_index(atom::kR, atom::kR)) = 1e4;
  CHECK(project_effective(b).max_abs() == 0.0);
}

TEST_CASE("antisymmetric state decouples and |00> stays idle") {
  const ReductionOperator r = build_reduction();
  const Matrix c = conjugate(r.Q * r.P2 * r.pi1 * r.P1, dipole_pair(9.0, -2.0, 100.0));
  // Slot 2 holds |->.
  for (std::size_t k = 0; k < atom::kPairDim; ++k) {
    CHECK(std::abs(c(2, k)) < 1e-12);
    CHECK(std::abs(c(k, 2)) < 1e-12);
  }
  const Matrix nine = conjugate(r.pi1 * r.P1, dipole_pair(9.0, -2.0, 100.0));
  CHECK(std::abs(nine(0, 0)) < 1e-12);
}

TEST_CASE("lift and project round trip") {
  CHECK(lift_effective(Matrix::zeros(2)).max_abs() == 0.0);
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    Matrix h(2, 2);
    h(0, 0) = g(rng);
    h(1, 1) = g(rng);
    h(0, 1) = cplx(g(rng), g(rng));
    h(1, 0) = std::conj(h(0, 1));
    CHECK(core::distance(project_effective(lift_effective(h)), h) < 1e-12);
  }
  Matrix x(2, 2);
  x(0, 1) = x(1, 0) = 0.5;
  const Matrix l = lift_effective(x);
  const auto& map = subspace_map();
  const core::StateVector plus = map.plus();
  const core::StateVector e11 = core::StateVector::basis(atom::kPairDim, map.index.at("11"));
  for (unsigned i = 0; i < atom::kPairDim; ++i)
    for (unsigned j = 0; j < atom::kPairDim; ++j) {
      const cplx expect = 0.5 * (e11[i] * std::conj(plus[j]) + plus[i] * std::conj(e11[j]));
      CHECK(std::abs(l(i, j) - expect) < 1e-12);
    }
}
