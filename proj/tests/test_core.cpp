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

#include <Eigen/Dense>
#include <random>

#include "rydtqd/core.hpp"

using namespace rydtqd;
using core::Matrix;

namespace {

Matrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

Matrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const Matrix a = random_matrix(n, rng);
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("matrix product matches an Eigen reference") {
  std::mt19937_64 rng(11);
  const Matrix a = random_matrix(6, rng), b = random_matrix(6, rng);
  Eigen::MatrixXcd ea(6, 6), eb(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) ea(i, j) = a(i, j), eb(i, j) = b(i, j);
  const Eigen::MatrixXcd ec = ea * eb;
  const Matrix c = a * b;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(std::abs(c(i, j) - ec(i, j)) < 1e-12);
}

TEST_CASE("kron follows the (i*m+k, j*n+l) index rule") {
  std::mt19937_64 rng(3);
  const Matrix a = random_matrix(2, rng), b = random_matrix(3, rng);
  const Matrix k = core::kron(a, b);
  REQUIRE(k.rows() == 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) CHECK(std::abs(k(3 * i + p, 3 * j + q) - a(i, j) * b(p, q)) < 1e-14);
}

TEST_CASE("adjoint, trace and hermiticity") {
  std::mt19937_64 rng(5);
  const Matrix h = random_hermitian(5, rng);
  CHECK(h.is_hermitian(1e-14));
  CHECK(std::abs(h.trace().imag()) < 1e-14);
  const Matrix a = random_matrix(5, rng);
  CHECK_FALSE(a.is_hermitian(1e-6));
  CHECK(core::distance(a.adjoint().adjoint(), a) < 1e-15);
}

TEST_CASE("state vector basics") {
  const auto e = core::StateVector::basis(4, 2);
  CHECK(e.norm() == doctest::Approx(1.0));
  const core::StateVector v(std::vector<cplx>{1.0, cplx(0, 1), 0.0, 1.0});
  CHECK(v.norm() == doctest::Approx(std::sqrt(3.0)));
  CHECK(v.normalized().norm() == doctest::Approx(1.0));
  CHECK(std::abs(e.inner(v)) < 1e-15);
  const Matrix p = v.normalized().projector();
  CHECK(p.trace().real() == doctest::Approx(1.0));
  CHECK(core::distance(p * p, p) < 1e-14);
}

TEST_CASE("density matrix validation rejects broken states") {
  CHECK_NOTHROW(core::DensityMatrix::maximally_mixed(4));
  Matrix bad = Matrix::identity(2);
  CHECK_THROWS_AS(core::DensityMatrix(bad, true), NumericError);  // trace 2
  Matrix neg = Matrix::diagonal({1.5, -0.5});
  CHECK_THROWS_AS(core::DensityMatrix(neg, true), NumericError);
  Matrix nonherm(2, 2);
  nonherm(0, 0) = 1.0;
  nonherm(0, 1) = 0.3;
  CHECK_THROWS_AS(core::DensityMatrix(nonherm, true), NumericError);
}

TEST_CASE("positive semidefinite test agrees with eigenvalues") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = random_hermitian(5, rng);
    Eigen::MatrixXcd e(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) e(i, j) = h(i, j);
    const double lmin = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(e).eigenvalues().minCoeff();
    if (std::abs(lmin) < 1e-6) continue;
    CHECK(core::positive_semidefinite(h, 1e-9) == (lmin > 0.0));
  }
}

TEST_CASE("2x2 eigensystem matches an Eigen reference") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix h = random_hermitian(2, rng);
    const auto es = core::eigensystem_2x2(h);
    Eigen::Matrix2cd e;
    e << h(0, 0), h(0, 1), h(1, 0), h(1, 1);
    const auto ref = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd>(e).eigenvalues();
    CHECK(es.values[0] == doctest::Approx(ref[0]).epsilon(1e-12));
    CHECK(es.values[1] == doctest::Approx(ref[1]).epsilon(1e-12));
    for (int k = 0; k < 2; ++k) {
      const auto& v = es.vectors[k];
      CHECK(v.norm() == doctest::Approx(1.0));
      const auto hv = h * v.amplitudes();
      for (int i = 0; i < 2; ++i) CHECK(std::abs(hv[i] - es.values[k] * v[i]) < 1e-10);
    }
  }
  Matrix nh(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(core::eigensystem_2x2(nh), InvalidArgument);
}

TEST_CASE("expectation values") {
  const Matrix z = Matrix::diagonal({1.0, -1.0});
  const core::StateVector plus(std::vector<cplx>{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)});
  CHECK(core::expectation(z, plus) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(core::expectation(z, core::DensityMatrix::pure(core::StateVector::basis(2, 1))) == doctest::Approx(-1.0));
}

TEST_CASE("sparse matrix products match dense products") {
  std::mt19937_64 rng(21);
  Matrix h = random_hermitian(7, rng);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j)
      if ((i + 2 * j) % 3 == 0 && i != j) h(i, j) = 0.0;
  const auto s = core::SparseMatrix::from_dense(h);
  CHECK(core::distance(s.dense(), h) == 0.0);
  const Matrix x = random_matrix(7, rng);
  Matrix y(7, 7);
  s.left_multiply(x, y);
  CHECK(core::distance(y, h * x) < 1e-12);
  s.right_multiply(x, y);
  CHECK(core::distance(y, x * h) < 1e-12);
  std::vector<cplx> v(7), w(7);
  for (auto& c : v) c = cplx(std::cos(std::real(c) + 1.0), 0.3);
  s.apply(v.data(), w.data());
  const auto ref = h * v;
  for (int i = 0; i < 7; ++i) CHECK(std::abs(w[i] - ref[i]) < 1e-12);
  double rs = 0.0;
  for (std::size_t i = 0; i < 7; ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < 7; ++j) r += std::abs(h(i, j));
    rs = std::max(rs, r);
  }
  CHECK(s.row_sum_norm() == doctest::Approx(rs));
  core::SparseMatrix acc(2);
  acc.add(0, 1, 1.0);
  acc.add(0, 1, 2.0);
  CHECK(acc.entries().size() == 1);
  CHECK(acc.dense()(0, 1) == cplx(3.0));
}
