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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rydtqd {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

// Error categories surfaced through the C API.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace core {

// Dense row-major complex matrix for small operators (at most 25x25 here).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static Matrix zeros(std::size_t n) { return Matrix(n, n); }
  static Matrix identity(std::size_t n);
  static Matrix diagonal(const std::vector<cplx>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }
  const std::vector<cplx>& entries() const { return a_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  cplx trace() const;
  double max_abs() const;
  bool is_finite() const;
  bool is_hermitian(double tol) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(cplx s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(cplx s, Matrix a);
std::vector<cplx> operator*(const Matrix& a, const std::vector<cplx>& v);

double distance(const Matrix& a, const Matrix& b);

// Kronecker product: (A (x) B)[(i*p+k),(j*q+l)] = A[i,j] * B[k,l].
Matrix kron(const Matrix& a, const Matrix& b);

// Unit-norm amplitude vector.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) {}
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amp_.size(); }
  cplx& operator[](std::size_t i) { return amp_[i]; }
  const cplx& operator[](std::size_t i) const { return amp_[i]; }
  std::vector<cplx>& amplitudes() { return amp_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }

  double norm() const;
  StateVector normalized() const;
  cplx inner(const StateVector& other) const;  // <this|other>
  Matrix projector() const;                     // |psi><psi|

 private:
  std::vector<cplx> amp_;
};

// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  // Validates the invariants unless `check` is false.
  explicit DensityMatrix(Matrix m, bool check = true);
  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  cplx operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  // Throws NumericError when an invariant is violated beyond tolerance.
  void validate(double herm_tol = 1e-9, double trace_tol = 1e-8, double eig_tol = 1e-8) const;

 private:
  Matrix m_;
};

// Smallest eigenvalue bound test: true when M + tol*I admits a Cholesky factorization.
bool positive_semidefinite(const Matrix& m, double tol);

struct Eigensystem2 {
  double values[2];
  StateVector vectors[2];
};

// Ascending eigenvalues and orthonormal eigenvectors of a 2x2 Hermitian matrix.
Eigensystem2 eigensystem_2x2(const Matrix& h);

double expectation(const Matrix& op, const DensityMatrix& rho);
double expectation(const Matrix& op, const StateVector& psi);

// Nonzero-only view of a square matrix, used for fast products in propagation.
struct SparseEntry {
  unsigned row;
  unsigned col;
  cplx value;
};

class SparseMatrix {
 public:
  SparseMatrix() = default;
  explicit SparseMatrix(std::size_t dim) : dim_(dim) {}
  static SparseMatrix from_dense(const Matrix& m, double cutoff = 0.0);

  std::size_t dim() const { return dim_; }
  const std::vector<SparseEntry>& entries() const { return e_; }
  void add(unsigned r, unsigned c, cplx v);  // accumulates onto an existing entry
  void push(unsigned r, unsigned c, cplx v) { e_.push_back({r, c, v}); }  // caller guarantees a new slot
  void reserve(std::size_t n) { e_.reserve(n); }
  void clear() { e_.clear(); }
  Matrix dense() const;
  double row_sum_norm() const;

  // y = A x
  void apply(const cplx* x, cplx* y) const;
  // Y = A X and Y = X A for dense square X of the same dimension.
  void left_multiply(const Matrix& x, Matrix& y) const;
  void right_multiply(const Matrix& x, Matrix& y) const;

 private:
  std::size_t dim_ = 0;
  std::vector<SparseEntry> e_;
};

}  // namespace core
}  // namespace rydtqd
