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

#include "rydtqd/core.hpp"

#include <algorithm>
#include <cmath>

namespace rydtqd::core {

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {
  if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw InvalidArgument("matrix dimensions must be positive");
  if (a_.size() != rows * cols) throw InvalidArgument("entry count does not match dimensions");
  if (!is_finite()) throw InvalidArgument("matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<cplx>& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : a_) m = std::max(m, std::abs(x));
  return m;
}

bool Matrix::is_finite() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

bool Matrix::is_hermitian(double tol) const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("dimension mismatch in +");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("dimension mismatch in -");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(cplx s) {
  for (auto& x : a_) x *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(cplx s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("dimension mismatch in matrix product");
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

std::vector<cplx> operator*(const Matrix& a, const std::vector<cplx>& v) {
  if (a.cols() != v.size()) throw InvalidArgument("dimension mismatch in matrix-vector product");
  std::vector<cplx> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

double distance(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t p = b.rows(), q = b.cols();
  Matrix r(a.rows() * p, a.cols() * q);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) r(i * p + k, j * q + l) = aij * b(k, l);
    }
  return r;
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InvalidArgument("basis index out of range");
  std::vector<cplx> v(dim);
  v[index] = 1.0;
  return StateVector(std::move(v));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& x : amp_) s += std::norm(x);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NumericError("cannot normalize a zero vector");
  std::vector<cplx> v(amp_);
  for (auto& x : v) x /= n;
  return StateVector(std::move(v));
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw InvalidArgument("dimension mismatch in inner product");
  cplx s = 0.0;
  for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
  return s;
}

Matrix StateVector::projector() const {
  Matrix m(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) m(i, j) = amp_[i] * std::conj(amp_[j]);
  return m;
}

DensityMatrix::DensityMatrix(Matrix m, bool check) : m_(std::move(m)) {
  if (!m_.square()) throw InvalidArgument("density matrix must be square");
  if (check) validate();
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) { return DensityMatrix(psi.projector()); }

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(cplx(1.0 / static_cast<double>(dim)) * Matrix::identity(dim));
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double eig_tol) const {
  if (!m_.is_finite()) throw NumericError("density matrix has non-finite entries");
  if (!m_.is_hermitian(herm_tol)) throw NumericError("density matrix is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > trace_tol) throw NumericError("density matrix trace deviates from 1");
  if (!positive_semidefinite(m_, eig_tol)) throw NumericError("density matrix has a negative eigenvalue");
}

bool positive_semidefinite(const Matrix& m, double tol) {
  const std::size_t n = m.rows();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j).real() + tol;
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (d <= 0.0) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

Eigensystem2 eigensystem_2x2(const Matrix& h) {
  if (h.rows() != 2 || h.cols() != 2) throw InvalidArgument("eigensystem_2x2 requires a 2x2 matrix");
  const double scale = std::max(1.0, h.max_abs());
  if (!h.is_hermitian(1e-12 * scale)) throw InvalidArgument("eigensystem_2x2 requires a Hermitian matrix");
  const double a = h(0, 0).real(), d = h(1, 1).real();
  const cplx b = h(0, 1);
  const double mean = 0.5 * (a + d), half = 0.5 * (a - d);
  const double r = std::hypot(half, std::abs(b));
  Eigensystem2 es;
  es.values[0] = mean - r;
  es.values[1] = mean + r;
  if (std::abs(b) <= 1e-300) {
    const bool swap = a > d;
    es.vectors[0] = StateVector::basis(2, swap ? 1 : 0);
    es.vectors[1] = StateVector::basis(2, swap ? 0 : 1);
    return es;
  }
  for (int k = 0; k < 2; ++k) {
    const double lam = es.values[k];
    // Two equivalent null-vector candidates; keep the better conditioned one.
    const std::vector<cplx> v1{b, lam - a};
    const std::vector<cplx> v2{lam - d, std::conj(b)};
    const double n1 = std::norm(v1[0]) + std::norm(v1[1]);
    const double n2 = std::norm(v2[0]) + std::norm(v2[1]);
    es.vectors[k] = StateVector(n1 >= n2 ? v1 : v2).normalized();
  }
  return es;
}

double expectation(const Matrix& op, const DensityMatrix& rho) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim()) throw InvalidArgument("dimension mismatch in expectation");
  double s = 0.0;
  const Matrix& r = rho.matrix();
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (std::size_t k = 0; k < op.cols(); ++k) s += (op(i, k) * r(k, i)).real();
  return s;
}

double expectation(const Matrix& op, const StateVector& psi) {
  if (op.rows() != psi.dim()) throw InvalidArgument("dimension mismatch in expectation");
  const auto v = op * psi.amplitudes();
  cplx s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::conj(psi[i]) * v[i];
  return s.real();
}

SparseMatrix SparseMatrix::from_dense(const Matrix& m, double cutoff) {
  if (!m.square()) throw InvalidArgument("sparse matrix must be square");
  SparseMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > cutoff) s.e_.push_back({unsigned(i), unsigned(j), m(i, j)});
  return s;
}

void SparseMatrix::add(unsigned r, unsigned c, cplx v) {
  if (v == cplx{}) return;
  for (auto& e : e_)
    if (e.row == r && e.col == c) {
      e.value += v;
      return;
    }
  e_.push_back({r, c, v});
}

Matrix SparseMatrix::dense() const {
  Matrix m(dim_, dim_);
  for (const auto& e : e_) m(e.row, e.col) += e.value;
  return m;
}

double SparseMatrix::row_sum_norm() const {
  std::vector<double> rs(dim_, 0.0);
  for (const auto& e : e_) rs[e.row] += std::abs(e.value);
  return rs.empty() ? 0.0 : *std::max_element(rs.begin(), rs.end());
}

void SparseMatrix::apply(const cplx* x, cplx* y) const {
  std::fill(y, y + dim_, cplx{});
  for (const auto& e : e_) y[e.row] += e.value * x[e.col];
}

void SparseMatrix::left_multiply(const Matrix& x, Matrix& y) const {
  const std::size_t n = dim_;
  std::fill(y.data(), y.data() + n * n, cplx{});
  for (const auto& e : e_) {
    const cplx* xr = x.data() + std::size_t(e.col) * n;
    cplx* yr = y.data() + std::size_t(e.row) * n;
    for (std::size_t j = 0; j < n; ++j) yr[j] += e.value * xr[j];
  }
}

void SparseMatrix::right_multiply(const Matrix& x, Matrix& y) const {
  const std::size_t n = dim_;
  std::fill(y.data(), y.data() + n * n, cplx{});
  for (const auto& e : e_) {
    // (X A)[i, col] += X[i, row] * a
    const cplx* xc = x.data() + e.row;
    cplx* yc = y.data() + e.col;
    for (std::size_t i = 0; i < n; ++i) yc[i * n] += xc[i * n] * e.value;
  }
}

}  // namespace rydtqd::core
