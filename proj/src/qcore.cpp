// Copyright 2026 The qflow Authors
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

#include "qflow/qcore.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qflow {

namespace {

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError(std::string(what) + ": matrix must be square and non-empty");
}

}  // namespace

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- Operator

Operator::Operator(Matrix m) : m_(std::move(m)) {
  require_square(m_, "Operator");
  if (!all_finite(m_)) throw InvariantError("Operator: non-finite entry");
}

Operator Operator::identity(Index dim) { return Operator(Matrix::Identity(dim, dim)); }
Operator Operator::zero(Index dim) { return Operator(Matrix::Zero(dim, dim)); }

bool Operator::is_hermitian(double tolerance) const {
  return max_abs(m_ - m_.adjoint()) <= tolerance;
}

// ----------------------------------------------------------- DensityMatrix

DensityMatrix::DensityMatrix(Matrix m, double tolerance) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  if (!all_finite(m_)) throw InvariantError("DensityMatrix: non-finite entry");
  if (max_abs(m_ - m_.adjoint()) > tolerance)
    throw InvariantError("DensityMatrix: not Hermitian");
  const Complex tr = m_.trace();
  if (std::abs(tr.real() - 1.0) > tolerance || std::abs(tr.imag()) > tolerance)
    throw InvariantError("DensityMatrix: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m_), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tolerance)
    throw InvariantError("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw InvariantError("DensityMatrix::pure: zero vector");
  const Vector u = psi / n;
  return DensityMatrix(Matrix(u * u.adjoint()));
}

DensityMatrix DensityMatrix::basis_state(Index dim, Index k) {
  if (k < 0 || k >= dim) throw DimensionError("basis_state: index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(Matrix(Matrix::Identity(dim, dim) / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> populations) {
  const auto n = static_cast<Index>(populations.size());
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = populations[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m));
}

// ----------------------------------------------------------- Superoperator

Superoperator::Superoperator(Index dim, Matrix m) : dim_(dim), m_(std::move(m)) {
  if (dim <= 0 || m_.rows() != dim * dim || m_.cols() != dim * dim)
    throw DimensionError("Superoperator: matrix must be d^2 x d^2");
  if (!all_finite(m_)) throw InvariantError("Superoperator: non-finite entry");
}

Superoperator Superoperator::identity(Index dim) {
  return Superoperator(dim, Matrix::Identity(dim * dim, dim * dim));
}

Superoperator Superoperator::zero(Index dim) {
  return Superoperator(dim, Matrix::Zero(dim * dim, dim * dim));
}

double Superoperator::trace_annihilation_residual() const {
  // Row vector of the trace functional: ones at the diagonal positions.
  Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(dim_ * dim_);
  for (Index i = 0; i < dim_; ++i) tr(i + i * dim_) = 1.0;
  return max_abs(tr * m_);
}

Superoperator Superoperator::operator+(const Superoperator& o) const {
  if (o.dim_ != dim_) throw DimensionError("Superoperator +: dimension mismatch");
  return Superoperator(dim_, m_ + o.m_);
}

Superoperator Superoperator::operator-(const Superoperator& o) const {
  if (o.dim_ != dim_) throw DimensionError("Superoperator -: dimension mismatch");
  return Superoperator(dim_, m_ - o.m_);
}

Superoperator Superoperator::operator*(const Superoperator& o) const {
  if (o.dim_ != dim_) throw DimensionError("Superoperator *: dimension mismatch");
  return Superoperator(dim_, m_ * o.m_);
}

Superoperator Superoperator::operator*(double s) const {
  return Superoperator(dim_, m_ * s);
}

// ------------------------------------------------------------- primitives

Matrix pauli(int k) {
  Matrix m(2, 2);
  switch (k) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    case 0:
    case 4: m << 1, 0, 0, 1; break;
    default: throw DimensionError("pauli: index must be 0..4");
  }
  return m;
}

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, Index dim) {
  if (v.size() != dim * dim) throw DimensionError("unvec: length is not dim^2");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Operator kron(const Operator& a, const Operator& b) {
  return Operator(kron(a.matrix(), b.matrix()));
}

Matrix partial_trace(const Matrix& rho, BipartiteDims dims, Keep keep) {
  const Index ds = dims.system;
  const Index de = dims.environment;
  if (ds <= 0 || de <= 0 || rho.rows() != ds * de || rho.cols() != ds * de)
    throw DimensionError("partial_trace: matrix is not (ds*de) x (ds*de)");
  if (keep == Keep::System) {
    Matrix out = Matrix::Zero(ds, ds);
    for (Index j = 0; j < ds; ++j)
      for (Index i = 0; i < ds; ++i)
        for (Index a = 0; a < de; ++a) out(i, j) += rho(i * de + a, j * de + a);
    return out;
  }
  Matrix out = Matrix::Zero(de, de);
  for (Index b = 0; b < de; ++b)
    for (Index a = 0; a < de; ++a)
      for (Index i = 0; i < ds; ++i) out(a, b) += rho(i * de + a, i * de + b);
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, BipartiteDims dims, Keep keep) {
  return DensityMatrix(partial_trace(rho.matrix(), dims, keep));
}

double hermitian_trace_norm(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionError("trace_distance: dimension mismatch");
  return 0.5 * hermitian_trace_norm(rho - sigma);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

Superoperator sandwich(const Matrix& a, const Matrix& b) {
  require_square(a, "sandwich");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("sandwich: factors differ in shape");
  return Superoperator(a.rows(), kron(Matrix(b.transpose()), a));
}

Superoperator kraus_superoperator(std::span<const Operator> kraus) {
  if (kraus.empty()) throw InvariantError("kraus_superoperator: empty Kraus list");
  const Index d = kraus.front().dim();
  Matrix completeness = Matrix::Zero(d, d);
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    if (k.dim() != d) throw DimensionError("kraus_superoperator: mixed dimensions");
    completeness += k.matrix().adjoint() * k.matrix();
    s += kron(Matrix(k.matrix().conjugate()), k.matrix());
  }
  if (max_abs(completeness - Matrix::Identity(d, d)) > tol::kPropagation)
    throw InvariantError("kraus_superoperator: Kraus operators are not trace preserving");
  return Superoperator(d, std::move(s));
}

Superoperator lindblad_superoperator(const Operator& h, std::span<const JumpOperator> jumps) {
  if (!h.is_hermitian()) throw InvariantError("lindblad_superoperator: Hamiltonian is not Hermitian");
  const Index d = h.dim();
  const Matrix id = Matrix::Identity(d, d);
  const Complex mi(0.0, -1.0);
  Matrix l = mi * (kron(id, h.matrix()) - kron(Matrix(h.matrix().transpose()), id));
  for (const auto& j : jumps) {
    if (j.op.dim() != d) throw DimensionError("lindblad_superoperator: jump dimension mismatch");
    if (!(j.rate >= 0.0) || !std::isfinite(j.rate))
      throw InvariantError("lindblad_superoperator: negative or non-finite rate");
    if (j.rate == 0.0) continue;
    const Matrix& a = j.op.matrix();
    const Matrix ada = a.adjoint() * a;
    l += j.rate * (kron(Matrix(a.conjugate()), a) - 0.5 * kron(id, ada) -
                   0.5 * kron(Matrix(ada.transpose()), id));
  }
  return Superoperator(d, std::move(l));
}

Matrix apply_superop(const Superoperator& s, const Matrix& x) {
  if (x.rows() != s.dim() || x.cols() != s.dim())
    throw DimensionError("apply_superop: operator dimension mismatch");
  return unvec(s.matrix() * vec(x), s.dim());
}

Operator apply_superop(const Superoperator& s, const Operator& x) {
  return Operator(apply_superop(s, x.matrix()));
}

Superoperator lift_system(const Superoperator& s, Index env_dim) {
  const Index ds = s.dim();
  const Index de = env_dim;
  const Index d = ds * de;
  Matrix out = Matrix::Zero(d * d, d * d);
  const Matrix& m = s.matrix();
  for (Index l = 0; l < ds; ++l)
    for (Index k = 0; k < ds; ++k)
      for (Index j = 0; j < ds; ++j)
        for (Index i = 0; i < ds; ++i) {
          const Complex v = m(i + j * ds, k + l * ds);
          if (v == Complex(0.0)) continue;
          for (Index b = 0; b < de; ++b)
            for (Index a = 0; a < de; ++a)
              out((i * de + a) + (j * de + b) * d, (k * de + a) + (l * de + b) * d) += v;
        }
  return Superoperator(d, std::move(out));
}

Superoperator lift_environment(const Superoperator& s, Index sys_dim) {
  const Index de = s.dim();
  const Index ds = sys_dim;
  const Index d = ds * de;
  Matrix out = Matrix::Zero(d * d, d * d);
  const Matrix& m = s.matrix();
  for (Index bb = 0; bb < de; ++bb)
    for (Index aa = 0; aa < de; ++aa)
      for (Index b = 0; b < de; ++b)
        for (Index a = 0; a < de; ++a) {
          const Complex v = m(a + b * de, aa + bb * de);
          if (v == Complex(0.0)) continue;
          for (Index j = 0; j < ds; ++j)
            for (Index i = 0; i < ds; ++i)
              out((i * de + a) + (j * de + b) * d, (i * de + aa) + (j * de + bb) * d) += v;
        }
  return Superoperator(d, std::move(out));
}

}  // namespace qflow
