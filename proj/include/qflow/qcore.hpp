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

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Error hierarchy. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// A model or argument violates a documented precondition.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// Numerical drift beyond tolerance during propagation or probability
// evaluation.
class NumericError : public Error {
 public:
  using Error::Error;
};

namespace tol {
inline constexpr double kConstruction = 1e-10;
inline constexpr double kPropagation = 1e-9;
inline constexpr double kTraceDrift = 1e-8;
}  // namespace tol

/// Square complex matrix with finite entries.
class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix m);

  static Operator identity(Index dim);
  static Operator zero(Index dim);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Operator adjoint() const { return Operator(m_.adjoint()); }
  bool is_hermitian(double tolerance = tol::kConstruction) const;

 private:
  Matrix m_;
};

/// Hermitian, unit-trace, positive semidefinite operator.
///
/// Construction validates all three properties at tolerance 1e-10. States
/// produced by propagation are re-symmetrized but never silently
/// re-normalized.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, double tolerance = tol::kConstruction);
  explicit DensityMatrix(const Operator& op,
                         double tolerance = tol::kConstruction)
      : DensityMatrix(op.matrix(), tolerance) {}

  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix basis_state(Index dim, Index k);
  static DensityMatrix maximally_mixed(Index dim);
  static DensityMatrix diagonal(std::span<const double> populations);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// Linear map on operators of a d-dimensional space, stored as a d^2 x d^2
/// matrix acting on column-stacked operators.
///
/// Stacking convention (used everywhere in qflow):
///   vec(X)[r + c*d] = X(r, c),   vec(A X B) = (B^T kron A) vec(X).
class Superoperator {
 public:
  Superoperator() = default;
  Superoperator(Index dim, Matrix m);

  static Superoperator identity(Index dim);
  static Superoperator zero(Index dim);

  Index dim() const { return dim_; }
  const Matrix& matrix() const { return m_; }

  /// Max-abs residual of Tr o S, i.e. how far the trace functional is from
  /// being a left null vector. For a generator this measures trace
  /// preservation, for a map S use `trace_preservation_residual(S - id)`.
  double trace_annihilation_residual() const;

  Superoperator operator+(const Superoperator& o) const;
  Superoperator operator-(const Superoperator& o) const;
  Superoperator operator*(const Superoperator& o) const;
  Superoperator operator*(double s) const;

 private:
  Index dim_ = 0;
  Matrix m_;
};

struct JumpOperator {
  Operator op;
  double rate = 0.0;
};

enum class Keep { System, Environment };

struct BipartiteDims {
  Index system = 0;
  Index environment = 0;
  Index total() const { return system * environment; }
};

// Pauli matrices, index 1..3 = x, y, z; index 0 (or 4) = identity.
Matrix pauli(int k);

Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Index dim);

/// Kronecker product with the first factor as the slow index (system first).
Matrix kron(const Matrix& a, const Matrix& b);
Operator kron(const Operator& a, const Operator& b);

Matrix partial_trace(const Matrix& rho, BipartiteDims dims, Keep keep);
DensityMatrix partial_trace(const DensityMatrix& rho, BipartiteDims dims,
                            Keep keep);

/// D(rho, sigma) = (1/2) Tr|rho - sigma|, from the Hermitian eigenvalues of
/// the difference.
double trace_distance(const Matrix& rho, const Matrix& sigma);
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Trace norm of a Hermitian matrix.
double hermitian_trace_norm(const Matrix& h);

/// Pade(13) scaling-and-squaring matrix exponential.
Matrix matrix_exp(const Matrix& m);

/// X -> A X B.
Superoperator sandwich(const Matrix& a, const Matrix& b);

/// X -> sum_j K_j X K_j^dagger. Completeness sum K^dagger K = I is checked
/// within 1e-9.
Superoperator kraus_superoperator(std::span<const Operator> kraus);

/// -i[h, .] + sum_k rate_k (L X L^dagger - {L^dagger L, X}/2).
Superoperator lindblad_superoperator(const Operator& h,
                                     std::span<const JumpOperator> jumps);

Operator apply_superop(const Superoperator& s, const Operator& x);
Matrix apply_superop(const Superoperator& s, const Matrix& x);

/// Embeds a map on the system factor as S kron id_e on the bipartite space.
Superoperator lift_system(const Superoperator& s, Index env_dim);
/// Embeds a map on the environment factor as id_s kron S.
Superoperator lift_environment(const Superoperator& s, Index sys_dim);

Matrix hermitian_part(const Matrix& m);
double max_abs(const Matrix& m);

}  // namespace qflow
