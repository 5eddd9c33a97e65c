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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qflow/qcore.hpp"
#include "qflow/random_models.hpp"
#include "test_util.hpp"

using namespace qflow;

TEST_CASE("vec stacks columns and sandwich matches B^T kron A") {
  RandomSource rng(1);
  const Matrix a = rng.ginibre(3, 3), b = rng.ginibre(3, 3), x = rng.ginibre(3, 3);
  const Vector v = vec(x);
  CHECK(v(1) == x(1, 0));
  CHECK(v(3) == x(0, 1));
  CHECK(max_abs(unvec(v, 3) - x) == 0.0);

  const Matrix s = sandwich(a, b).matrix();
  // elementwise: (B^T kron A)[(i + j d), (k + l d)] = B(l, j) A(i, k)
  double err = 0.0;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j)
      for (Index k = 0; k < 3; ++k)
        for (Index l = 0; l < 3; ++l) err = std::max(err, std::abs(s(i + 3 * j, k + 3 * l) - b(l, j) * a(i, k)));
  CHECK(err < 1e-15);
  CHECK(max_abs(unvec(s * vec(x), 3) - a * x * b) < 1e-12);
}

TEST_CASE("Operator and DensityMatrix validation") {
  CHECK_THROWS_AS(Operator(Matrix::Zero(2, 3)), DimensionError);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = std::nan("");
  CHECK_THROWS_AS((Operator(bad)), InvariantError);

  CHECK_THROWS_AS(DensityMatrix(Matrix::Identity(2, 2)), InvariantError);  // trace 2
  Matrix neg(2, 2);
  neg << 1.2, 0, 0, -0.2;
  CHECK_THROWS_AS((DensityMatrix(neg)), InvariantError);
  Matrix nonherm(2, 2);
  nonherm << 0.5, 0.1, 0.0, 0.5;
  CHECK_THROWS_AS((DensityMatrix(nonherm)), InvariantError);
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(3));
  CHECK(DensityMatrix::basis_state(2, 1).matrix()(1, 1) == Complex(1.0));
}

TEST_CASE("pauli matrices") {
  const Matrix x = pauli(1), y = pauli(2), z = pauli(3);
  CHECK(max_abs(x * y - Complex(0, 1) * z) < 1e-15);
  CHECK(max_abs(pauli(0) - Matrix::Identity(2, 2)) == 0.0);
  CHECK_THROWS_AS(pauli(5), DimensionError);
}

TEST_CASE("partial trace of a product state") {
  RandomSource rng(2);
  const Matrix rs = random_density(2, rng).matrix();
  const Matrix re = random_density(3, rng).matrix();
  const Matrix rse = kron(rs, re);
  CHECK(max_abs(partial_trace(rse, {2, 3}, Keep::System) - rs) < 1e-14);
  CHECK(max_abs(partial_trace(rse, {2, 3}, Keep::Environment) - re) < 1e-14);
  CHECK_THROWS_AS(partial_trace(rse, {2, 2}, Keep::System), DimensionError);
}

TEST_CASE("trace distance: known values and metric properties") {
  CHECK(trace_distance(test::ket(2, 0), test::ket(2, 1)) == doctest::Approx(1.0));
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  CHECK(trace_distance(test::ket(2, 0), plus) == doctest::Approx(1.0 / std::numbers::sqrt2));

  RandomSource rng(3);
  for (int k = 0; k < 50; ++k) {
    const Matrix a = random_density(3, rng).matrix();
    const Matrix b = random_density(3, rng).matrix();
    const Matrix c = random_density(3, rng).matrix();
    CHECK(std::abs(trace_distance(a, b) - trace_distance(b, a)) < 1e-14);
    CHECK(trace_distance(a, a) < 1e-14);
    CHECK(trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-14);
    CHECK(trace_distance(a, b) <= 1.0 + 1e-14);
  }
}

TEST_CASE("matrix_exp agrees with an eigendecomposition oracle") {
  RandomSource rng(4);
  for (double scale : {1e-3, 0.5, 3.0, 40.0}) {
    const Matrix a = scale * rng.ginibre(6, 6);
    const Matrix e = matrix_exp(a);
    const Matrix o = test::eig_exp(a);
    CHECK(max_abs(e - o) / std::max(1.0, max_abs(o)) < 1e-9);
  }
  // Closed forms: rotation and a nilpotent block.
  Matrix g(2, 2);
  g << 0, -1, 1, 0;
  const Matrix r = matrix_exp(0.7 * g);
  CHECK(std::abs(r(0, 0) - std::cos(0.7)) < 1e-15);
  CHECK(std::abs(r(1, 0) - std::sin(0.7)) < 1e-15);
  Matrix n = Matrix::Zero(3, 3);
  n(0, 1) = 1.0;
  n(1, 2) = 1.0;
  const Matrix en = matrix_exp(n);
  CHECK(std::abs(en(0, 2) - 0.5) < 1e-15);
  CHECK(max_abs(matrix_exp(Matrix::Zero(4, 4)) - Matrix::Identity(4, 4)) == 0.0);
}

TEST_CASE("lindblad superoperator") {
  RandomSource rng(5);
  const Superoperator l = random_lindbladian(3, rng, 3);
  CHECK(l.trace_annihilation_residual() < 1e-12);

  // Action on an operator equals the master-equation right-hand side.
  const Matrix h = random_hermitian(3, rng);
  const Matrix j = rng.ginibre(3, 3);
  const std::vector<JumpOperator> jumps{{Operator(j), 0.4}};
  const Superoperator l2 = lindblad_superoperator(Operator(h), jumps);
  const Matrix rho = random_density(3, rng).matrix();
  const Matrix jd = j.adjoint();
  const Matrix rhs = Complex(0, -1) * (h * rho - rho * h) +
                     0.4 * (j * rho * jd - 0.5 * (jd * j * rho + rho * jd * j));
  CHECK(max_abs(apply_superop(l2, rho) - rhs) < 1e-12);

  Matrix nh = Matrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(lindblad_superoperator(Operator(nh), {}), InvariantError);
  const std::vector<JumpOperator> negative{{Operator(Matrix::Identity(2, 2)), -0.1}};
  CHECK_THROWS_AS(lindblad_superoperator(Operator::zero(2), negative), InvariantError);
}

TEST_CASE("kraus superoperator completeness") {
  const double p = 0.3;
  const std::vector<Operator> ok{Operator(Matrix(std::sqrt(1 - p) * Matrix::Identity(2, 2))),
                                 Operator(Matrix(std::sqrt(p) * pauli(3)))};
  const Superoperator s = kraus_superoperator(ok);
  const Matrix rho = Matrix::Constant(2, 2, 0.5);
  const Matrix out = apply_superop(s, rho);
  CHECK(std::abs(out(0, 1) - (1 - 2 * p) * 0.5) < 1e-15);
  const std::vector<Operator> bad{Operator(Matrix(0.9 * Matrix::Identity(2, 2)))};
  CHECK_THROWS_AS(kraus_superoperator(bad), InvariantError);
}

TEST_CASE("contractivity under Lindblad exponentials") {
  RandomSource rng(6);
  for (int k = 0; k < 30; ++k) {
    const Superoperator l = random_lindbladian(2, rng);
    const Matrix phi = matrix_exp(l.matrix() * rng.uniform(0.0, 2.0));
    const Matrix a = random_density(2, rng).matrix(), b = random_density(2, rng).matrix();
    const Matrix pa = unvec(phi * vec(a), 2), pb = unvec(phi * vec(b), 2);
    CHECK(trace_distance(hermitian_part(pa), hermitian_part(pb)) <= trace_distance(a, b) + 1e-9);
  }
}

TEST_CASE("lift_system and lift_environment act on the right factor") {
  RandomSource rng(7);
  const Superoperator ls = random_lindbladian(2, rng);
  const Superoperator le = random_lindbladian(3, rng);
  const Matrix rs = random_density(2, rng).matrix(), re = random_density(3, rng).matrix();
  const Matrix x = kron(rs, re);
  const Matrix a = unvec(lift_system(ls, 3).matrix() * vec(x), 6);
  CHECK(max_abs(a - kron(apply_superop(ls, rs), re)) < 1e-12);
  const Matrix b = unvec(lift_environment(le, 2).matrix() * vec(x), 6);
  CHECK(max_abs(b - kron(rs, apply_superop(le, re))) < 1e-12);
}
