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

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qflow/depolarizing.hpp"
#include "qflow/presets.hpp"
#include "qflow/random_models.hpp"
#include "test_util.hpp"

using namespace qflow;
namespace dp = qflow::depolarizing;

TEST_CASE("closed-form w and d at reference points") {
  CHECK(dp::analytic_w(1.0, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dp::analytic_td_factor(1.0, 1.0, 0.0) == doctest::Approx(1.0));
  // phi = gamma, gamma t = 1: 1/3 + e^{-2}/3 + e^{-1}/3, d = (4w - 1)/3.
  const double w = (1.0 + std::exp(-2.0) + std::exp(-1.0)) / 3.0;
  CHECK(dp::analytic_w(1.0, 1.0, 1.0) == doctest::Approx(w).epsilon(1e-14));
  CHECK(dp::analytic_td_factor(1.0, 1.0, 1.0) == doctest::Approx(0.33476).epsilon(1e-5));
  CHECK_THROWS_AS(dp::analytic_w(0.0, 1.0, 1.0), InvariantError);
  CHECK_THROWS_AS(dp::analytic_w(1.0, 1.0, -1.0), InvariantError);
}

TEST_CASE("stationary populations span the rate-matrix null space") {
  for (double f : {0.25, 1.0, 4.0}) {
    const Eigen::Matrix4d r = dp::population_rate_matrix(1.0, f);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(r);
    Eigen::Vector4d k = lu.kernel().col(0);
    k /= k.sum();
    const auto p = dp::stationary_populations(1.0, f).by_state();
    for (int i = 0; i < 4; ++i) CHECK(std::abs(k(i) - p[static_cast<std::size_t>(i)]) < 1e-14);
    CHECK((r.colwise().sum()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("g-coefficient populations follow the eigensolved rate equation") {
  const double g = 1.0, f = 0.4;
  const std::array<double, 4> p0{0.5, 0.1, 0.0, 0.4};
  const TimeGrid grid = TimeGrid::uniform(0.0, 5.0, 0.25);
  const auto gc = dp::solve_g_coefficients(g, f, p0, grid);
  Eigen::EigenSolver<Eigen::Matrix4d> es(dp::population_rate_matrix(g, f));
  const Eigen::Matrix4cd v = es.eigenvectors();
  const Eigen::Vector4cd lam = es.eigenvalues();
  const Eigen::Vector4cd c = v.inverse() * Eigen::Vector4d(p0[0], p0[1], p0[2], p0[3]).cast<Complex>();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Eigen::Vector4cd p = v * (c.array() * (lam.array() * grid[i]).exp()).matrix();
    for (int k = 0; k < 4; ++k) CHECK(std::abs(gc.population(i, k) - p(k).real()) < 1e-9);
  }
}

TEST_CASE("Pauli channel product table") {
  // x*y ~ z, y*z ~ x, z*x ~ y, I neutral, k*k = I.
  CHECK(dp::pauli_product(0, 1) == 2);
  CHECK(dp::pauli_product(1, 2) == 0);
  CHECK(dp::pauli_product(2, 0) == 1);
  for (int k = 0; k < 4; ++k) {
    CHECK(dp::pauli_product(k, 3) == k);
    CHECK(dp::pauli_product(k, k) == 3);
  }
}

TEST_CASE("system marginal has the depolarizing form with w from the g-ODE") {
  RandomSource rng(31);
  const double g = 1.0, f = 2.5;
  const std::array<double, 4> p0{0.2, 0.2, 0.2, 0.4};
  DepolarizingModel m;
  m.gamma = g;
  m.phi = f;
  m.initial_populations = p0;
  Dynamics dyn(BipartiteModel{m});
  const TimeGrid grid = TimeGrid::uniform(0.0, 3.0, 0.5);
  const auto gc = dp::solve_g_coefficients(g, f, p0, grid);
  for (int k = 0; k < 5; ++k) {
    const Matrix rho = random_density(2, rng).matrix();
    const auto states = dyn.propagate(dyn.initial_state(rho), grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double w = gc.w(i);
      Matrix expect = w * rho;
      for (int s = 1; s <= 3; ++s) expect += (1.0 - w) / 3.0 * pauli(s) * rho * pauli(s);
      CHECK(max_abs(states[i].system_marginal() - expect) < 1e-9);
    }
  }
}

TEST_CASE("coherent w: oracle from an eigendecomposition of the environment generator") {
  const TimeGrid grid = TimeGrid::uniform(0.0, 4.0, 0.5);
  for (double om : {0.0, 0.5, 5.0}) {
    const auto w = dp::coherent_w(1.0, 1.0, om, grid);
    const Matrix l = dp::coherent_environment_generator(1.0, 1.0, om).matrix();
    Matrix r0 = Matrix::Zero(4, 4);
    r0(3, 3) = 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Matrix r = unvec(test::eig_exp(l * grid[i]) * vec(r0), 4);
      CHECK(std::abs(w[i] - r(3, 3).real()) < 1e-9);
    }
  }
}

TEST_CASE("coherent w oscillates even below omega = gamma") {
  // Eigenvalues of the 4x4 environment generator at phi = gamma carry an
  // imaginary part (sqrt(3)/2) omega for every omega > 0.
  const Matrix l = dp::coherent_environment_generator(1.0, 1.0, 0.5).matrix();
  Eigen::ComplexEigenSolver<Matrix> es(l);
  double max_imag = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    max_imag = std::max(max_imag, std::abs(es.eigenvalues()(i).imag()));
  CHECK(max_imag > 0.4);
}

TEST_CASE("CPF closed forms") {
  CHECK(dp::analytic_cpf_equal_rates(1.0, 1.0, 1.0) == doctest::Approx(0.06733).epsilon(1e-4));
  CHECK(dp::analytic_cpf_equal_rates(1.0, 0.0, 1.0) == 0.0);
  CHECK(dp::stationary_cpf(1.0, 1.0) == doctest::Approx(8.0 / 81.0).epsilon(1e-14));
  CHECK(dp::stationary_cpf(1.0, 1.0 / 3.0) == doctest::Approx(0.0));
}

TEST_CASE("adiabatic estimate preconditions") {
  const auto b = [](double t) { return 0.5 * std::sin(0.01 * t); };
  const auto ok = dp::adiabatic_w(1.0, 1.0, b, 10.0, 0.005);
  CHECK_FALSE(ok.outside_validity);
  CHECK(dp::adiabatic_w(1.0, 3.0, b, 10.0, 0.005).outside_validity);
  CHECK_THROWS_AS(dp::adiabatic_w(1.0, 1.0, b, 10.0, 0.05), InvariantError);
  const auto big = [](double) { return 1.0; };
  CHECK_THROWS_AS(dp::adiabatic_w(1.0, 1.0, big, 10.0, 0.005), InvariantError);
  // b = 0: w = p4^2 + 3 pk^2 with p4 = 1/2, pk = 1/6.
  const auto zero = [](double) { return 0.0; };
  CHECK(dp::adiabatic_w(1.0, 1.0, zero, 0.0, 0.0).w == doctest::Approx(1.0 / 3.0));
}
