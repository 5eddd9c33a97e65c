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

#include "qflow/depolarizing.hpp"
#include "qflow/presets.hpp"
#include "qflow/random_models.hpp"
#include "qflow/witness.hpp"
#include "test_util.hpp"

using namespace qflow;

TEST_CASE("measurement specs") {
  const auto z = MeasurementSpec::computational(2);
  CHECK(z.outcome(0) == 1.0);
  CHECK(z.outcome(1) == -1.0);
  CHECK(MeasurementSpec::computational(3).outcome(2) == 2.0);
  const auto x = MeasurementSpec::pauli('x');
  CHECK(max_abs(x.effect(0) - Matrix::Constant(2, 2, 0.5)) < 1e-15);
  Matrix skew(2, 2);
  skew << 1, 1, 0, 1;
  CHECK_THROWS_AS(MeasurementSpec(skew, {1.0, -1.0}), InvariantError);
  CHECK_THROWS_AS(MeasurementSpec(Matrix::Identity(2, 2), {1.0}), DimensionError);
  CHECK_THROWS(MeasurementSpec::pauli('q'));
}

TEST_CASE("random scheme policy rows must be distributions") {
  Eigen::MatrixXd p(2, 2);
  p << 0.5, 0.5, 0.2, 0.7;
  CHECK_THROWS_AS(RandomSchemePolicy{p}, InvariantError);
  const auto u = RandomSchemePolicy::uniform(2, 3);
  CHECK(u(2, 1) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("joint distribution for a trivial environment factorizes") {
  // Born-Markov control: the environment never correlates, so the
  // deterministic joint is Markov and CPF vanishes.
  Dynamics dyn(presets::born_markov());
  const auto specs = MeasurementTriple::all(MeasurementSpec::pauli('x'));
  const Matrix env0 = 0.5 * Matrix::Identity(2, 2);
  const auto p = cpf_joint_deterministic(dyn, presets::plus_state(), env0, specs, 0.4, 0.9);
  CHECK(std::abs(p.total() - 1.0) < 1e-12);
  CHECK(p.min() >= 0.0);
  CHECK(markov_factorization_gap(p) < 1e-12);
  for (const auto& v : cpf_correlation(p, specs)) {
    REQUIRE(v.has_value());
    CHECK(std::abs(*v) < 1e-12);
  }
}

TEST_CASE("random scheme on a bystander gives Markov statistics") {
  RandomSource rng(41);
  for (int k = 0; k < 5; ++k) {
    Dynamics dyn(random_quantum_bystander(2, 3, rng));
    const auto specs = MeasurementTriple{random_measurement(2, rng), random_measurement(2, rng),
                                         random_measurement(2, rng)};
    const auto policy = random_policy(2, 2, rng);
    const Matrix env0 = dyn.model().initial_environment().matrix();
    const auto p = cpf_joint_random(dyn, random_density(2, rng).matrix(), env0, specs, policy, 0.7, 1.1);
    CHECK(markov_factorization_gap(p) < 1e-10);
  }
}

TEST_CASE("conditional correlation is undefined when P(y) vanishes") {
  // Past state |0>, no evolution time: the present z-outcome is always +1.
  Dynamics dyn(presets::born_markov());
  const auto specs = MeasurementTriple::all(MeasurementSpec::computational(2));
  const auto p = cpf_joint_deterministic(dyn, test::ket(2, 0), 0.5 * Matrix::Identity(2, 2), specs, 0.0, 0.5);
  const auto c = cpf_correlation(p, specs);
  CHECK(c[0].has_value());
  CHECK_FALSE(c[1].has_value());
}

TEST_CASE("deterministic CPF on the depolarizing model matches its closed form") {
  Dynamics dyn(presets::depolarizing(1.0, 1.0));
  const CpfRequest req = presets::reference_cpf(dyn.model(), Scheme::Deterministic);
  for (double t : {0.3, 1.0, 2.0}) {
    const auto p = cpf_joint_deterministic(dyn, req.rho0_s, req.env0, req.specs, t, t);
    const auto c = cpf_correlation(p, req.specs);
    CHECK(std::abs(*c[0] - depolarizing::analytic_cpf_equal_rates(1.0, t, t)) < 1e-9);
  }
}

TEST_CASE("trace-distance revivals") {
  // Energy exchange with a two-level environment is periodic.
  Dynamics dyn(presets::exchange());
  const TimeGrid g = TimeGrid::uniform(0.0, 6.0, 0.05);
  const Matrix env0 = dyn.model().initial_environment().matrix();
  const auto tr = td_series(dyn, test::ket(2, 0), test::ket(2, 1), env0, g);
  CHECK(tr.any_revival());
  CHECK(tr.max_increase() > 1e-3);
  CHECK_FALSE(tr.revivals[0]);
  CHECK(tr.revivals.size() == g.size());

  Dynamics mono(presets::depolarizing(1.0, 1.0));
  const auto tm = td_series(mono, test::ket(2, 0), test::ket(2, 1),
                            mono.model().initial_environment().matrix(), g);
  CHECK_FALSE(tm.any_revival());
  CHECK(tm.distances[0] == doctest::Approx(1.0));
}

TEST_CASE("bound terms: increment never exceeds the correlation budget") {
  RandomSource rng(42);
  Dynamics dyn(presets::exchange());
  const Matrix env0 = dyn.model().initial_environment().matrix();
  for (int k = 0; k < 20; ++k) {
    const Matrix a = random_density(2, rng).matrix(), b = random_density(2, rng).matrix();
    const double t = rng.uniform(0.0, 3.0), tau = rng.uniform(0.0, 3.0);
    const auto bt = td_bound_terms(dyn, a, b, env0, t, tau);
    CHECK(bt.slack >= -1e-12);
    CHECK(bt.slack == doctest::Approx(bt.env_distance + bt.corr_rho + bt.corr_sigma - bt.increment));
  }
  // Product initial states: at t = 0 both correlation terms vanish.
  const auto z = td_bound_terms(dyn, test::ket(2, 0), test::ket(2, 1), env0, 0.0, 1.0);
  CHECK(z.corr_rho < 1e-12);
  CHECK(z.corr_sigma < 1e-12);
}
