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

#include "qflow/depolarizing.hpp"
#include "qflow/evolve.hpp"
#include "qflow/models.hpp"
#include "qflow/presets.hpp"
#include "qflow/random_models.hpp"
#include "test_util.hpp"

using namespace qflow;

TEST_CASE("casual bystander check holds for every bystander class") {
  RandomSource rng(11);
  for (int k = 0; k < 10; ++k) {
    CHECK(check_casual_bystander(random_classical_mixture(2, 3, rng)).casual);
    CHECK(check_casual_bystander(random_stochastic_env(2, 3, rng)).casual);
    const auto r = check_casual_bystander(random_quantum_bystander(2, 3, rng));
    CHECK(r.casual);
    CHECK(r.residual < 1e-9);
  }
  CHECK(check_casual_bystander(presets::depolarizing(1.0, 2.0)).casual);
  CHECK(check_casual_bystander(presets::coherent(1.0, 1.0, 5.0)).casual);
  CHECK(check_casual_bystander(presets::modulated(1.0, 1.0), 37.0).casual);
}

TEST_CASE("unitary coupling is generically not a casual bystander") {
  const auto r = check_casual_bystander(presets::exchange());
  CHECK_FALSE(r.casual);
  CHECK(r.residual > 1e-3);
  UnitaryModel decoupled = presets::exchange();
  decoupled.h_i = Operator::zero(4);
  CHECK(check_casual_bystander(decoupled).casual);
}

TEST_CASE("model validation rejects broken inputs") {
  RandomSource rng(12);
  ClassicalMixtureModel m = random_classical_mixture(2, 2, rng);
  m.weights = {0.7, 0.7};
  CHECK_THROWS_AS(BipartiteModel{m}, InvariantError);

  StochasticEnvModel s = random_stochastic_env(2, 2, rng);
  s.rates(1, 0) = -1.0;
  CHECK_THROWS_AS(BipartiteModel{s}, InvariantError);

  UnitaryModel u = presets::exchange();
  u.h_i = Operator(Matrix::Identity(2, 2));
  CHECK_THROWS_AS(BipartiteModel{u}, DimensionError);

  DepolarizingModel d;
  d.gamma = -1.0;
  d.initial_populations = {0.25, 0.25, 0.25, 0.25};
  CHECK_THROWS_AS(BipartiteModel{d}, InvariantError);
  d.gamma = 1.0;
  d.modulation = Modulation{1.5, 0.1, 0.0};
  CHECK_THROWS_AS(BipartiteModel{d}, InvariantError);
}

TEST_CASE("stochastic environment populations ignore the system state") {
  RandomSource rng(13);
  const BipartiteModel m(random_stochastic_env(2, 3, rng));
  Dynamics dyn(m);
  const Matrix a = random_density(2, rng).matrix(), b = random_density(2, rng).matrix();
  const TimeGrid grid = TimeGrid::uniform(0.0, 2.0, 0.25);
  const auto ra = dyn.propagate(dyn.initial_state(a), grid);
  const auto rb = dyn.propagate(dyn.initial_state(b), grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(max_abs(ra[i].environment_marginal() - rb[i].environment_marginal()) < 1e-9);
}

TEST_CASE("quantum bystander environment follows its own Lindblad equation") {
  RandomSource rng(14);
  const QuantumBystanderModel q = random_quantum_bystander(2, 3, rng);
  Dynamics dyn(q);
  const Superoperator le = environment_marginal_generator(q);
  const Matrix rho = random_density(2, rng).matrix();
  for (double t : {0.1, 0.7, 2.0}) {
    const Matrix full = dyn.evolve(dyn.initial_state(rho), 0.0, t).environment_marginal();
    const Matrix direct = unvec(test::eig_exp(le.matrix() * t) * vec(q.initial_env.matrix()), 3);
    CHECK(max_abs(full - direct) < 1e-8);
  }
}

TEST_CASE("depolarizing model: classical and quantum representations agree at omega = 0") {
  DepolarizingModel d;
  d.gamma = 1.0;
  d.phi = 0.6;
  d.initial_populations = {0.1, 0.2, 0.3, 0.4};
  Dynamics classical(BipartiteModel{d});
  Dynamics quantum(BipartiteModel(depolarizing_as_bystander(d)));
  CHECK(classical.layout().rep == Representation::Classical);
  CHECK(quantum.layout().rep == Representation::Quantum);
  RandomSource rng(15);
  const Matrix rho = random_density(2, rng).matrix();
  for (double t : {0.3, 1.0, 4.0}) {
    const auto a = classical.evolve(classical.initial_state(rho), 0.0, t);
    const auto b = quantum.evolve(quantum.initial_state(rho), 0.0, t);
    CHECK(max_abs(a.system_marginal() - b.system_marginal()) < 1e-10);
    CHECK(max_abs(a.environment_marginal() - b.environment_marginal()) < 1e-10);
  }
}

TEST_CASE("random unitary decomposition") {
  const UnitaryModel cm = presets::commuting();
  CHECK(check_commuting_exception(cm));
  UnitaryModel driven = presets::exchange();
  driven.h_e = Operator(pauli(3));
  CHECK(commutator_norm(driven) > 0.1);
  CHECK_FALSE(check_commuting_exception(driven));
  const auto ens = random_unitary_decomposition(cm, Matrix::Identity(2, 2));
  CHECK(ens.members.size() == 2);
  CHECK(ens.verification_residual < 1e-9);
  double wsum = 0.0;
  for (const auto& m : ens.members) wsum += m.weight;
  CHECK(wsum == doctest::Approx(1.0));

  // H_I = 0 collapses to a single unitary.
  UnitaryModel free = cm;
  free.h_i = Operator::zero(4);
  CHECK(random_unitary_decomposition(free, Matrix::Identity(2, 2)).members.size() == 1);

  // Non-commuting exchange model fails the direct check.
  CHECK_THROWS_AS(random_unitary_decomposition(presets::exchange(), Matrix::Identity(2, 2)), InvariantError);
}

TEST_CASE("born-markov control keeps a product state") {
  Dynamics dyn(presets::born_markov());
  RandomSource rng(16);
  const Matrix rho = random_density(2, rng).matrix();
  const auto s = dyn.evolve(dyn.initial_state(rho), 0.0, 1.3);
  CHECK(trace_distance(s.full_matrix(), kron(s.system_marginal(), s.environment_marginal())) < 1e-12);
  CHECK(max_abs(s.environment_marginal() - 0.5 * Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("generators are trace preserving") {
  RandomSource rng(17);
  const std::vector<BipartiteModel> models{
      BipartiteModel(random_classical_mixture(2, 3, rng)), BipartiteModel(random_stochastic_env(3, 2, rng)),
      BipartiteModel(random_quantum_bystander(2, 2, rng)), BipartiteModel(random_unitary_model(2, 3, rng)),
      presets::depolarizing(1.0, 0.3), presets::coherent(1.0, 2.0, 1.5)};
  for (const auto& m : models) CHECK(assemble_generator(m).trace_preservation_residual() < 1e-10);
}
