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

#include "qflow/presets.hpp"

#include <cmath>

#include "qflow/depolarizing.hpp"
#include "qflow/random_models.hpp"

namespace qflow::presets {

BipartiteModel depolarizing(double gamma, double phi) {
  DepolarizingModel m;
  m.gamma = gamma;
  m.phi = phi;
  m.initial_populations = depolarizing::stationary_populations(gamma, phi).by_state();
  return m;
}

BipartiteModel coherent(double gamma, double phi, double omega) {
  DepolarizingModel m;
  m.gamma = gamma;
  m.phi = phi;
  m.omega = omega;
  m.initial_populations = {0.0, 0.0, 0.0, 1.0};
  return m;
}

BipartiteModel modulated(double gamma, double phi, double amplitude, double frequency_over_gamma) {
  DepolarizingModel m;
  m.gamma = gamma;
  m.phi = phi;
  m.modulation = Modulation{amplitude, frequency_over_gamma * gamma, 0.0};
  m.initial_populations = depolarizing::stationary_populations(gamma, phi).by_state();
  return m;
}

UnitaryModel exchange(double g) {
  Matrix sp = Matrix::Zero(2, 2);
  sp(0, 1) = 1.0;
  const Matrix sm = sp.adjoint();
  const Matrix hi = g * (kron(sp, sm) + kron(sm, sp));
  const std::vector<double> env{0.7, 0.3};
  return {Operator::zero(2), Operator::zero(2), Operator(hi), DensityMatrix::diagonal(env)};
}

UnitaryModel commuting() {
  Matrix env(2, 2);
  env << 0.6, 0.2, 0.2, 0.4;
  return {Operator(Matrix(0.5 * pauli(1))), Operator(Matrix(0.7 * pauli(3))),
          Operator(kron(pauli(1), pauli(3))), DensityMatrix(env)};
}

BipartiteModel born_markov() {
  Matrix lower = Matrix::Zero(2, 2);
  lower(1, 0) = 1.0;  // |1><0|
  const std::vector<JumpOperator> jumps{{Operator(lower), 1.0}};
  const Superoperator damping = lindblad_superoperator(Operator::zero(2), jumps);
  return born_markov_model(damping, DensityMatrix::maximally_mixed(2));
}

Matrix uniform_superposition(Index dim) {
  const Vector psi = Vector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  return psi * psi.adjoint();
}

Matrix plus_state() { return uniform_superposition(2); }

MeasurementTriple computational_triple(Index dim) {
  return MeasurementTriple::all(MeasurementSpec::computational(dim));
}

CpfRequest reference_cpf(const BipartiteModel& m, Scheme scheme) {
  const Index ds = m.layout().ds;
  return {uniform_superposition(ds), m.initial_environment().matrix(), computational_triple(ds),
          scheme, std::nullopt};
}

std::optional<BipartiteModel> by_name(const std::string& name, const PresetParameters& p) {
  if (name == "depolarizing") return depolarizing(p.gamma, p.phi);
  if (name == "coherent") return coherent(p.gamma, p.phi, p.omega);
  if (name == "modulated") return modulated(p.gamma, p.phi);
  if (name == "exchange") return BipartiteModel(exchange());
  if (name == "commuting") return BipartiteModel(commuting());
  if (name == "born-markov") return born_markov();
  RandomSource rng(p.seed);
  if (name == "mixture") return BipartiteModel(random_classical_mixture(2, 3, rng));
  if (name == "stochastic") return BipartiteModel(random_stochastic_env(2, 3, rng));
  if (name == "bystander") return BipartiteModel(random_quantum_bystander(2, 2, rng));
  if (name == "random-unitary") return BipartiteModel(random_unitary_model(2, 2, rng));
  return std::nullopt;
}

std::vector<std::string> names() {
  return {"depolarizing", "coherent", "modulated", "exchange",  "commuting",
          "born-markov",  "mixture",  "stochastic", "bystander", "random-unitary"};
}

}  // namespace qflow::presets
