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

#include <array>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qflow/qcore.hpp"
#include "qflow/representation.hpp"

namespace qflow {

/// rho^{se}(t) = sum_c exp(t L_c)[rho_s] kron p_c |c><c|. The environment
/// has no dynamics; `weights` is its (fixed) state.
struct ClassicalMixtureModel {
  std::vector<Superoperator> generators;
  std::vector<double> weights;
};

/// System coupled to a classical Markov chain over Nc labels:
///
///   d rho~_c/dt = L_c[rho~_c] - sum_c' rate(c', c) rho~_c
///                 + sum_c' rate(c, c') S(c, c')[rho~_c'].
///
/// `rates(to, from)` is the transition rate from -> to; the jump map
/// S(to, from) is applied to the system on that transition.
struct StochasticEnvModel {
  std::vector<Superoperator> generators;
  Eigen::MatrixXd rates;
  // Row-major Nc x Nc table of jump maps, index to * Nc + from. An empty
  // vector means every jump map is the identity.
  std::vector<Superoperator> jump_maps;
  std::vector<double> initial_populations;

  Index classical_states() const { return static_cast<Index>(generators.size()); }
  Superoperator jump_map(Index to, Index from) const;
};

/// Environment operator B with rate Gamma; the system map S acts whenever the
/// environment undergoes the B transition.
struct Collision {
  Operator env_operator;
  double rate = 0.0;
  Superoperator system_map;
};

/// Quantum casual-bystander environment:
///
///   d rho/dt = (L_s + L_e) rho + sum_a G_a (B_a S_a[rho] B_a^+ - {B_a^+ B_a, rho}/2).
struct QuantumBystanderModel {
  Superoperator system_generator;
  Superoperator environment_generator;
  std::vector<Collision> collisions;
  DensityMatrix initial_env;
};

/// H_T = H_s kron I + I kron H_e + H_I (hbar = 1).
struct UnitaryModel {
  Operator h_s;
  Operator h_e;
  Operator h_i;
  DensityMatrix initial_env;
};

/// b(t) = amplitude * sin(frequency * t + phase).
struct Modulation {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;

  double value(double t) const;
  /// Upper bound on |db/dt|.
  double max_rate() const;
};

/// Qubit coupled to a four-state environment {|1>,|2>,|3>,|4>} (indices
/// 0..3 here). Transitions |4> -> |k> at gamma/3 and |k> -> |4> at phi
/// apply sigma_k . sigma_k to the qubit. Optional rate modulation
/// gamma(t) = gamma(1+b), phi(t) = phi(1-b), and an optional coherent
/// environment Hamiltonian (omega/2) sum_k (|k><4| + |4><k|).
struct DepolarizingModel {
  double gamma = 1.0;
  double phi = 1.0;
  std::optional<Modulation> modulation;
  double omega = 0.0;
  std::array<double, 4> initial_populations{};

  bool time_dependent() const { return modulation.has_value(); }
  double gamma_at(double t) const;
  double phi_at(double t) const;
};

enum class ModelClass { ClassicalMixture, StochasticEnv, QuantumBystander, Unitary, Depolarizing };

std::string to_string(ModelClass c);

class BipartiteModel {
 public:
  using Variant = std::variant<ClassicalMixtureModel, StochasticEnvModel, QuantumBystanderModel,
                               UnitaryModel, DepolarizingModel>;

  /// Validates the class invariants; throws InvariantError / DimensionError.
  BipartiteModel(Variant v);  // NOLINT: implicit by design of the tagged union
  template <class T>
    requires(!std::is_same_v<std::remove_cvref_t<T>, BipartiteModel> &&
             !std::is_same_v<std::remove_cvref_t<T>, Variant> &&
             std::is_constructible_v<Variant, T &&>)
  BipartiteModel(T&& m)  // NOLINT
      : BipartiteModel(Variant(std::forward<T>(m))) {}

  ModelClass kind() const { return static_cast<ModelClass>(v_.index()); }
  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

  Layout layout() const;
  bool time_dependent() const;
  DensityMatrix initial_environment() const;

 private:
  Variant v_;
};

/// Generator of the bipartite dynamics at time t (t only matters for a
/// modulated depolarizing model).
Generator assemble_generator(const BipartiteModel& m, double t = 0.0);

struct BystanderCheck {
  bool casual = false;
  double residual = 0.0;
};

/// Tests Tr_s(L[X]) = 0 for every X in the kernel of Tr_s, which is the
/// linear-algebra form of "the environment marginal evolves independently of
/// the system".
BystanderCheck check_casual_bystander(const BipartiteModel& m, double t = 0.0);

double commutator_norm(const UnitaryModel& m);
/// [H_e, H_I] = 0 within 1e-10.
bool check_commuting_exception(const UnitaryModel& m);

Matrix total_hamiltonian(const UnitaryModel& m);

/// One member of a random-unitary ensemble: weight <e|rho_e|e> and the system
/// unitary generated by the (traceless part of) <e|H_T|e>.
struct UnitaryEnsembleMember {
  double weight = 0.0;
  Matrix hamiltonian;

  Matrix unitary(double t) const;
  Matrix evolve(const Matrix& rho_s, double t) const;
};

struct RandomUnitaryEnsemble {
  std::vector<UnitaryEnsembleMember> members;
  double verification_residual = 0.0;

  Matrix reduced_state(const Matrix& rho_s, double t) const;
};

/// Decomposes a unitary model's reduced dynamics into a weighted ensemble of
/// system unitaries, one per environment basis vector. The diagonal
/// condition <e|G_t[X]|e> = T_e[<e|X|e>] is verified directly at
/// `check_times` (residual < 1e-9) whether or not [H_e, H_I] = 0; failure
/// throws InvariantError. Members with identical channels are merged.
RandomUnitaryEnsemble random_unitary_decomposition(const UnitaryModel& m, const Matrix& env_basis,
                                                   std::span<const double> check_times = {});

/// Product-form Markovian control: the system evolves under `system_generator`
/// while the environment stays frozen in `env`.
BipartiteModel born_markov_model(const Superoperator& system_generator, const DensityMatrix& env);

/// L_e + sum_a G_a D[B_a]: the closed environment-marginal generator of a
/// quantum bystander model.
Superoperator environment_marginal_generator(const QuantumBystanderModel& m);

// Depolarizing family rewritten in the general classes.
StochasticEnvModel depolarizing_as_stochastic(const DepolarizingModel& m, double t = 0.0);
QuantumBystanderModel depolarizing_as_bystander(const DepolarizingModel& m, double t = 0.0);

}  // namespace qflow
