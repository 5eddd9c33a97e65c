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

// Seeded random instances for property suites. Everything draws from a
// single mt19937_64 stream, so a seed fixes the whole sequence.

#pragma once

#include <cstdint>
#include <random>

#include "qflow/models.hpp"
#include "qflow/qcore.hpp"
#include "qflow/witness.hpp"

namespace qflow {

class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  /// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
  Complex complex_normal();
  Matrix ginibre(Index rows, Index cols);
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Haar unitary (QR of a Ginibre matrix with the R-diagonal phases removed).
Matrix random_unitary(Index dim, RandomSource& rng);
Matrix random_hermitian(Index dim, RandomSource& rng);
/// Full-rank state G G^dagger / Tr.
DensityMatrix random_density(Index dim, RandomSource& rng);
std::vector<double> random_distribution(Index n, RandomSource& rng);

/// Jump operators with standard complex Gaussian entries and rates U[0, 1].
std::vector<JumpOperator> random_jumps(Index dim, Index count, RandomSource& rng);
Superoperator random_lindbladian(Index dim, RandomSource& rng, Index jumps = 2);
/// Kraus map cut from the rows of a random (dim * kraus) x dim isometry.
Superoperator random_cptp(Index dim, RandomSource& rng, Index kraus = 2);

/// Random orthonormal basis with the default outcome values.
MeasurementSpec random_measurement(Index dim, RandomSource& rng);
RandomSchemePolicy random_policy(Index nx, Index ny, RandomSource& rng);

ClassicalMixtureModel random_classical_mixture(Index ds, Index nc, RandomSource& rng);
StochasticEnvModel random_stochastic_env(Index ds, Index nc, RandomSource& rng);
QuantumBystanderModel random_quantum_bystander(Index ds, Index de, RandomSource& rng);
UnitaryModel random_unitary_model(Index ds, Index de, RandomSource& rng);

}  // namespace qflow
