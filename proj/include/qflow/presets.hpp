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

// Named model and measurement configurations shared by the CLI, the
// validation suite, and the benchmarks.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qflow/kernels.hpp"
#include "qflow/models.hpp"
#include "qflow/witness.hpp"

namespace qflow::presets {

/// Depolarizing model with stationary initial populations.
BipartiteModel depolarizing(double gamma, double phi);
/// Coherent variant, environment starting in |4><4|.
BipartiteModel coherent(double gamma, double phi, double omega);
/// b(t) = amplitude sin(frequency_over_gamma * gamma * t); populations start
/// stationary for b = 0.
BipartiteModel modulated(double gamma, double phi, double amplitude = 0.5,
                         double frequency_over_gamma = 0.01);

/// H_I = g (s+ kron s- + s- kron s+), H_s = H_e = 0, environment diag(0.7, 0.3).
UnitaryModel exchange(double g = 1.0);
/// H_s = 0.5 sx, H_e = 0.7 sz, H_I = sx kron sz; [H_e, H_I] = 0. The two
/// environment z-states drive different system Rabi frequencies.
UnitaryModel commuting();
/// Amplitude damping at rate 1 with a frozen maximally mixed qubit environment.
BipartiteModel born_markov();

/// |+><+|.
Matrix plus_state();
/// Uniform superposition over the computational basis (|+> for a qubit).
Matrix uniform_superposition(Index dim);
/// Computational-basis measurement at all three times.
MeasurementTriple computational_triple(Index dim);

/// Uniform-superposition preparation, computational-basis measurements,
/// the model's own initial environment.
CpfRequest reference_cpf(const BipartiteModel& m, Scheme scheme);

struct PresetParameters {
  double gamma = 1.0;
  double phi = 1.0;
  double omega = 0.0;
  std::uint64_t seed = 42;
};

/// Looks up a preset by name; nullopt if the name is unknown.
std::optional<BipartiteModel> by_name(const std::string& name, const PresetParameters& p);
std::vector<std::string> names();

}  // namespace qflow::presets
