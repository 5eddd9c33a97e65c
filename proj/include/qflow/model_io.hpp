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

// Model definition files, schema "qflow-model/1".
//
//   {
//     "schema": "qflow-model/1",
//     "class": "classical_mixture" | "stochastic_env" | "quantum_bystander"
//            | "unitary" | "depolarizing",
//     "ds": 2,
//     "de_or_Nc": 4,
//     "parameters": { ... class specific ... },
//     "initial_env": [ ... ]
//   }
//
// Matrices are row lists of [re, im] pairs (a bare number is read as a real
// entry). A generator is either {"superoperator": M} or
// {"hamiltonian": H, "jumps": [{"operator": L, "rate": r}, ...]}; a map is
// either {"superoperator": M} or {"kraus": [K, ...]}.
//
//   classical_mixture  parameters {"generators": [G, ...]},
//                      initial_env = mixture weights
//   stochastic_env     parameters {"generators": [G, ...],
//                                  "rates": [[r_{to,from}]] (real),
//                                  "jump_maps": [{"to", "from", "map"}]},
//                      initial_env = populations
//   quantum_bystander  parameters {"system_generator": G,
//                                  "environment_generator": G,
//                                  "collisions": [{"operator", "rate", "map"}]},
//                      initial_env = density matrix
//   unitary            parameters {"h_s", "h_e", "h_i"},
//                      initial_env = density matrix
//   depolarizing       parameters {"gamma", "phi", "omega",
//                                  "modulation": {"amplitude", "frequency", "phase"}},
//                      initial_env = populations of |1>..|4>, or omitted for
//                      the stationary populations

#pragma once

#include <filesystem>
#include <string>

#include "qflow/models.hpp"

namespace qflow {

/// Malformed document or schema mismatch.
class ModelFormatError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kModelSchema = "qflow-model/1";

BipartiteModel parse_model(const std::string& text);
BipartiteModel load_model(const std::filesystem::path& path);
/// Serializes in superoperator form; parse_model(dump_model(m)) rebuilds
/// the same generator.
std::string dump_model(const BipartiteModel& model);

}  // namespace qflow
