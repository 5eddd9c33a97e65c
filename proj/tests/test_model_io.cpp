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

#include <filesystem>
#include <fstream>

#include "qflow/evolve.hpp"
#include "qflow/model_io.hpp"
#include "qflow/presets.hpp"
#include "qflow/random_models.hpp"

using namespace qflow;

namespace {

double generator_gap(const BipartiteModel& a, const BipartiteModel& b) {
  return max_abs(assemble_generator(a).matrix - assemble_generator(b).matrix);
}

}  // namespace

TEST_CASE("dump and parse round-trip every model class") {
  RandomSource rng(51);
  const std::vector<BipartiteModel> models{
      BipartiteModel(random_classical_mixture(2, 3, rng)),
      BipartiteModel(random_stochastic_env(2, 3, rng)),
      BipartiteModel(random_quantum_bystander(2, 2, rng)),
      BipartiteModel(random_unitary_model(2, 2, rng)),
      presets::depolarizing(1.0, 0.25),
      presets::coherent(1.0, 1.0, 5.0),
      presets::modulated(1.0, 1.0)};
  for (const auto& m : models) {
    const BipartiteModel back = parse_model(dump_model(m));
    CHECK(back.kind() == m.kind());
    CHECK(back.layout() == m.layout());
    CHECK(generator_gap(m, back) < 1e-14);
    CHECK(max_abs(back.initial_environment().matrix() - m.initial_environment().matrix()) < 1e-14);
  }
}

TEST_CASE("hamiltonian/jumps generator and omitted depolarizing environment") {
  const std::string text = R"({
    "schema": "qflow-model/1", "class": "quantum_bystander", "ds": 2, "de_or_Nc": 2,
    "parameters": {
      "system_generator": {"hamiltonian": [[0.5, 0], [0, -0.5]], "jumps": []},
      "environment_generator": {"hamiltonian": [[0, 0], [0, 0]],
                                "jumps": [{"operator": [[0, 1], [0, 0]], "rate": 0.3}]},
      "collisions": [{"operator": [[0, 0], [1, 0]], "rate": 0.2,
                      "map": {"kraus": [[[0, 1], [1, 0]]]}}]
    },
    "initial_env": [[0.5, 0], [0, 0.5]]
  })";
  const BipartiteModel m = parse_model(text);
  CHECK(m.kind() == ModelClass::QuantumBystander);
  CHECK(check_casual_bystander(m).casual);

  const BipartiteModel d = parse_model(R"({"schema": "qflow-model/1", "class": "depolarizing",
    "ds": 2, "de_or_Nc": 4, "parameters": {"gamma": 1, "phi": 3}})");
  const auto* dm = d.get_if<DepolarizingModel>();
  REQUIRE(dm != nullptr);
  CHECK(dm->initial_populations[3] == doctest::Approx(0.75));
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(parse_model("{"), ModelFormatError);
  CHECK_THROWS_AS(parse_model(R"({"schema": "qflow-model/2", "class": "unitary"})"), ModelFormatError);
  CHECK_THROWS_AS(parse_model(R"({"schema": "qflow-model/1", "class": "nope", "ds": 2, "de_or_Nc": 2})"),
                  ModelFormatError);
  CHECK_THROWS_AS(parse_model(R"({"schema": "qflow-model/1", "class": "depolarizing", "ds": 2,
    "de_or_Nc": 4, "parameters": {"gamma": "fast", "phi": 1}})"), ModelFormatError);
  // Well-formed but physically invalid.
  CHECK_THROWS_AS(parse_model(R"({"schema": "qflow-model/1", "class": "depolarizing", "ds": 2,
    "de_or_Nc": 4, "parameters": {"gamma": -1, "phi": 1}})"), Error);
  CHECK_THROWS_AS(parse_model(R"({"schema": "qflow-model/1", "class": "depolarizing", "ds": 2,
    "de_or_Nc": 4, "parameters": {"gamma": 1, "phi": 1}, "initial_env": [0.5, 0.5, 0.5, 0.5]})"),
                  InvariantError);
  CHECK_THROWS(load_model("/nonexistent/qflow-model.json"));
}

TEST_CASE("load_model reads files") {
  const auto path = std::filesystem::temp_directory_path() / "qflow_test_model.json";
  {
    std::ofstream f(path);
    f << dump_model(presets::exchange());
  }
  const BipartiteModel m = load_model(path);
  CHECK(m.kind() == ModelClass::Unitary);
  std::filesystem::remove(path);
}
