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

#include <atomic>
#include <stdexcept>

#include "qflow/kernels.hpp"
#include "qflow/presets.hpp"

using namespace qflow;

TEST_CASE("for_each_index visits every index once") {
  std::vector<std::atomic<int>> hits(257);
  for_each_index(hits.size(), [&](std::size_t i) { hits[i]++; }, Execution::Parallel, 4);
  for (const auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("for_each_index rethrows worker exceptions") {
  const auto body = [](std::size_t i) {
    if (i == 17) throw std::runtime_error("boom");
  };
  CHECK_THROWS_AS(for_each_index(64, body, Execution::Parallel, 4), std::runtime_error);
  CHECK_THROWS_AS(for_each_index(64, body, Execution::Serial), std::runtime_error);
}

TEST_CASE("serial and parallel CPF grids agree exactly") {
  for (const auto& m : {presets::depolarizing(1.0, 4.0), presets::coherent(1.0, 1.0, 5.0)}) {
    Dynamics dyn(m);
    for (Scheme s : {Scheme::Deterministic, Scheme::Random}) {
      const CpfRequest req = presets::reference_cpf(m, s);
      const std::vector<double> ts{0.0, 0.5, 1.0, 2.0}, taus{0.25, 1.0, 3.0};
      const auto a = cpf_grid(dyn, req, ts, taus, Execution::Serial);
      const auto b = cpf_grid(dyn, req, ts, taus, Execution::Parallel, 3);
      REQUIRE(a.values.size() == ts.size() * taus.size());
      for (std::size_t k = 0; k < a.values.size(); ++k) CHECK(a.values[k] == b.values[k]);
      if (s == Scheme::Random) CHECK(max_abs_cpf(a.values) < 1e-10);
    }
  }
}

TEST_CASE("cpf_points keeps input order") {
  Dynamics dyn(presets::depolarizing(1.0, 1.0));
  const CpfRequest req = presets::reference_cpf(dyn.model(), Scheme::Deterministic);
  const std::vector<std::pair<double, double>> pts{{1.0, 1.0}, {0.0, 0.0}, {2.0, 0.5}};
  const auto r = cpf_points(dyn, req, pts, Execution::Parallel, 2);
  REQUIRE(r.values.size() == 3);
  CHECK(*r.values[0][0] == doctest::Approx(0.0673347).epsilon(1e-6));
  CHECK(std::abs(*r.values[1][0]) < 1e-14);
}
