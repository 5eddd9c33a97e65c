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

// Data-parallel sweeps. Each kernel has a serial reference path and an
// OpenMP path; both evaluate every point independently and write to a
// pre-sized slot, so results do not depend on the schedule.

#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qflow/evolve.hpp"
#include "qflow/witness.hpp"

namespace qflow {

enum class Execution { Serial, Parallel };

/// Runs body(i) for i in [0, n). The parallel path uses `threads` OpenMP
/// threads (0 = runtime default). The first exception thrown by any
/// iteration is rethrown after the loop.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Execution exec = Execution::Parallel, int threads = 0);

struct CpfRequest {
  Matrix rho0_s;
  Matrix env0;
  MeasurementTriple specs;
  Scheme scheme = Scheme::Deterministic;
  std::optional<RandomSchemePolicy> policy;  // uniform when unset
};

/// C_pf values per conditional outcome at each (t, tau) point.
struct CpfPoints {
  std::vector<std::pair<double, double>> points;
  std::vector<std::vector<std::optional<double>>> values;
};

CpfPoints cpf_points(const Dynamics& dyn, const CpfRequest& req,
                     std::vector<std::pair<double, double>> points,
                     Execution exec = Execution::Parallel, int threads = 0);

/// Full (t, tau) product grid, t-major.
struct CpfGrid {
  std::vector<double> ts;
  std::vector<double> taus;
  std::vector<std::vector<std::optional<double>>> values;  // [i * taus.size() + j]

  const std::vector<std::optional<double>>& at(std::size_t i, std::size_t j) const {
    return values[i * taus.size() + j];
  }
};

CpfGrid cpf_grid(const Dynamics& dyn, const CpfRequest& req, std::vector<double> ts,
                 std::vector<double> taus, Execution exec = Execution::Parallel, int threads = 0);

/// Largest |C_pf| over all defined entries.
double max_abs_cpf(const std::vector<std::vector<std::optional<double>>>& values);

}  // namespace qflow
