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

#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include "qflow/models.hpp"
#include "qflow/representation.hpp"

namespace qflow {

/// Strictly increasing, non-negative sample times (units of 1/gamma).
class TimeGrid {
 public:
  /// t0, t0+h, ..., up to and including t1 when it lies on the lattice.
  static TimeGrid uniform(double t0, double t1, double step);
  static TimeGrid from_times(std::vector<double> times);

  /// 0.01 / max(rate scales, 1).
  static double default_step(std::initializer_list<double> rates);

  const std::vector<double>& times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  double operator[](std::size_t i) const { return times_[i]; }
  double step() const { return step_; }  // 0 for non-uniform grids

 private:
  std::vector<double> times_;
  double step_ = 0.0;
};

/// exp(L * gap) for a fixed generator, memoized by gap. Concurrent readers
/// share the cache; a fill computes outside the lock and the first insert
/// wins, so fills are idempotent.
class PropagatorCache {
 public:
  explicit PropagatorCache(Matrix generator);

  const Matrix& generator() const { return generator_; }
  std::shared_ptr<const Matrix> propagator(double gap) const;
  std::size_t size() const;

 private:
  Matrix generator_;
  mutable std::shared_mutex mutex_;
  mutable std::map<long long, std::shared_ptr<const Matrix>> cache_;
};

/// Bipartite propagation for one model. Time-independent generators use
/// cached matrix exponentials; a modulated depolarizing model is integrated
/// with classical fixed-step RK4. After every call the state is
/// re-symmetrized and its trace compared against the input trace (drift
/// > 1e-8 throws NumericError).
class Dynamics {
 public:
  explicit Dynamics(BipartiteModel model, double max_step = 0.0);

  const BipartiteModel& model() const { return model_; }
  const Layout& layout() const { return layout_; }
  double max_step() const { return max_step_; }

  BipartiteState product_state(const Matrix& rho_s, const Matrix& rho_e) const;
  BipartiteState initial_state(const Matrix& rho_s) const;

  /// G_{t1,t0}[state].
  BipartiteState evolve(const BipartiteState& state, double t0, double t1) const;

  /// States at every grid time, starting from `state` at grid[0].
  std::vector<BipartiteState> propagate(const BipartiteState& state, const TimeGrid& grid) const;

 private:
  Vector rk4(const Vector& x, double t0, double t1) const;

  BipartiteModel model_;
  Layout layout_;
  double max_step_;
  std::unique_ptr<PropagatorCache> cache_;
  // Modulated generator L(t) = base + b(t) * slope.
  Matrix base_;
  Matrix slope_;
};

std::vector<BipartiteState> propagate(const BipartiteModel& model, const BipartiteState& state,
                                      const TimeGrid& grid);

}  // namespace qflow
