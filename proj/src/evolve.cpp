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

#include "qflow/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

namespace qflow {

// --------------------------------------------------------------- TimeGrid

TimeGrid TimeGrid::uniform(double t0, double t1, double step) {
  if (!(step > 0.0) || !(t0 >= 0.0) || !(t1 >= t0) || !std::isfinite(t1))
    throw InvariantError("TimeGrid::uniform: need 0 <= t0 <= t1 and step > 0");
  const auto n = static_cast<std::size_t>(std::floor((t1 - t0) / step + 1e-9));
  TimeGrid g;
  g.times_.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g.times_.push_back(t0 + static_cast<double>(i) * step);
  g.step_ = step;
  return g;
}

TimeGrid TimeGrid::from_times(std::vector<double> times) {
  if (times.empty()) throw InvariantError("TimeGrid: empty");
  if (!(times.front() >= 0.0)) throw InvariantError("TimeGrid: times must be non-negative");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw InvariantError("TimeGrid: times must be strictly increasing");
  TimeGrid g;
  g.times_ = std::move(times);
  return g;
}

double TimeGrid::default_step(std::initializer_list<double> rates) {
  double scale = 1.0;
  for (double r : rates) scale = std::max(scale, std::abs(r));
  return 0.01 / scale;
}

// -------------------------------------------------------- PropagatorCache

PropagatorCache::PropagatorCache(Matrix generator) : generator_(std::move(generator)) {}

std::shared_ptr<const Matrix> PropagatorCache::propagator(double gap) const {
  if (!(gap >= 0.0) || !std::isfinite(gap))
    throw InvariantError("PropagatorCache: time gap must be finite and non-negative");
  // Gaps are keyed on a 1e-12 lattice so that grid gaps differing only in
  // the last ulps share an entry.
  const long long key = std::llround(gap * 1e12);
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto p = std::make_shared<const Matrix>(matrix_exp(generator_ * (static_cast<double>(key) * 1e-12)));
  std::unique_lock lock(mutex_);
  return cache_.try_emplace(key, std::move(p)).first->second;
}

std::size_t PropagatorCache::size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

// --------------------------------------------------------------- Dynamics

namespace {

double default_max_step(const BipartiteModel& model) {
  if (const auto* d = model.get_if<DepolarizingModel>()) {
    const double amp = d->modulation ? std::abs(d->modulation->amplitude) : 0.0;
    return TimeGrid::default_step({d->gamma * (1.0 + amp), d->phi * (1.0 + amp), d->omega});
  }
  return 0.01;
}

}  // namespace

Dynamics::Dynamics(BipartiteModel model, double max_step)
    : model_(std::move(model)),
      layout_(model_.layout()),
      max_step_(max_step > 0.0 ? max_step : default_max_step(model_)) {
  if (!model_.time_dependent()) {
    cache_ = std::make_unique<PropagatorCache>(assemble_generator(model_).matrix);
    return;
  }
  // Rates are affine in b(t), so L(t) = L|_{b=0} + b(t) (L|_{b=1/2} - L|_{b=0}) / (1/2).
  DepolarizingModel frozen = *model_.get_if<DepolarizingModel>();
  frozen.modulation.reset();
  base_ = assemble_generator(BipartiteModel(frozen)).matrix;
  frozen.modulation = Modulation{0.5, 0.0, std::numbers::pi / 2.0};
  slope_ = (assemble_generator(BipartiteModel(frozen)).matrix - base_) * 2.0;
}

BipartiteState Dynamics::product_state(const Matrix& rho_s, const Matrix& rho_e) const {
  return BipartiteState::product(layout_, rho_s, rho_e);
}

BipartiteState Dynamics::initial_state(const Matrix& rho_s) const {
  return product_state(rho_s, model_.initial_environment().matrix());
}

Vector Dynamics::rk4(const Vector& x0, double t0, double t1) const {
  const double span = t1 - t0;
  const auto n = static_cast<long>(std::max(1.0, std::ceil(span / max_step_ - 1e-9)));
  const double h = span / static_cast<double>(n);
  const Modulation& mod = *model_.get_if<DepolarizingModel>()->modulation;
  auto apply = [&](double t, const Vector& v) -> Vector {
    return base_ * v + mod.value(t) * (slope_ * v);
  };
  Vector x = x0;
  for (long i = 0; i < n; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const Vector k1 = apply(t, x);
    const Vector k2 = apply(t + 0.5 * h, x + (0.5 * h) * k1);
    const Vector k3 = apply(t + 0.5 * h, x + (0.5 * h) * k2);
    const Vector k4 = apply(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

BipartiteState Dynamics::evolve(const BipartiteState& state, double t0, double t1) const {
  if (state.layout() != layout_) throw DimensionError("Dynamics::evolve: state layout mismatch");
  if (!(t1 >= t0)) throw InvariantError("Dynamics::evolve: t1 must not precede t0");
  if (t1 == t0) return state;

  const Complex tr_in = state.trace();
  Vector out = cache_ ? Vector(*cache_->propagator(t1 - t0) * state.data())
                      : rk4(state.data(), t0, t1);
  BipartiteState result(layout_, std::move(out));
  result.symmetrize();
  const Complex tr_out = result.trace();
  if (std::abs(tr_out - tr_in) > tol::kTraceDrift * std::max(1.0, std::abs(tr_in)))
    throw NumericError("Dynamics::evolve: trace drift exceeds 1e-8");
  return result;
}

std::vector<BipartiteState> Dynamics::propagate(const BipartiteState& state,
                                                const TimeGrid& grid) const {
  std::vector<BipartiteState> out;
  out.reserve(grid.size());
  out.push_back(state);
  for (std::size_t i = 1; i < grid.size(); ++i)
    out.push_back(evolve(out.back(), grid[i - 1], grid[i]));
  return out;
}

std::vector<BipartiteState> propagate(const BipartiteModel& model, const BipartiteState& state,
                                      const TimeGrid& grid) {
  return Dynamics(model).propagate(state, grid);
}

}  // namespace qflow
