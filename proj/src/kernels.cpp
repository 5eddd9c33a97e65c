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

#include "qflow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>

#include <omp.h>

namespace qflow {

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body, Execution exec,
                    int threads) {
  if (exec == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

CpfPoints cpf_points(const Dynamics& dyn, const CpfRequest& req,
                     std::vector<std::pair<double, double>> points, Execution exec, int threads) {
  const RandomSchemePolicy policy =
      req.policy ? *req.policy
                 : RandomSchemePolicy::uniform(req.specs.past.size(), req.specs.present.size());
  CpfPoints out;
  out.points = std::move(points);
  out.values.resize(out.points.size());
  for_each_index(
      out.points.size(),
      [&](std::size_t i) {
        const auto [t, tau] = out.points[i];
        const JointDistribution p =
            req.scheme == Scheme::Deterministic
                ? cpf_joint_deterministic(dyn, req.rho0_s, req.env0, req.specs, t, tau)
                : cpf_joint_random(dyn, req.rho0_s, req.env0, req.specs, policy, t, tau);
        out.values[i] = cpf_correlation(p, req.specs);
      },
      exec, threads);
  return out;
}

CpfGrid cpf_grid(const Dynamics& dyn, const CpfRequest& req, std::vector<double> ts,
                 std::vector<double> taus, Execution exec, int threads) {
  std::vector<std::pair<double, double>> points;
  points.reserve(ts.size() * taus.size());
  for (double t : ts)
    for (double tau : taus) points.emplace_back(t, tau);
  CpfGrid g;
  g.values = cpf_points(dyn, req, std::move(points), exec, threads).values;
  g.ts = std::move(ts);
  g.taus = std::move(taus);
  return g;
}

double max_abs_cpf(const std::vector<std::vector<std::optional<double>>>& values) {
  double m = 0.0;
  for (const auto& row : values)
    for (const auto& v : row)
      if (v) m = std::max(m, std::abs(*v));
  return m;
}

}  // namespace qflow
