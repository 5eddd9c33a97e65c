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

// Closed-form and reduced solutions of the depolarizing model (see
// DepolarizingModel). Index conventions: environment states |1>..|4> and
// Pauli channels sigma_x, sigma_y, sigma_z, I are both stored at 0..3, so
// index 3 is |4> and the identity channel.

#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qflow/evolve.hpp"
#include "qflow/qcore.hpp"

namespace qflow::depolarizing {

/// Weight of the identity channel for stationary initial populations:
/// (g^2+3f^2)/(3(g+f)^2) + 4gf e^{-(g+f)t}/(3(g+f)^2) + 2g e^{-ft}/(3(g+f)).
double analytic_w(double gamma, double phi, double t);

/// d = |4w - 1| / 3, the contraction factor of the trace distance.
double td_factor_from_w(double w);
double analytic_td_factor(double gamma, double phi, double t);

struct StationaryPopulations {
  double p4 = 0.0;  // phi / (gamma + phi)
  double pk = 0.0;  // gamma / (3 (gamma + phi)), k = 1, 2, 3

  /// {p1, p2, p3, p4} in environment-state order.
  std::array<double, 4> by_state() const { return {pk, pk, pk, p4}; }
};

StationaryPopulations stationary_populations(double gamma, double phi);

/// Rate matrix of the environment populations, dp/dt = R p, state order.
Eigen::Matrix4d population_rate_matrix(double gamma, double phi);

/// rho~_k(t) = sum_j g[k][j](t) sigma_j rho_0 sigma_j.
struct GCoefficients {
  using Table = std::array<std::array<double, 4>, 4>;  // [k][j]

  std::vector<double> times;
  std::vector<Table> g;

  double w(std::size_t i) const;                      // sum_k g[k][I]
  double population(std::size_t i, int k) const;      // sum_j g[k][j]
  double channel_weight(std::size_t i, int j) const;  // sum_k g[k][j]
};

/// Integrates the 16 coupled linear ODEs with fixed-step RK4 (step
/// 0.01 / max(gamma, phi, 1), refined to land on every grid time).
GCoefficients solve_g_coefficients(double gamma, double phi,
                                   const std::array<double, 4>& p0, const TimeGrid& grid);

struct AdiabaticEstimate {
  double w = 0.0;
  /// |gamma - phi| / (gamma + phi) > 0.2: the instantaneous-population
  /// formula assumes gamma(t) + phi(t) ~ gamma + phi.
  bool outside_validity = false;
};

/// w(t) ~ p4(t)^2 + sum_k pk(t)^2 with the instantaneous populations
/// p4 = phi(1-b)/(g+f), pk = g(1+b)/(3(g+f)). `slowness_ratio` is the
/// caller's bound on |db/dt| / min(gamma, phi); ratios above 0.01 or
/// |b(t)| >= 1 throw InvariantError.
AdiabaticEstimate adiabatic_w(double gamma, double phi, const std::function<double(double)>& b,
                              double t, double slowness_ratio);

/// Long-time tracking estimate sum_k p_k(0) p_k^inf(t): the probability that
/// the environment occupies the same state at 0 and at t once the
/// populations follow the instantaneous stationary values.
double adiabatic_w_tracking(double gamma, double phi, const std::function<double(double)>& b,
                            const std::array<double, 4>& p0, double t);

/// Environment-marginal Lindbladian of the coherent model: jumps |k><4| at
/// gamma/3, |4><k| at phi, Hamiltonian (omega/2) sum_k (|k><4| + |4><k|).
Superoperator coherent_environment_generator(double gamma, double phi, double omega);

/// <4|rho_e(t)|4> from rho_e(0) = |4><4|, on the grid.
std::vector<double> coherent_w(double gamma, double phi, double omega, const TimeGrid& grid);

/// Deterministic-scheme CPF for phi = gamma with the reference preset
/// (x-eigenstate preparation, z-basis measurements, stationary environment).
double analytic_cpf_equal_rates(double gamma, double t, double tau);

/// t, tau -> infinity limit of the same CPF for general phi.
double stationary_cpf(double gamma, double phi);

/// Klein-group product of Pauli channel indices (identity = 3).
int pauli_product(int a, int b);

}  // namespace qflow::depolarizing
