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

#include "qflow/depolarizing.hpp"

#include <algorithm>
#include <cmath>

namespace qflow::depolarizing {

namespace {

void require_rates(double gamma, double phi) {
  if (!(gamma > 0.0) || !(phi > 0.0) || !std::isfinite(gamma) || !std::isfinite(phi))
    throw InvariantError("depolarizing: gamma and phi must be positive");
}

// Pauli index <-> (x, z) bit pattern: x = 01, y = 11, z = 10, I = 00.
constexpr std::array<int, 4> kToBits = {1, 3, 2, 0};
constexpr std::array<int, 4> kFromBits = {3, 0, 2, 1};

using Table = GCoefficients::Table;

Table g_rhs(const Table& g, double gamma, double phi) {
  Table d{};
  for (int j = 0; j < 4; ++j) {
    double feed = 0.0;
    for (int k = 0; k < 3; ++k) feed += g[k][pauli_product(k, j)];
    d[3][j] = -gamma * g[3][j] + phi * feed;
    for (int k = 0; k < 3; ++k)
      d[k][j] = -phi * g[k][j] + (gamma / 3.0) * g[3][pauli_product(k, j)];
  }
  return d;
}

Table axpy(const Table& x, double a, const Table& y) {
  Table out{};
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j) out[k][j] = x[k][j] + a * y[k][j];
  return out;
}

}  // namespace

int pauli_product(int a, int b) { return kFromBits[kToBits[a] ^ kToBits[b]]; }

double analytic_w(double gamma, double phi, double t) {
  require_rates(gamma, phi);
  if (!(t >= 0.0)) throw InvariantError("analytic_w: t must be non-negative");
  const double s = gamma + phi;
  return (gamma * gamma + 3.0 * phi * phi) / (3.0 * s * s) +
         4.0 * gamma * phi * std::exp(-s * t) / (3.0 * s * s) +
         2.0 * gamma * std::exp(-phi * t) / (3.0 * s);
}

double td_factor_from_w(double w) { return std::abs(4.0 * w - 1.0) / 3.0; }

double analytic_td_factor(double gamma, double phi, double t) {
  return td_factor_from_w(analytic_w(gamma, phi, t));
}

StationaryPopulations stationary_populations(double gamma, double phi) {
  require_rates(gamma, phi);
  return {phi / (gamma + phi), gamma / (3.0 * (gamma + phi))};
}

Eigen::Matrix4d population_rate_matrix(double gamma, double phi) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(3, 3) = -gamma;
  for (int k = 0; k < 3; ++k) {
    r(3, k) = phi;
    r(k, k) = -phi;
    r(k, 3) = gamma / 3.0;
  }
  return r;
}

double GCoefficients::w(std::size_t i) const { return channel_weight(i, 3); }

double GCoefficients::population(std::size_t i, int k) const {
  const auto& row = g[i][static_cast<std::size_t>(k)];
  return row[0] + row[1] + row[2] + row[3];
}

double GCoefficients::channel_weight(std::size_t i, int j) const {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += g[i][k][j];
  return s;
}

GCoefficients solve_g_coefficients(double gamma, double phi, const std::array<double, 4>& p0,
                                   const TimeGrid& grid) {
  require_rates(gamma, phi);
  double total = 0.0;
  for (double p : p0) {
    if (!(p >= 0.0)) throw InvariantError("solve_g_coefficients: negative population");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kConstruction)
    throw InvariantError("solve_g_coefficients: populations must be normalized");

  const double max_step = TimeGrid::default_step({gamma, phi});
  Table g{};
  for (int k = 0; k < 4; ++k) g[k][3] = p0[k];

  GCoefficients out;
  out.times = grid.times();
  out.g.reserve(grid.size());
  double t = 0.0;
  for (double target : grid.times()) {
    const double span = target - t;
    if (span > 0.0) {
      const auto n = static_cast<long>(std::max(1.0, std::ceil(span / max_step - 1e-9)));
      const double h = span / static_cast<double>(n);
      for (long s = 0; s < n; ++s) {
        const Table k1 = g_rhs(g, gamma, phi);
        const Table k2 = g_rhs(axpy(g, 0.5 * h, k1), gamma, phi);
        const Table k3 = g_rhs(axpy(g, 0.5 * h, k2), gamma, phi);
        const Table k4 = g_rhs(axpy(g, h, k3), gamma, phi);
        for (int k = 0; k < 4; ++k)
          for (int j = 0; j < 4; ++j)
            g[k][j] += (h / 6.0) * (k1[k][j] + 2.0 * k2[k][j] + 2.0 * k3[k][j] + k4[k][j]);
      }
      t = target;
    }
    double sum = 0.0;
    for (const auto& row : g)
      for (double x : row) sum += x;
    if (std::abs(sum - 1.0) > tol::kTraceDrift)
      throw NumericError("solve_g_coefficients: total weight drifted from 1");
    out.g.push_back(g);
  }
  return out;
}

AdiabaticEstimate adiabatic_w(double gamma, double phi, const std::function<double(double)>& b,
                              double t, double slowness_ratio) {
  require_rates(gamma, phi);
  if (slowness_ratio > 0.01)
    throw InvariantError("adiabatic_w: modulation is not slow (ratio > 0.01)");
  const double bt = b(t);
  if (!(std::abs(bt) < 1.0)) throw InvariantError("adiabatic_w: |b(t)| must be < 1");
  const double s = gamma + phi;
  const double p4 = phi * (1.0 - bt) / s;
  const double pk = gamma * (1.0 + bt) / (3.0 * s);
  return {p4 * p4 + 3.0 * pk * pk, std::abs(gamma - phi) / s > 0.2};
}

double adiabatic_w_tracking(double gamma, double phi, const std::function<double(double)>& b,
                            const std::array<double, 4>& p0, double t) {
  require_rates(gamma, phi);
  const double bt = b(t);
  if (!(std::abs(bt) < 1.0)) throw InvariantError("adiabatic_w_tracking: |b(t)| must be < 1");
  const double s = gamma + phi;
  const double p4 = phi * (1.0 - bt) / s;
  const double pk = gamma * (1.0 + bt) / (3.0 * s);
  return p0[3] * p4 + (p0[0] + p0[1] + p0[2]) * pk;
}

Superoperator coherent_environment_generator(double gamma, double phi, double omega) {
  require_rates(gamma, phi);
  if (!(omega >= 0.0)) throw InvariantError("coherent_environment_generator: omega must be >= 0");
  Matrix h = Matrix::Zero(4, 4);
  std::vector<JumpOperator> jumps;
  for (Index k = 0; k < 3; ++k) {
    h(k, 3) = omega / 2.0;
    h(3, k) = omega / 2.0;
    Matrix b = Matrix::Zero(4, 4);
    b(k, 3) = 1.0;
    jumps.push_back({Operator(b), gamma / 3.0});
    jumps.push_back({Operator(Matrix(b.adjoint())), phi});
  }
  return lindblad_superoperator(Operator(h), jumps);
}

std::vector<double> coherent_w(double gamma, double phi, double omega, const TimeGrid& grid) {
  const PropagatorCache cache(coherent_environment_generator(gamma, phi, omega).matrix());
  Matrix rho0 = Matrix::Zero(4, 4);
  rho0(3, 3) = 1.0;
  Vector x = vec(rho0);
  std::vector<double> w;
  w.reserve(grid.size());
  double t = 0.0;
  for (double target : grid.times()) {
    if (target > t) {
      x = *cache.propagator(target - t) * x;
      t = target;
    }
    const Matrix rho = hermitian_part(unvec(x, 4));
    if (std::abs(rho.trace().real() - 1.0) > tol::kTraceDrift)
      throw NumericError("coherent_w: trace drift exceeds 1e-8");
    w.push_back(rho(3, 3).real());
    x = vec(rho);
  }
  return w;
}

double analytic_cpf_equal_rates(double gamma, double t, double tau) {
  const double a = std::exp(-gamma * t);
  const double b = std::exp(-gamma * tau);
  return 4.0 / 81.0 * (1.0 - a) * (1.0 - b) * (2.0 + a + b + 5.0 * a * b);
}

double stationary_cpf(double gamma, double phi) {
  require_rates(gamma, phi);
  const double s = gamma + phi;
  const double d = gamma - 3.0 * phi;
  return 8.0 * gamma * d * d * (gamma + 3.0 * phi) / (81.0 * s * s * s * s);
}

}  // namespace qflow::depolarizing
