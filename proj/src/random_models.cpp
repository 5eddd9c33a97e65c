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

#include "qflow/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qflow {

double RandomSource::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RandomSource::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

Complex RandomSource::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
}

Matrix RandomSource::ginibre(Index rows, Index cols) {
  Matrix g(rows, cols);
  // Column-major fill order is part of the seed contract.
  for (Index c = 0; c < cols; ++c)
    for (Index r = 0; r < rows; ++r) g(r, c) = complex_normal();
  return g;
}

namespace {

Matrix isometry(Index rows, Index cols, RandomSource& rng) {
  Eigen::HouseholderQR<Matrix> qr(rng.ginibre(rows, cols));
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index c = 0; c < cols; ++c) {
    const Complex d = r(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

Matrix random_unitary(Index dim, RandomSource& rng) { return isometry(dim, dim, rng); }

Matrix random_hermitian(Index dim, RandomSource& rng) {
  const Matrix g = rng.ginibre(dim, dim);
  return 0.5 * (g + g.adjoint());
}

DensityMatrix random_density(Index dim, RandomSource& rng) {
  const Matrix g = rng.ginibre(dim, dim);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(hermitian_part(rho));
}

std::vector<double> random_distribution(Index n, RandomSource& rng) {
  std::vector<double> p(static_cast<std::size_t>(n));
  double s = 0.0;
  for (auto& x : p) {
    // Exponential draws give a flat Dirichlet sample.
    x = -std::log(1.0 - rng.uniform());
    s += x;
  }
  for (auto& x : p) x /= s;
  return p;
}

std::vector<JumpOperator> random_jumps(Index dim, Index count, RandomSource& rng) {
  std::vector<JumpOperator> jumps;
  for (Index k = 0; k < count; ++k) {
    Operator l(rng.ginibre(dim, dim));
    jumps.push_back({std::move(l), rng.uniform()});
  }
  return jumps;
}

Superoperator random_lindbladian(Index dim, RandomSource& rng, Index jumps) {
  const Operator h(random_hermitian(dim, rng));
  return lindblad_superoperator(h, random_jumps(dim, jumps, rng));
}

Superoperator random_cptp(Index dim, RandomSource& rng, Index kraus) {
  const Matrix v = isometry(dim * kraus, dim, rng);
  std::vector<Operator> ks;
  for (Index k = 0; k < kraus; ++k) ks.emplace_back(Matrix(v.middleRows(k * dim, dim)));
  return kraus_superoperator(ks);
}

MeasurementSpec random_measurement(Index dim, RandomSource& rng) {
  const MeasurementSpec def = MeasurementSpec::computational(dim);
  return {random_unitary(dim, rng), def.outcomes()};
}

RandomSchemePolicy random_policy(Index nx, Index ny, RandomSource& rng) {
  Eigen::MatrixXd p(nx, ny);
  for (Index x = 0; x < nx; ++x) {
    const auto row = random_distribution(ny, rng);
    for (Index y = 0; y < ny; ++y) p(x, y) = row[static_cast<std::size_t>(y)];
    // Re-close the row exactly so the 1e-12 row-sum check cannot trip.
    p(x, ny - 1) = std::max(0.0, 1.0 - (ny > 1 ? p.row(x).head(ny - 1).sum() : 0.0));
  }
  return RandomSchemePolicy(std::move(p));
}

ClassicalMixtureModel random_classical_mixture(Index ds, Index nc, RandomSource& rng) {
  ClassicalMixtureModel m;
  for (Index c = 0; c < nc; ++c) m.generators.push_back(random_lindbladian(ds, rng));
  m.weights = random_distribution(nc, rng);
  return m;
}

StochasticEnvModel random_stochastic_env(Index ds, Index nc, RandomSource& rng) {
  StochasticEnvModel m;
  for (Index c = 0; c < nc; ++c) m.generators.push_back(random_lindbladian(ds, rng));
  m.rates = Eigen::MatrixXd::Zero(nc, nc);
  for (Index from = 0; from < nc; ++from)
    for (Index to = 0; to < nc; ++to)
      if (to != from) m.rates(to, from) = rng.uniform();
  m.jump_maps.reserve(static_cast<std::size_t>(nc * nc));
  for (Index to = 0; to < nc; ++to)
    for (Index from = 0; from < nc; ++from)
      m.jump_maps.push_back(to == from ? Superoperator::identity(ds) : random_cptp(ds, rng));
  m.initial_populations = random_distribution(nc, rng);
  return m;
}

QuantumBystanderModel random_quantum_bystander(Index ds, Index de, RandomSource& rng) {
  Superoperator sys = random_lindbladian(ds, rng);
  Superoperator env = random_lindbladian(de, rng);
  std::vector<Collision> collisions;
  for (int k = 0; k < 2; ++k) {
    Operator b(rng.ginibre(de, de));
    const double rate = rng.uniform();
    collisions.push_back({std::move(b), rate, random_cptp(ds, rng)});
  }
  return {std::move(sys), std::move(env), std::move(collisions), random_density(de, rng)};
}

UnitaryModel random_unitary_model(Index ds, Index de, RandomSource& rng) {
  Operator hs(random_hermitian(ds, rng));
  Operator he(random_hermitian(de, rng));
  Operator hi(random_hermitian(ds * de, rng));
  return {std::move(hs), std::move(he), std::move(hi), random_density(de, rng)};
}

}  // namespace qflow
