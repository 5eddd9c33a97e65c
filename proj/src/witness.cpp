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

#include "qflow/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace qflow {

namespace {

constexpr double kNegativeProbability = -1e-10;
constexpr double kUndefinedConditional = 1e-12;

void require_specs(const Dynamics& dyn, const MeasurementTriple& specs) {
  const Index ds = dyn.layout().ds;
  if (specs.past.dim() != ds || specs.present.dim() != ds || specs.future.dim() != ds)
    throw DimensionError("measurement basis dimension differs from the system dimension");
}

void require_times(double t, double tau) {
  if (!(t >= 0.0) || !(tau >= 0.0)) throw InvariantError("CPF times must be non-negative");
}

// Checks for negative entries and normalizes. Total mass must be 1 up to the
// propagation drift allowance.
JointDistribution finalize(JointDistribution p) {
  if (p.min() < kNegativeProbability)
    throw NumericError("joint probability is negative beyond -1e-10");
  const double total = p.total();
  if (std::abs(total - 1.0) > tol::kTraceDrift)
    throw NumericError("joint probabilities do not sum to 1");
  for (Index z = 0; z < p.nz(); ++z)
    for (Index y = 0; y < p.ny(); ++y)
      for (Index x = 0; x < p.nx(); ++x) p(z, y, x) /= total;
  return p;
}

template <class EnvForY>
JointDistribution joint(const Dynamics& dyn, const Matrix& rho0_s, const Matrix& env0,
                        const MeasurementTriple& specs, double t, double tau, EnvForY env_for_y) {
  require_specs(dyn, specs);
  require_times(t, tau);
  JointDistribution p(specs.future.size(), specs.present.size(), specs.past.size());
  for (Index x = 0; x < specs.past.size(); ++x) {
    const double px = (specs.past.effect(x) * rho0_s).trace().real();
    if (px <= 0.0) continue;
    const BipartiteState at_t =
        dyn.evolve(dyn.product_state(specs.past.post_state(x), env0), 0.0, t);
    for (Index y = 0; y < specs.present.size(); ++y) {
      const auto [env_y, weight] = env_for_y(at_t, x, y);
      if (weight == 0.0) continue;
      const BipartiteState at_end =
          dyn.evolve(dyn.product_state(specs.present.post_state(y), env_y), t, t + tau);
      for (Index z = 0; z < specs.future.size(); ++z)
        p(z, y, x) = px * weight * at_end.effect_weight(specs.future.effect(z));
    }
  }
  return finalize(std::move(p));
}

}  // namespace

// -------------------------------------------------------- MeasurementSpec

MeasurementSpec::MeasurementSpec(Matrix basis, std::vector<double> outcomes)
    : basis_(std::move(basis)), outcomes_(std::move(outcomes)) {
  if (basis_.rows() == 0 || basis_.rows() != basis_.cols())
    throw DimensionError("MeasurementSpec: basis must be a square matrix of column vectors");
  if (static_cast<Index>(outcomes_.size()) != basis_.cols())
    throw DimensionError("MeasurementSpec: one outcome value per basis vector required");
  const Index d = basis_.cols();
  if (max_abs(basis_.adjoint() * basis_ - Matrix::Identity(d, d)) > tol::kConstruction)
    throw InvariantError("MeasurementSpec: basis is not orthonormal (non-projective measurement)");
}

MeasurementSpec MeasurementSpec::computational(Index dim) {
  std::vector<double> outcomes(static_cast<std::size_t>(dim));
  if (dim == 2) {
    outcomes = {1.0, -1.0};
  } else {
    for (Index i = 0; i < dim; ++i) outcomes[static_cast<std::size_t>(i)] = static_cast<double>(i);
  }
  return {Matrix::Identity(dim, dim), std::move(outcomes)};
}

MeasurementSpec MeasurementSpec::pauli(char axis) {
  const double r = 1.0 / std::numbers::sqrt2;
  Matrix b(2, 2);
  switch (axis) {
    case 'x': b << r, r, r, -r; break;
    case 'y': b << r, r, Complex(0, r), Complex(0, -r); break;
    case 'z': b << 1, 0, 0, 1; break;
    default: throw InvariantError(std::string("MeasurementSpec::pauli: unknown axis ") + axis);
  }
  return {std::move(b), {1.0, -1.0}};
}

Matrix MeasurementSpec::effect(Index m) const {
  return basis_.col(m) * basis_.col(m).adjoint();
}

// ------------------------------------------------------ RandomSchemePolicy

RandomSchemePolicy::RandomSchemePolicy(Eigen::MatrixXd probabilities) : p_(std::move(probabilities)) {
  if (p_.size() == 0) throw DimensionError("RandomSchemePolicy: empty policy");
  for (Index x = 0; x < p_.rows(); ++x) {
    if ((p_.row(x).array() < 0.0).any() || !p_.row(x).allFinite())
      throw InvariantError("RandomSchemePolicy: negative or non-finite probability");
    if (std::abs(p_.row(x).sum() - 1.0) > 1e-12)
      throw InvariantError("RandomSchemePolicy: rows must sum to 1");
  }
}

RandomSchemePolicy RandomSchemePolicy::uniform(Index nx, Index ny) {
  return RandomSchemePolicy(Eigen::MatrixXd::Constant(nx, ny, 1.0 / static_cast<double>(ny)));
}

std::string to_string(Scheme s) { return s == Scheme::Deterministic ? "d" : "r"; }

// ------------------------------------------------------- JointDistribution

JointDistribution::JointDistribution(Index nz, Index ny, Index nx)
    : nz_(nz), ny_(ny), nx_(nx), p_(static_cast<std::size_t>(nz * ny * nx), 0.0) {}

double JointDistribution::total() const {
  double s = 0.0;
  for (double v : p_) s += v;
  return s;
}

double JointDistribution::min() const { return *std::min_element(p_.begin(), p_.end()); }

// ---------------------------------------------------------------- CPF ops

JointDistribution cpf_joint_deterministic(const Dynamics& dyn, const Matrix& rho0_s,
                                          const Matrix& env0, const MeasurementTriple& specs,
                                          double t, double tau) {
  return joint(dyn, rho0_s, env0, specs, t, tau,
               [&](const BipartiteState& at_t, Index, Index y) {
                 // Tr_s(E_y G[rho_x kron rho_e]) carries P(y|x) as its trace.
                 return std::pair<Matrix, double>{
                     at_t.environment_after_effect(specs.present.effect(y)), 1.0};
               });
}

JointDistribution cpf_joint_random(const Dynamics& dyn, const Matrix& rho0_s, const Matrix& env0,
                                   const MeasurementTriple& specs, const RandomSchemePolicy& policy,
                                   double t, double tau) {
  if (policy.matrix().rows() != specs.past.size() || policy.matrix().cols() != specs.present.size())
    throw DimensionError("RandomSchemePolicy shape does not match the measurements");
  return joint(dyn, rho0_s, env0, specs, t, tau,
               [&](const BipartiteState& at_t, Index x, Index y) {
                 return std::pair<Matrix, double>{at_t.environment_marginal(), policy(y, x)};
               });
}

std::vector<std::optional<double>> cpf_correlation(const JointDistribution& p,
                                                   const MeasurementTriple& specs) {
  if (p.nz() != specs.future.size() || p.ny() != specs.present.size() ||
      p.nx() != specs.past.size())
    throw DimensionError("cpf_correlation: tensor shape does not match the measurements");
  std::vector<std::optional<double>> out(static_cast<std::size_t>(p.ny()));
  for (Index y = 0; y < p.ny(); ++y) {
    double py = 0.0;
    for (Index z = 0; z < p.nz(); ++z)
      for (Index x = 0; x < p.nx(); ++x) py += p(z, y, x);
    if (py < kUndefinedConditional) continue;
    // sum zx P(z,x|y) - (sum z P(z|y)) (sum x P(x|y))
    double zx = 0.0, zm = 0.0, xm = 0.0;
    for (Index z = 0; z < p.nz(); ++z)
      for (Index x = 0; x < p.nx(); ++x) {
        const double c = p(z, y, x) / py;
        zx += specs.future.outcome(z) * specs.past.outcome(x) * c;
        zm += specs.future.outcome(z) * c;
        xm += specs.past.outcome(x) * c;
      }
    out[static_cast<std::size_t>(y)] = zx - zm * xm;
  }
  return out;
}

double markov_factorization_gap(const JointDistribution& p) {
  std::vector<double> px(static_cast<std::size_t>(p.nx()), 0.0);
  std::vector<double> py(static_cast<std::size_t>(p.ny()), 0.0);
  Eigen::MatrixXd pzy = Eigen::MatrixXd::Zero(p.nz(), p.ny());
  Eigen::MatrixXd pyx = Eigen::MatrixXd::Zero(p.ny(), p.nx());
  for (Index z = 0; z < p.nz(); ++z)
    for (Index y = 0; y < p.ny(); ++y)
      for (Index x = 0; x < p.nx(); ++x) {
        const double v = p(z, y, x);
        px[static_cast<std::size_t>(x)] += v;
        py[static_cast<std::size_t>(y)] += v;
        pzy(z, y) += v;
        pyx(y, x) += v;
      }
  double gap = 0.0;
  for (Index z = 0; z < p.nz(); ++z)
    for (Index y = 0; y < p.ny(); ++y)
      for (Index x = 0; x < p.nx(); ++x) {
        const double yv = py[static_cast<std::size_t>(y)];
        // P(z|y) P(y|x) P(x) = P(z,y) P(y,x) / P(y)
        const double markov = yv > 0.0 ? pzy(z, y) * pyx(y, x) / yv : 0.0;
        gap = std::max(gap, std::abs(p(z, y, x) - markov));
      }
  return gap;
}

// ---------------------------------------------------------- trace distance

bool TdTrace::any_revival() const {
  return std::any_of(revivals.begin(), revivals.end(), [](bool b) { return b; });
}

double TdTrace::max_increase() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < distances.size(); ++i)
    m = std::max(m, distances[i] - distances[i - 1]);
  return m;
}

TdTrace td_series(const Dynamics& dyn, const Matrix& rho0_s, const Matrix& sigma0_s,
                  const Matrix& env0, const TimeGrid& grid, bool with_bounds,
                  double revival_tolerance) {
  if (rho0_s.rows() != sigma0_s.rows()) throw DimensionError("td_series: initial states differ in dimension");
  const auto rho = dyn.propagate(dyn.product_state(rho0_s, env0), grid);
  const auto sigma = dyn.propagate(dyn.product_state(sigma0_s, env0), grid);

  TdTrace out;
  out.times = grid.times();
  out.distances.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.distances.push_back(trace_distance(rho[i].system_marginal(), sigma[i].system_marginal()));
  out.revivals.assign(grid.size(), false);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    out.revivals[i] = out.distances[i + 1] - out.distances[i] > revival_tolerance;

  if (with_bounds) {
    BoundSeries b;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Matrix re = rho[i].environment_marginal();
      const Matrix se = sigma[i].environment_marginal();
      b.env_distance.push_back(trace_distance(re, se));
      b.corr_rho.push_back(trace_distance(rho[i].full_matrix(), kron(rho[i].system_marginal(), re)));
      b.corr_sigma.push_back(
          trace_distance(sigma[i].full_matrix(), kron(sigma[i].system_marginal(), se)));
    }
    out.bounds = std::move(b);
  }
  return out;
}

BoundTerms td_bound_terms(const Dynamics& dyn, const Matrix& rho0_s, const Matrix& sigma0_s,
                          const Matrix& env0, double t, double tau) {
  require_times(t, tau);
  if (rho0_s.rows() != sigma0_s.rows()) throw DimensionError("td_bound_terms: initial states differ in dimension");
  const BipartiteState rho_t = dyn.evolve(dyn.product_state(rho0_s, env0), 0.0, t);
  const BipartiteState sigma_t = dyn.evolve(dyn.product_state(sigma0_s, env0), 0.0, t);
  const BipartiteState rho_end = dyn.evolve(rho_t, t, t + tau);
  const BipartiteState sigma_end = dyn.evolve(sigma_t, t, t + tau);

  const Matrix rs = rho_t.system_marginal();
  const Matrix ss = sigma_t.system_marginal();
  const Matrix re = rho_t.environment_marginal();
  const Matrix se = sigma_t.environment_marginal();

  BoundTerms b;
  b.increment = trace_distance(rho_end.system_marginal(), sigma_end.system_marginal()) -
                trace_distance(rs, ss);
  b.env_distance = trace_distance(re, se);
  b.corr_rho = trace_distance(rho_t.full_matrix(), kron(rs, re));
  b.corr_sigma = trace_distance(sigma_t.full_matrix(), kron(ss, se));
  b.slack = b.env_distance + b.corr_rho + b.corr_sigma - b.increment;
  return b;
}

}  // namespace qflow
