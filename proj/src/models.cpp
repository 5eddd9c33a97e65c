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

#include "qflow/models.hpp"

#include <cmath>
#include <numeric>

namespace qflow {

namespace {

constexpr double kWeightTol = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_trace_preserving_generator(const Superoperator& s, const char* what) {
  if (s.trace_annihilation_residual() > tol::kPropagation)
    throw InvariantError(std::string(what) + ": generator is not trace preserving");
}

void require_trace_preserving_map(const Superoperator& s, const char* what) {
  if ((s - Superoperator::identity(s.dim())).trace_annihilation_residual() > tol::kPropagation)
    throw InvariantError(std::string(what) + ": map is not trace preserving");
}

void require_distribution(std::span<const double> p, double tolerance, const char* what) {
  if (p.empty()) throw InvariantError(std::string(what) + ": empty distribution");
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0) || !std::isfinite(x))
      throw InvariantError(std::string(what) + ": negative or non-finite probability");
    sum += x;
  }
  if (std::abs(sum - 1.0) > tolerance)
    throw InvariantError(std::string(what) + ": probabilities do not sum to 1");
}

Index common_dim(const std::vector<Superoperator>& gens, const char* what) {
  if (gens.empty()) throw InvariantError(std::string(what) + ": no generators");
  const Index ds = gens.front().dim();
  for (const auto& g : gens) {
    if (g.dim() != ds) throw DimensionError(std::string(what) + ": generators differ in dimension");
    require_trace_preserving_generator(g, what);
  }
  return ds;
}

void validate(const ClassicalMixtureModel& m) {
  common_dim(m.generators, "ClassicalMixtureModel");
  if (m.weights.size() != m.generators.size())
    throw DimensionError("ClassicalMixtureModel: one weight per generator required");
  require_distribution(m.weights, kWeightTol, "ClassicalMixtureModel weights");
}

void validate(const StochasticEnvModel& m) {
  const Index ds = common_dim(m.generators, "StochasticEnvModel");
  const Index nc = m.classical_states();
  if (m.rates.rows() != nc || m.rates.cols() != nc)
    throw DimensionError("StochasticEnvModel: rate matrix must be Nc x Nc");
  for (Index j = 0; j < nc; ++j)
    for (Index i = 0; i < nc; ++i)
      if (!(m.rates(i, j) >= 0.0) || !std::isfinite(m.rates(i, j)))
        throw InvariantError("StochasticEnvModel: negative or non-finite rate");
  if (!m.jump_maps.empty()) {
    if (static_cast<Index>(m.jump_maps.size()) != nc * nc)
      throw DimensionError("StochasticEnvModel: jump map table must have Nc^2 entries");
    for (const auto& s : m.jump_maps) {
      if (s.dim() != ds) throw DimensionError("StochasticEnvModel: jump map dimension mismatch");
      require_trace_preserving_map(s, "StochasticEnvModel jump map");
    }
  }
  if (static_cast<Index>(m.initial_populations.size()) != nc)
    throw DimensionError("StochasticEnvModel: one initial population per state required");
  require_distribution(m.initial_populations, tol::kConstruction,
                       "StochasticEnvModel initial populations");
}

void validate(const QuantumBystanderModel& m) {
  require_trace_preserving_generator(m.system_generator, "QuantumBystanderModel system");
  require_trace_preserving_generator(m.environment_generator, "QuantumBystanderModel environment");
  const Index ds = m.system_generator.dim();
  const Index de = m.environment_generator.dim();
  if (m.initial_env.dim() != de)
    throw DimensionError("QuantumBystanderModel: initial environment dimension mismatch");
  for (const auto& c : m.collisions) {
    if (c.env_operator.dim() != de)
      throw DimensionError("QuantumBystanderModel: collision operator dimension mismatch");
    if (c.system_map.dim() != ds)
      throw DimensionError("QuantumBystanderModel: collision map dimension mismatch");
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate))
      throw InvariantError("QuantumBystanderModel: negative or non-finite collision rate");
    require_trace_preserving_map(c.system_map, "QuantumBystanderModel collision map");
  }
}

void validate(const UnitaryModel& m) {
  if (!m.h_s.is_hermitian() || !m.h_e.is_hermitian() || !m.h_i.is_hermitian())
    throw InvariantError("UnitaryModel: Hamiltonians must be Hermitian");
  if (m.h_i.dim() != m.h_s.dim() * m.h_e.dim())
    throw DimensionError("UnitaryModel: H_I must act on the ds*de space");
  if (m.initial_env.dim() != m.h_e.dim())
    throw DimensionError("UnitaryModel: initial environment dimension mismatch");
}

void validate(const DepolarizingModel& m) {
  if (!(m.gamma > 0.0) || !(m.phi > 0.0) || !std::isfinite(m.gamma) || !std::isfinite(m.phi))
    throw InvariantError("DepolarizingModel: gamma and phi must be positive");
  if (!(m.omega >= 0.0) || !std::isfinite(m.omega))
    throw InvariantError("DepolarizingModel: omega must be non-negative");
  if (m.modulation) {
    // |b(t)| <= |amplitude| < 1 keeps gamma(t), phi(t) > 0 for every t.
    if (!(std::abs(m.modulation->amplitude) < 1.0) || !std::isfinite(m.modulation->frequency))
      throw InvariantError("DepolarizingModel: modulation amplitude must satisfy |b| < 1");
  }
  require_distribution(m.initial_populations, tol::kConstruction,
                       "DepolarizingModel initial populations");
}

Generator classical_mixture_generator(const ClassicalMixtureModel& m) {
  const Index ds = m.generators.front().dim();
  const Index nc = static_cast<Index>(m.generators.size());
  const Index bs = ds * ds;
  Matrix l = Matrix::Zero(bs * nc, bs * nc);
  for (Index c = 0; c < nc; ++c) l.block(c * bs, c * bs, bs, bs) = m.generators[c].matrix();
  return {{Representation::Classical, ds, nc}, std::move(l)};
}

Generator stochastic_generator(const StochasticEnvModel& m) {
  const Index ds = m.generators.front().dim();
  const Index nc = m.classical_states();
  const Index bs = ds * ds;
  const Matrix id = Matrix::Identity(bs, bs);
  Matrix l = Matrix::Zero(bs * nc, bs * nc);
  for (Index c = 0; c < nc; ++c) {
    const double out_rate = m.rates.col(c).sum();
    l.block(c * bs, c * bs, bs, bs) += m.generators[c].matrix() - out_rate * id;
    for (Index from = 0; from < nc; ++from) {
      const double r = m.rates(c, from);
      if (r == 0.0) continue;
      l.block(c * bs, from * bs, bs, bs) += r * m.jump_map(c, from).matrix();
    }
  }
  return {{Representation::Classical, ds, nc}, std::move(l)};
}

Generator bystander_generator(const QuantumBystanderModel& m) {
  const Index ds = m.system_generator.dim();
  const Index de = m.environment_generator.dim();
  const Index d = ds * de;
  Matrix l = lift_system(m.system_generator, de).matrix() +
             lift_environment(m.environment_generator, ds).matrix();
  const Matrix id = Matrix::Identity(d, d);
  for (const auto& c : m.collisions) {
    if (c.rate == 0.0) continue;
    const Matrix b = kron(Matrix::Identity(ds, ds), c.env_operator.matrix());
    const Matrix bdb = b.adjoint() * b;
    const Matrix jump = sandwich(b, b.adjoint()).matrix() * lift_system(c.system_map, de).matrix();
    l += c.rate * (jump - 0.5 * kron(id, bdb) - 0.5 * kron(Matrix(bdb.transpose()), id));
  }
  return {{Representation::Quantum, ds, de}, std::move(l)};
}

Generator unitary_generator(const UnitaryModel& m) {
  const Operator h(total_hamiltonian(m));
  return {{Representation::Quantum, m.h_s.dim(), m.h_e.dim()},
          lindblad_superoperator(h, {}).matrix()};
}

}  // namespace

// ------------------------------------------------------------------ types

Superoperator StochasticEnvModel::jump_map(Index to, Index from) const {
  if (jump_maps.empty()) return Superoperator::identity(generators.front().dim());
  return jump_maps[static_cast<std::size_t>(to * classical_states() + from)];
}

double Modulation::value(double t) const { return amplitude * std::sin(frequency * t + phase); }
double Modulation::max_rate() const { return std::abs(amplitude * frequency); }

double DepolarizingModel::gamma_at(double t) const {
  return modulation ? gamma * (1.0 + modulation->value(t)) : gamma;
}

double DepolarizingModel::phi_at(double t) const {
  return modulation ? phi * (1.0 - modulation->value(t)) : phi;
}

std::string to_string(ModelClass c) {
  switch (c) {
    case ModelClass::ClassicalMixture: return "classical_mixture";
    case ModelClass::StochasticEnv: return "stochastic_env";
    case ModelClass::QuantumBystander: return "quantum_bystander";
    case ModelClass::Unitary: return "unitary";
    case ModelClass::Depolarizing: return "depolarizing";
  }
  return "unknown";
}

BipartiteModel::BipartiteModel(Variant v) : v_(std::move(v)) {
  std::visit([](const auto& m) { validate(m); }, v_);
}

Layout BipartiteModel::layout() const {
  return std::visit(
      Overloaded{
          [](const ClassicalMixtureModel& m) {
            return Layout{Representation::Classical, m.generators.front().dim(),
                          static_cast<Index>(m.generators.size())};
          },
          [](const StochasticEnvModel& m) {
            return Layout{Representation::Classical, m.generators.front().dim(),
                          m.classical_states()};
          },
          [](const QuantumBystanderModel& m) {
            return Layout{Representation::Quantum, m.system_generator.dim(),
                          m.environment_generator.dim()};
          },
          [](const UnitaryModel& m) {
            return Layout{Representation::Quantum, m.h_s.dim(), m.h_e.dim()};
          },
          [](const DepolarizingModel& m) {
            return Layout{m.omega > 0.0 ? Representation::Quantum : Representation::Classical, 2,
                          4};
          },
      },
      v_);
}

bool BipartiteModel::time_dependent() const {
  const auto* d = get_if<DepolarizingModel>();
  return d != nullptr && d->time_dependent();
}

DensityMatrix BipartiteModel::initial_environment() const {
  return std::visit(
      Overloaded{
          [](const ClassicalMixtureModel& m) { return DensityMatrix::diagonal(m.weights); },
          [](const StochasticEnvModel& m) {
            return DensityMatrix::diagonal(m.initial_populations);
          },
          [](const QuantumBystanderModel& m) { return m.initial_env; },
          [](const UnitaryModel& m) { return m.initial_env; },
          [](const DepolarizingModel& m) {
            return DensityMatrix::diagonal(m.initial_populations);
          },
      },
      v_);
}

// ------------------------------------------------------------- operations

Generator assemble_generator(const BipartiteModel& model, double t) {
  return std::visit(Overloaded{
                        [](const ClassicalMixtureModel& m) { return classical_mixture_generator(m); },
                        [](const StochasticEnvModel& m) { return stochastic_generator(m); },
                        [](const QuantumBystanderModel& m) { return bystander_generator(m); },
                        [](const UnitaryModel& m) { return unitary_generator(m); },
                        [t](const DepolarizingModel& m) {
                          if (m.omega > 0.0) return bystander_generator(depolarizing_as_bystander(m, t));
                          return stochastic_generator(depolarizing_as_stochastic(m, t));
                        },
                    },
                    model.variant());
}

BystanderCheck check_casual_bystander(const BipartiteModel& model, double t) {
  const Generator gen = assemble_generator(model, t);
  const Layout& layout = gen.layout;
  const Index ds = layout.ds;
  const Index de = layout.de;

  // Traceless system operators spanning the kernel of the trace.
  std::vector<Matrix> traceless;
  for (Index j = 0; j < ds; ++j)
    for (Index i = 0; i < ds; ++i) {
      Matrix a = Matrix::Zero(ds, ds);
      if (i != j) {
        a(i, j) = 1.0;
      } else if (i > 0) {
        a(i, i) = 1.0;
        a(0, 0) = -1.0;
      } else {
        continue;
      }
      traceless.push_back(std::move(a));
    }

  double residual = 0.0;
  auto probe = [&](const Vector& x) {
    const BipartiteState image(layout, gen.matrix * x);
    residual = std::max(residual, max_abs(image.environment_marginal()));
  };
  for (const auto& a : traceless) {
    if (layout.rep == Representation::Quantum) {
      for (Index b = 0; b < de; ++b)
        for (Index e = 0; e < de; ++e) {
          Matrix eab = Matrix::Zero(de, de);
          eab(e, b) = 1.0;
          probe(vec(kron(a, eab)));
        }
    } else {
      for (Index c = 0; c < de; ++c) {
        Vector x = Vector::Zero(layout.size());
        x.segment(c * ds * ds, ds * ds) = vec(a);
        probe(x);
      }
    }
  }
  return {residual < tol::kPropagation, residual};
}

Matrix total_hamiltonian(const UnitaryModel& m) {
  const Index ds = m.h_s.dim();
  const Index de = m.h_e.dim();
  return kron(m.h_s.matrix(), Matrix::Identity(de, de)) +
         kron(Matrix::Identity(ds, ds), m.h_e.matrix()) + m.h_i.matrix();
}

double commutator_norm(const UnitaryModel& m) {
  const Matrix he = kron(Matrix::Identity(m.h_s.dim(), m.h_s.dim()), m.h_e.matrix());
  return max_abs(he * m.h_i.matrix() - m.h_i.matrix() * he);
}

bool check_commuting_exception(const UnitaryModel& m) {
  return commutator_norm(m) < tol::kConstruction;
}

Matrix UnitaryEnsembleMember::unitary(double t) const {
  return matrix_exp(Complex(0.0, -t) * hamiltonian);
}

Matrix UnitaryEnsembleMember::evolve(const Matrix& rho_s, double t) const {
  const Matrix u = unitary(t);
  return u * rho_s * u.adjoint();
}

Matrix RandomUnitaryEnsemble::reduced_state(const Matrix& rho_s, double t) const {
  Matrix out = Matrix::Zero(rho_s.rows(), rho_s.cols());
  for (const auto& m : members) out += m.weight * m.evolve(rho_s, t);
  return out;
}

RandomUnitaryEnsemble random_unitary_decomposition(const UnitaryModel& m, const Matrix& env_basis,
                                                   std::span<const double> check_times) {
  const Index ds = m.h_s.dim();
  const Index de = m.h_e.dim();
  const Index d = ds * de;
  if (env_basis.rows() != de || env_basis.cols() != de)
    throw DimensionError("random_unitary_decomposition: basis must be de x de");
  if (max_abs(env_basis.adjoint() * env_basis - Matrix::Identity(de, de)) > tol::kConstruction)
    throw InvariantError("random_unitary_decomposition: basis is not orthonormal");

  static constexpr std::array<double, 3> kDefaultTimes = {0.37, 1.0, 2.9};
  if (check_times.empty()) check_times = kDefaultTimes;

  const Matrix ht = total_hamiltonian(m);
  std::vector<Matrix> iso(static_cast<std::size_t>(de));  // I_s kron |e>
  std::vector<Matrix> heff(static_cast<std::size_t>(de));
  for (Index e = 0; e < de; ++e) {
    iso[e] = kron(Matrix::Identity(ds, ds), Matrix(env_basis.col(e)));
    heff[e] = iso[e].adjoint() * ht * iso[e];
  }

  double residual = 0.0;
  for (double t : check_times) {
    const Matrix u = matrix_exp(Complex(0.0, -t) * ht);
    for (Index e = 0; e < de; ++e) {
      const Matrix a = iso[e].adjoint() * u;  // <e| U, ds x d
      const Matrix ue = matrix_exp(Complex(0.0, -t) * heff[e]);
      const Matrix b = ue * iso[e].adjoint();  // T_e acting on <e|.|e>
      // <e|U |p><q| U^+|e> versus u_e <e|p><q|e> u_e^+ for every basis |p><q|.
      for (Index q = 0; q < d; ++q)
        for (Index p = 0; p < d; ++p) {
          const Matrix diff = a.col(p) * a.col(q).adjoint() - b.col(p) * b.col(q).adjoint();
          residual = std::max(residual, max_abs(diff));
        }
    }
  }
  if (!(residual < tol::kPropagation))
    throw InvariantError("random_unitary_decomposition: diagonal propagator condition fails (residual " +
                         std::to_string(residual) + ")");

  RandomUnitaryEnsemble out;
  out.verification_residual = residual;
  const Matrix& rho_e = m.initial_env.matrix();
  for (Index e = 0; e < de; ++e) {
    const double w = (env_basis.col(e).adjoint() * rho_e * env_basis.col(e))(0).real();
    Matrix h = heff[e];
    h -= (h.trace() / static_cast<double>(ds)) * Matrix::Identity(ds, ds);
    bool merged = false;
    for (auto& member : out.members) {
      if (max_abs(member.hamiltonian - h) < 1e-12) {
        member.weight += w;
        merged = true;
        break;
      }
    }
    if (!merged) out.members.push_back({w, std::move(h)});
  }
  return out;
}

BipartiteModel born_markov_model(const Superoperator& system_generator, const DensityMatrix& env) {
  return QuantumBystanderModel{system_generator, Superoperator::zero(env.dim()), {}, env};
}

Superoperator environment_marginal_generator(const QuantumBystanderModel& m) {
  const Index de = m.environment_generator.dim();
  std::vector<JumpOperator> jumps;
  jumps.reserve(m.collisions.size());
  for (const auto& c : m.collisions) jumps.push_back({c.env_operator, c.rate});
  return m.environment_generator + lindblad_superoperator(Operator::zero(de), jumps);
}

StochasticEnvModel depolarizing_as_stochastic(const DepolarizingModel& m, double t) {
  const double g = m.gamma_at(t);
  const double f = m.phi_at(t);
  StochasticEnvModel s;
  s.generators.assign(4, Superoperator::zero(2));
  s.rates = Eigen::MatrixXd::Zero(4, 4);
  s.jump_maps.assign(16, Superoperator::identity(2));
  for (Index k = 0; k < 3; ++k) {
    const Superoperator flip = sandwich(pauli(static_cast<int>(k) + 1), pauli(static_cast<int>(k) + 1));
    s.rates(k, 3) = g / 3.0;
    s.rates(3, k) = f;
    s.jump_maps[static_cast<std::size_t>(k * 4 + 3)] = flip;
    s.jump_maps[static_cast<std::size_t>(3 * 4 + k)] = flip;
  }
  s.initial_populations.assign(m.initial_populations.begin(), m.initial_populations.end());
  return s;
}

QuantumBystanderModel depolarizing_as_bystander(const DepolarizingModel& m, double t) {
  const double g = m.gamma_at(t);
  const double f = m.phi_at(t);
  Matrix he = Matrix::Zero(4, 4);
  for (Index k = 0; k < 3; ++k) {
    he(k, 3) = m.omega / 2.0;
    he(3, k) = m.omega / 2.0;
  }
  std::vector<Collision> collisions;
  for (Index k = 0; k < 3; ++k) {
    Matrix b = Matrix::Zero(4, 4);
    b(k, 3) = 1.0;  // |k><4|
    const Superoperator flip = sandwich(pauli(static_cast<int>(k) + 1), pauli(static_cast<int>(k) + 1));
    collisions.push_back({Operator(b), g / 3.0, flip});
    collisions.push_back({Operator(Matrix(b.adjoint())), f, flip});
  }
  return QuantumBystanderModel{Superoperator::zero(2),
                               lindblad_superoperator(Operator(he), {}),
                               std::move(collisions),
                               DensityMatrix::diagonal(m.initial_populations)};
}

}  // namespace qflow
