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

#include <optional>
#include <string>
#include <vector>

#include "qflow/evolve.hpp"
#include "qflow/qcore.hpp"

namespace qflow {

/// Projective measurement: orthonormal basis (columns) plus a real outcome
/// value per basis vector. Effects and post-measurement states are both
/// |m><m|.
class MeasurementSpec {
 public:
  MeasurementSpec(Matrix basis, std::vector<double> outcomes);

  /// Computational basis. Two-outcome qubit measurements default to the
  /// Pauli eigenvalues (+1, -1); larger dimensions to 0..d-1.
  static MeasurementSpec computational(Index dim);
  /// Eigenbasis of sigma_x / sigma_y / sigma_z ('x', 'y', 'z'), outcomes +1, -1.
  static MeasurementSpec pauli(char axis);

  Index size() const { return basis_.cols(); }
  Index dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  double outcome(Index m) const { return outcomes_[static_cast<std::size_t>(m)]; }
  const std::vector<double>& outcomes() const { return outcomes_; }
  Matrix effect(Index m) const;
  Matrix post_state(Index m) const { return effect(m); }

 private:
  Matrix basis_;
  std::vector<double> outcomes_;
};

/// Past (x), present (y), and future (z) measurements.
struct MeasurementTriple {
  MeasurementSpec past;
  MeasurementSpec present;
  MeasurementSpec future;

  static MeasurementTriple all(const MeasurementSpec& m) { return {m, m, m}; }
};

/// Resampling policy p(y|x) of the random scheme: rows x, columns y.
class RandomSchemePolicy {
 public:
  explicit RandomSchemePolicy(Eigen::MatrixXd probabilities);
  static RandomSchemePolicy uniform(Index nx, Index ny);

  double operator()(Index y, Index x) const { return p_(x, y); }
  const Eigen::MatrixXd& matrix() const { return p_; }

 private:
  Eigen::MatrixXd p_;
};

enum class Scheme { Deterministic, Random };

std::string to_string(Scheme s);

/// Joint probability tensor P(z, y, x).
class JointDistribution {
 public:
  JointDistribution(Index nz, Index ny, Index nx);

  Index nz() const { return nz_; }
  Index ny() const { return ny_; }
  Index nx() const { return nx_; }
  double& operator()(Index z, Index y, Index x) { return p_[index(z, y, x)]; }
  double operator()(Index z, Index y, Index x) const { return p_[index(z, y, x)]; }
  double total() const;
  double min() const;

 private:
  std::size_t index(Index z, Index y, Index x) const {
    return static_cast<std::size_t>((z * ny_ + y) * nx_ + x);
  }
  Index nz_, ny_, nx_;
  std::vector<double> p_;
};

/// Three-measurement joint probability in the deterministic scheme: the
/// environment entering the second interval is conditioned on the
/// intermediate outcome.
JointDistribution cpf_joint_deterministic(const Dynamics& dyn, const Matrix& rho0_s,
                                          const Matrix& env0, const MeasurementTriple& specs,
                                          double t, double tau);

/// Random scheme: the post-measurement system state is resampled from
/// p(y|x) and the environment entering the second interval is the
/// unconditioned marginal at t.
JointDistribution cpf_joint_random(const Dynamics& dyn, const Matrix& rho0_s, const Matrix& env0,
                                   const MeasurementTriple& specs, const RandomSchemePolicy& policy,
                                   double t, double tau);

/// C_pf|y = sum_{z,x} z x [P(z,x|y) - P(z|y) P(x|y)], one entry per y.
/// Entries with P(y) < 1e-12 are undefined (nullopt), never zero.
std::vector<std::optional<double>> cpf_correlation(const JointDistribution& p,
                                                   const MeasurementTriple& specs);

/// max |P(z,y,x) - P(z|y) P(y|x) P(x)|.
double markov_factorization_gap(const JointDistribution& p);

inline constexpr double kRevivalTolerance = 1e-6;

struct BoundSeries {
  std::vector<double> env_distance;  // D(rho_e, sigma_e)
  std::vector<double> corr_rho;      // D(rho_se, rho_s kron rho_e)
  std::vector<double> corr_sigma;    // D(sigma_se, sigma_s kron sigma_e)
};

struct TdTrace {
  std::vector<double> times;
  std::vector<double> distances;
  /// revivals[i] iff distances[i+1] - distances[i] > tolerance; last entry false.
  std::vector<bool> revivals;
  std::optional<BoundSeries> bounds;

  bool any_revival() const;
  /// Largest single-step increase (negative when strictly decreasing).
  double max_increase() const;
};

/// Trace distance between the system marginals of two runs that share the
/// initial environment state.
TdTrace td_series(const Dynamics& dyn, const Matrix& rho0_s, const Matrix& sigma0_s,
                  const Matrix& env0, const TimeGrid& grid, bool with_bounds = false,
                  double revival_tolerance = kRevivalTolerance);

/// Terms of D(rho_{t+tau}, sigma_{t+tau}) <= D(rho_t, sigma_t) + D_env +
/// corr_rho + corr_sigma.
struct BoundTerms {
  double increment = 0.0;  // D(t+tau) - D(t)
  double env_distance = 0.0;
  double corr_rho = 0.0;
  double corr_sigma = 0.0;
  /// env_distance + corr_rho + corr_sigma - increment; a theorem makes it >= 0.
  double slack = 0.0;
};

BoundTerms td_bound_terms(const Dynamics& dyn, const Matrix& rho0_s, const Matrix& sigma0_s,
                          const Matrix& env0, double t, double tau);

}  // namespace qflow
