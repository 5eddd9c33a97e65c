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

#include "qflow/representation.hpp"

namespace qflow {

namespace {

Matrix block(const Vector& data, Index ds, Index c) {
  return Eigen::Map<const Matrix>(data.data() + c * ds * ds, ds, ds);
}

}  // namespace

Eigen::RowVectorXcd trace_functional(const Layout& layout) {
  Eigen::RowVectorXcd tr = Eigen::RowVectorXcd::Zero(layout.size());
  if (layout.rep == Representation::Quantum) {
    const Index d = layout.ds * layout.de;
    for (Index i = 0; i < d; ++i) tr(i + i * d) = 1.0;
  } else {
    const Index ds = layout.ds;
    for (Index c = 0; c < layout.de; ++c)
      for (Index i = 0; i < ds; ++i) tr(c * ds * ds + i + i * ds) = 1.0;
  }
  return tr;
}

BipartiteState::BipartiteState(Layout layout, Vector data)
    : layout_(layout), data_(std::move(data)) {
  if (data_.size() != layout_.size())
    throw DimensionError("BipartiteState: data length does not match layout");
}

BipartiteState BipartiteState::product(const Layout& layout, const Matrix& rho_s,
                                       const Matrix& rho_e) {
  if (rho_s.rows() != layout.ds || rho_s.cols() != layout.ds)
    throw DimensionError("BipartiteState::product: system state dimension mismatch");
  if (rho_e.rows() != layout.de || rho_e.cols() != layout.de)
    throw DimensionError("BipartiteState::product: environment state dimension mismatch");
  if (layout.rep == Representation::Quantum) return {layout, vec(kron(rho_s, rho_e))};

  const Matrix off = rho_e - Matrix(rho_e.diagonal().asDiagonal());
  if (max_abs(off) > tol::kConstruction)
    throw InvariantError("classical environment state must be diagonal");
  const Index ds = layout.ds;
  Vector v(layout.size());
  for (Index c = 0; c < layout.de; ++c)
    v.segment(c * ds * ds, ds * ds) = vec(rho_s) * rho_e(c, c).real();
  return {layout, std::move(v)};
}

Complex BipartiteState::trace() const { return (trace_functional(layout_) * data_)(0); }

Matrix BipartiteState::system_marginal() const {
  if (layout_.rep == Representation::Quantum)
    return partial_trace(unvec(data_, layout_.ds * layout_.de), layout_.dims(), Keep::System);
  Matrix out = Matrix::Zero(layout_.ds, layout_.ds);
  for (Index c = 0; c < layout_.de; ++c) out += block(data_, layout_.ds, c);
  return out;
}

Matrix BipartiteState::environment_marginal() const {
  if (layout_.rep == Representation::Quantum)
    return partial_trace(unvec(data_, layout_.ds * layout_.de), layout_.dims(),
                         Keep::Environment);
  Matrix out = Matrix::Zero(layout_.de, layout_.de);
  for (Index c = 0; c < layout_.de; ++c) out(c, c) = block(data_, layout_.ds, c).trace();
  return out;
}

Matrix BipartiteState::environment_after_effect(const Matrix& effect) const {
  if (effect.rows() != layout_.ds || effect.cols() != layout_.ds)
    throw DimensionError("environment_after_effect: effect dimension mismatch");
  if (layout_.rep == Representation::Quantum) {
    const Index de = layout_.de;
    const Matrix x = unvec(data_, layout_.ds * de);
    const Matrix lifted = kron(effect, Matrix::Identity(de, de));
    return partial_trace(Matrix(lifted * x), layout_.dims(), Keep::Environment);
  }
  Matrix out = Matrix::Zero(layout_.de, layout_.de);
  for (Index c = 0; c < layout_.de; ++c)
    out(c, c) = (effect * block(data_, layout_.ds, c)).trace();
  return out;
}

double BipartiteState::effect_weight(const Matrix& effect) const {
  return environment_after_effect(effect).trace().real();
}

Matrix BipartiteState::full_matrix() const {
  if (layout_.rep == Representation::Quantum) return unvec(data_, layout_.ds * layout_.de);
  const Index ds = layout_.ds;
  const Index de = layout_.de;
  Matrix out = Matrix::Zero(ds * de, ds * de);
  for (Index c = 0; c < de; ++c) {
    const Matrix b = block(data_, ds, c);
    for (Index j = 0; j < ds; ++j)
      for (Index i = 0; i < ds; ++i) out(i * de + c, j * de + c) = b(i, j);
  }
  return out;
}

void BipartiteState::symmetrize() {
  if (layout_.rep == Representation::Quantum) {
    const Index d = layout_.ds * layout_.de;
    data_ = vec(hermitian_part(unvec(data_, d)));
    return;
  }
  const Index ds = layout_.ds;
  for (Index c = 0; c < layout_.de; ++c)
    data_.segment(c * ds * ds, ds * ds) = vec(hermitian_part(block(data_, ds, c)));
}

}  // namespace qflow
