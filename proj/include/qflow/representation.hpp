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

#include "qflow/qcore.hpp"

namespace qflow {

// Two storage layouts for a bipartite system-environment state.
//
//  Quantum:   vec of the full (ds*de) x (ds*de) density matrix, system
//             factor first in the Kronecker order.
//  Classical: environment is a set of Nc orthogonal classical labels with no
//             coherences between them; the state is the concatenation
//             [vec(rho~_0), ..., vec(rho~_{Nc-1})] of unnormalized system
//             blocks, rho^{se} = sum_c rho~_c kron |c><c|.
enum class Representation { Quantum, Classical };

struct Layout {
  Representation rep = Representation::Quantum;
  Index ds = 0;
  Index de = 0;  // environment dimension, or Nc for Classical

  Index size() const {
    return rep == Representation::Quantum ? (ds * de) * (ds * de) : ds * ds * de;
  }
  BipartiteDims dims() const { return {ds, de}; }
  bool operator==(const Layout&) const = default;
};

/// Linear functional v -> Tr(state(v)).
Eigen::RowVectorXcd trace_functional(const Layout& layout);

class BipartiteState {
 public:
  BipartiteState(Layout layout, Vector data);

  /// rho_s kron rho_e. For the classical layout rho_e must be diagonal.
  static BipartiteState product(const Layout& layout, const Matrix& rho_s,
                                const Matrix& rho_e);

  const Layout& layout() const { return layout_; }
  const Vector& data() const { return data_; }
  Vector& data() { return data_; }

  Complex trace() const;
  Matrix system_marginal() const;
  Matrix environment_marginal() const;
  /// Tr_s[(E kron I) X]: unnormalized environment state after a system
  /// effect E was registered.
  Matrix environment_after_effect(const Matrix& effect) const;
  /// Probability-like weight Tr[(E kron I) X].
  double effect_weight(const Matrix& effect) const;
  Matrix full_matrix() const;

  /// Replaces every block by its Hermitian part.
  void symmetrize();

 private:
  Layout layout_;
  Vector data_;
};

/// Linear generator on a bipartite layout.
struct Generator {
  Layout layout;
  Matrix matrix;

  double trace_preservation_residual() const {
    return max_abs(trace_functional(layout) * matrix);
  }
};

}  // namespace qflow
