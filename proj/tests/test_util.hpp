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

#include <Eigen/Eigenvalues>

#include "qflow/qcore.hpp"

namespace qflow::test {

// exp(A) through a full eigendecomposition; only valid for diagonalizable A.
inline Matrix eig_exp(const Matrix& a) {
  Eigen::ComplexEigenSolver<Matrix> es(a);
  const Matrix v = es.eigenvectors();
  const Vector d = es.eigenvalues().array().exp();
  return v * d.asDiagonal() * v.inverse();
}

inline Matrix ket(Index d, Index k) { return DensityMatrix::basis_state(d, k).matrix(); }

}  // namespace qflow::test
