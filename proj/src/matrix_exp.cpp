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

// Scaling and squaring with diagonal Pade approximants of order 3..13.
// Order and squaring depth follow the backward-error bounds of Higham,
// "The scaling and squaring method for the matrix exponential revisited"
// (SIAM J. Matrix Anal. Appl. 26, 2005).

#include <array>
#include <cmath>

#include <Eigen/LU>

#include "qflow/qcore.hpp"

namespace qflow {

namespace {

constexpr std::array<double, 4> kTheta = {1.495585217958292e-2, 2.539398330063230e-1,
                                          9.504178996162932e-1, 2.097847961257068e0};
constexpr double kTheta13 = 5.371920351148152e0;

constexpr std::array<double, 4> kB3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kB5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kB7 = {17297280., 8648640., 1995840., 277200.,
                                       25200.,    1512.,    56.,      1.};
constexpr std::array<double, 10> kB9 = {17643225600., 8821612800., 2075673600., 302702400.,
                                        30270240.,    2162160.,    110880.,     3960.,
                                        90.,          1.};
constexpr std::array<double, 14> kB13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
    129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
    1323241920.,        40840800.,          960960.,           16380.,
    182.,               1.};

double one_norm(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

Matrix solve_pade(const Matrix& u, const Matrix& v) {
  return (v - u).partialPivLu().solve(v + u);
}

// Low orders: U = A * sum_odd b_k A^(k-1), V = sum_even b_k A^k.
template <std::size_t N>
Matrix pade_low(const Matrix& a, const std::array<double, N>& b) {
  const Index n = a.rows();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  Matrix power = id;
  Matrix u_inner = Matrix::Zero(n, n);
  Matrix v = Matrix::Zero(n, n);
  for (std::size_t k = 0; k + 1 < N; k += 2) {
    v += b[k] * power;
    u_inner += b[k + 1] * power;
    power = power * a2;
  }
  return solve_pade(a * u_inner, v);
}

}  // namespace

Matrix matrix_exp(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_exp: matrix must be square");
  if (!m.allFinite()) throw InvariantError("matrix_exp: non-finite input");
  const Index n = m.rows();
  if (n == 0) return m;

  const double norm = one_norm(m);
  if (norm == 0.0) return Matrix::Identity(n, n);
  if (norm <= kTheta[0]) return pade_low(m, kB3);
  if (norm <= kTheta[1]) return pade_low(m, kB5);
  if (norm <= kTheta[2]) return pade_low(m, kB7);
  if (norm <= kTheta[3]) return pade_low(m, kB9);

  int squarings = 0;
  if (norm > kTheta13) squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  const Matrix a = m / std::ldexp(1.0, squarings);

  const Matrix id = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const auto& b = kB13;
  const Matrix u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                        b[3] * a2 + b[1] * id);
  const Matrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                   b[2] * a2 + b[0] * id;
  Matrix r = solve_pade(u, v);
  for (int k = 0; k < squarings; ++k) r = r * r;
  return r;
}

}  // namespace qflow
