// Copyright 2026 The qsep Authors
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

#include <numeric>
#include <sstream>

#include "qsep/qlinalg.hpp"

namespace qsep {
namespace {

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < N; ++p)
    for (std::size_t q = 0; q < N; ++q)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

// Applies the unitary G that is the identity outside the (p, q) block and
//   G_pp = c, G_pq = s e^{i phi}, G_qp = -s e^{-i phi}, G_qq = c
// as a <- G^dagger a G and v <- v G.
template <std::size_t N>
void rotate(Matrix<N>& a, Matrix<N>& v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;

  const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex gpq = s * phase;
  const Complex gqp = -s * std::conj(phase);

  // Columns: a <- a G, v <- v G.
  for (std::size_t r = 0; r < N; ++r) {
    const Complex arp = a(r, p), arq = a(r, q);
    a(r, p) = arp * c + arq * gqp;
    a(r, q) = arp * gpq + arq * c;
    const Complex vrp = v(r, p), vrq = v(r, q);
    v(r, p) = vrp * c + vrq * gqp;
    v(r, q) = vrp * gpq + vrq * c;
  }
  // Rows: a <- G^dagger a.
  for (std::size_t k = 0; k < N; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

template <std::size_t N>
EigenSystemN<N> jacobi(const Matrix<N>& h) {
  Matrix<N> a = h.hermitian_part();
  Matrix<N> v = Matrix<N>::identity();

  const double scale = a.frobenius_norm();
  const double threshold = 1e-14 * scale;
  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) rotate(a, v, p, q);
  }
  if (!converged && off_diagonal_norm(a) > threshold) {
    std::ostringstream msg;
    msg << "Jacobi did not converge in " << kJacobiMaxSweeps
        << " sweeps (off-diagonal norm " << off_diagonal_norm(a) << ", threshold "
        << threshold << ")";
    throw Error(ErrorCode::NoConvergence, msg.str());
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  EigenSystemN<N> es;
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t col = order[i];
    es.values[i] = a(col, col).real();
    Ket<N> vec;
    for (std::size_t r = 0; r < N; ++r) vec[r] = v(r, col);
    es.vectors[i] = fix_phase(normalized(vec));
  }
  return es;
}

}  // namespace

EigenSystem hermitian_eig(const Matrix4& h) { return jacobi(h); }
EigenSystem2 hermitian_eig(const Matrix2& h) { return jacobi(h); }

}  // namespace qsep
