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

#include "qsep/qlinalg.hpp"

#include <sstream>

namespace qsep {

double rank_cutoff(const EigenSystem& es, double tol) {
  double largest = 0.0;
  for (double v : es.values) largest = std::max(largest, std::abs(v));
  return tol * std::max(1.0, largest);
}

int numerical_rank(const EigenSystem& es, double tol) {
  const double cut = rank_cutoff(es, tol);
  int r = 0;
  for (double v : es.values)
    if (std::abs(v) > cut) ++r;
  return r;
}

int numerical_rank(const Matrix4& h, double tol) {
  return numerical_rank(hermitian_eig(h), tol);
}

RangeSplit range_projector(const EigenSystem& es, double tol) {
  const double cut = rank_cutoff(es, tol);
  RangeSplit out;
  for (std::size_t i = 0; i < 4; ++i) {
    if (std::abs(es.values[i]) > cut) {
      out.range.push_back(es.vectors[i]);
      out.projector += projector(es.vectors[i]);
    } else {
      out.kernel.push_back(es.vectors[i]);
    }
  }
  return out;
}

RangeSplit range_projector(const Matrix4& h, double tol) {
  return range_projector(hermitian_eig(h), tol);
}

DensityMatrix validate_density(const Matrix4& m, double psd_tol) {
  if (!m.all_finite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");

  const double defect = m.hermiticity_defect();
  if (defect > kHermitianTol) {
    std::ostringstream msg;
    msg << "max |M_ij - conj(M_ji)| = " << defect << " exceeds " << kHermitianTol;
    throw Error(ErrorCode::NotHermitian, msg.str());
  }
  Matrix4 h = m.hermitian_part();
  const EigenSystem es = hermitian_eig(h);

  if (es.values[0] < -psd_tol) {
    std::ostringstream msg;
    msg << "minimum eigenvalue " << es.values[0] << " is below -" << psd_tol;
    throw Error(ErrorCode::NotPositive, msg.str());
  }
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg << "trace " << tr << " differs from 1 by " << std::abs(tr - 1.0)
        << " (limit " << kTraceTol << ")";
    throw Error(ErrorCode::BadTrace, msg.str());
  }

  if (es.values[0] < 0.0) {
    h = Matrix4();
    for (std::size_t i = 0; i < 4; ++i)
      if (es.values[i] > 0.0) h += es.values[i] * projector(es.vectors[i]);
  }
  h *= Complex(1.0 / h.trace().real());
  return DensityMatrix(h);
}

Matrix4 partial_transpose(const Matrix4& m) {
  Matrix4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t b = 0; b < 2; ++b)
          out(2 * i + a, 2 * j + b) = m(2 * i + b, 2 * j + a);
  return out;
}

Matrix2 partial_trace(const Matrix4& m, Subsystem keep) {
  Matrix2 out;
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t k = 0; k < 2; ++k)
        out(x, y) += keep == Subsystem::A ? m(2 * x + k, 2 * y + k)
                                          : m(2 * k + x, 2 * k + y);
  return out;
}

Ket4 SchmidtForm::assemble() const {
  Ket4 out{};
  for (std::size_t k = 0; k < 2; ++k) {
    const Ket4 term = kron(left[k], right[k]);
    for (std::size_t i = 0; i < 4; ++i) out[i] += coefficients[k] * term[i];
  }
  return out;
}

SchmidtForm schmidt_decompose(const Ket4& psi) {
  // psi_{ab} = sum_k c_k g_k[a] h_k[b]. The g_k diagonalise M M^dagger and
  // h_k = M^T conj(g_k) / c_k.
  const Matrix2 m = reshape(psi);
  const Matrix2 mmh = m * m.adjoint();
  const EigenSystem2 es = hermitian_eig(mmh);

  SchmidtForm out;
  const double c1 = std::sqrt(std::max(es.values[1], 0.0));
  if (c1 == 0.0) {
    out.left = {Ket2{1.0, 0.0}, Ket2{0.0, 1.0}};
    out.right = out.left;
    return out;
  }
  const double c2 = std::min(std::abs(amplitude_determinant(psi)) / c1, c1);

  const Ket2 g1 = es.vectors[1];
  const Ket2 g2 = fix_phase(orthogonal_complement(g1));
  // M^T conj(g)
  auto pull = [&](const Ket2& g) {
    return Ket2{m(0, 0) * std::conj(g[0]) + m(1, 0) * std::conj(g[1]),
                m(0, 1) * std::conj(g[0]) + m(1, 1) * std::conj(g[1])};
  };
  const Ket2 h1 = normalized(pull(g1));
  // h2 is fixed up to phase by orthogonality to h1; take the phase from the
  // (possibly tiny) image of g2.
  Ket2 h2 = orthogonal_complement(h1);
  const Complex overlap = inner(h2, pull(g2));
  if (std::abs(overlap) > 1e-300) h2 = (overlap / std::abs(overlap)) * h2;

  out.coefficients = {c1, c2};
  out.left = {g1, g2};
  out.right = {h1, h2};
  return out;
}

bool is_product_vector(const Ket4& psi, double tol) {
  return std::abs(amplitude_determinant(psi)) <= tol;
}

bool is_product_state(const DensityMatrix& rho, double tol) {
  const Matrix4 prod = kron(partial_trace(rho, Subsystem::A), partial_trace(rho, Subsystem::B));
  return (rho.matrix() - prod).frobenius_norm() <= tol;
}

double von_neumann_entropy(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double v : eigenvalues)
    if (v > 0.0) s -= v * std::log(v);
  return s;
}

double index_of_correlation(const DensityMatrix& rho) {
  const auto whole = hermitian_eig(rho.matrix()).values;
  const auto a = hermitian_eig(partial_trace(rho, Subsystem::A)).values;
  const auto b = hermitian_eig(partial_trace(rho, Subsystem::B)).values;
  return von_neumann_entropy(a) + von_neumann_entropy(b) - von_neumann_entropy(whole);
}

}  // namespace qsep
