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

// Two-qubit state utilities: validation, partial transpose and trace, the
// Hermitian eigensolver, ranks and ranges, Schmidt form, entropies.
//
// All functions are pure; no state is shared between calls.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "qsep/error.hpp"
#include "qsep/linalg.hpp"

namespace qsep {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kRankTol = 1e-9;
inline constexpr double kProductVectorTol = 1e-10;
inline constexpr double kProductStateTol = 1e-9;

/// Tolerances shared by the decomposition pipeline and the command line.
struct Tolerances {
  double rank = kRankTol;
  double psd = kPsdTol;
  double recon = 1e-8;
};

// --- eigensystems -------------------------------------------------------------

/// Eigenvalues in ascending order with orthonormal eigenvectors. Each
/// eigenvector has its first non-negligible component real and positive.
template <std::size_t N>
struct EigenSystemN {
  std::array<double, N> values{};
  std::array<Ket<N>, N> vectors{};

  /// sum_i values[i] |v_i><v_i|
  Matrix<N> reconstruct() const {
    Matrix<N> m;
    for (std::size_t i = 0; i < N; ++i) m += values[i] * projector(vectors[i]);
    return m;
  }
};

using EigenSystem = EigenSystemN<4>;
using EigenSystem2 = EigenSystemN<2>;

inline constexpr int kJacobiMaxSweeps = 100;

/// Cyclic complex Jacobi. Stops once the off-diagonal Frobenius norm is below
/// 1e-14 ||H||_F; throws NoConvergence after kJacobiMaxSweeps sweeps. Only the
/// Hermitian part of `h` is used.
EigenSystem hermitian_eig(const Matrix4& h);
EigenSystem2 hermitian_eig(const Matrix2& h);

/// Count of eigenvalues with |lambda| > tol * max(1, max |lambda|).
int numerical_rank(const Matrix4& h, double tol = kRankTol);
int numerical_rank(const EigenSystem& es, double tol = kRankTol);

/// Threshold below which an eigenvalue of `es` counts as zero.
double rank_cutoff(const EigenSystem& es, double tol = kRankTol);

struct RangeSplit {
  Matrix4 projector;
  std::vector<Ket4> range;   // eigenvectors with |lambda| above the cutoff, ascending
  std::vector<Ket4> kernel;  // orthonormal complement
};

/// Orthogonal projector onto the range. Uses the same cutoff as
/// numerical_rank so that rank and range never disagree.
RangeSplit range_projector(const Matrix4& h, double tol = kRankTol);
RangeSplit range_projector(const EigenSystem& es, double tol = kRankTol);

// --- density matrices ---------------------------------------------------------

/// A validated two-qubit state: Hermitian, positive semidefinite, unit trace.
/// Obtainable only through validate_density.
class DensityMatrix {
 public:
  const Matrix4& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  explicit DensityMatrix(const Matrix4& m) : m_(m) {}
  friend DensityMatrix validate_density(const Matrix4& m, double psd_tol);

  Matrix4 m_;
};

/// Checks Hermiticity (1e-12), positivity (min eigenvalue >= -psd_tol) and
/// trace (|tr - 1| <= 1e-10). Eigenvalues in [-psd_tol, 0) are clipped to
/// zero and the matrix rebuilt; the trace is then renormalised to 1.
/// Throws NonFinite, NotHermitian, NotPositive or BadTrace.
DensityMatrix validate_density(const Matrix4& m, double psd_tol = kPsdTol);

/// Transposes the subsystem-B indices: <i a|out|j b> = <i b|in|j a>.
Matrix4 partial_transpose(const Matrix4& m);
inline Matrix4 partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.matrix());
}

enum class Subsystem { A, B };

/// Reduced state on `keep`; the other subsystem is traced out.
Matrix2 partial_trace(const Matrix4& m, Subsystem keep);
inline Matrix2 partial_trace(const DensityMatrix& rho, Subsystem keep) {
  return partial_trace(rho.matrix(), keep);
}

// --- pure states --------------------------------------------------------------

/// psi = c1 |g1>|h1> + c2 |g2>|h2>, c1 >= c2 >= 0.
struct SchmidtForm {
  std::array<double, 2> coefficients{};
  std::array<Ket2, 2> left{};
  std::array<Ket2, 2> right{};

  Ket4 assemble() const;
};

/// The smaller coefficient is computed as |det(reshape psi)| / c1, which stays
/// accurate for nearly-product vectors.
SchmidtForm schmidt_decompose(const Ket4& psi);

/// |det(reshape psi)| <= tol for normalised psi.
bool is_product_vector(const Ket4& psi, double tol = kProductVectorTol);

// --- correlations -------------------------------------------------------------

/// ||rho - Tr_B rho (x) Tr_A rho||_F <= tol
bool is_product_state(const DensityMatrix& rho, double tol = kProductStateTol);

/// -sum lambda ln lambda over the positive eigenvalues (0 ln 0 = 0).
double von_neumann_entropy(std::span<const double> eigenvalues);

/// S(rho_A) + S(rho_B) - S(rho), natural logarithm.
double index_of_correlation(const DensityMatrix& rho);

}  // namespace qsep
