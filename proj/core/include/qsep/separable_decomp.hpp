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

// Separability of two-qubit states and their decomposition into the fewest
// pure product states.
//
// A PPT state is peeled apart by repeatedly subtracting a product projector
// |v><v| with the largest weight that keeps both rho and rho^{T_B} positive,
// so that r(rho) + r(rho^{T_B}) drops at every step. The product vector is
// chosen by the current pair of ranks:
//
//   (4, 4)  a product with equal weight limits for rho and rho^{T_B}
//           (five-term mode: the dominant Schmidt product of the top
//           eigenvector instead)
//   (3, 4)  a product in the range of the rank-3 side
//   (3, 3)  a product in both ranges
//   (2, 2)  split of the range plane into its two product vectors
//   (1, 1)  the state itself
//
// This yields max(r(rho), r(rho^{T_B})) terms.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsep/product_geometry.hpp"
#include "qsep/qlinalg.hpp"

namespace qsep {

struct MixtureTerm {
  double weight = 0.0;
  ProductState state;
};

/// sum_i p_i |e_i f_i><e_i f_i|. Plain value; see check_local_mixture for the
/// invariants a decomposition must satisfy.
struct LocalMixture {
  std::vector<MixtureTerm> terms;

  std::size_t size() const noexcept { return terms.size(); }
  double total_weight() const;
  Matrix4 assemble() const;
};

struct PptReport {
  bool is_ppt = true;
  double min_eigenvalue = 0.0;
  std::optional<Ket4> negative_eigenvector;
};

/// Positivity of the partial transpose; in 2 x 2 this is equivalent to
/// separability. Eigenvalues above -psd_tol count as non-negative.
PptReport is_ppt(const DensityMatrix& rho, double psd_tol = kPsdTol);

/// Largest s with rho - s |v><v| >= 0, i.e. 1 / <v|rho^+|v> with the inverse
/// taken on the range. Throws NotInRange if v has a component outside the
/// range larger than `range_tol`.
double max_weight(const DensityMatrix& rho, const Ket4& v, double rank_tol = kRankTol,
                  double range_tol = 1e-9);

/// (rho - p |v><v|) / (1 - p), validated. Throws BreaksPositivity when p
/// exceeds the maximal weight beyond the PSD tolerance.
DensityMatrix subtract(const DensityMatrix& rho, const Ket4& v, double p,
                       double psd_tol = kPsdTol);

/// Rank pair (r(rho), r(rho^{T_B})) recorded before each subtraction.
using RankPath = std::vector<std::pair<int, int>>;

/// Decomposition with at most five terms: the first product is arbitrary
/// (dominant Schmidt product of the leading eigenvector). Throws NotSeparable
/// for NPT input.
LocalMixture five_term_decomposition(const DensityMatrix& rho, const Tolerances& tol = {},
                                     RankPath* path = nullptr);

/// Product |e,f> with s = 1/<ef|rho^-1|ef> equal to
/// sbar = 1/<ef*|(rho^{T_B})^-1|ef*> to relative 1e-10, for full-rank rho and
/// rho^{T_B}. Seed terms are checked first; otherwise g = s - sbar is bisected
/// along a great-circle path (on both Bloch spheres) between a seed term
/// with g > 0 and one with g < 0. Throws NoSignChange if the seed terms all
/// share one strict sign.
ProductState find_equal_weight_product(const DensityMatrix& rho, const LocalMixture& seed,
                                       double rank_tol = kRankTol);

inline constexpr double kPlaneFitTol = 1e-8;

/// Two-term decomposition of a rank-2 PPT state. Throws InconsistentPlane if
/// the range plane has a single product vector, the weights fall outside
/// (0, 1), or the least-squares fit misses rho by more than kPlaneFitTol.
LocalMixture decompose_rank2(const DensityMatrix& rho, double rank_tol = kRankTol);

/// Minimal decomposition with max(r(rho), r(rho^{T_B})) <= 4 terms. Throws
/// NotSeparable for NPT input and Internal if the result fails the
/// reconstruction tolerance.
LocalMixture decompose(const DensityMatrix& rho, const Tolerances& tol = {},
                       RankPath* path = nullptr);

// --- verification -----------------------------------------------------------

struct CheckEntry {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
};

struct VerificationReport {
  std::vector<CheckEntry> checks;

  bool passed() const;
  void add(std::string name, double measured, double threshold);
  /// Adds a check that passes when measured >= threshold.
  void add_at_least(std::string name, double measured, double threshold);
};

/// Independent check of a local mixture against `rho`: positive weights,
/// unit total weight, normalised factors, reconstruction error.
VerificationReport check_local_mixture(const Matrix4& rho, const LocalMixture& mix,
                                       const Tolerances& tol = {});

}  // namespace qsep
