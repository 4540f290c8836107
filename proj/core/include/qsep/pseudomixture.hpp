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


// Entangled two-qubit states as pseudomixtures
//
//   rho = (1 + q) rho_plus - q rho_minus,   q > 0,
//
// with rho_plus and rho_minus separable and as few product terms as possible.
// rho^{T_B} of an entangled state has exactly one negative eigenvalue -N; mixing
// in q rho_minus lifts it to zero while keeping the rest positive, so
// rho_plus = (rho + q rho_minus) / (1 + q) is PPT and is decomposed with
// `decompose`.
//
// rho_minus has one product term for mixed input and two for pure input (the
// Schmidt products of the negative eigenvector). The reported q is the value
// this construction produces, not the smallest q over all pseudomixtures.

#pragma once

#include <optional>
#include <string>

#include "qsep/qlinalg.hpp"
#include "qsep/separable_decomp.hpp"

namespace qsep {

struct NegativeEigenpair {
  double magnitude = 0.0;  // N > 0
  Ket4 vector{};
};

/// The negative eigenvalue -N of rho^{T_B} and its eigenvector. Throws
/// NotEntangled when rho is PPT and MultipleNegative if the second-smallest
/// eigenvalue is below -psd_tol.
NegativeEigenpair negative_eigenpair(const DensityMatrix& rho, double psd_tol = kPsdTol);

/// Smallest q > 0 with rho^{T_B} + q sigma^{T_B} >= 0 for sigma = the assembled
/// candidate, or nullopt when no q works. Exact: with sigma^{T_B} = B B^dagger
/// and A = rho^{T_B} invertible, det(A + q B B^dagger) vanishes at
/// q = -1/mu for the eigenvalues mu of B^dagger A^{-1} B, and the first
/// crossing is the negative eigenvalue of A reaching zero.
std::optional<double> minimal_lift(const DensityMatrix& rho, const LocalMixture& candidate);

struct NegativePart {
  LocalMixture mixture;
  double q = 0.0;
  /// The single product lies in R(rho), so r(rho_plus) = r(rho).
  bool in_range = false;
  /// A rank-3 input had no feasible product in its range; rho_plus then has
  /// rank 4.
  bool fallback = false;
  std::string diagnostics;
};

/// rho_minus and its lift q. Pure input: the two Schmidt products of |N>
/// with the mixing weight minimising q. Mixed input: one product vector; for
/// rank 3 a product in R(rho) is preferred (keeps rank 3), otherwise the
/// product with the smallest q overall. Throws NotEntangled for PPT input and
/// SearchExhausted if no feasible candidate is found.
NegativePart find_negative_part(const DensityMatrix& rho, double rank_tol = kRankTol);

struct Pseudomixture {
  double q = 0.0;
  LocalMixture positive_part;
  LocalMixture negative_part;
  bool cardinality_fallback = false;

  std::size_t cardinality() const { return positive_part.size() + negative_part.size(); }
  /// (1 + q) rho_plus - q rho_minus
  Matrix4 assemble() const;
};

/// Throws NotEntangled when rho is PPT.
Pseudomixture pseudomix(const DensityMatrix& rho, const Tolerances& tol = {});

/// Checks reassembly, positivity of the partial transpose of rho_plus, product
/// form and weights of every term, and q > 0.
VerificationReport verify_pseudomixture(const Matrix4& rho, const Pseudomixture& pm,
                                        const Tolerances& tol = {});

}  // namespace qsep
