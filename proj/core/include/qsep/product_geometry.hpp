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

// Product vectors |e>|f> inside subspaces of C^2 (x) C^2.

#pragma once

#include <vector>

#include "qsep/linalg.hpp"
#include "qsep/qlinalg.hpp"

namespace qsep {

/// Pure product state |e>|f> with both factors normalised.
struct ProductState {
  Ket2 e{1.0, 0.0};
  Ket2 f{1.0, 0.0};

  Ket4 ket() const { return kron(e, f); }

  /// |e>|f*>, the vector whose projector is the partial transpose of this
  /// state's projector.
  ProductState partial_conjugate() const { return {e, conj(f)}; }

  /// Same state with each factor's leading component real and positive.
  ProductState canonical() const { return {fix_phase(e), fix_phase(f)}; }
};

/// Dominant Schmidt product of `psi`. For a normalised product vector,
/// e (x) f reproduces psi including its phase.
ProductState factor_product(const Ket4& psi);

enum class PlaneKind { AllProduct, ExactlyTwo, ExactlyOne };

struct PlaneProductResult {
  PlaneKind kind = PlaneKind::ExactlyOne;
  /// AllProduct: two orthonormal product generators of the plane.
  /// ExactlyTwo: the two product vectors, in lexicographic order.
  /// ExactlyOne: the single (double-root) product vector.
  std::vector<ProductState> witnesses;
};

inline constexpr double kPlaneCoefficientTol = 1e-12;
inline constexpr double kDoubleRootTol = 1e-10;

/// Product vectors in span(v1, v2), from det(reshape(a v1 + b v2)) = 0 as a
/// binary quadratic in (a : b) over an orthonormal basis of the plane.
/// Throws DegeneratePlane when the Gram determinant of the normalised inputs
/// is at most 1e-12.
PlaneProductResult plane_product_vectors(const Ket4& v1, const Ket4& v2);

/// Product vectors orthogonal to a fixed `kernel` vector, i.e. the product
/// vectors of a 3-dimensional subspace. For e given, <kernel|e (x) f> = 0 is
/// linear in f and fixes it up to phase.
class ProductFamily3 {
 public:
  explicit ProductFamily3(const Ket4& kernel);

  const Ket4& kernel() const noexcept { return kernel_; }

  /// Chart e = (1, x).
  ProductState at(Complex x) const;
  /// The point at infinity of the chart, e = (0, 1).
  ProductState at_infinity() const;
  /// e given by its Bloch vector.
  ProductState at_bloch(const Bloch& n) const;
  /// e given directly; throws EmptyChart when every f satisfies the
  /// constraint (the linear form on f vanishes).
  ProductState with_e(const Ket2& e) const;

 private:
  Ket4 kernel_;
};

/// Product state |e,f> with e(x)f in R(rho) and e(x)f* in R(rho^{T_B}) for a
/// PPT state whose ranks are both 3. Both conditions together reduce to two
/// affine equations on the Bloch vector of e, so the solution set is a line,
/// circle, or the whole sphere intersected with the unit sphere; candidates
/// from every rank interpretation are scored by their range residuals and
/// the best-conditioned one (largest subtractable weight) is returned.
/// Throws NotFound if no candidate has both residuals within `residual_tol`.
ProductState product_in_both_ranges(const DensityMatrix& rho, double residual_tol = 1e-9,
                                    double rank_tol = kRankTol);

/// ||(1 - P_range) v|| for the range of `es`.
double range_residual(const EigenSystem& es, const Ket4& v, double rank_tol = kRankTol);

}  // namespace qsep
