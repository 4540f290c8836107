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

#pragma once

#include "qsep/qlinalg.hpp"

namespace qsep::detail {

/// <v|H^+|v> with the pseudo-inverse taken on the numerical range of `es`,
/// and the norm of the part of v outside that range.
struct InverseForm {
  double value = 0.0;
  double residual = 0.0;
};

inline InverseForm pseudo_inverse_form(const EigenSystem& es, const Ket4& v,
                                       double rank_tol) {
  const double cut = rank_cutoff(es, rank_tol);
  InverseForm out;
  double outside = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double w = std::norm(inner(es.vectors[i], v));
    if (es.values[i] > cut)
      out.value += w / es.values[i];
    else
      outside += w;
  }
  out.residual = std::sqrt(outside);
  return out;
}

/// Smallest eigenvector of a 2x2 Hermitian matrix.
inline Ket2 min_eigvec(const Matrix2& h) { return hermitian_eig(h).vectors[0]; }

}  // namespace qsep::detail
