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


// Seeded random states. Every draw comes from one std::mt19937_64 stream, whose
// output sequence is fixed by the C++ standard, so a seed reproduces the same
// states on every conforming platform:
//
//   uniform   u = (x >> 11) * 2^-53, x the next 64-bit output; u in [0, 1)
//   gaussian  one Box-Muller pair per complex number:
//             r = sqrt(-2 ln(1 - u1)), t = 2 pi u2, z = r (cos t + i sin t) / sqrt(2)
//
// Vectors and matrices are filled in index (row-major) order.

#pragma once

#include <cstdint>
#include <random>

#include "qsep/linalg.hpp"
#include "qsep/product_geometry.hpp"
#include "qsep/qlinalg.hpp"

namespace qsep {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Standard complex Gaussian, E|z|^2 = 1.
  Complex gaussian();

 private:
  std::mt19937_64 engine_;
};

inline constexpr int kRejectionBudget = 10000;

/// Haar-random unit vectors (normalised Gaussian vectors).
Ket2 random_ket2(Rng& rng);
Ket4 random_ket4(Rng& rng);

ProductState random_product(Rng& rng);

/// |psi><psi| for Haar-random psi.
DensityMatrix random_pure(Rng& rng);

/// G G^dagger / tr for G a 4 x rank Gaussian matrix (Hilbert-Schmidt measure
/// for rank 4).
DensityMatrix random_mixed(Rng& rng, int rank = 4);

/// Mixture of `terms` random product states with flat Dirichlet weights.
DensityMatrix random_separable(Rng& rng, int terms = 4);

/// random_mixed draws until the partial transpose has a negative eigenvalue.
/// Throws RejectionBudget after kRejectionBudget PPT draws.
DensityMatrix random_entangled(Rng& rng, int rank = 4);

}  // namespace qsep
