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


#include "qsep/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace qsep {

Complex Rng::gaussian() {
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return Complex(r * std::cos(t), r * std::sin(t)) / std::numbers::sqrt2;
}

namespace {

template <std::size_t N>
Ket<N> gaussian_ket(Rng& rng) {
  Ket<N> v;
  for (auto& x : v) x = rng.gaussian();
  return v;
}

void check_count(int k, const char* what) {
  if (k < 1) {
    std::ostringstream msg;
    msg << what << " must be positive, got " << k;
    throw Error(ErrorCode::ValidationError, msg.str());
  }
}

}  // namespace

Ket2 random_ket2(Rng& rng) { return normalized(gaussian_ket<2>(rng)); }
Ket4 random_ket4(Rng& rng) { return normalized(gaussian_ket<4>(rng)); }

ProductState random_product(Rng& rng) {
  const Ket2 e = random_ket2(rng);
  const Ket2 f = random_ket2(rng);
  return ProductState{e, f}.canonical();
}

DensityMatrix random_pure(Rng& rng) { return validate_density(projector(random_ket4(rng))); }

DensityMatrix random_mixed(Rng& rng, int rank) {
  check_count(rank, "rank");
  if (rank > 4) rank = 4;
  // Columns of G, each filled in row order.
  Matrix4 m;
  for (int k = 0; k < rank; ++k) m += projector(gaussian_ket<4>(rng));
  m *= Complex(1.0 / m.trace().real());
  return validate_density(m);
}

DensityMatrix random_separable(Rng& rng, int terms) {
  check_count(terms, "number of terms");
  std::vector<ProductState> states;
  std::vector<double> weights;
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    states.push_back(random_product(rng));
    weights.push_back(-std::log1p(-rng.uniform()));
    total += weights.back();
  }
  Matrix4 m;
  for (int k = 0; k < terms; ++k) m += (weights[k] / total) * projector(states[k].ket());
  return validate_density(m);
}

DensityMatrix random_entangled(Rng& rng, int rank) {
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    DensityMatrix rho = random_mixed(rng, rank);
    if (hermitian_eig(partial_transpose(rho)).values[0] < -kPsdTol) return rho;
  }
  std::ostringstream msg;
  msg << kRejectionBudget << " draws of rank " << rank << " were all PPT";
  throw Error(ErrorCode::RejectionBudget, msg.str());
}

}  // namespace qsep
