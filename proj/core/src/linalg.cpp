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

#include "qsep/linalg.hpp"

#include <numbers>

namespace qsep {

Ket4 kron(const Ket2& a, const Ket2& b) {
  return {a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l)
          out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

Matrix2 reshape(const Ket4& psi) {
  Matrix2 m;
  m(0, 0) = psi[0];
  m(0, 1) = psi[1];
  m(1, 0) = psi[2];
  m(1, 1) = psi[3];
  return m;
}

Complex amplitude_determinant(const Ket4& psi) {
  return psi[0] * psi[3] - psi[1] * psi[2];
}

Ket2 orthogonal_complement(const Ket2& v) {
  return {-std::conj(v[1]), std::conj(v[0])};
}

Ket2 ket_from_bloch(const Bloch& n) {
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (len == 0.0) return {1.0, 0.0};
  const double x = n[0] / len, y = n[1] / len, z = std::clamp(n[2] / len, -1.0, 1.0);
  // cos(t/2) = sqrt((1+z)/2); exp(ip) sin(t/2) = (x + iy) / (2 cos(t/2)).
  const double c = std::sqrt(0.5 * (1.0 + z));
  if (c < 1e-8) {
    // Near the south pole divide by the sine instead.
    const double s = std::sqrt(0.5 * (1.0 - z));
    const Complex top = Complex(x, -y) / (2.0 * s);  // cos(t/2) exp(-ip)
    return normalized(Ket2{top, s});
  }
  return normalized(Ket2{c, Complex(x, y) / (2.0 * c)});
}

Bloch bloch_of(const Ket2& v) {
  const Ket2 u = normalized(v);
  const Complex off = std::conj(u[0]) * u[1];
  return {2.0 * off.real(), 2.0 * off.imag(), std::norm(u[0]) - std::norm(u[1])};
}

namespace {

double dot(const Bloch& a, const Bloch& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Bloch unit(const Bloch& a) {
  const double n = std::sqrt(dot(a, a));
  return {a[0] / n, a[1] / n, a[2] / n};
}

}  // namespace

Bloch slerp(const Bloch& a_in, const Bloch& b_in, double t) {
  const Bloch a = unit(a_in), b = unit(b_in);
  const double cosw = std::clamp(dot(a, b), -1.0, 1.0);
  if (cosw > 1.0 - 1e-15) return a;

  // Orthonormal partner of `a` in the plane of the arc.
  Bloch perp{b[0] - cosw * a[0], b[1] - cosw * a[1], b[2] - cosw * a[2]};
  double plen = std::sqrt(dot(perp, perp));
  if (plen < 1e-12) {
    const Bloch axis = std::abs(a[0]) < 0.9 ? Bloch{1.0, 0.0, 0.0} : Bloch{0.0, 1.0, 0.0};
    const double d = dot(axis, a);
    perp = {axis[0] - d * a[0], axis[1] - d * a[1], axis[2] - d * a[2]};
    plen = std::sqrt(dot(perp, perp));
  }
  for (auto& x : perp) x /= plen;
  const double w = std::acos(cosw) * t;
  const double c = std::cos(w), s = std::sin(w);
  return {c * a[0] + s * perp[0], c * a[1] + s * perp[1], c * a[2] + s * perp[2]};
}

std::vector<Bloch> fibonacci_sphere(std::size_t count) {
  std::vector<Bloch> pts;
  pts.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
  }
  return pts;
}

}  // namespace qsep
