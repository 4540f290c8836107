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

// Fixed-size complex vectors and matrices for one and two qubits.
//
// Basis ordering for two qubits is |00>, |01>, |10>, |11>, i.e. the index of
// |a b> is 2a + b with `a` on subsystem A and `b` on subsystem B.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace qsep {

using Complex = std::complex<double>;

template <std::size_t N>
using Ket = std::array<Complex, N>;

using Ket2 = Ket<2>;
using Ket4 = Ket<4>;

/// Dense row-major N x N complex matrix with value semantics.
template <std::size_t N>
class Matrix {
 public:
  static constexpr std::size_t kDim = N;

  constexpr Matrix() = default;

  static Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * N + c];
  }

  Matrix adjoint() const {
    Matrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Matrix conjugate() const {
    Matrix out;
    for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = std::conj(data_[i]);
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// Largest |M_ij - conj(M_ji)|.
  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = r; c < N; ++c)
        worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
  }

  /// (M + M^dagger) / 2
  Matrix hermitian_part() const {
    Matrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c)
        out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
    return out;
  }

  bool all_finite() const {
    for (const auto& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Matrix& operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= Complex(s); }
  friend Matrix operator*(Matrix a, double s) { return a *= Complex(s); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const Complex ark = a(r, k);
        if (ark == Complex(0.0)) continue;
        for (std::size_t c = 0; c < N; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  friend Ket<N> operator*(const Matrix& a, const Ket<N>& v) {
    Ket<N> out{};
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out[r] += a(r, c) * v[c];
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::array<Complex, N * N> data_{};
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

// --- kets -------------------------------------------------------------------

/// <a|b>, antilinear in the first argument.
template <std::size_t N>
Complex inner(const Ket<N>& a, const Ket<N>& b) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < N; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

template <std::size_t N>
double norm(const Ket<N>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

/// Returns v / |v|; a zero vector is returned unchanged.
template <std::size_t N>
Ket<N> normalized(const Ket<N>& v) {
  const double n = norm(v);
  if (n == 0.0) return v;
  Ket<N> out = v;
  for (auto& z : out) z /= n;
  return out;
}

template <std::size_t N>
Ket<N> conj(const Ket<N>& v) {
  Ket<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = std::conj(v[i]);
  return out;
}

template <std::size_t N>
Ket<N> operator+(const Ket<N>& a, const Ket<N>& b) {
  Ket<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + b[i];
  return out;
}

template <std::size_t N>
Ket<N> operator-(const Ket<N>& a, const Ket<N>& b) {
  Ket<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i] - b[i];
  return out;
}

template <std::size_t N>
Ket<N> operator*(Complex s, const Ket<N>& v) {
  Ket<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = s * v[i];
  return out;
}

/// |a><b|
template <std::size_t N>
Matrix<N> outer(const Ket<N>& a, const Ket<N>& b) {
  Matrix<N> m;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) m(r, c) = a[r] * std::conj(b[c]);
  return m;
}

template <std::size_t N>
Matrix<N> projector(const Ket<N>& v) {
  return outer(v, v);
}

/// <a|M|b>
template <std::size_t N>
Complex sandwich(const Ket<N>& a, const Matrix<N>& m, const Ket<N>& b) {
  return inner(a, m * b);
}

/// Multiplies by the unit phase that makes the first component with modulus
/// above `threshold` real and positive.
template <std::size_t N>
Ket<N> fix_phase(const Ket<N>& v, double threshold = 1e-12) {
  for (std::size_t i = 0; i < N; ++i) {
    const double a = std::abs(v[i]);
    if (a > threshold) {
      Ket<N> out = (std::conj(v[i]) / a) * v;
      out[i] = a;  // exactly real, no rounding residue in the imaginary part
      return out;
    }
  }
  return v;
}

Ket4 kron(const Ket2& a, const Ket2& b);
Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// The 2x2 coefficient matrix psi_{ab} of a two-qubit vector.
Matrix2 reshape(const Ket4& psi);

/// det(reshape(psi)) = psi_00 psi_11 - psi_01 psi_10.
Complex amplitude_determinant(const Ket4& psi);

/// Returns a unit vector orthogonal to the unit vector `v`.
Ket2 orthogonal_complement(const Ket2& v);

// --- Bloch sphere -------------------------------------------------------------

using Bloch = std::array<double, 3>;

/// Ket with Bloch vector `n` (normalised internally), in the convention
/// (cos(t/2), exp(i p) sin(t/2)).
Ket2 ket_from_bloch(const Bloch& n);
Bloch bloch_of(const Ket2& v);

/// Great-circle interpolation between unit vectors; antipodal endpoints are
/// joined through a fixed perpendicular axis.
Bloch slerp(const Bloch& a, const Bloch& b, double t);

/// `count` nearly uniform points on the unit sphere (Fibonacci lattice).
std::vector<Bloch> fibonacci_sphere(std::size_t count);

}  // namespace qsep
