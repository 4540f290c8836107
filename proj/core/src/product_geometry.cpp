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

#include "qsep/product_geometry.hpp"

#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "detail.hpp"

namespace qsep {

ProductState factor_product(const Ket4& psi) {
  const SchmidtForm sf = schmidt_decompose(psi);
  return {sf.left[0], sf.right[0]};
}

namespace {

bool lexicographically_less(const Ket4& a, const Ket4& b) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

ProductState product_from_root(Complex alpha, Complex beta, const Ket4& u1, const Ket4& u2) {
  const Ket4 w = normalized(alpha * u1 + beta * u2);
  return factor_product(w).canonical();
}

}  // namespace

PlaneProductResult plane_product_vectors(const Ket4& v1, const Ket4& v2) {
  const Ket4 u1 = normalized(v1);
  const Ket4 w = normalized(v2);
  const Complex overlap = inner(u1, w);
  const double gram = 1.0 - std::norm(overlap);
  if (norm(v1) == 0.0 || norm(v2) == 0.0 || gram <= 1e-12) {
    std::ostringstream msg;
    msg << "generators are linearly dependent (Gram determinant " << gram << ")";
    throw Error(ErrorCode::DegeneratePlane, msg.str());
  }
  const Ket4 u2 = normalized(w - overlap * u1);

  // det(reshape(a u1 + b u2)) = q11 a^2 + q12 a b + q22 b^2.
  const Complex q11 = amplitude_determinant(u1);
  const Complex q22 = amplitude_determinant(u2);
  const Complex q12 = u1[0] * u2[3] + u1[3] * u2[0] - u1[1] * u2[2] - u1[2] * u2[1];
  const double largest = std::max({std::abs(q11), std::abs(q12), std::abs(q22)});

  PlaneProductResult out;
  if (largest <= kPlaneCoefficientTol) {
    out.kind = PlaneKind::AllProduct;
    out.witnesses = {factor_product(u1).canonical(), factor_product(u2).canonical()};
    return out;
  }

  const Complex disc = q12 * q12 - 4.0 * q11 * q22;
  if (std::abs(disc) <= kDoubleRootTol * largest * largest) {
    out.kind = PlaneKind::ExactlyOne;
    out.witnesses = {std::abs(q11) >= std::abs(q22)
                         ? product_from_root(-q12, 2.0 * q11, u1, u2)
                         : product_from_root(2.0 * q22, -q12, u1, u2)};
    return out;
  }

  // Cancellation-free pair of roots: (m : 2 q11) and (2 q22 : m).
  const Complex sq = std::sqrt(disc);
  const Complex m_minus = -q12 - sq, m_plus = -q12 + sq;
  const Complex m = std::abs(m_minus) >= std::abs(m_plus) ? m_minus : m_plus;
  ProductState a = product_from_root(m, 2.0 * q11, u1, u2);
  ProductState b = product_from_root(2.0 * q22, m, u1, u2);
  if (lexicographically_less(fix_phase(b.ket()), fix_phase(a.ket()))) std::swap(a, b);
  out.kind = PlaneKind::ExactlyTwo;
  out.witnesses = {a, b};
  return out;
}

// --- 3-dimensional subspaces -------------------------------------------------

ProductFamily3::ProductFamily3(const Ket4& kernel) : kernel_(normalized(kernel)) {}

ProductState ProductFamily3::with_e(const Ket2& e_in) const {
  const Ket2 e = normalized(e_in);
  // <kernel| e (x) f> = c_0 f_0 + c_1 f_1
  const Complex c0 = std::conj(kernel_[0]) * e[0] + std::conj(kernel_[2]) * e[1];
  const Complex c1 = std::conj(kernel_[1]) * e[0] + std::conj(kernel_[3]) * e[1];
  if (std::sqrt(std::norm(c0) + std::norm(c1)) <= 1e-13) {
    throw Error(ErrorCode::EmptyChart,
                "constraint on f vanishes for this e; every f qualifies, switch chart");
  }
  return ProductState{e, normalized(Ket2{c1, -c0})}.canonical();
}

ProductState ProductFamily3::at(Complex x) const { return with_e(Ket2{1.0, x}); }

ProductState ProductFamily3::at_infinity() const { return with_e(Ket2{0.0, 1.0}); }

ProductState ProductFamily3::at_bloch(const Bloch& n) const { return with_e(ket_from_bloch(n)); }

// --- simultaneous ranges ----------------------------------------------------

double range_residual(const EigenSystem& es, const Ket4& v, double rank_tol) {
  return detail::pseudo_inverse_form(es, normalized(v), rank_tol).residual;
}

namespace {

using Row = std::array<double, 4>;  // (a_x, a_y, a_z, b): a . n + b = 0

// e^dagger H e = (tr H + a . n) / 2 for the Bloch vector n of e.
Row bloch_row(const Matrix2& h) {
  return {2.0 * h(0, 1).real(), -2.0 * h(0, 1).imag(), (h(0, 0) - h(1, 1)).real(),
          (h(0, 0) + h(1, 1)).real()};
}

double dot3(const Row& a, const Bloch& n) { return a[0] * n[0] + a[1] * n[1] + a[2] * n[2]; }

Bloch cross(const Bloch& a, const Bloch& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double len(const Bloch& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

// Unit vectors t1, t2 completing the unit vector `a` to an orthonormal frame.
std::pair<Bloch, Bloch> frame(const Bloch& a) {
  const Bloch seed = std::abs(a[0]) < 0.6 ? Bloch{1, 0, 0} : Bloch{0, 1, 0};
  Bloch t1 = cross(a, seed);
  const double l = len(t1);
  for (auto& x : t1) x /= l;
  return {t1, cross(a, t1)};
}

// Points of {n : a . n + b = 0} on (or, when it misses, nearest to) the sphere.
void circle_points(const Row& row, std::vector<Bloch>& out) {
  const Bloch a{row[0], row[1], row[2]};
  const double an = len(a);
  if (an == 0.0) return;
  const Bloch u{a[0] / an, a[1] / an, a[2] / an};
  const double offset = -row[3] / an;  // signed distance of the plane
  const double c = std::clamp(offset, -1.0, 1.0);
  const double radius = std::sqrt(std::max(0.0, 1.0 - c * c));
  const auto [t1, t2] = frame(u);
  constexpr int kPoints = 12;
  for (int k = 0; k < kPoints; ++k) {
    const double th = 2.0 * std::numbers::pi * k / kPoints;
    const double x = radius * std::cos(th), y = radius * std::sin(th);
    out.push_back({c * u[0] + x * t1[0] + y * t2[0], c * u[1] + x * t1[1] + y * t2[1],
                   c * u[2] + x * t1[2] + y * t2[2]});
  }
}

// Intersection of two planes with the sphere.
void line_points(const Row& r1, const Row& r2, std::vector<Bloch>& out) {
  const Bloch a1{r1[0], r1[1], r1[2]}, a2{r2[0], r2[1], r2[2]};
  const Bloch d = cross(a1, a2);
  const double dl = len(d);
  if (dl == 0.0) return;
  // Minimum-norm solution of [a1; a2] n = -[b1; b2].
  const double g11 = dot3(r1, a1), g12 = dot3(r1, a2), g22 = dot3(r2, a2);
  const double det = g11 * g22 - g12 * g12;
  if (det == 0.0) return;
  const double y1 = (-r1[3] * g22 + r2[3] * g12) / det;
  const double y2 = (-r2[3] * g11 + r1[3] * g12) / det;
  const Bloch n0{y1 * a1[0] + y2 * a2[0], y1 * a1[1] + y2 * a2[1], y1 * a1[2] + y2 * a2[2]};
  const double n0sq = n0[0] * n0[0] + n0[1] * n0[1] + n0[2] * n0[2];
  const double s = std::sqrt(std::max(0.0, 1.0 - n0sq));
  for (double sign : {1.0, -1.0})
    out.push_back({n0[0] + sign * s * d[0] / dl, n0[1] + sign * s * d[1] / dl,
                   n0[2] + sign * s * d[2] / dl});
}

// Alternating least squares on |<k|e f>|^2 + |<kt|e f*>|^2: each half-step is
// the smallest eigenvector of a 2 x 2 form. Drives the range residual of a
// candidate down to rounding level, which matters because subtracting at the
// maximal weight splits the new zero eigenvalue by about weight * residual.
ProductState polish(const ProductState& start, const Ket4& k, const Ket4& kt) {
  ProductState ps = start;
  for (int it = 0; it < 100; ++it) {
    Ket2 a, b;  // <k|e f> = a . e and <kt|e f*> = b . e
    for (std::size_t i = 0; i < 2; ++i) {
      a[i] = std::conj(k[2 * i]) * ps.f[0] + std::conj(k[2 * i + 1]) * ps.f[1];
      b[i] = std::conj(kt[2 * i]) * std::conj(ps.f[0]) +
             std::conj(kt[2 * i + 1]) * std::conj(ps.f[1]);
    }
    Matrix2 ge;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        ge(i, j) = std::conj(a[i]) * a[j] + std::conj(b[i]) * b[j];
    ps.e = detail::min_eigvec(ge);

    Matrix2 r;
    r(0, 0) = std::conj(k[0]) * ps.e[0] + std::conj(k[2]) * ps.e[1];
    r(0, 1) = std::conj(k[1]) * ps.e[0] + std::conj(k[3]) * ps.e[1];
    r(1, 0) = kt[0] * std::conj(ps.e[0]) + kt[2] * std::conj(ps.e[1]);
    r(1, 1) = kt[1] * std::conj(ps.e[0]) + kt[3] * std::conj(ps.e[1]);
    ps.f = detail::min_eigvec(r.adjoint() * r);

    const double res = std::max(std::abs(inner(k, ps.ket())),
                                std::abs(inner(kt, ps.partial_conjugate().ket())));
    if (res <= 1e-15) break;
  }
  return ps.canonical();
}

}  // namespace

ProductState product_in_both_ranges(const DensityMatrix& rho, double residual_tol,
                                    double rank_tol) {
  const EigenSystem es = hermitian_eig(rho.matrix());
  const EigenSystem es_pt = hermitian_eig(partial_transpose(rho));
  const RangeSplit split = range_projector(es, rank_tol);
  const RangeSplit split_pt = range_projector(es_pt, rank_tol);
  if (split.kernel.size() != 1 || split_pt.kernel.size() != 1) {
    std::ostringstream msg;
    msg << "requires ranks (3, 3), got (" << split.range.size() << ", "
        << split_pt.range.size() << ")";
    throw Error(ErrorCode::NotFound, msg.str());
  }
  const Ket4& k = split.kernel[0];
  const Ket4& kt = split_pt.kernel[0];

  // <k|e f> = sum_j c_j(e) f_j and <kt|e f*> = conj(sum_j dbar_j(e) f_j), with
  // c_j(e) = sum_i conj(k_ij) e_i and dbar_j(e) = sum_i kt_ij conj(e_i). A
  // common f exists iff c_0 dbar_1 - c_1 dbar_0 = e^dagger Q e vanishes.
  Matrix2 q;
  for (std::size_t l = 0; l < 2; ++l)
    for (std::size_t i = 0; i < 2; ++i)
      q(l, i) = std::conj(k[2 * i]) * kt[2 * l + 1] - std::conj(k[2 * i + 1]) * kt[2 * l];
  const Matrix2 h_re = (q + q.adjoint()) * 0.5;
  const Matrix2 h_im = (q - q.adjoint()) * Complex(0.0, -0.5);
  const Row r1 = bloch_row(h_re), r2 = bloch_row(h_im);

  std::vector<Bloch> points;
  // Dominant combination of the two rows (the rank-1 reading).
  {
    const double g11 = r1[0] * r1[0] + r1[1] * r1[1] + r1[2] * r1[2] + r1[3] * r1[3];
    const double g22 = r2[0] * r2[0] + r2[1] * r2[1] + r2[2] * r2[2] + r2[3] * r2[3];
    const double g12 = r1[0] * r2[0] + r1[1] * r2[1] + r1[2] * r2[2] + r1[3] * r2[3];
    Matrix2 g;
    g(0, 0) = g11;
    g(0, 1) = g12;
    g(1, 0) = g12;
    g(1, 1) = g22;
    const Ket2 top = hermitian_eig(g).vectors[1];
    const double w1 = top[0].real(), w2 = top[1].real();
    Row dom;
    for (std::size_t i = 0; i < 4; ++i) dom[i] = w1 * r1[i] + w2 * r2[i];
    circle_points(dom, points);
    circle_points(r1, points);
    circle_points(r2, points);
  }
  line_points(r1, r2, points);
  for (const Bloch& n : fibonacci_sphere(24)) points.push_back(n);

  std::optional<ProductState> best;
  double best_weight = -1.0;
  double best_residual = std::numeric_limits<double>::infinity();
  for (const Bloch& n : points) {
    const Ket2 e = ket_from_bloch(n);
    Matrix2 r;
    r(0, 0) = std::conj(k[0]) * e[0] + std::conj(k[2]) * e[1];
    r(0, 1) = std::conj(k[1]) * e[0] + std::conj(k[3]) * e[1];
    r(1, 0) = kt[0] * std::conj(e[0]) + kt[2] * std::conj(e[1]);
    r(1, 1) = kt[1] * std::conj(e[0]) + kt[3] * std::conj(e[1]);
    const Ket2 f = detail::min_eigvec(r.adjoint() * r);
    const ProductState cand = ProductState{e, f}.canonical();

    const auto form = detail::pseudo_inverse_form(es, cand.ket(), rank_tol);
    const auto form_pt =
        detail::pseudo_inverse_form(es_pt, cand.partial_conjugate().ket(), rank_tol);
    const double residual = std::max(form.residual, form_pt.residual);
    best_residual = std::min(best_residual, residual);
    if (residual > residual_tol) continue;
    const double weight = 1.0 / std::max(form.value, form_pt.value);
    if (weight > best_weight) {
      best_weight = weight;
      best = cand;
    }
  }
  if (!best) {
    std::ostringstream msg;
    msg << "no product vector in both ranges within " << residual_tol
        << " (best residual " << best_residual << ")";
    throw Error(ErrorCode::NotFound, msg.str());
  }
  auto residual_of = [&](const ProductState& ps) {
    return std::max(std::abs(inner(k, ps.ket())), std::abs(inner(kt, ps.partial_conjugate().ket())));
  };
  const ProductState polished = polish(*best, k, kt);
  return residual_of(polished) <= residual_of(*best) ? polished : *best;
}

}  // namespace qsep
