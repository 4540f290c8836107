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


#include "qsep/pseudomixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "detail.hpp"

namespace qsep {

NegativeEigenpair negative_eigenpair(const DensityMatrix& rho, double psd_tol) {
  const EigenSystem es = hermitian_eig(partial_transpose(rho));
  if (es.values[0] >= -psd_tol) {
    std::ostringstream msg;
    msg << "partial transpose is positive (minimum eigenvalue " << es.values[0] << ")";
    throw Error(ErrorCode::NotEntangled, msg.str());
  }
  if (es.values[1] < -psd_tol) {
    std::ostringstream msg;
    msg << "partial transpose has two negative eigenvalues " << es.values[0] << ", "
        << es.values[1];
    throw Error(ErrorCode::MultipleNegative, msg.str());
  }
  return {-es.values[0], es.vectors[0]};
}

namespace {

// Inverse of rho^{T_B} (invertible for every entangled state) and its norm.
struct LiftFrame {
  Matrix4 inverse;
  double inverse_norm = 0.0;
  bool invertible = true;

  explicit LiftFrame(const DensityMatrix& rho) {
    const EigenSystem es = hermitian_eig(partial_transpose(rho));
    for (std::size_t i = 0; i < 4; ++i) {
      if (std::abs(es.values[i]) <= 1e-14) {
        invertible = false;
        return;
      }
      inverse += (1.0 / es.values[i]) * projector(es.vectors[i]);
      inverse_norm = std::max(inverse_norm, 1.0 / std::abs(es.values[i]));
    }
  }

  // Threshold below which a negative form value counts as feasible, for a
  // candidate of unit size.
  double feasibility() const { return 1e-9 * inverse_norm; }

  double form(const Ket4& w) const { return sandwich(w, inverse, w).real(); }
};

std::optional<double> lift(const LiftFrame& frame, const LocalMixture& candidate) {
  if (!frame.invertible || candidate.terms.empty() || candidate.terms.size() > 4)
    return std::nullopt;
  // Columns of B: sqrt(w_i) |e_i, f_i*>.
  std::vector<Ket4> cols;
  for (const auto& t : candidate.terms) {
    if (!(t.weight > 0.0)) return std::nullopt;
    cols.push_back(Complex(std::sqrt(t.weight)) * t.state.partial_conjugate().ket());
  }
  Matrix4 m;  // padded with zeros beyond the number of terms
  for (std::size_t i = 0; i < cols.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      m(i, j) = sandwich(cols[i], frame.inverse, cols[j]);
  const double mu = hermitian_eig(m).values[0];
  const double scale = partial_transpose(candidate.assemble()).frobenius_norm();
  if (!(mu < -frame.feasibility() * scale)) return std::nullopt;
  return -1.0 / mu;
}

// --- pure input --------------------------------------------------------------

NegativePart pure_negative_part(const NegativeEigenpair& neg, const LiftFrame& frame) {
  const SchmidtForm sf = schmidt_decompose(neg.vector);
  const ProductState t1{sf.left[0], conj(sf.right[0])};
  const ProductState t2{sf.left[1], conj(sf.right[1])};
  auto mixture = [&](double w) {
    return LocalMixture{{{w, t1.canonical()}, {1.0 - w, t2.canonical()}}};
  };
  auto q_of = [&](double w) {
    return lift(frame, mixture(w)).value_or(std::numeric_limits<double>::infinity());
  };

  // Golden-section search for the weight with the smallest lift.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = q_of(x1), f2 = q_of(x2);
  for (int it = 0; it < 100 && b - a > 1e-12; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = q_of(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = q_of(x2);
    }
  }
  double w = f1 <= f2 ? x1 : x2;
  double q = std::min(f1, f2);
  if (const double half = q_of(0.5); half <= q) {
    w = 0.5;
    q = half;
  }
  if (!std::isfinite(q)) {
    throw Error(ErrorCode::SearchExhausted,
                "no mixture of the Schmidt products of the negative eigenvector lifts the state");
  }
  NegativePart out;
  out.mixture = mixture(w);
  out.q = q;
  std::ostringstream msg;
  msg << "pure input: Schmidt products of |N>, mixing weight " << w;
  out.diagnostics = msg.str();
  return out;
}

// --- single product ----------------------------------------------------------

// phi(e, h) = <e h| A^{-1} |e h>, minimised alternately over h and e (each a
// 2 x 2 eigenproblem). The product state of rho_minus is (e, conj h).
struct Pair {
  Ket2 e;
  Ket2 h;
  double phi = 0.0;
};

Matrix2 compress_first(const Matrix4& inv, const Ket2& e) {
  Matrix2 k;
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t i2 = 0; i2 < 2; ++i2)
          k(j, l) += std::conj(e[i]) * inv(2 * i + j, 2 * i2 + l) * e[i2];
  return k;
}

Matrix2 compress_second(const Matrix4& inv, const Ket2& h) {
  Matrix2 k;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t i2 = 0; i2 < 2; ++i2)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l)
          k(i, i2) += std::conj(h[j]) * inv(2 * i + j, 2 * i2 + l) * h[l];
  return k;
}

Pair refine(const LiftFrame& frame, Pair p) {
  for (int it = 0; it < 200; ++it) {
    const double before = p.phi;
    p.h = detail::min_eigvec(compress_first(frame.inverse, p.e));
    p.e = detail::min_eigvec(compress_second(frame.inverse, p.h));
    p.phi = frame.form(kron(p.e, p.h));
    if (before - p.phi <= 1e-15 * frame.inverse_norm) break;
  }
  return p;
}

Pair general_pool(const LiftFrame& frame, const NegativeEigenpair& neg) {
  std::vector<Pair> pool;
  const SchmidtForm sf = schmidt_decompose(neg.vector);
  for (std::size_t k = 0; k < 2; ++k)
    pool.push_back({sf.left[k], sf.right[k], frame.form(kron(sf.left[k], sf.right[k]))});
  const auto grid = fibonacci_sphere(32);
  for (const Bloch& a : grid) {
    const Ket2 e = ket_from_bloch(a);
    for (const Bloch& b : grid) {
      const Ket2 h = ket_from_bloch(b);
      pool.push_back({e, h, frame.form(kron(e, h))});
    }
  }
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Pair& x, const Pair& y) { return x.phi < y.phi; });
  Pair best = refine(frame, pool.front());
  for (std::size_t k = 0; k < std::min<std::size_t>(pool.size(), 6); ++k) {
    const Pair r = refine(frame, pool[k]);
    if (r.phi < best.phi) best = r;
  }
  // The Schmidt seeds are refined even when the grid ranks them low.
  for (std::size_t k = 0; k < 2; ++k) {
    const Pair r =
        refine(frame, {sf.left[k], sf.right[k], frame.form(kron(sf.left[k], sf.right[k]))});
    if (r.phi < best.phi) best = r;
  }
  return best;
}

// Products e (x) f in the range of a rank-3 state, scored by phi(e, conj f).
struct RangeSearch {
  const LiftFrame& frame;
  ProductFamily3 family;

  Pair at(const Bloch& n) const {
    const Ket2 e = ket_from_bloch(n);
    Ket2 h;
    try {
      h = conj(family.with_e(e).f);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::EmptyChart) throw;
      // Every f is in range on this fiber; take the best one.
      h = detail::min_eigvec(compress_first(frame.inverse, e));
    }
    return {e, h, frame.form(kron(e, h))};
  }

  Pair minimise() const {
    std::vector<std::pair<Bloch, Pair>> pts;
    for (const Bloch& n : fibonacci_sphere(400)) pts.emplace_back(n, at(n));
    std::stable_sort(pts.begin(), pts.end(),
                     [](const auto& x, const auto& y) { return x.second.phi < y.second.phi; });
    Pair best = pts.front().second;
    for (std::size_t k = 0; k < 4; ++k) {
      const Pair r = compass(pts[k].first, pts[k].second);
      if (r.phi < best.phi) best = r;
    }
    return best;
  }

  Pair compass(Bloch n, Pair cur) const {
    double step = 0.1;
    while (step > 1e-10) {
      bool moved = false;
      const Bloch seed = std::abs(n[0]) < 0.6 ? Bloch{1, 0, 0} : Bloch{0, 1, 0};
      Bloch t1{n[1] * seed[2] - n[2] * seed[1], n[2] * seed[0] - n[0] * seed[2],
               n[0] * seed[1] - n[1] * seed[0]};
      const double l = std::sqrt(t1[0] * t1[0] + t1[1] * t1[1] + t1[2] * t1[2]);
      for (auto& x : t1) x /= l;
      const Bloch t2{n[1] * t1[2] - n[2] * t1[1], n[2] * t1[0] - n[0] * t1[2],
                     n[0] * t1[1] - n[1] * t1[0]};
      for (const auto& [a, b] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
        Bloch m{n[0] + step * (a * t1[0] + b * t2[0]), n[1] + step * (a * t1[1] + b * t2[1]),
                n[2] + step * (a * t1[2] + b * t2[2])};
        const double ml = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
        for (auto& x : m) x /= ml;
        const Pair p = at(m);
        if (p.phi < cur.phi) {
          cur = p;
          n = m;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    return cur;
  }
};

LocalMixture single(const Pair& p) {
  return LocalMixture{{{1.0, ProductState{p.e, conj(p.h)}.canonical()}}};
}

}  // namespace

std::optional<double> minimal_lift(const DensityMatrix& rho, const LocalMixture& candidate) {
  return lift(LiftFrame(rho), candidate);
}

NegativePart find_negative_part(const DensityMatrix& rho, double rank_tol) {
  const NegativeEigenpair neg = negative_eigenpair(rho);
  const LiftFrame frame(rho);
  if (!frame.invertible)
    throw Error(ErrorCode::Internal, "partial transpose of an entangled state is singular");

  const EigenSystem es = hermitian_eig(rho.matrix());
  const int r = numerical_rank(es, rank_tol);
  if (r == 1) return pure_negative_part(neg, frame);

  NegativePart out;
  std::ostringstream diag;
  diag << "rank " << r << ": ";
  if (r == 3) {
    const RangeSearch search{frame, ProductFamily3(es.vectors[0])};
    const Pair p = search.minimise();
    if (auto q = lift(frame, single(p))) {
      out.mixture = single(p);
      out.q = *q;
      out.in_range = true;
      diag << "product in range, phi = " << p.phi;
      out.diagnostics = diag.str();
      return out;
    }
    out.fallback = true;
    diag << "no feasible product in range (best phi = " << p.phi << "); ";
  }

  const Pair p = general_pool(frame, neg);
  const auto q = lift(frame, single(p));
  if (!q) {
    std::ostringstream msg;
    msg << "no single product state lifts the state (best phi = " << p.phi << ")";
    throw Error(ErrorCode::SearchExhausted, msg.str());
  }
  out.mixture = single(p);
  out.q = *q;
  out.in_range = range_residual(es, out.mixture.terms[0].state.ket(), rank_tol) <= 1e-9;
  diag << "product with smallest lift, phi = " << p.phi;
  out.diagnostics = diag.str();
  return out;
}

Matrix4 Pseudomixture::assemble() const {
  return (1.0 + q) * positive_part.assemble() - q * negative_part.assemble();
}

Pseudomixture pseudomix(const DensityMatrix& rho, const Tolerances& tol) {
  if (is_ppt(rho, tol.psd).is_ppt)
    throw Error(ErrorCode::NotEntangled, "state has a positive partial transpose");
  const NegativePart neg = find_negative_part(rho, tol.rank);
  const Matrix4 plus_m =
      (rho.matrix() + neg.q * neg.mixture.assemble()) * Complex(1.0 / (1.0 + neg.q));
  const DensityMatrix plus = validate_density(plus_m, tol.psd);

  Pseudomixture pm;
  pm.q = neg.q;
  pm.positive_part = decompose(plus, tol);
  pm.negative_part = neg.mixture;
  pm.cardinality_fallback = neg.fallback;

  const double err = (rho.matrix() - pm.assemble()).frobenius_norm();
  if (!(err <= tol.recon)) {
    std::ostringstream msg;
    msg << "pseudomixture reassembly error " << err << " exceeds " << tol.recon;
    throw Error(ErrorCode::Internal, msg.str());
  }
  return pm;
}

VerificationReport verify_pseudomixture(const Matrix4& rho, const Pseudomixture& pm,
                                        const Tolerances& tol) {
  VerificationReport rep;
  rep.checks.push_back({"q_positive", pm.q > 0.0 && std::isfinite(pm.q), pm.q, 0.0});
  rep.add("reassembly", (rho - pm.assemble()).frobenius_norm(), tol.recon);
  const double min_pt = hermitian_eig(partial_transpose(pm.positive_part.assemble())).values[0];
  rep.add_at_least("positive_part_ppt", min_pt, -tol.psd);
  for (const auto& [prefix, part] : {std::pair{"positive_part.", &pm.positive_part},
                                     std::pair{"negative_part.", &pm.negative_part}}) {
    for (auto c : check_local_mixture(part->assemble(), *part, tol).checks) {
      if (c.name == "reconstruction") continue;
      c.name = prefix + c.name;
      rep.checks.push_back(std::move(c));
    }
  }
  return rep;
}

}  // namespace qsep
