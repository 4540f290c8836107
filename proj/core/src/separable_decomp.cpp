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


#include "qsep/separable_decomp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "detail.hpp"

namespace qsep {

double LocalMixture::total_weight() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight;
  return s;
}

Matrix4 LocalMixture::assemble() const {
  Matrix4 m;
  for (const auto& t : terms) m += t.weight * projector(t.state.ket());
  return m;
}

PptReport is_ppt(const DensityMatrix& rho, double psd_tol) {
  const EigenSystem es = hermitian_eig(partial_transpose(rho));
  PptReport r;
  r.min_eigenvalue = es.values[0];
  r.is_ppt = es.values[0] >= -psd_tol;
  if (!r.is_ppt) r.negative_eigenvector = es.vectors[0];
  return r;
}

namespace {

// Both weight limits of one product state against rho and rho^{T_B}.
struct Limits {
  double s = 0.0;
  double sbar = 0.0;
  double residual = 0.0;
  double p() const { return std::min(s, sbar); }
};

struct Spectra {
  EigenSystem es;
  EigenSystem es_pt;
  int r = 0;
  int rt = 0;

  Spectra(const DensityMatrix& rho, double rank_tol)
      : es(hermitian_eig(rho.matrix())), es_pt(hermitian_eig(partial_transpose(rho))),
        r(numerical_rank(es, rank_tol)), rt(numerical_rank(es_pt, rank_tol)) {}

  Limits limits(const ProductState& ps, double rank_tol) const {
    const auto a = detail::pseudo_inverse_form(es, ps.ket(), rank_tol);
    const auto b = detail::pseudo_inverse_form(es_pt, ps.partial_conjugate().ket(), rank_tol);
    Limits l;
    l.s = a.value > 0.0 ? 1.0 / a.value : std::numeric_limits<double>::infinity();
    l.sbar = b.value > 0.0 ? 1.0 / b.value : std::numeric_limits<double>::infinity();
    l.residual = std::max(a.residual, b.residual);
    return l;
  }
};

double inverse_value(const EigenSystem& es, const Ket4& v, double rank_tol, double range_tol) {
  const auto form = detail::pseudo_inverse_form(es, normalized(v), rank_tol);
  if (form.residual > range_tol) {
    std::ostringstream msg;
    msg << "vector leaves the range by " << form.residual << " (limit " << range_tol << ")";
    throw Error(ErrorCode::NotInRange, msg.str());
  }
  return form.value;
}

// Product in the range of a rank-3 state `sigma` (given by its kernel) with
// the best weight limit; `limits` scores a candidate in sigma's frame.
template <class Score>
ProductState best_range_product(const ProductFamily3& family, const EigenSystem& es,
                                Score&& score) {
  std::vector<Ket2> es_candidates;
  for (const Bloch& n : {Bloch{1, 0, 0}, Bloch{-1, 0, 0}, Bloch{0, 1, 0}, Bloch{0, -1, 0},
                         Bloch{0, 0, 1}, Bloch{0, 0, -1}})
    es_candidates.push_back(ket_from_bloch(n));
  for (std::size_t i = 1; i < 4; ++i) {
    const SchmidtForm sf = schmidt_decompose(es.vectors[i]);
    es_candidates.push_back(sf.left[0]);
    es_candidates.push_back(sf.left[1]);
  }
  for (const Bloch& n : fibonacci_sphere(32)) es_candidates.push_back(ket_from_bloch(n));

  std::optional<ProductState> best;
  double best_score = -1.0;
  for (const Ket2& e : es_candidates) {
    ProductState ps;
    try {
      ps = family.with_e(e);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::EmptyChart) throw;
      continue;
    }
    const double sc = score(ps);
    if (sc > best_score) {
      best_score = sc;
      best = ps;
    }
  }
  if (!best) throw Error(ErrorCode::NotFound, "no product vector found in the rank-3 range");
  return *best;
}

enum class Mode { FiveTerm, FourTerm };

LocalMixture staged(const DensityMatrix& rho, const Tolerances& tol, Mode mode, RankPath* path) {
  const PptReport ppt = is_ppt(rho, tol.psd);
  if (!ppt.is_ppt) {
    std::ostringstream msg;
    msg << "partial transpose has eigenvalue " << ppt.min_eigenvalue;
    throw Error(ErrorCode::NotSeparable, msg.str());
  }

  LocalMixture out;
  DensityMatrix cur = rho;
  double mass = 1.0;
  int last_sum = 9;
  auto push = [&](double w, const ProductState& ps) {
    out.terms.push_back({mass * w, ps.canonical()});
  };

  for (int step = 0; step < 8; ++step) {
    const Spectra sp(cur, tol.rank);
    if (path) path->emplace_back(sp.r, sp.rt);
    if (sp.r + sp.rt >= last_sum) {
      std::ostringstream msg;
      msg << "rank pair (" << sp.r << ", " << sp.rt << ") did not descend";
      throw Error(ErrorCode::Internal, msg.str());
    }
    last_sum = sp.r + sp.rt;

    if (std::min(sp.r, sp.rt) <= 1) {
      push(1.0, factor_product(sp.es.vectors[3]));
      return out;
    }
    if (std::min(sp.r, sp.rt) == 2) {
      if (sp.r == 2) {
        for (const auto& t : decompose_rank2(cur, tol.rank).terms) push(t.weight, t.state);
      } else {
        const DensityMatrix pt = validate_density(partial_transpose(cur), tol.psd);
        for (const auto& t : decompose_rank2(pt, tol.rank).terms)
          push(t.weight, t.state.partial_conjugate());
      }
      return out;
    }

    ProductState v;
    if (sp.r == 3 && sp.rt == 3) {
      v = product_in_both_ranges(cur, 1e-9, tol.rank);
    } else if (sp.r == 3 || sp.rt == 3) {
      auto score = [&](const ProductState& ps) {
        const ProductState actual = sp.r == 3 ? ps : ps.partial_conjugate();
        return sp.limits(actual, tol.rank).p();
      };
      const EigenSystem& side = sp.r == 3 ? sp.es : sp.es_pt;
      const ProductFamily3 family(side.vectors[0]);
      const ProductState w = best_range_product(family, side, score);
      v = sp.r == 3 ? w : w.partial_conjugate();
    } else if (mode == Mode::FiveTerm) {
      v = factor_product(sp.es.vectors[3]);
    } else {
      const LocalMixture seed = staged(cur, tol, Mode::FiveTerm, nullptr);
      v = find_equal_weight_product(cur, seed, tol.rank);
    }

    const double p = sp.limits(v, tol.rank).p();
    if (!(p > 0.0) || !(p < 1.0)) {
      std::ostringstream msg;
      msg << "subtraction weight " << p << " outside (0, 1)";
      throw Error(ErrorCode::Internal, msg.str());
    }
    push(p, v);
    mass *= 1.0 - p;
    cur = subtract(cur, v.ket(), p, tol.psd);
  }
  throw Error(ErrorCode::Internal, "staged subtraction did not terminate");
}

void post_check(const DensityMatrix& rho, const LocalMixture& mix, const Tolerances& tol) {
  const double err = (rho.matrix() - mix.assemble()).frobenius_norm();
  if (!(err <= tol.recon)) {
    std::ostringstream msg;
    msg << "reconstruction error " << err << " exceeds " << tol.recon;
    throw Error(ErrorCode::Internal, msg.str());
  }
}

}  // namespace

double max_weight(const DensityMatrix& rho, const Ket4& v, double rank_tol, double range_tol) {
  return 1.0 / inverse_value(hermitian_eig(rho.matrix()), v, rank_tol, range_tol);
}

DensityMatrix subtract(const DensityMatrix& rho, const Ket4& v, double p, double psd_tol) {
  if (!(p > 0.0 && p < 1.0)) {
    std::ostringstream msg;
    msg << "weight " << p << " outside (0, 1)";
    throw Error(ErrorCode::BreaksPositivity, msg.str());
  }
  const Matrix4 rest = (rho.matrix() - p * projector(normalized(v))) * Complex(1.0 / (1.0 - p));
  try {
    return validate_density(rest, psd_tol);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NotPositive) throw;
    throw Error(ErrorCode::BreaksPositivity, err.what());
  }
}

LocalMixture five_term_decomposition(const DensityMatrix& rho, const Tolerances& tol,
                                     RankPath* path) {
  LocalMixture mix = staged(rho, tol, Mode::FiveTerm, path);
  post_check(rho, mix, tol);
  return mix;
}

ProductState find_equal_weight_product(const DensityMatrix& rho, const LocalMixture& seed,
                                       double rank_tol) {
  const Spectra sp(rho, rank_tol);
  if (sp.r != 4 || sp.rt != 4) {
    std::ostringstream msg;
    msg << "requires full ranks, got (" << sp.r << ", " << sp.rt << ")";
    throw Error(ErrorCode::NotFound, msg.str());
  }
  auto gap = [&](const ProductState& ps) {
    const Limits l = sp.limits(ps, rank_tol);
    return std::pair{l.s - l.sbar, l.s};
  };

  const ProductState* up = nullptr;
  const ProductState* down = nullptr;
  for (const auto& t : seed.terms) {
    const auto [g, s] = gap(t.state);
    if (std::abs(g) <= 1e-10 * s) return t.state.canonical();
    if (g > 0.0 && !up) up = &t.state;
    if (g < 0.0 && !down) down = &t.state;
  }
  if (!up || !down) {
    throw Error(ErrorCode::NoSignChange,
                "every seed term has the same sign of s - sbar; the trace identity is violated");
  }

  const Bloch ea = bloch_of(up->e), eb = bloch_of(down->e);
  const Bloch fa = bloch_of(up->f), fb = bloch_of(down->f);
  auto at = [&](double t) {
    return ProductState{ket_from_bloch(slerp(ea, eb, t)), ket_from_bloch(slerp(fa, fb, t))};
  };
  double lo = 0.0, hi = 1.0;  // g(lo) > 0 > g(hi)
  ProductState mid = at(0.5);
  double best_rel = std::numeric_limits<double>::infinity();
  ProductState best = mid;
  for (int it = 0; it < 200; ++it) {
    const double t = 0.5 * (lo + hi);
    mid = at(t);
    const auto [g, s] = gap(mid);
    const double rel = std::abs(g) / s;
    if (rel < best_rel) {
      best_rel = rel;
      best = mid;
    }
    if (std::abs(g) <= 1e-12 * s) break;
    (g > 0.0 ? lo : hi) = t;
    if (hi - lo <= std::numeric_limits<double>::epsilon()) break;
  }
  if (best_rel > 1e-10) {
    std::ostringstream msg;
    msg << "bisection stalled at relative gap " << best_rel;
    throw Error(ErrorCode::SearchExhausted, msg.str());
  }
  return best.canonical();
}

LocalMixture decompose_rank2(const DensityMatrix& rho, double rank_tol) {
  const EigenSystem es = hermitian_eig(rho.matrix());
  const int r = numerical_rank(es, rank_tol);
  if (r != 2) {
    std::ostringstream msg;
    msg << "requires rank 2, got " << r;
    throw Error(ErrorCode::InconsistentPlane, msg.str());
  }
  const PlaneProductResult plane = plane_product_vectors(es.vectors[3], es.vectors[2]);

  LocalMixture out;
  switch (plane.kind) {
    case PlaneKind::AllProduct: {
      const double total = es.values[3] + es.values[2];
      for (std::size_t i : {3u, 2u})
        out.terms.push_back({es.values[i] / total, factor_product(es.vectors[i]).canonical()});
      return out;
    }
    case PlaneKind::ExactlyTwo: {
      // Least squares over the real matrix entries: rho ~ p P1 + (1 - p) P2.
      const Matrix4 p1 = projector(plane.witnesses[0].ket());
      const Matrix4 p2 = projector(plane.witnesses[1].ket());
      const Matrix4 d = p1 - p2;
      const Matrix4 rhs = rho.matrix() - p2;
      double num = 0.0;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) num += (std::conj(d(i, j)) * rhs(i, j)).real();
      const double den = d.frobenius_norm() * d.frobenius_norm();
      const double p = num / den;
      if (!(p > -1e-10 && p < 1.0 + 1e-10)) {
        std::ostringstream msg;
        msg << "plane weights " << p << ", " << 1.0 - p << " leave (0, 1)";
        throw Error(ErrorCode::InconsistentPlane, msg.str());
      }
      const double pc = std::clamp(p, 0.0, 1.0);
      const double residual = (rho.matrix() - pc * p1 - (1.0 - pc) * p2).frobenius_norm();
      if (residual > kPlaneFitTol) {
        std::ostringstream msg;
        msg << "state is not a mixture of the plane's product vectors (residual " << residual
            << ")";
        throw Error(ErrorCode::InconsistentPlane, msg.str());
      }
      if (pc > 0.0) out.terms.push_back({pc, plane.witnesses[0]});
      if (pc < 1.0) out.terms.push_back({1.0 - pc, plane.witnesses[1]});
      return out;
    }
    case PlaneKind::ExactlyOne:
      break;
  }
  throw Error(ErrorCode::InconsistentPlane,
              "range plane holds a single product vector; the state is not separable");
}

LocalMixture decompose(const DensityMatrix& rho, const Tolerances& tol, RankPath* path) {
  LocalMixture mix = staged(rho, tol, Mode::FourTerm, path);
  post_check(rho, mix, tol);
  return mix;
}

// --- verification -----------------------------------------------------------

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.passed; });
}

void VerificationReport::add(std::string name, double measured, double threshold) {
  checks.push_back({std::move(name), measured <= threshold, measured, threshold});
}

void VerificationReport::add_at_least(std::string name, double measured, double threshold) {
  checks.push_back({std::move(name), measured >= threshold, measured, threshold});
}

VerificationReport check_local_mixture(const Matrix4& rho, const LocalMixture& mix,
                                       const Tolerances& tol) {
  VerificationReport rep;
  double min_weight = std::numeric_limits<double>::infinity();
  double norm_defect = 0.0;
  double product_defect = 0.0;
  for (const auto& t : mix.terms) {
    min_weight = std::min(min_weight, t.weight);
    norm_defect = std::max({norm_defect, std::abs(norm(t.state.e) - 1.0),
                            std::abs(norm(t.state.f) - 1.0)});
    product_defect =
        std::max(product_defect, std::abs(amplitude_determinant(normalized(t.state.ket()))));
  }
  if (mix.terms.empty()) min_weight = 0.0;
  rep.checks.push_back({"weights_positive", min_weight > 0.0, min_weight, 0.0});
  rep.add("weight_sum", std::abs(mix.total_weight() - 1.0), 1e-10);
  rep.add("factor_norms", norm_defect, 1e-10);
  rep.add("terms_product", product_defect, kProductVectorTol);
  rep.add("reconstruction", (rho - mix.assemble()).frobenius_norm(), tol.recon);
  return rep;
}

}  // namespace qsep
