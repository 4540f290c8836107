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


// Acceptance suite: one PASS/FAIL line per criterion. Tolerances, corpus sizes
// and time limits are fixed here and are not configurable.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qsep/cli/commands.hpp"

using namespace qsep;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Accumulates failure messages; only the first few are kept.
class Failures {
 public:
  void add(const std::string& what) {
    ++count_;
    if (count_ <= 3) {
      if (!text_.empty()) text_ += "; ";
      text_ += what;
    }
  }
  bool any() const { return count_ > 0; }
  std::string summary() const {
    std::ostringstream s;
    s << count_ << " failure(s): " << text_;
    return s.str();
  }

 private:
  int count_ = 0;
  std::string text_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Corpora shared between criteria 4, 7 and 11.
struct Corpus {
  std::vector<Matrix4> separable;
  std::vector<Matrix4> entangled_mixed;
  std::vector<Matrix4> entangled_pure;
};
Corpus g_corpus;

// ---------------------------------------------------------------------------

Outcome bell_spectrum() {
  const DensityMatrix rho = validate_density(oracle::proj(oracle::phi_plus()));
  const auto t0 = Clock::now();
  const EigenSystem es = hermitian_eig(partial_transpose(rho));
  const PptReport ppt = is_ppt(rho);
  const double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count();

  Failures f;
  const std::array<double, 4> want{-0.5, 0.5, 0.5, 0.5};
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(es.values[i] - want[i]));
  if (worst > 1e-10) f.add("eigenvalue error " + fmt(worst));
  const Ket4 n{0.0, 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2, 0.0};
  const double overlap = ppt.negative_eigenvector ? std::abs(inner(n, *ppt.negative_eigenvector)) : 0.0;
  if (overlap < 1.0 - 1e-10) f.add("|N> overlap " + fmt(overlap));
  if (us >= 1000.0) f.add("runtime " + fmt(us) + " us");
  if (f.any()) return {false, f.summary()};
  return {true, "max eigenvalue error " + fmt(worst) + ", overlap 1-" + fmt(1.0 - overlap) +
                    ", " + fmt(us) + " us"};
}

Outcome pure_spectrum_family() {
  Failures f;
  double worst = 0.0;
  for (double a : {0.1, 0.3, 0.7, std::numbers::pi / 4.0}) {
    const DensityMatrix rho = validate_density(oracle::proj(oracle::canonical(a)));
    std::array<double, 4> want{std::cos(a) * std::cos(a), std::sin(a) * std::sin(a),
                               std::cos(a) * std::sin(a), -std::cos(a) * std::sin(a)};
    std::sort(want.begin(), want.end());
    const auto got = hermitian_eig(partial_transpose(rho)).values;
    for (int i = 0; i < 4; ++i) {
      const double err = std::abs(got[i] - want[i]);
      worst = std::max(worst, err);
      if (err > 1e-10) f.add("A=" + fmt(a) + " eigenvalue " + std::to_string(i) + " off by " + fmt(err));
    }
  }
  if (f.any()) return {false, f.summary()};
  return {true, "max error " + fmt(worst)};
}

Outcome unique_negative_eigenvalue() {
  Rng rng(3003);
  const auto t0 = Clock::now();
  Failures f;
  double worst_second = 1.0;
  for (int i = 0; i < 1000; ++i) {
    const DensityMatrix rho = random_entangled(rng, 1 + i % 4);
    const EigenSystem es = hermitian_eig(partial_transpose(rho));
    worst_second = std::min(worst_second, es.values[1]);
    if (es.values[0] >= -1e-10) f.add("state " + std::to_string(i) + " not NPT");
    if (es.values[1] < -1e-10) f.add("state " + std::to_string(i) + " second eigenvalue " + fmt(es.values[1]));
    if (numerical_rank(es) != 4) f.add("state " + std::to_string(i) + " r(rho^T_B) = " + std::to_string(numerical_rank(es)));
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (s >= 5.0) f.add("runtime " + fmt(s) + " s");
  if (f.any()) return {false, f.summary()};
  return {true, "1000 states, min second eigenvalue " + fmt(worst_second) + ", " + fmt(s) + " s"};
}

Outcome separable_soundness() {
  Rng rng(4004);
  // PPT corpus: product mixtures with 1..7 terms, plus rejection-sampled
  // full-rank PPT states of the Hilbert-Schmidt ensemble (lower ranks are
  // almost never strictly PPT there).
  g_corpus.separable.clear();
  for (int i = 0; i < 500; ++i) g_corpus.separable.push_back(random_separable(rng, 1 + i % 7).matrix());
  while (g_corpus.separable.size() < 1000) {
    const DensityMatrix rho = random_mixed(rng, 4);
    if (oracle::lambda_min(oracle::partial_transpose(rho.matrix())) > 1e-9)
      g_corpus.separable.push_back(rho.matrix());
  }
  std::vector<Matrix4> npt;
  for (int i = 0; i < 1000; ++i) npt.push_back(random_entangled(rng, 1 + i % 4).matrix());

  const auto t0 = Clock::now();
  Failures f;
  double worst = 0.0;
  for (std::size_t i = 0; i < g_corpus.separable.size(); ++i) {
    const Matrix4& m = g_corpus.separable[i];
    try {
      const LocalMixture mix = decompose(validate_density(m));
      double total = 0.0;
      bool ok = mix.size() >= 1 && mix.size() <= 4;
      for (const auto& t : mix.terms) {
        ok = ok && t.weight > 0.0 && is_product_vector(t.state.ket()) &&
             std::abs(norm(t.state.e) - 1.0) <= 1e-10 && std::abs(norm(t.state.f) - 1.0) <= 1e-10;
        total += t.weight;
      }
      ok = ok && std::abs(total - 1.0) <= 1e-10;
      const double err = oracle::frob(m - mix.assemble());
      worst = std::max(worst, err);
      if (!ok || err > 1e-8) f.add("PPT state " + std::to_string(i) + " invalid mixture (error " + fmt(err) + ")");
    } catch (const Error& e) {
      f.add("PPT state " + std::to_string(i) + ": " + e.what());
    }
  }
  for (std::size_t i = 0; i < npt.size(); ++i) {
    try {
      decompose(validate_density(npt[i]));
      f.add("NPT state " + std::to_string(i) + " decomposed");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotSeparable) f.add("NPT state " + std::to_string(i) + ": " + e.what());
    }
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (s >= 30.0) f.add("runtime " + fmt(s) + " s");
  if (f.any()) return {false, f.summary()};
  return {true, "1000 PPT + 1000 NPT, worst reconstruction " + fmt(worst) + ", " + fmt(s) + " s"};
}

// --- criterion 5 -------------------------------------------------------------

DensityMatrix product_mix(Rng& rng, int n) {
  std::vector<ProductState> ps;
  std::vector<double> w;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    ps.push_back(random_product(rng));
    w.push_back(0.1 + rng.uniform());
    total += w.back();
  }
  for (double& x : w) x /= total;
  return validate_density(oracle::mixture(w, ps));
}

// Four products orthogonal to a random kernel vector: ranks (3, 4).
DensityMatrix three_four(Rng& rng) {
  const ProductFamily3 fam(random_ket4(rng));
  std::vector<ProductState> ps;
  std::vector<double> w;
  for (int i = 0; i < 4; ++i) {
    ps.push_back(fam.with_e(random_ket2(rng)));
    w.push_back(0.25);
  }
  return validate_density(oracle::mixture(w, ps));
}

Outcome cardinality_law() {
  Rng rng(5005);
  struct Class {
    int r, rt;
    std::function<DensityMatrix()> make;
  };
  const std::vector<Class> classes{
      {1, 1, [&] { return product_mix(rng, 1); }},
      {2, 2, [&] { return product_mix(rng, 2); }},
      {3, 3, [&] { return product_mix(rng, 3); }},
      {3, 4, [&] { return three_four(rng); }},
      {4, 4, [&] { return product_mix(rng, 6); }},
  };
  Failures f;
  std::ostringstream detail;
  for (const auto& c : classes) {
    int hit = 0, dead_band = 0;
    for (int i = 0; i < 200; ++i) {
      const DensityMatrix rho = c.make();
      const int r = numerical_rank(rho.matrix()), rt = numerical_rank(partial_transpose(rho));
      try {
        const LocalMixture mix = decompose(rho);
        if (oracle::frob(rho.matrix() - mix.assemble()) > 1e-8) {
          f.add("class (" + std::to_string(c.r) + "," + std::to_string(c.rt) + ") bad reconstruction");
          continue;
        }
        if (r != c.r || rt != c.rt)
          ++dead_band;  // measured ranks disagree with the construction
        else if (static_cast<int>(mix.size()) == std::max(c.r, c.rt))
          ++hit;
      } catch (const Error& e) {
        f.add(std::string("decompose failed: ") + e.what());
      }
    }
    detail << "(" << c.r << "," << c.rt << ") " << hit << "/200";
    if (dead_band) detail << " [" << dead_band << " dead-band]";
    detail << "  ";
    if (hit < 198) f.add("class (" + std::to_string(c.r) + "," + std::to_string(c.rt) + ") only " + std::to_string(hit) + "/200");
  }
  if (f.any()) return {false, f.summary() + " | " + detail.str()};
  return {true, detail.str()};
}

Outcome plane_exhaustiveness() {
  Rng rng(6006);
  Failures f;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Ket4 v1 = random_ket4(rng), v2 = random_ket4(rng);
    try {
      const PlaneProductResult res = plane_product_vectors(v1, v2);
      if (res.witnesses.empty()) f.add("plane " + std::to_string(i) + " has no product vector");
      for (const auto& w : res.witnesses) {
        const double c2 = oracle::schmidt_c2(w.ket());
        worst = std::max(worst, c2);
        if (c2 > 1e-10) f.add("plane " + std::to_string(i) + " residual " + fmt(c2));
      }
    } catch (const Error& e) {
      f.add(e.what());
    }
  }
  if (f.any()) return {false, f.summary()};
  return {true, "10000 planes, worst product residual " + fmt(worst)};
}

Outcome pseudomixture_reconstruction() {
  Rng rng(7007);
  g_corpus.entangled_mixed.clear();
  g_corpus.entangled_pure.clear();
  for (int i = 0; i < 500; ++i) g_corpus.entangled_mixed.push_back(random_entangled(rng, 2 + i % 3).matrix());
  for (int i = 0; i < 200; ++i) g_corpus.entangled_pure.push_back(random_entangled(rng, 1).matrix());

  const auto t0 = Clock::now();
  Failures f;
  double worst = 0.0;
  int fallbacks = 0;
  auto check = [&](const Matrix4& m, bool pure, std::size_t i) {
    const std::string tag = std::string(pure ? "pure " : "mixed ") + std::to_string(i);
    try {
      const Pseudomixture pm = pseudomix(validate_density(m));
      const double err = oracle::frob(m - pm.assemble());
      worst = std::max(worst, err);
      if (err > 1e-8) f.add(tag + " reconstruction " + fmt(err));
      if (oracle::lambda_min(oracle::partial_transpose(pm.positive_part.assemble())) < -1e-10)
        f.add(tag + " positive part NPT");
      if (pure) {
        if (pm.negative_part.size() != 2 || pm.positive_part.size() != 3)
          f.add(tag + " cardinalities " + std::to_string(pm.positive_part.size()) + "/" +
                std::to_string(pm.negative_part.size()));
      } else {
        if (pm.negative_part.size() != 1 || pm.positive_part.size() > 4)
          f.add(tag + " cardinalities " + std::to_string(pm.positive_part.size()) + "/" +
                std::to_string(pm.negative_part.size()));
        fallbacks += pm.cardinality_fallback;
      }
    } catch (const Error& e) {
      f.add(tag + ": " + e.what());
    }
  };
  for (std::size_t i = 0; i < g_corpus.entangled_mixed.size(); ++i) check(g_corpus.entangled_mixed[i], false, i);
  for (std::size_t i = 0; i < g_corpus.entangled_pure.size(); ++i) check(g_corpus.entangled_pure[i], true, i);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  if (s >= 120.0) f.add("runtime " + fmt(s) + " s");
  if (f.any()) return {false, f.summary()};
  return {true, "500 mixed + 200 pure, worst reconstruction " + fmt(worst) + ", " +
                    std::to_string(fallbacks) + " rank-3 fallbacks, " + fmt(s) + " s"};
}

Outcome bell_constructive_q() {
  const Pseudomixture pm = pseudomix(validate_density(oracle::proj(oracle::phi_plus())));
  // Independent oracle: on span(|01>, |10>) the lifted partial transpose is
  // [[q w1, 1/2], [1/2, q w2]] for negative weights w1 on |01>, w2 on |10>;
  // it becomes singular at q = 1 / (2 sqrt(w1 w2)).
  double w01 = 0.0, w10 = 0.0;
  for (const auto& t : pm.negative_part.terms) {
    if (oracle::state_distance(t.state.ket(), oracle::basis(1)) < 1e-10) w01 += t.weight;
    if (oracle::state_distance(t.state.ket(), oracle::basis(2)) < 1e-10) w10 += t.weight;
  }
  Failures f;
  if (w01 <= 0.0 || w10 <= 0.0) f.add("negative part is not supported on |01>, |10>");
  const double q_block = 1.0 / (2.0 * std::sqrt(w01 * w10));
  if (std::abs(pm.q - q_block) > 1e-9) f.add("q " + fmt(pm.q) + " vs block " + fmt(q_block));
  if (std::abs(pm.q - 1.0) > 1e-9) f.add("q - 1 = " + fmt(pm.q - 1.0));
  if (f.any()) return {false, f.summary()};
  return {true, "q - 1 = " + fmt(pm.q - 1.0) + ", block oracle agrees"};
}

Outcome werner_scan() {
  std::vector<double> ps;
  for (int i = 0; i <= 100; ++i) ps.push_back(i / 100.0);
  const auto rows = cli::scan_werner(ps);
  Failures f;
  double worst = 0.0;
  double flip = -1.0;
  bool monotone = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double err = std::abs(rows[i].min_pt_eigenvalue - (1.0 - 3.0 * rows[i].p) / 4.0);
    worst = std::max(worst, err);
    if (err > 1e-10) f.add("p=" + fmt(rows[i].p) + " error " + fmt(err));
    const bool ent = rows[i].verdict == cli::Verdict::Entangled;
    if (ent && flip < 0.0) flip = rows[i].p;
    if (!ent && flip >= 0.0) monotone = false;
  }
  if (!monotone) f.add("verdict is not monotone in p");
  if (flip < 0.0 || std::abs(flip - 1.0 / 3.0) > 0.01 + 1e-12) f.add("flip at p=" + fmt(flip));
  if (f.any()) return {false, f.summary()};
  return {true, "101 points, max error " + fmt(worst) + ", first entangled p = " + fmt(flip)};
}

Outcome counterexample() {
  const DensityMatrix rho = validate_density(oracle::lewenstein_form(
      oracle::phi_plus(), {{0.1, oracle::basis(0)}, {0.1, oracle::basis(2)}}));
  Failures f;
  // Every product of R(rho) that lifts the state: rho(q) stays inside R(rho)
  // and would have rank 3. The family search must find none.
  const RangeSplit split = range_projector(rho.matrix());
  if (split.kernel.size() != 1) f.add("state does not have rank 3");
  int feasible = 0;
  if (split.kernel.size() == 1) {
    const ProductFamily3 fam(split.kernel[0]);
    for (const Bloch& n : fibonacci_sphere(4000)) {
      LocalMixture cand;
      cand.terms.push_back({1.0, fam.at_bloch(n)});
      if (const auto q = minimal_lift(rho, cand)) {
        ++feasible;
        const Matrix4 m = (rho.matrix() + *q * cand.assemble()) * Complex(1.0 / (1.0 + *q));
        if (oracle::rank(m) != 4) f.add("range candidate with r(rho(q)) = " + std::to_string(oracle::rank(m)));
      }
    }
  }
  const Pseudomixture pm = pseudomix(rho);
  if (pm.positive_part.size() != 4) f.add("n+ = " + std::to_string(pm.positive_part.size()));
  if (!pm.cardinality_fallback) f.add("fallback flag not set");
  const NegativePart neg = find_negative_part(rho);
  const Matrix4 lifted = (rho.matrix() + neg.q * neg.mixture.assemble()) * Complex(1.0 / (1.0 + neg.q));
  if (oracle::rank(lifted) != 4) f.add("r(rho(q)) = " + std::to_string(oracle::rank(lifted)));
  if (f.any()) return {false, f.summary()};
  return {true, "4000 range products, " + std::to_string(feasible) +
                    " feasible; pipeline n+ = 4, flag set, q = " + fmt(pm.q)};
}

Outcome certificates_round_trip() {
  const fs::path dir = fs::temp_directory_path() / "qsep_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  Failures f;
  int verified = 0;
  std::vector<Matrix4> all = g_corpus.separable;
  all.insert(all.end(), g_corpus.entangled_mixed.begin(), g_corpus.entangled_mixed.end());
  all.insert(all.end(), g_corpus.entangled_pure.begin(), g_corpus.entangled_pure.end());
  if (all.size() != 1700) f.add("corpora of criteria 4 and 7 missing");
  for (std::size_t i = 0; i < all.size(); ++i) {
    const std::string state = (dir / ("s" + std::to_string(i) + ".json")).string();
    const std::string cert = (dir / ("c" + std::to_string(i) + ".json")).string();
    try {
      cli::write_text(state, cli::format_state_file({std::nullopt, std::nullopt, all[i]}));
      cli::cmd_decompose(state, cert, {});
      std::ostringstream report;
      if (cli::cmd_verify(state, cert, report) == cli::kExitOk)
        ++verified;
      else
        f.add("certificate " + std::to_string(i) + " failed: " + report.str());
    } catch (const Error& e) {
      f.add("certificate " + std::to_string(i) + ": " + e.what());
    }
  }
  // The executable verifies a sample of the same certificates.
  for (std::size_t i : {std::size_t{0}, std::size_t{999}, std::size_t{1000}, std::size_t{1699}}) {
    if (i >= all.size()) continue;
    const std::string cmd = std::string(QSEP_TOOL_PATH) + " verify " +
                            (dir / ("s" + std::to_string(i) + ".json")).string() + " " +
                            (dir / ("c" + std::to_string(i) + ".json")).string() + " >/dev/null";
    if (std::system(cmd.c_str()) != 0) f.add("tool rejects certificate " + std::to_string(i));
  }
  // Fixed-seed corpora: every kind, generated twice in process and once by the tool.
  int corpus_files = 0;
  for (const char* kind : {"pure", "mixed", "separable", "entangled", "product"}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto k = cli::random_kind_from_string(kind);
      const std::string a = cli::format_state_file(cli::random_state_file(k, std::nullopt, seed));
      const std::string b = cli::format_state_file(cli::random_state_file(k, std::nullopt, seed));
      if (a != b) f.add(std::string("corpus ") + kind + " seed " + std::to_string(seed) + " differs");
      ++corpus_files;
      if (seed < 2) {
        const std::string out = (dir / (std::string(kind) + std::to_string(seed) + ".json")).string();
        const std::string cmd = std::string(QSEP_TOOL_PATH) + " random --kind " + kind + " --seed " +
                                std::to_string(seed) + " -o " + out;
        if (std::system(cmd.c_str()) != 0 || cli::read_text(out) != a)
          f.add(std::string("tool output differs for ") + kind + " seed " + std::to_string(seed));
      }
    }
  }
  fs::remove_all(dir);
  if (f.any()) return {false, f.summary()};
  return {true, std::to_string(verified) + " certificates verified, " + std::to_string(corpus_files) +
                    " seeded files reproduced"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Bell-state spectrum", bell_spectrum},
      {"pure-state spectrum family", pure_spectrum_family},
      {"uniqueness of the negative eigenvalue", unique_negative_eigenvalue},
      {"separable decomposition soundness/completeness", separable_soundness},
      {"cardinality law", cardinality_law},
      {"plane product vectors exist", plane_exhaustiveness},
      {"pseudomixture reconstruction", pseudomixture_reconstruction},
      {"Bell constructive q", bell_constructive_q},
      {"Werner scan", werner_scan},
      {"rank-3 counterexample", counterexample},
      {"certificate round trip", certificates_round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first
              << " -- " << o.detail << " (" << fmt(s) << " s)" << std::endl;
    failed += !o.pass;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
