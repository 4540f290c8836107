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


#include "qsep/cli/commands.hpp"

#include <iostream>
#include <sstream>

#include "qsep/random.hpp"

namespace qsep::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::NotHermitian:
    case ErrorCode::NotPositive:
    case ErrorCode::BadTrace:
    case ErrorCode::NonFinite:
      return kExitInputError;
    default:
      return kExitNumericalFault;
  }
}

namespace {

Matrix4 read_state_matrix(const std::string& path) {
  return parse_state_file(read_text(path), path).matrix;
}

}  // namespace

int cmd_check(const std::string& path, const Tolerances& tol, std::ostream& out) {
  const Certificate cert = make_certificate(read_state_matrix(path), tol, false);
  out << to_canonical(certificate_to_json(cert));
  return kExitOk;
}

int cmd_decompose(const std::string& path, const std::string& out_path, const Tolerances& tol) {
  const Matrix4 state = read_state_matrix(path);
  const Certificate cert = make_certificate(state, tol, true);
  const std::string text = to_canonical(certificate_to_json(cert));

  // What a reader will see: re-parse the emitted text and verify it.
  const Certificate reread = certificate_from_json(parse_json(text, "certificate"), "certificate");
  const VerificationReport rep = verify_certificate(state, reread);
  if (!rep.passed()) {
    std::ostringstream msg;
    msg << "certificate failed self-verification:";
    for (const auto& c : rep.checks)
      if (!c.passed) msg << ' ' << c.name << '=' << c.measured;
    throw Error(ErrorCode::Internal, msg.str());
  }
  write_text(out_path, text);
  return kExitOk;
}

int cmd_verify(const std::string& state_path, const std::string& cert_path, std::ostream& out) {
  const Matrix4 state = read_state_matrix(state_path);
  const Certificate cert =
      certificate_from_json(parse_json(read_text(cert_path), cert_path), cert_path);
  const VerificationReport rep = verify_certificate(state, cert);
  for (const auto& c : rep.checks) {
    out << (c.passed ? "PASS" : "FAIL") << '\t' << c.name << '\t' << format_number(c.measured)
        << '\t' << format_number(c.threshold) << '\n';
  }
  out << (rep.passed() ? "verified" : "verification failed") << '\n';
  return rep.passed() ? kExitOk : kExitVerificationFailed;
}

// --- random -----------------------------------------------------------------

RandomKind random_kind_from_string(const std::string& s) {
  if (s == "pure") return RandomKind::Pure;
  if (s == "mixed") return RandomKind::Mixed;
  if (s == "separable") return RandomKind::Separable;
  if (s == "entangled") return RandomKind::Entangled;
  if (s == "product") return RandomKind::Product;
  throw Error(ErrorCode::ValidationError,
              "--kind must be pure, mixed, separable, entangled or product (got \"" + s + "\")");
}

StateFile random_state_file(RandomKind kind, std::optional<int> rank, std::uint64_t seed) {
  const int r = rank.value_or(kind == RandomKind::Pure || kind == RandomKind::Product ? 1 : 4);
  if (r < 1) throw Error(ErrorCode::ValidationError, "--rank must be positive");
  Rng rng(seed);
  StateFile sf;
  sf.seed = seed;
  std::string name;
  switch (kind) {
    case RandomKind::Pure:
    case RandomKind::Product:
      if (r != 1) throw Error(ErrorCode::ValidationError, "--rank must be 1 for pure and product states");
      sf.matrix = kind == RandomKind::Pure ? random_pure(rng).matrix()
                                           : projector(random_product(rng).ket());
      name = kind == RandomKind::Pure ? "pure" : "product";
      break;
    case RandomKind::Mixed:
    case RandomKind::Entangled:
      if (r > 4) throw Error(ErrorCode::ValidationError, "--rank must be at most 4");
      sf.matrix = kind == RandomKind::Mixed ? random_mixed(rng, r).matrix()
                                            : random_entangled(rng, r).matrix();
      name = (kind == RandomKind::Mixed ? "mixed rank=" : "entangled rank=") + std::to_string(r);
      break;
    case RandomKind::Separable:
      sf.matrix = random_separable(rng, r).matrix();
      name = "separable terms=" + std::to_string(r);
      break;
  }
  sf.label = "random " + name;
  return sf;
}

int cmd_random(const std::string& kind, std::optional<int> rank, std::uint64_t seed,
               const std::string& out_path) {
  write_text(out_path, format_state_file(random_state_file(random_kind_from_string(kind), rank, seed)));
  return kExitOk;
}

// --- scan -------------------------------------------------------------------

Matrix4 werner_state(double p) {
  Matrix4 m = Matrix4::identity() * Complex((1.0 - p) / 4.0);
  m(1, 1) += p / 2.0;
  m(2, 2) += p / 2.0;
  m(1, 2) -= p / 2.0;
  m(2, 1) -= p / 2.0;
  return m;
}

std::vector<double> scan_grid(int grid) {
  if (grid < 2) throw Error(ErrorCode::ValidationError, "--grid must be at least 2");
  std::vector<double> ps;
  for (int i = 0; i < grid; ++i) ps.push_back(static_cast<double>(i) / (grid - 1));
  return ps;
}

std::vector<ScanRow> scan_werner(std::span<const double> ps, const Tolerances& tol) {
  std::vector<ScanRow> rows;
  for (double p : ps) {
    const DensityMatrix rho = validate_density(werner_state(p), tol.psd);
    ScanRow row;
    row.p = p;
    row.verdict = classify(rho, tol);
    row.min_pt_eigenvalue = is_ppt(rho, tol.psd).min_eigenvalue;
    if (row.verdict == Verdict::Entangled) {
      const Pseudomixture pm = pseudomix(rho, tol);
      row.constructive_q = pm.q;
      row.cardinality_plus = pm.positive_part.size();
      row.cardinality_minus = pm.negative_part.size();
    } else {
      row.cardinality_plus = decompose(rho, tol).size();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_scan(std::span<const ScanRow> rows) {
  std::string out = "p\tverdict\tmin_pt_eigenvalue\tconstructive_q\tcardinality_plus\tcardinality_minus\n";
  for (const auto& r : rows) {
    out += format_number(r.p) + '\t' + std::string(to_string(r.verdict)) + '\t' +
           format_number(r.min_pt_eigenvalue) + '\t' +
           (r.constructive_q ? format_number(*r.constructive_q) : "-") + '\t' +
           std::to_string(r.cardinality_plus) + '\t' + std::to_string(r.cardinality_minus) + '\n';
  }
  return out;
}

int cmd_scan(const std::string& family, int grid, const std::string& out_path,
             const Tolerances& tol) {
  if (family != "werner")
    throw Error(ErrorCode::ValidationError, "--family must be werner (got \"" + family + "\")");
  const auto ps = scan_grid(grid);
  write_text(out_path, format_scan(scan_werner(ps, tol)));
  return kExitOk;
}

}  // namespace qsep::cli
