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


// Subcommands of the `qsep` executable. Each returns the process exit code and
// writes its report to `out`; errors propagate as qsep::Error and are mapped by
// exit_code_for.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsep/cli/certificate.hpp"
#include "qsep/cli/state_file.hpp"

namespace qsep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalFault = 3;

/// 2 for unreadable or invalid input, 3 for everything else (numerical faults).
int exit_code_for(ErrorCode code);

/// Prints the verdict-only certificate.
int cmd_check(const std::string& path, const Tolerances& tol, std::ostream& out);

/// Writes the full certificate to `out_path` (stdout if empty). The
/// certificate is re-verified before it is written; a failure is Internal.
int cmd_decompose(const std::string& path, const std::string& out_path, const Tolerances& tol);

/// Prints one line per check; 0 when all pass, 1 otherwise.
int cmd_verify(const std::string& state_path, const std::string& cert_path, std::ostream& out);

enum class RandomKind { Pure, Mixed, Separable, Entangled, Product };
RandomKind random_kind_from_string(const std::string& s);

/// Seeded random state; `rank` is the matrix rank for mixed/entangled and the
/// number of product terms for separable (default 4). Pure and product states
/// accept only rank 1.
StateFile random_state_file(RandomKind kind, std::optional<int> rank, std::uint64_t seed);

int cmd_random(const std::string& kind, std::optional<int> rank, std::uint64_t seed,
               const std::string& out_path);

/// p |Psi-><Psi-| + (1 - p) I/4.
Matrix4 werner_state(double p);

struct ScanRow {
  double p = 0.0;
  Verdict verdict = Verdict::Separable;
  double min_pt_eigenvalue = 0.0;
  std::optional<double> constructive_q;
  std::size_t cardinality_plus = 0;
  std::size_t cardinality_minus = 0;
};

std::vector<ScanRow> scan_werner(std::span<const double> ps, const Tolerances& tol = {});

/// p_i = i / (grid - 1), i = 0 .. grid - 1. Throws ValidationError for grid < 2.
std::vector<double> scan_grid(int grid);

/// Tab-separated table with a header row.
std::string format_scan(std::span<const ScanRow> rows);

int cmd_scan(const std::string& family, int grid, const std::string& out_path,
             const Tolerances& tol);

}  // namespace qsep::cli
