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


// qsep command-line front end.

#include <CLI11.hpp>

#include <iostream>

#include "qsep/cli/commands.hpp"
#include "qsep/version.hpp"

int main(int argc, char** argv) {
  using namespace qsep::cli;

  CLI::App app{"Two-qubit separability: PPT verdicts, minimal product decompositions and "
               "pseudomixtures with verifiable certificates"};
  app.set_version_flag("--version", std::string(qsep::kVersion));
  app.require_subcommand(1);

  qsep::Tolerances tol;
  app.add_option("--tol-rank", tol.rank, "Relative eigenvalue cutoff for numerical rank")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-psd", tol.psd, "Negative-eigenvalue dead band for positivity")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol-recon", tol.recon, "Frobenius reconstruction tolerance")
      ->check(CLI::PositiveNumber);

  std::string file, cert, out;
  auto* check = app.add_subcommand("check", "Verdict, minimum PT eigenvalue and index of correlation");
  check->add_option("file", file, "State file")->required();

  auto* decompose = app.add_subcommand("decompose", "Local mixture or pseudomixture certificate");
  decompose->add_option("file", file, "State file")->required();
  decompose->add_option("-o,--output", out, "Certificate path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Re-check a certificate against a state file");
  verify->add_option("file", file, "State file")->required();
  verify->add_option("cert", cert, "Certificate file")->required();

  std::string kind;
  std::optional<int> rank;
  std::uint64_t seed = 0;
  auto* random = app.add_subcommand("random", "Seeded random state file");
  random->add_option("--kind", kind, "pure, mixed, separable, entangled or product")->required();
  random->add_option("--rank", rank, "Rank (mixed, entangled) or number of terms (separable)");
  random->add_option("--seed", seed, "64-bit seed")->required();
  random->add_option("-o,--output", out, "Output path (default stdout)");

  std::string family;
  int grid = 0;
  auto* scan = app.add_subcommand("scan", "Verdict and constructive q over a one-parameter family");
  scan->add_option("--family", family, "State family (werner)")->required();
  scan->add_option("--grid", grid, "Number of grid points including both ends")->required();
  scan->add_option("-o,--output", out, "Table path (default stdout)");

  for (auto* sub : {check, decompose, verify, random, scan}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*check) return cmd_check(file, tol, std::cout);
    if (*decompose) return cmd_decompose(file, out, tol);
    if (*verify) return cmd_verify(file, cert, std::cout);
    if (*random) return cmd_random(kind, rank, seed, out);
    if (*scan) return cmd_scan(family, grid, out, tol);
  } catch (const qsep::Error& e) {
    std::cerr << "qsep: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "qsep: internal error: " << e.what() << '\n';
    return kExitNumericalFault;
  }
  return kExitInputError;
}
