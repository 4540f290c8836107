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


// Machine-checkable certificates. A certificate embeds the state it was
// computed for, the tolerances used, the verdict with its PPT evidence and,
// for `decompose`, the explicit local mixture or pseudomixture with the
// residuals the producer measured. verify_certificate recomputes everything
// from the embedded numbers alone.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "qsep/cli/json_format.hpp"
#include "qsep/pseudomixture.hpp"
#include "qsep/separable_decomp.hpp"

namespace qsep::cli {

enum class Verdict { Product, Separable, Entangled };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

/// Entangled if NPT; product if PPT of rank 1 (a pure product state);
/// separable otherwise.
Verdict classify(const DensityMatrix& rho, const Tolerances& tol = {});

struct Certificate {
  std::string tool = "qsep";
  std::string version;
  Verdict verdict = Verdict::Separable;
  Tolerances tolerances;
  PptReport ppt;
  bool factorizable = false;
  double index_of_correlation = 0.0;
  Matrix4 state;

  std::optional<LocalMixture> local_mixture;
  std::optional<Pseudomixture> pseudomixture;

  // Residuals as measured by the producer.
  std::optional<double> reconstruction;
  std::optional<double> positive_part_min_pt;
};

/// Verdict evidence for `state` and, with `decompose`, its decomposition.
/// `state` is validated first (ValidationError on failure).
Certificate make_certificate(const Matrix4& state, const Tolerances& tol, bool decompose);

Json certificate_to_json(const Certificate& cert);
/// Throws ParseError with the offending field.
Certificate certificate_from_json(const Json& doc, const std::string& source);

/// Independent re-check of a certificate against `state`.
VerificationReport verify_certificate(const Matrix4& state, const Certificate& cert);

}  // namespace qsep::cli
