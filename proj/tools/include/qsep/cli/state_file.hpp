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


// State files: a JSON object
//
//   {
//     "label": "werner p=0.5",        (optional)
//     "seed": 42,                     (optional)
//     "matrix": [[[re, im], ...], ...] 4 x 4, row-major, basis |00>,|01>,|10>,|11>
//   }

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qsep/cli/json_format.hpp"
#include "qsep/qlinalg.hpp"

namespace qsep::cli {

struct StateFile {
  std::optional<std::string> label;
  std::optional<std::uint64_t> seed;
  Matrix4 matrix;
};

/// Matrix as nested [re, im] pairs.
Json matrix_to_json(const Matrix4& m);
/// Inverse of matrix_to_json; `field` names the location in error messages.
Matrix4 matrix_from_json(const Json& j, const std::string& field);

Json ket_to_json(const Ket2& v);
Ket2 ket2_from_json(const Json& j, const std::string& field);
Json ket_to_json(const Ket4& v);
Ket4 ket4_from_json(const Json& j, const std::string& field);

/// Reads a number; throws ParseError naming `field` otherwise.
double number_from_json(const Json& j, const std::string& field);

StateFile parse_state_file(const std::string& text, const std::string& source = "<input>");
std::string format_state_file(const StateFile& sf);

/// parse_state_file + validate_density; validation failures are rethrown as
/// ValidationError with the source name.
DensityMatrix load_state(const StateFile& sf, const std::string& source,
                         double psd_tol = kPsdTol);

std::string read_text(const std::string& path);
/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace qsep::cli
