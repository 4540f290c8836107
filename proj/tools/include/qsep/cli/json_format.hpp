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


// Canonical JSON text: two-space indentation, keys in insertion order, numbers
// with 17 significant digits ('.' separator, locale independent), arrays of
// numbers and of such arrays kept on one line. Equal documents give equal
// bytes, so seeded corpora are reproducible across runs and platforms.

#pragma once

#include <string>

#include <json.hpp>

namespace qsep::cli {

using Json = nlohmann::ordered_json;

/// %.17g-style rendering (trailing zeros dropped); -0 prints as 0.
/// Throws ValidationError for NaN or infinity (not representable in JSON).
std::string format_number(double v);

/// Canonical text of `doc`, newline-terminated.
std::string to_canonical(const Json& doc);

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json(const std::string& text, const std::string& source);

}  // namespace qsep::cli
