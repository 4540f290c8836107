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


#include "qsep/cli/state_file.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace qsep::cli {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, field + ": " + what);
}

Json pair(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) bad(field, "expected [re, im]");
  return {number_from_json(j[0], field + "[0]"), number_from_json(j[1], field + "[1]")};
}

template <std::size_t N>
Ket<N> ket_from(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != N) bad(field, "expected " + std::to_string(N) + " entries");
  Ket<N> v;
  for (std::size_t i = 0; i < N; ++i)
    v[i] = complex_from_json(j[i], field + "[" + std::to_string(i) + "]");
  return v;
}

template <std::size_t N>
Json ket_to(const Ket<N>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(pair(z));
  return out;
}

}  // namespace

double number_from_json(const Json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  return j.get<double>();
}

Json matrix_to_json(const Matrix4& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < 4; ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < 4; ++c) row.push_back(pair(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix4 matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 4) bad(field, "expected 4 rows");
  Matrix4 m;
  for (std::size_t r = 0; r < 4; ++r) {
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != 4) bad(rf, "expected 4 entries");
    for (std::size_t c = 0; c < 4; ++c)
      m(r, c) = complex_from_json(j[r][c], rf + "[" + std::to_string(c) + "]");
  }
  return m;
}

Json ket_to_json(const Ket2& v) { return ket_to(v); }
Json ket_to_json(const Ket4& v) { return ket_to(v); }
Ket2 ket2_from_json(const Json& j, const std::string& field) { return ket_from<2>(j, field); }
Ket4 ket4_from_json(const Json& j, const std::string& field) { return ket_from<4>(j, field); }

StateFile parse_state_file(const std::string& text, const std::string& source) {
  const Json doc = parse_json(text, source);
  if (!doc.is_object()) bad(source, "expected a JSON object");
  StateFile sf;
  for (const auto& [key, value] : doc.items()) {
    if (key == "label") {
      if (!value.is_string()) bad(source + ": label", "expected a string");
      sf.label = value.get<std::string>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) bad(source + ": seed", "expected a non-negative integer");
      sf.seed = value.get<std::uint64_t>();
    } else if (key != "matrix") {
      bad(source, "unknown field \"" + key + "\"");
    }
  }
  if (!doc.contains("matrix")) bad(source, "missing field \"matrix\"");
  sf.matrix = matrix_from_json(doc["matrix"], source + ": matrix");
  return sf;
}

std::string format_state_file(const StateFile& sf) {
  Json doc = Json::object();
  if (sf.label) doc["label"] = *sf.label;
  if (sf.seed) doc["seed"] = *sf.seed;
  doc["matrix"] = matrix_to_json(sf.matrix);
  return to_canonical(doc);
}

DensityMatrix load_state(const StateFile& sf, const std::string& source, double psd_tol) {
  try {
    return validate_density(sf.matrix, psd_tol);
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::NotHermitian:
      case ErrorCode::NotPositive:
      case ErrorCode::BadTrace:
      case ErrorCode::NonFinite:
        throw Error(ErrorCode::ValidationError, source + ": matrix: " + e.what());
      default:
        throw;
    }
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ValidationError, path + ": cannot write file");
  out << text;
  if (!out) throw Error(ErrorCode::ValidationError, path + ": write failed");
}

}  // namespace qsep::cli
