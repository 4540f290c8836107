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


#include "qsep/cli/json_format.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

#include "qsep/error.hpp"

namespace qsep::cli {

std::string format_number(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::ValidationError, "non-finite number in output");
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) throw Error(ErrorCode::Internal, "number formatting failed");
  return std::string(buf, res.ptr);
}

namespace {

// Nesting depth of an all-numeric array (1 for [1, 2]), or -1 otherwise.
int numeric_depth(const Json& j) {
  if (j.is_number()) return 0;
  if (!j.is_array() || j.empty()) return -1;
  int depth = -1;
  for (const auto& x : j) {
    const int d = numeric_depth(x);
    if (d < 0) return -1;
    depth = std::max(depth, d);
  }
  return depth + 1;
}

void emit(const Json& j, int indent, std::string& out);

void emit_scalar(const Json& j, std::string& out) {
  if (j.is_number_float())
    out += format_number(j.get<double>());
  else
    out += j.dump();
}

void emit_inline(const Json& j, std::string& out) {
  if (!j.is_array()) return emit_scalar(j, out);
  out += '[';
  bool first = true;
  for (const auto& x : j) {
    if (!first) out += ", ";
    first = false;
    emit_inline(x, out);
  }
  out += ']';
}

void emit(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(key).dump() + ": ";
      emit(value, indent + 2, out);
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    const int d = numeric_depth(j);
    if (j.empty()) {
      out += "[]";
    } else if (d >= 1 && d <= 2) {
      emit_inline(j, out);
    } else {
      out += "[\n";
      bool first = true;
      for (const auto& x : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        emit(x, indent + 2, out);
      }
      out += "\n" + close + "]";
    }
  } else {
    emit_scalar(j, out);
  }
}

}  // namespace

std::string to_canonical(const Json& doc) {
  std::string out;
  emit(doc, 0, out);
  out += '\n';
  return out;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Byte offset -> line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << col << ": invalid JSON";
    throw Error(ErrorCode::ParseError, msg.str());
  }
}

}  // namespace qsep::cli
