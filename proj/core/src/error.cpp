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

#include "qsep/error.hpp"

namespace qsep {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::BadTrace: return "BadTrace";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::EmptyChart: return "EmptyChart";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NotInRange: return "NotInRange";
    case ErrorCode::BreaksPositivity: return "BreaksPositivity";
    case ErrorCode::NotSeparable: return "NotSeparable";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::InconsistentPlane: return "InconsistentPlane";
    case ErrorCode::MultipleNegative: return "MultipleNegative";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NotEntangled: return "NotEntangled";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::RejectionBudget: return "RejectionBudget";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_numerical_fault(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoConvergence:
    case ErrorCode::NotFound:
    case ErrorCode::NoSignChange:
    case ErrorCode::InconsistentPlane:
    case ErrorCode::MultipleNegative:
    case ErrorCode::SearchExhausted:
    case ErrorCode::Internal:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code) {}

}  // namespace qsep
