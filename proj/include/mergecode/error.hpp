// Copyright 2026 The mergecode Authors
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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mergecode {

enum class Errc {
  EmptyInput,
  ZeroProbability,
  NotNormalizable,
  BadRadix,
  AllZeroCounts,
  ParseError,
  AlphaOutOfRange,
  SizeMismatch,
  InvalidParam,
  Infeasible,
  NoConvergence,
  TooLarge,
};

constexpr std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::ZeroProbability: return "ZeroProbability";
    case Errc::NotNormalizable: return "NotNormalizable";
    case Errc::BadRadix: return "BadRadix";
    case Errc::AllZeroCounts: return "AllZeroCounts";
    case Errc::ParseError: return "ParseError";
    case Errc::AlphaOutOfRange: return "AlphaOutOfRange";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::InvalidParam: return "InvalidParam";
    case Errc::Infeasible: return "Infeasible";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

/// Base error for every failure raised by the library. The code identifies
/// which precondition was violated; the message is meant for humans.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised when a maximum-length bound (or water level) cannot be met by any
/// prefix code. Carries the smallest achievable maximum length, log_D |X|.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& message, double min_max_length)
      : Error(Errc::Infeasible, message), min_max_length_(min_max_length) {}

  double min_max_length() const noexcept { return min_max_length_; }

 private:
  double min_max_length_;
};

}  // namespace mergecode
