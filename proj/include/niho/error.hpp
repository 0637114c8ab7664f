/* Copyright 2026 The niho Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef NIHO_ERROR_HPP_
#define NIHO_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace niho {

enum class ErrorCode {
  kNotPrime,
  kSizeCapExceeded,
  kDivisionByZero,
  kMixedFields,
  kDegreeMismatch,
  kParseError,
  kNegativeExponent,
  kUnboundPolynomial,
  kUnboundSymbol,
  kNotNihoShaped,
  kDenominatorZero,
  kMethodDisagreement,
  kUnsupportedCharacteristic,
  kNotPermutation,
  kKParityError,
  kDivisibilityError,
  kOverflow,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(ErrorCode::kParseError, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace niho

#endif  // NIHO_ERROR_HPP_
