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

#include "niho/numtheory.hpp"

#include <numeric>

#include "niho/error.hpp"

namespace niho {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kSizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kMixedFields: return "MixedFields";
    case ErrorCode::kDegreeMismatch: return "DegreeMismatch";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNegativeExponent: return "NegativeExponent";
    case ErrorCode::kUnboundPolynomial: return "UnboundPolynomial";
    case ErrorCode::kUnboundSymbol: return "UnboundSymbol";
    case ErrorCode::kNotNihoShaped: return "NotNihoShaped";
    case ErrorCode::kDenominatorZero: return "DenominatorZero";
    case ErrorCode::kMethodDisagreement: return "MethodDisagreement";
    case ErrorCode::kUnsupportedCharacteristic: return "UnsupportedCharacteristic";
    case ErrorCode::kNotPermutation: return "NotPermutation";
    case ErrorCode::kKParityError: return "KParityError";
    case ErrorCode::kDivisibilityError: return "DivisibilityError";
    case ErrorCode::kOverflow: return "Overflow";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d <= n / d; d += (d == 2 ? 1 : 2)) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (std::uint64_t prime : prime_factors(n)) phi = phi / prime * (prime - 1);
  return phi;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > (std::uint64_t{1} << 63) / base) {
      throw Error(ErrorCode::kOverflow, "power " + std::to_string(base) + "^" + std::to_string(exp));
    }
    result *= base;
  }
  return result;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t m) {
  if (m == 0) return std::nullopt;
  __int128 old_r = static_cast<__int128>(a % m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 quot = old_r / r;
    old_r -= quot * r;
    std::swap(old_r, r);
    old_s -= quot * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    if (m == 1) return 0;
    return std::nullopt;
  }
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

std::uint64_t reduce_signed(std::int64_t a, std::uint64_t m) {
  const __int128 r = static_cast<__int128>(a) % static_cast<__int128>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

unsigned valuation(std::uint64_t n, std::uint64_t prime) {
  unsigned v = 0;
  while (n != 0 && n % prime == 0) {
    n /= prime;
    ++v;
  }
  return v;
}

}  // namespace niho
