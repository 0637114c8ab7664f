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

#ifndef NIHO_NUMTHEORY_HPP_
#define NIHO_NUMTHEORY_HPP_

#include <cstdint>
#include <optional>
#include <vector>

namespace niho {

bool is_prime(std::uint64_t n);

/// Distinct prime divisors of n in ascending order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Euler's totient by trial-division factorization.
std::uint64_t euler_phi(std::uint64_t n);

/// base^exp, throwing kOverflow past 2^63.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m via extended Euclid; empty when gcd(a, m) != 1.
std::optional<std::uint64_t> mod_inverse(std::uint64_t a, std::uint64_t m);

/// Least nonnegative residue of a signed value.
std::uint64_t reduce_signed(std::int64_t a, std::uint64_t m);

/// Exponent of prime in n (n > 0).
unsigned valuation(std::uint64_t n, std::uint64_t prime);

}  // namespace niho

#endif  // NIHO_NUMTHEORY_HPP_
