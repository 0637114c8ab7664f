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

#include <gtest/gtest.h>

#include <numeric>

#include "niho/error.hpp"

namespace niho {
namespace {

bool naive_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d < n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

TEST(NumTheory, IsPrimeMatchesTrialDivision) {
  for (std::uint64_t n = 0; n < 2000; ++n) EXPECT_EQ(is_prime(n), naive_prime(n)) << n;
  EXPECT_TRUE(is_prime(16777213));  // largest prime below 2^24
  EXPECT_FALSE(is_prime(16777215));
}

TEST(NumTheory, PrimeFactors) {
  EXPECT_EQ(prime_factors(624), (std::vector<std::uint64_t>{2, 3, 13}));
  EXPECT_EQ(prime_factors(1), std::vector<std::uint64_t>{});
  for (std::uint64_t n = 2; n < 500; ++n) {
    std::uint64_t rest = n;
    for (std::uint64_t f : prime_factors(n)) {
      EXPECT_TRUE(naive_prime(f));
      ASSERT_EQ(rest % f, 0u);
      while (rest % f == 0) rest /= f;
    }
    EXPECT_EQ(rest, 1u) << n;
  }
}

TEST(NumTheory, EulerPhiCountsCoprimes) {
  for (std::uint64_t n = 1; n < 400; ++n) {
    std::uint64_t count = 0;
    for (std::uint64_t a = 1; a <= n; ++a) count += std::gcd(a, n) == 1;
    EXPECT_EQ(euler_phi(n), count) << n;
  }
  EXPECT_EQ(euler_phi(624), 192u);
}

TEST(NumTheory, ModInverse) {
  EXPECT_EQ(mod_inverse(505, 624), 409u);
  EXPECT_EQ(mod_inverse(145, 624), 241u);
  EXPECT_FALSE(mod_inverse(26, 624).has_value());
  for (std::uint64_t m = 2; m < 120; ++m) {
    for (std::uint64_t a = 0; a < m; ++a) {
      const auto inv = mod_inverse(a, m);
      if (std::gcd(a, m) == 1) {
        ASSERT_TRUE(inv.has_value());
        EXPECT_EQ(*inv * a % m, 1 % m);
        EXPECT_LT(*inv, m);
      } else {
        EXPECT_FALSE(inv.has_value());
      }
    }
  }
}

TEST(NumTheory, PowModAgainstRepeatedMultiplication) {
  for (std::uint64_t m : {1ull, 7ull, 624ull, 1000003ull}) {
    for (std::uint64_t b = 0; b < 20; ++b) {
      std::uint64_t acc = 1 % m;
      for (std::uint64_t e = 0; e < 40; ++e) {
        EXPECT_EQ(pow_mod(b, e, m), acc);
        acc = acc * b % m;
      }
    }
  }
  const std::uint64_t big = (std::uint64_t{1} << 61) - 1;
  EXPECT_EQ(pow_mod(3, big - 1, big), 1u);  // Mersenne prime
}

TEST(NumTheory, CheckedPowOverflow) {
  EXPECT_EQ(checked_pow(13, 8), 815730721u);
  EXPECT_EQ(checked_pow(2, 62), std::uint64_t{1} << 62);
  EXPECT_EQ(checked_pow(0, 0), 1u);
  try {
    checked_pow(3, 41);
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOverflow);
  }
}

TEST(NumTheory, ReduceSignedAndValuation) {
  EXPECT_EQ(reduce_signed(-2, 26), 24u);
  EXPECT_EQ(reduce_signed(-52, 26), 0u);
  EXPECT_EQ(reduce_signed(27, 26), 1u);
  EXPECT_EQ(valuation(54, 3), 3u);
  EXPECT_EQ(valuation(126, 3), 2u);
  EXPECT_EQ(valuation(7, 3), 0u);
}

}  // namespace
}  // namespace niho
