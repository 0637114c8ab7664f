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

#include "niho/field.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "niho/error.hpp"
#include "niho/numtheory.hpp"

namespace niho {
namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

// Remainder of a by monic b over F_p, schoolbook.
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    a.pop_back();
  }
  return a;
}

Poly monic_from_index(std::uint64_t idx, unsigned deg, std::uint32_t p) {
  // c0 is the most significant digit, matching low-degree-first lex order.
  Poly f(deg + 1, 0);
  f[deg] = 1;
  for (unsigned i = deg; i-- > 0;) {
    f[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  return f;
}

bool irreducible_by_trial_division(const Poly& f, std::uint32_t p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= m / 2; ++d) {
    const std::uint64_t count = checked_pow(p, d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      const Poly r = poly_rem(f, monic_from_index(idx, d, p), p);
      if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; })) return false;
    }
  }
  return true;
}

Poly least_irreducible(unsigned m, std::uint32_t p) {
  for (std::uint64_t idx = 0;; ++idx) {
    Poly f = monic_from_index(idx, m, p);
    if (irreducible_by_trial_division(f, p)) return f;
  }
}

TEST(Field, ModulusIsLeastIrreducibleByTrialDivision) {
  const std::vector<std::pair<std::uint32_t, unsigned>> cases = {
      {2, 1}, {2, 2}, {2, 3}, {2, 4}, {2, 6}, {2, 8}, {3, 1}, {3, 2}, {3, 3}, {3, 4},
      {3, 6}, {5, 2}, {5, 3}, {5, 4}, {7, 2}, {7, 4}, {11, 2}, {13, 4}};
  for (const auto& [p, m] : cases) {
    const FieldPtr f = make_field(p, m);
    EXPECT_EQ(f->modulus(), least_irreducible(m, p)) << p << "^" << m;
    EXPECT_TRUE(is_irreducible(f->modulus(), p));
  }
}

TEST(Field, RabinTestAgreesWithTrialDivision) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned m = 1; m <= 4; ++m) {
      const std::uint64_t count = checked_pow(p, m);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        const Poly f = monic_from_index(idx, m, p);
        EXPECT_EQ(is_irreducible(f, p), irreducible_by_trial_division(f, p));
      }
    }
  }
}

TEST(Field, ConstructionErrors) {
  try {
    make_field(4, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotPrime);
  }
  Caps caps;
  caps.field_order = 1000;
  try {
    make_field(5, 5, caps);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeCapExceeded);
  }
  EXPECT_EQ(make_field(3, 2)->order(), 9u);
  EXPECT_EQ(make_field(5, 4)->order(), 625u);
}

TEST(Field, DescribeAndDeterminism) {
  const FieldPtr a = make_field(5, 4);
  const FieldPtr b = make_field(5, 4);
  EXPECT_EQ(a->describe(), b->describe());
  EXPECT_EQ(a->describe().rfind("GF(5^4) mod [", 0), 0u);
  EXPECT_EQ(a->primitive_element().to_string(), b->primitive_element().to_string());
}

TEST(Field, ArithmeticErrors) {
  const FieldPtr f = make_field(3, 2);
  const FieldPtr g = make_field(5, 2);
  EXPECT_THROW(f->zero().inv(), Error);
  try {
    (void)(f->one() + g->one());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMixedFields);
  }
  EXPECT_TRUE(f->one().inv().is_one());
  EXPECT_TRUE(f->zero().pow(0).is_one());
}

TEST(Field, RankRoundTrip) {
  const FieldPtr f = make_field(7, 3);
  for (std::uint64_t r = 0; r < f->order(); ++r) ASSERT_EQ(f->rank(f->from_rank(r)), r);
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint64_t, unsigned>> {};

TEST_P(FieldAxioms, HoldOnRandomSamples) {
  const auto [p, m] = GetParam();
  const FieldPtr f = make_field(p, m);
  std::mt19937_64 rng(p * 1000 + m);
  auto sample = [&] { return f->from_rank(rng() % f->order()); };
  for (int i = 0; i < 1000; ++i) {
    const Element a = sample(), b = sample(), c = sample();
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a + f->zero(), a);
    ASSERT_EQ(a * f->one(), a);
    ASSERT_TRUE((a + (-a)).is_zero());
    ASSERT_EQ(a - b, a + (-b));
    if (!a.is_zero()) {
      ASSERT_TRUE((a * a.inv()).is_one());
      ASSERT_TRUE(a.pow(f->mult_order()).is_one());
      ASSERT_EQ(b / a * a, b);
    }
    const std::uint64_t e1 = rng() % 5000, e2 = rng() % 5000;
    ASSERT_EQ(a.pow(e1) * a.pow(e2), a.pow(e1 + e2));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values(std::make_pair(2ull, 8u), std::make_pair(3ull, 6u),
                                           std::make_pair(5ull, 4u), std::make_pair(7ull, 2u),
                                           std::make_pair(13ull, 4u), std::make_pair(101ull, 2u)));

TEST(Field, PrimitiveElement) {
  const FieldPtr f9 = make_field(3, 2);
  EXPECT_EQ(f9->element_order(f9->primitive_element()), 8u);
  for (const auto& [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 4}, {5, 2}, {7, 2}, {2, 6}}) {
    const FieldPtr f = make_field(p, m);
    const Element g = f->primitive_element();
    // Least by rank among elements of full order.
    for (std::uint64_t r = 1; r < f->rank(g); ++r) {
      EXPECT_LT(f->element_order(f->from_rank(r)), f->mult_order());
    }
    std::set<std::uint64_t> seen;
    Element x = f->one();
    for (std::uint64_t i = 0; i < f->mult_order(); ++i, x *= g) seen.insert(f->rank(x));
    EXPECT_EQ(seen.size(), f->mult_order());
  }
}

TEST(Field, FrobeniusTraceNorm) {
  const FieldPtr f = make_field(5, 4);
  std::uint64_t fixed = 0;
  for (std::uint64_t r = 0; r < f->order(); ++r) {
    const Element x = f->from_rank(r);
    const Element y = frobenius_q(x, 2);
    EXPECT_EQ(y, x.pow(25));
    EXPECT_EQ(frobenius_q(y, 2), x);
    fixed += y == x;
    EXPECT_EQ(in_subfield(x, 2), y == x);
    EXPECT_TRUE(in_subfield(trace(x, 2), 2));
    EXPECT_TRUE(in_subfield(norm(x, 2), 2));
    if (y == x) {
      EXPECT_EQ(trace(x, 2), x + x);
      EXPECT_EQ(norm(x, 2), x * x);
    }
    if (!x.is_zero()) {
      const Element z = x.pow(24);
      EXPECT_TRUE(z.pow(26).is_one());  // lands in U
      EXPECT_EQ(z.is_one(), y == x);
    }
  }
  EXPECT_EQ(fixed, 25u);
  EXPECT_TRUE(trace(f->zero(), 2).is_zero());
  EXPECT_TRUE(norm(f->zero(), 2).is_zero());
  EXPECT_THROW(trace(f->one(), 3), Error);
  EXPECT_EQ(subfield_order(*f, 2), 25u);
}

TEST(Field, FrobeniusIsAutomorphismOnGF9) {
  const FieldPtr f = make_field(3, 2);
  for (std::uint64_t a = 0; a < 9; ++a) {
    for (std::uint64_t b = 0; b < 9; ++b) {
      const Element x = f->from_rank(a), y = f->from_rank(b);
      EXPECT_EQ(frobenius_q(x + y, 1), frobenius_q(x, 1) + frobenius_q(y, 1));
      EXPECT_EQ(frobenius_q(x * y, 1), frobenius_q(x, 1) * frobenius_q(y, 1));
    }
  }
}

TEST(Field, TraceAdditiveNormMultiplicativeSampled) {
  for (const auto& [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{3, 3}, {5, 2}, {7, 2}, {13, 2}}) {
    const FieldPtr f = make_field(p, 2 * k);
    std::mt19937_64 rng(p + k);
    for (int i = 0; i < 1000; ++i) {
      const Element x = f->from_rank(rng() % f->order());
      const Element y = f->from_rank(rng() % f->order());
      ASSERT_EQ(trace(x + y, k), trace(x, k) + trace(y, k));
      ASSERT_EQ(norm(x * y, k), norm(x, k) * norm(y, k));
    }
  }
}

TEST(Field, UnitCircle) {
  EXPECT_EQ(unit_circle(*make_field(3, 2), 1).size(), 4u);
  EXPECT_EQ(unit_circle(*make_field(7, 4), 2).size(), 50u);
  for (const auto& [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 1}, {3, 2}, {5, 2}, {7, 2}}) {
    const FieldPtr f = make_field(p, 2 * k);
    const UnitCircle U(*f, k);
    const std::uint64_t q = U.q();
    EXPECT_EQ(U.generator(), f->primitive_element().pow(q - 1));
    std::set<std::uint64_t> ranks;
    std::uint64_t in_fq = 0;
    U.for_each([&](std::uint64_t i, const Element& u) {
      EXPECT_EQ(u, U.at(i));
      EXPECT_TRUE(norm(u, k).is_one());
      in_fq += in_subfield(u, k);
      ranks.insert(f->rank(u));
    });
    EXPECT_EQ(ranks.size(), q + 1);
    EXPECT_EQ(in_fq, 2u);  // U meets GF(q) in {1, -1}
    EXPECT_TRUE(ranks.count(f->rank(f->one())));
    EXPECT_TRUE(ranks.count(f->rank(-f->one())));
  }
  EXPECT_THROW(UnitCircle(*make_field(3, 3), 1), Error);
}

// Elements sharing (Tr, N) are roots of the same X^2 - Tr X + N, so classes
// have size 1 or 2 and a size-2 class is {c, c^q}.
TEST(Field, TraceNormPairsDetermineConjugates) {
  for (const auto& [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 1}, {5, 2}, {7, 1}, {7, 2}, {11, 1}, {13, 1}}) {
    const FieldPtr f = make_field(p, 2 * k);
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<std::uint64_t>> classes;
    for (std::uint64_t r = 0; r < f->order(); ++r) {
      const Element x = f->from_rank(r);
      classes[{f->rank(trace(x, k)), f->rank(norm(x, k))}].push_back(r);
    }
    for (const auto& [key, members] : classes) {
      ASSERT_LE(members.size(), 2u);
      const Element c = f->from_rank(members[0]);
      if (members.size() == 2) {
        EXPECT_EQ(f->rank(frobenius_q(c, k)), members[1]);
      } else {
        EXPECT_TRUE(in_subfield(c, k));
      }
    }
  }
}

}  // namespace
}  // namespace niho
