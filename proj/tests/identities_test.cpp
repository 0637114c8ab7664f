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

#include "niho/identities.hpp"

#include <gtest/gtest.h>

#include <set>

#include "niho/error.hpp"
#include "niho/numtheory.hpp"

namespace niho {
namespace {

void expect_clean(const IdentityReport& r, std::uint64_t order) {
  for (const IdentityCheck& c : r.checks) {
    EXPECT_EQ(c.violations, 0u) << r.field << ": " << c.name;
    EXPECT_LE(c.checked, order);
  }
  EXPECT_TRUE(r.ok());
}

TEST(Identities, TracePowers) {
  const IdentityReport r31 = verify_trace_identities(3, 1);
  ASSERT_EQ(r31.checks.size(), 2u);
  EXPECT_EQ(r31.at("Tr(x^2) = Tr^2 + N").checked, 9u);
  expect_clean(r31, 9);
  const IdentityReport r51 = verify_trace_identities(5, 1);
  ASSERT_EQ(r51.checks.size(), 5u);
  EXPECT_EQ(r51.at("Tr(x^6) = Tr^6 - N Tr^4 - N^2 Tr^2 - 2N^3").checked, 25u);
  expect_clean(r51, 25);
  expect_clean(verify_trace_identities(5, 2), 625);
  expect_clean(verify_trace_identities(3, 2), 81);
  expect_clean(verify_trace_identities(3, 3, {}, kernels::Exec::kSerial), 729);
  EXPECT_THROW(r51.at("no such identity"), Error);
  try {
    verify_trace_identities(7, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedCharacteristic);
  }
}

// Direct recomputation with field arithmetic, independent of the sweep.
TEST(Identities, TracePowersDirect) {
  const FieldPtr f = make_field(5, 4);
  for (std::uint64_t r = 0; r < f->order(); ++r) {
    const Element x = f->from_rank(r);
    const Element T = trace(x, 2), N = norm(x, 2);
    const Element two = f->from_int(2);
    ASSERT_EQ(trace(x.pow(6), 2), T.pow(6) - N * T.pow(4) - N * N * T * T - two * N.pow(3));
    ASSERT_EQ(trace(x.pow(3), 2), T.pow(3) + two * N * T);
  }
  const FieldPtr g = make_field(3, 6);
  for (std::uint64_t r = 0; r < g->order(); ++r) {
    const Element x = g->from_rank(r);
    const Element T = trace(x, 3), N = norm(x, 3);
    ASSERT_EQ(trace(x.pow(4), 3), T.pow(4) - N * T * T - N * N);
  }
}

std::uint64_t roots_by_scan(const std::array<std::int64_t, 3>& abc, std::int64_t p, std::int64_t k) {
  const FieldPtr f = make_field(static_cast<std::uint64_t>(p), static_cast<unsigned>(2 * k));
  const std::uint64_t q = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k));
  const Element a = f->from_int(abc[0]), b = f->from_int(abc[1]), c = f->from_int(abc[2]);
  std::uint64_t n = 0;
  for (std::uint64_t r = 1; r < f->order(); ++r) {
    const Element u = f->from_rank(r);
    n += u.pow(q + 1).is_one() && (a * u * u + b * u + c).is_zero();
  }
  return n;
}

TEST(Identities, RootsInUnitCircle) {
  EXPECT_EQ(count_roots_in_U({1, 0, 1}, 3, 1), 2u);
  EXPECT_EQ(count_roots_in_U({1, 0, 1}, 3, 2), 0u);
  EXPECT_EQ(count_roots_in_U({1, -1, 1}, 5, 1), 2u);
  EXPECT_EQ(count_roots_in_U({1, -1, 1}, 5, 2), 0u);
  for (std::int64_t k = 1; k <= 4; ++k) {
    const std::uint64_t expected = k % 2 == 0 ? 0 : 2;
    EXPECT_EQ(count_roots_in_U({1, 0, 1}, 3, k), expected);
    EXPECT_EQ(count_roots_in_U({1, -1, 1}, 5, k), expected);
    EXPECT_EQ(count_roots_in_U({1, 0, 1}, 3, k), roots_by_scan({1, 0, 1}, 3, k));
    if (k <= 3) EXPECT_EQ(count_roots_in_U({1, -1, 1}, 5, k), roots_by_scan({1, -1, 1}, 5, k));
  }
  EXPECT_EQ(count_roots_in_U({1, 0, -1}, 5, 2), 2u);  // u = 1, -1
}

TEST(Identities, ArtinSchreier) {
  const FieldPtr f5 = make_field(5, 1);
  EXPECT_EQ(artin_schreier_perm(f5->one()), std::make_pair(false, false));
  EXPECT_EQ(artin_schreier_perm(f5->from_int(2)), std::make_pair(true, true));
  EXPECT_EQ(artin_schreier_perm(f5->zero()), std::make_pair(true, true));
  for (const auto& [p, k] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}}) {
    EXPECT_EQ(artin_schreier_sweep(p, k), 0u) << p << "," << k;
  }
  // Independent oracle on GF(25): permutation by image count, power by enumeration.
  const FieldPtr f25 = make_field(5, 2);
  std::set<std::uint64_t> fourth;
  for (std::uint64_t r = 1; r < 25; ++r) fourth.insert(f25->rank(f25->from_rank(r).pow(4)));
  for (std::uint64_t r = 0; r < 25; ++r) {
    const Element u = f25->from_rank(r);
    std::set<std::uint64_t> image;
    for (std::uint64_t s = 0; s < 25; ++s) {
      const Element x = f25->from_rank(s);
      image.insert(f25->rank(x.pow(5) - u * x));
    }
    EXPECT_EQ(artin_schreier_perm(u).first, image.size() == 25);
    EXPECT_EQ(artin_schreier_perm(u).second, !fourth.count(r));
  }
}

TEST(Identities, TraceAndNormOfF) {
  for (const auto& [p, k] : std::vector<std::pair<std::int64_t, std::int64_t>>{{3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}}) {
    const IdentityReport r = verify_tf_nf(p, k);
    ASSERT_EQ(r.checks.size(), 5u);
    expect_clean(r, checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(2 * k)));
    EXPECT_EQ(r.at("Tr(f) = 2x^p on GF(q)").checked,
              checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k)));
  }
}

TEST(Identities, ReductionChainEvenK) {
  const ReductionReport r = verify_reduction_chain(5, 2);
  expect_clean(r.identities, 625);
  EXPECT_GT(r.traces, 0u);
  EXPECT_EQ(r.fourth_power_hits, 0u);
  EXPECT_EQ(r.subfield_hits, 0u);
  EXPECT_TRUE(r.note.empty());
  EXPECT_GT(r.identities.at("Tr(c) = 0: N(x)^5 = N(c)").checked, 0u);
  ASSERT_FALSE(r.sample.empty());
  const Field& f = *r.field;
  std::set<std::uint64_t> fourth;
  for (std::uint64_t i = 0; i < 24; ++i) {
    fourth.insert(f.rank(f.primitive_element().pow(26 * i).pow(4)));  // GF(25)* = <g^26>
  }
  for (const ReductionTrace& t : r.sample) {
    const Element tx = trace(t.x, 2), tc = trace(t.c, 2);
    EXPECT_EQ(t.r, norm(t.x, 2) / (tx * tx));
    EXPECT_EQ(t.s, norm(t.c, 2) / (tc * tc));
    EXPECT_EQ(t.lhs, t.rhs);
    EXPECT_FALSE((t.s + f.one()).is_zero());
    EXPECT_FALSE(t.t.is_zero());
    EXPECT_FALSE(t.fourth_power_flag);
    EXPECT_FALSE(fourth.count(f.rank(f.from_int(3) / (t.s + f.one()))));
  }
}

TEST(Identities, ReductionChainOddKBreaks) {
  const ReductionReport r1 = verify_reduction_chain(5, 1);
  EXPECT_FALSE(r1.note.empty());
  EXPECT_GT(r1.fourth_power_hits + r1.subfield_hits, 0u);
  const ReductionReport r3 = verify_reduction_chain(5, 3);
  EXPECT_FALSE(r3.note.empty());
  EXPECT_GT(r3.fourth_power_hits, 0u);
  EXPECT_THROW(verify_reduction_chain(3, 2), Error);
}

TEST(Identities, FractionOnUnitCircle) {
  for (std::int64_t p : {3, 5}) {
    for (std::int64_t k = 1; k <= 3; ++k) {
      const CorollaryReport r = verify_corollary_fraction(p, k);
      EXPECT_EQ(r.permutes_U, k % 2 == 0) << p << "," << k;
      EXPECT_EQ(r.agreement_violations, 0u);
      EXPECT_EQ(r.agreement_checked + r.denominator_zeros,
                checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k)) + 1);
    }
  }
}

}  // namespace
}  // namespace niho
