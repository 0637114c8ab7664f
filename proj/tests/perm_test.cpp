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

#include "niho/perm.hpp"

#include <gtest/gtest.h>

#include <numeric>

#include "niho/error.hpp"
#include "niho/numtheory.hpp"

namespace niho {
namespace {

FieldPolynomial over(const SparsePolynomial& poly, const FieldPtr& f) { return FieldPolynomial::from(poly, *f); }

FieldPtr field_for(std::int64_t p, std::int64_t k) {
  return make_field(static_cast<std::uint64_t>(p), static_cast<unsigned>(2 * k));
}

TEST(Perm, ExhaustiveExamples) {
  const FieldPtr f25 = make_field(5, 2);
  EXPECT_TRUE(is_permutation_exhaustive(over(SparsePolynomial::parse("x^p").bound({5, 1}), f25)).is_permutation);
  EXPECT_TRUE(is_permutation_exhaustive(over(build_f(5, 2), field_for(5, 2))).is_permutation);

  const FieldPolynomial f51 = over(build_f(5, 1), f25);
  const PermutationVerdict v = is_permutation_exhaustive(f51);
  EXPECT_FALSE(v.is_permutation);
  EXPECT_EQ(v.method, Method::kExhaustive);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_FALSE(v.witness->first == v.witness->second);
  EXPECT_EQ(f51(v.witness->first), f51(v.witness->second));
  EXPECT_EQ(is_permutation_exhaustive(f51, {}, Exec::kSerial).is_permutation, false);

  Caps small;
  small.exhaustive = 100;
  try {
    is_permutation_exhaustive(over(build_f(5, 2), field_for(5, 2)), small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSizeCapExceeded);
  }
}

TEST(Perm, ZieveExamples) {
  const FieldPtr f81 = field_for(3, 2);
  const FieldNihoForm nf = niho_decompose(over(build_f(3, 2), f81), 2);
  EXPECT_EQ(nf.r, 3u);
  EXPECT_TRUE(zieve_check(nf.r, nf.h, 2).is_permutation);

  const FieldPtr f49 = field_for(7, 1);
  const FieldNihoForm n71 = niho_decompose(over(build_f(7, 1), f49), 1);
  const PermutationVerdict v71 = zieve_check(n71.r, n71.h, 1);
  EXPECT_FALSE(v71.is_permutation);
  EXPECT_EQ(v71.method, Method::kZieve);

  const PermutationVerdict bad_gcd = zieve_check(2, over(SparsePolynomial::parse("1").bound({3, 2}), f81), 2);
  EXPECT_FALSE(bad_gcd.is_permutation);
  EXPECT_NE(bad_gcd.note.find("gcd"), std::string::npos);
  EXPECT_FALSE(bad_gcd.witness.has_value());
}

TEST(Perm, SubfieldLeaks) {
  EXPECT_EQ(count_image_in_subfield(over(build_f(3, 1), field_for(3, 1)), 1), 4u);
  EXPECT_EQ(count_image_in_subfield(over(build_f(5, 2), field_for(5, 2)), 2), 0u);
  EXPECT_EQ(count_image_in_subfield(over(build_f(3, 3), field_for(3, 3)), 3), 52u);
  EXPECT_EQ(count_image_in_subfield(over(build_f(3, 2), field_for(3, 2)), 2), 0u);
  EXPECT_EQ(count_image_in_subfield(over(build_f(5, 1), field_for(5, 1)), 1), 8u);
}

TEST(Perm, SubfieldSplit) {
  const PermutationVerdict ok = subfield_split_check(over(build_f(5, 2), field_for(5, 2)), 2);
  EXPECT_TRUE(ok.is_permutation);
  EXPECT_EQ(ok.method, Method::kSubfieldSplit);
  const PermutationVerdict leak = subfield_split_check(over(build_f(3, 1), field_for(3, 1)), 1);
  EXPECT_FALSE(leak.is_permutation);
  EXPECT_EQ(leak.note, "subfield leak count 4");
  EXPECT_TRUE(subfield_split_check(over(SparsePolynomial::parse("x").bound({7, 2}), field_for(7, 2)), 2).is_permutation);
}

TEST(Perm, CrossValidateRunsAllMethods) {
  const CrossReport g = cross_validate(over(build_g(5, 2, 1), field_for(5, 2)), 2);
  ASSERT_EQ(g.runs.size(), 3u);
  EXPECT_EQ(g.runs[0].method, Method::kExhaustive);
  EXPECT_EQ(g.runs[1].method, Method::kZieve);
  EXPECT_EQ(g.runs[2].method, Method::kSubfieldSplit);
  for (const MethodRun& run : g.runs) {
    ASSERT_TRUE(run.verdict.has_value());
    EXPECT_TRUE(run.verdict->is_permutation);
  }
  EXPECT_EQ(g.is_permutation, true);

  const CrossReport f74 = cross_validate(over(build_f(7, 4), field_for(7, 4)), 4);
  EXPECT_EQ(f74.is_permutation, false);
  EXPECT_TRUE(f74.runs[0].verdict.has_value());  // 7^8 is within the default cap

  Caps small;
  small.exhaustive = 500;
  const CrossReport capped = cross_validate(over(build_f(5, 2), field_for(5, 2)), 2, small);
  EXPECT_FALSE(capped.runs[0].verdict.has_value());
  EXPECT_EQ(capped.runs[0].skipped, "skipped: over cap");
  EXPECT_EQ(capped.is_permutation, true);

  // x + x^2 is not Niho-shaped: only the exhaustive and subfield methods apply.
  const CrossReport plain = cross_validate(over(SparsePolynomial::parse("x + x^2").bound({5, 1}), field_for(5, 1)), 1);
  EXPECT_FALSE(plain.runs[1].verdict.has_value());
  EXPECT_EQ(plain.is_permutation, false);
}

// f permutes GF(q^2) exactly for even k.
TEST(Perm, EvenKSweep) {
  for (std::int64_t p : {3, 5}) {
    for (std::int64_t k = 1; k <= 3; ++k) {
      const CrossReport r = cross_validate(over(build_f(p, k), field_for(p, k)), static_cast<unsigned>(k));
      EXPECT_EQ(r.is_permutation, k % 2 == 0) << p << "," << k;
    }
  }
}

// Shifted exponents: permutation iff k even and gcd(2l + p, q - 1) = 1.
TEST(Perm, ShiftedFamilySweep) {
  for (std::int64_t p : {3, 5}) {
    for (std::int64_t k : {1, 2}) {
      const FieldPtr f = field_for(p, k);
      const auto q = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k));
      for (std::int64_t l = 0; l <= 10; ++l) {
        const bool expected = k % 2 == 0 && std::gcd(static_cast<std::uint64_t>(2 * l + p), q - 1) == 1;
        const CrossReport r = cross_validate(over(build_g(p, k, l), f), static_cast<unsigned>(k));
        EXPECT_EQ(r.is_permutation, expected) << p << "," << k << "," << l;
      }
    }
  }
}

TEST(Perm, PublishedTableReference) {
  const std::vector<std::tuple<std::int64_t, std::int64_t, bool>> published = {
      {7, 1, false},  {7, 2, true},   {7, 3, false},  {7, 4, false}, {7, 5, false},
      {7, 6, false},  {11, 1, false}, {11, 2, true},  {11, 3, false}, {11, 4, false},
      {13, 1, false}, {13, 2, true},  {13, 3, false}};
  const auto& rows = table1_reference();
  ASSERT_EQ(rows.size(), published.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].p, std::get<0>(published[i]));
    EXPECT_EQ(rows[i].k, std::get<1>(published[i]));
    EXPECT_EQ(rows[i].expected, std::get<2>(published[i]));
  }
  // The small rows; the full table runs in the acceptance suite.
  for (const Table1Row& row : rows) {
    if (row.k > 2) continue;
    const CrossReport r = cross_validate(over(build_f(row.p, row.k), field_for(row.p, row.k)),
                                         static_cast<unsigned>(row.k));
    EXPECT_EQ(r.is_permutation, row.expected) << row.p << "," << row.k;
  }
}

TEST(Perm, MethodNames) {
  EXPECT_EQ(to_string(Method::kExhaustive), "exhaustive");
  EXPECT_EQ(to_string(Method::kZieve), "zieve");
  EXPECT_EQ(to_string(Method::kSubfieldSplit), "subfield_split");
}

}  // namespace
}  // namespace niho
