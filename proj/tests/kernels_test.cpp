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

#include "niho/kernels.hpp"

#include <gtest/gtest.h>
#include <omp.h>

#include <random>

#include "niho/numtheory.hpp"

namespace niho::kernels {
namespace {

struct Case {
  std::int64_t p;
  std::int64_t k;
};

std::vector<SparsePolynomial> sample_polys(std::int64_t p, std::int64_t k, std::mt19937_64& rng) {
  std::vector<SparsePolynomial> out = {build_f(p, k), build_g(p, k, 1), build_g(p, k, 2),
                                       SparsePolynomial::parse("x").bound({p, k}),
                                       SparsePolynomial::parse("x^2").bound({p, k})};
  for (int i = 0; i < 6; ++i) {
    const std::int64_t s = static_cast<std::int64_t>(rng() % 40) - 20;
    const std::int64_t t = static_cast<std::int64_t>(rng() % 40) - 20;
    out.push_back(build_family(rng() % 2 ? 1 : -1, s, rng() % 2 ? 1 : -1, t, p, k));
  }
  return out;
}

void expect_collision(const FieldPolynomial& poly, const std::optional<ElementPair>& w) {
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(w->first == w->second);
  EXPECT_EQ(poly(w->first), poly(w->second));
}

class KernelAgreement : public ::testing::TestWithParam<Case> {
 protected:
  void SetUp() override { omp_set_num_threads(4); }
};

TEST_P(KernelAgreement, SerialAndParallelMatch) {
  const auto [p, k] = GetParam();
  const auto kk = static_cast<unsigned>(k);
  const FieldPtr f = make_field(static_cast<std::uint64_t>(p), 2 * kk);
  std::mt19937_64 rng(static_cast<std::uint64_t>(p * 10 + k));
  for (const SparsePolynomial& sp : sample_polys(p, k, rng)) {
    const FieldPolynomial poly = FieldPolynomial::from(sp, *f);
    SCOPED_TRACE(poly.render());

    const InjectivityResult a = field_injectivity(poly, Exec::kSerial);
    const InjectivityResult b = field_injectivity(poly, Exec::kParallel);
    ASSERT_EQ(a.injective, b.injective);
    if (!a.injective) {
      expect_collision(poly, a.witness);
      expect_collision(poly, b.witness);
    }
    // The parallel witness is the first collision in walk order, so reruns repeat it.
    const InjectivityResult again = field_injectivity(poly, Exec::kParallel);
    if (!b.injective) {
      EXPECT_EQ(again.witness->first, b.witness->first);
      EXPECT_EQ(again.witness->second, b.witness->second);
    }

    const SubfieldSplitStats s1 = subfield_split(poly, kk, Exec::kSerial);
    const SubfieldSplitStats s2 = subfield_split(poly, kk, Exec::kParallel);
    EXPECT_EQ(s1.subfield_bijective, s2.subfield_bijective);
    EXPECT_EQ(s1.leaks, s2.leaks);
    EXPECT_EQ(s1.complement_injective, s2.complement_injective);
    EXPECT_EQ(subfield_split(poly, kk, Exec::kParallel, false).leaks, s1.leaks);
    if (s2.complement_collision) expect_collision(poly, s2.complement_collision);

    const FieldNihoForm nf = niho_decompose(poly, kk);
    const UnitCircleMapResult u1 = unit_circle_map(nf.r, nf.h, kk, Exec::kSerial);
    const UnitCircleMapResult u2 = unit_circle_map(nf.r, nf.h, kk, Exec::kParallel);
    EXPECT_EQ(u1.injective, u2.injective);
    EXPECT_EQ(u1.h_zero.has_value(), u2.h_zero.has_value());
    if (u2.h_zero) EXPECT_TRUE(nf.h(*u2.h_zero).is_zero());
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, KernelAgreement,
                         ::testing::Values(Case{3, 1}, Case{3, 2}, Case{3, 3}, Case{5, 1}, Case{5, 2}, Case{7, 2},
                                           Case{11, 1}, Case{13, 2}));

TEST(MonomialWalk, MatchesDirectEvaluation) {
  const FieldPtr f = make_field(7, 4);
  const FieldPolynomial poly = FieldPolynomial::from(build_g(7, 2, 3), *f);
  const Element g = f->primitive_element();
  const auto plan = MonomialWalk::plan(poly, g);
  for (std::uint64_t start : {0ull, 1ull, 1000ull, 2399ull}) {
    MonomialWalk walk(plan, start);
    Element x = g.pow(start);
    Coeffs buf{};
    for (int i = 0; i < 50; ++i, walk.advance(), x *= g) {
      walk.value(buf.data());
      ASSERT_EQ(f->from_raw(buf.data()), poly(x));
    }
  }
}

TEST(Kernels, ThreadCountReported) { EXPECT_GE(max_threads(), 1); }

}  // namespace
}  // namespace niho::kernels
