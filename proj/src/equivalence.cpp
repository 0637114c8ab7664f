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

#include "niho/equivalence.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>

#include "niho/numtheory.hpp"
#include "niho/perm.hpp"

namespace niho {

// ---------------------------------------------------------------------------
// Niho exponents

std::optional<unsigned> is_niho(std::uint64_t d, std::uint64_t p, unsigned k) {
  const std::uint64_t q = checked_pow(p, k);
  const std::uint64_t mod = q - 1;
  if (mod == 1) return 0u;
  std::uint64_t pj = 1;
  for (unsigned j = 0; j < k; ++j, pj = mul_mod(pj, p, mod)) {
    if (d % mod == pj % mod) return j;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> niho_inverse(std::uint64_t d, std::uint64_t p, unsigned k) {
  const std::uint64_t q = checked_pow(p, k);
  const std::uint64_t n = checked_pow(q, 2) - 1;
  return mod_inverse(d % n, n);
}

// ---------------------------------------------------------------------------
// Brute-force equivalence on discrete logs

namespace {

constexpr std::uint64_t kZeroLog = std::numeric_limits<std::uint64_t>::max();

// Values of a polynomial along x = g^i as discrete logs (kZeroLog for 0).
struct LogImage {
  std::vector<std::uint64_t> at;
  std::uint64_t zero = kZeroLog;  // log of poly(0)
};

class LogTables {
 public:
  explicit LogTables(const Field& f) : field_(f), log_(f.order(), kZeroLog) {
    Element x = f.one();
    for (std::uint64_t i = 0; i < f.mult_order(); ++i, x *= f.primitive_element()) log_[f.rank(x)] = i;
  }

  std::uint64_t log_of_rank(std::uint64_t rank) const { return log_[rank]; }

  LogImage image(const FieldPolynomial& poly) const {
    LogImage out;
    out.zero = log_[field_.rank(poly(field_.zero()))];
    out.at.resize(field_.mult_order());
    const auto plan = kernels::MonomialWalk::plan(poly, field_.primitive_element());
    kernels::MonomialWalk walk(plan, 0);
    Coeffs buf{};
    for (std::uint64_t i = 0; i < out.at.size(); ++i, walk.advance()) {
      walk.value(buf.data());
      out.at[i] = log_[field_.rank_raw(buf.data())];
    }
    return out;
  }

 private:
  const Field& field_;
  std::vector<std::uint64_t> log_;  // by rank; kZeroLog at rank 0
};

bool is_bijective(const LogImage& img) {
  std::vector<bool> seen(img.at.size() + 1, false);
  auto mark = [&](std::uint64_t l) {
    const std::uint64_t slot = l == kZeroLog ? img.at.size() : l;
    if (seen[slot]) return false;
    seen[slot] = true;
    return true;
  };
  if (!mark(img.zero)) return false;
  return std::all_of(img.at.begin(), img.at.end(), mark);
}

// log a for H = a h(x^d), or nothing.
std::optional<std::uint64_t> try_exponent(const LogTables& tables, const Field& f, const LogImage& H,
                                          const LogImage& h, std::uint64_t d) {
  const std::uint64_t n = H.at.size();
  // Base point: least rank x0 with h(x0^d) != 0.
  std::uint64_t H0 = kZeroLog;
  std::uint64_t h0 = kZeroLog;
  for (std::uint64_t r = 0; r < f.order(); ++r) {
    if (r == 0) {
      if (h.zero == kZeroLog) continue;
      H0 = H.zero;
      h0 = h.zero;
    } else {
      const std::uint64_t i = tables.log_of_rank(r);
      const std::uint64_t hv = h.at[mul_mod(i, d, n)];
      if (hv == kZeroLog) continue;
      H0 = H.at[i];
      h0 = hv;
    }
    break;
  }
  if (h0 == kZeroLog || H0 == kZeroLog) return std::nullopt;
  const std::uint64_t a = (H0 + n - h0) % n;
  auto matches = [&](std::uint64_t Hv, std::uint64_t hv) {
    if (hv == kZeroLog) return Hv == kZeroLog;
    return Hv != kZeroLog && Hv == (a + hv) % n;
  };
  if (!matches(H.zero, h.zero)) return std::nullopt;
  std::uint64_t j = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (!matches(H.at[i], h.at[j])) return std::nullopt;
    j += d;
    if (j >= n) j -= n;
  }
  return a;
}

}  // namespace

std::optional<EquivalenceWitness> equivalent_bruteforce(const FieldPolynomial& H, const FieldPolynomial& h,
                                                        const Caps& caps, kernels::Exec exec) {
  const Field& f = H.field();
  if (!(f == h.field())) throw Error(ErrorCode::kMixedFields, "polynomials over different fields");
  if (f.order() > caps.table_field) {
    throw Error(ErrorCode::kSizeCapExceeded, f.describe() + " exceeds the log-table cap");
  }
  const std::uint64_t n = f.mult_order();
  const std::uint64_t work = euler_phi(n) * f.order();
  if (work > caps.equivalence_work) {
    throw Error(ErrorCode::kSizeCapExceeded, "equivalence scan needs " + std::to_string(work) + " point checks");
  }

  const LogTables tables(f);
  const LogImage Hi = tables.image(H);
  const LogImage hi = tables.image(h);
  if (!is_bijective(Hi)) throw Error(ErrorCode::kNotPermutation, "H = " + H.render() + " does not permute " + f.describe());
  if (!is_bijective(hi)) throw Error(ErrorCode::kNotPermutation, "h = " + h.render() + " does not permute " + f.describe());

  std::vector<std::uint64_t> ds;
  for (std::uint64_t d = 1; d < std::max<std::uint64_t>(n, 2); ++d) {
    if (std::gcd(d, n) == 1) ds.push_back(d);
  }

  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::uint64_t best_log = 0;
  const auto count = static_cast<std::int64_t>(ds.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == kernels::Exec::kParallel)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    const auto pos = static_cast<std::uint64_t>(idx);
    if (pos >= best.load(std::memory_order_relaxed)) continue;
    const auto a = try_exponent(tables, f, Hi, hi, ds[pos]);
    if (!a) continue;
#pragma omp critical(niho_equiv_best)
    if (pos < best.load()) {
      best.store(pos);
      best_log = *a;
    }
  }
  if (best.load() == std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  const std::uint64_t d = ds[best.load()];
  return EquivalenceWitness{f.primitive_element().pow(best_log), d, *mod_inverse(d, n)};
}

// ---------------------------------------------------------------------------
// Structural equivalents and the three forms of f

std::string FamilyTuple::render() const {
  return "(" + std::to_string(lambda1) + ", " + std::to_string(s) + ", " + std::to_string(lambda2) + ", " +
         std::to_string(t) + ")";
}

namespace {

void require_unit(std::int64_t lambda) {
  if (lambda != 1 && lambda != -1) throw Error(ErrorCode::kInvalidArgument, "coefficients must be +1 or -1");
}

std::int64_t niho_coefficient(std::uint64_t e, std::uint64_t q) {
  if (e % (q - 1) != 1 % (q - 1)) {
    throw Error(ErrorCode::kNotNihoShaped, "exponent " + std::to_string(e) + " is not 1 mod q-1");
  }
  return static_cast<std::int64_t>((e - 1) / (q - 1));
}

std::uint64_t reduce_exponent(std::uint64_t e, std::uint64_t n) {
  e %= n;
  return e == 0 ? n : e;
}

// poly(x^e) scaled by c; every term's exponent multiplied by e mod n.
FieldPolynomial substitute(const FieldPolynomial& poly, std::uint64_t e, const Element& c) {
  const std::uint64_t n = poly.field().mult_order();
  std::vector<Monomial> terms;
  for (const Monomial& t : poly.terms()) {
    terms.push_back({c * t.coeff, t.exponent == 0 ? 0 : reduce_exponent(mul_mod(t.exponent % n, e % n, n), n)});
  }
  return FieldPolynomial(poly.field(), std::move(terms));
}

bool pointwise_equal(const FieldPolynomial& a, const FieldPolynomial& b) {
  const Field& f = a.field();
  for (std::uint64_t r = 0; r < f.order(); ++r) {
    const Element x = f.from_rank(r);
    if (a(x) != b(x)) return false;
  }
  return true;
}

FieldPtr verification_field(std::int64_t p, std::int64_t k, const Caps& caps) {
  FieldPtr f = make_field(static_cast<std::uint64_t>(p), static_cast<unsigned>(2 * k), caps);
  if (f->order() > caps.table_field) throw Error(ErrorCode::kSizeCapExceeded, f->describe() + " too large to verify");
  return f;
}

}  // namespace

Claim2Report claim2_equivalents(const FamilyTuple& F, std::int64_t p, std::int64_t k, const Caps& caps) {
  require_unit(F.lambda1);
  require_unit(F.lambda2);
  const auto q = static_cast<std::uint64_t>(Bindings{p, k}.q());
  const std::uint64_t n = q * q - 1;
  const std::uint64_t d[2] = {family_exponent(F.s, q), family_exponent(F.t, q)};
  const std::int64_t lambda[2] = {F.lambda1, F.lambda2};

  std::optional<FieldPtr> field;
  std::optional<FieldPolynomial> source;
  if (checked_pow(q, 2) <= caps.table_field) {
    field = verification_field(p, k, caps);
    source.emplace(FieldPolynomial::from(build_family(F.lambda1, F.s, F.lambda2, F.t, p, k), **field));
  }

  Claim2Report out;
  for (int i = 0; i < 2; ++i) {
    const auto inv = mod_inverse(d[i] % n, n);
    if (!inv) {
      out.skipped.push_back("d" + std::to_string(i + 1) + " = " + std::to_string(d[i]) + " shares a factor with " +
                            std::to_string(n));
      continue;
    }
    const std::uint64_t e = *inv;
    const std::uint64_t other = reduce_exponent(mul_mod(d[1 - i] % n, e, n), n);
    FamilyTuple tuple{lambda[i], niho_coefficient(e, q), lambda[i] * lambda[1 - i], niho_coefficient(other, q)};
    Claim2Equivalent eq{i + 1, d[i], e, tuple,
                        build_family(tuple.lambda1, tuple.s, tuple.lambda2, tuple.t, p, k), false};
    if (source) {
      const FieldPolynomial built = FieldPolynomial::from(eq.poly, **field);
      eq.verified = pointwise_equal(built, substitute(*source, e, (*field)->from_int(lambda[i])));
    } else {
      out.skipped.push_back("branch " + std::to_string(i + 1) + " not verified: field over cap");
    }
    out.equivalents.push_back(std::move(eq));
  }
  return out;
}

Proposition1Report proposition1_forms(std::int64_t p, std::int64_t k, const Caps& caps) {
  if (p != 3 && p != 5) throw Error(ErrorCode::kUnsupportedCharacteristic, "stated for p = 3 or 5");
  if (k < 2 || k % 2 != 0) throw Error(ErrorCode::kKParityError, "k must be even, got " + std::to_string(k));
  const Bindings b{p, k, 0, std::nullopt};
  const auto q = static_cast<std::uint64_t>(b.q());
  const std::uint64_t n = q * q - 1;

  Proposition1Report out;
  out.f1 = SparsePolynomial::parse("x + x^(((p-1)*p^(k-1)+1)*(q-1)+1) - x^((p^(k-1)+1)*(q-1)+1)").bound(b);
  if (p == 3) {
    // x^{-q+2} written with its exponent reduced mod q^2 - 1.
    out.f2 = SparsePolynomial::parse("x + x^(q^2-q+1) - x^q").bound(b);
    out.f3 = SparsePolynomial::parse("x - x^q - x^(2*q-1)").bound(b);
  } else {
    out.f2 = SparsePolynomial::parse("x + x^((2*q+1)/3*(q-1)+1) - x^q").bound(b);
    out.f3 = SparsePolynomial::parse("x - x^q - x^((q+5)/3*(q-1)+1)").bound(b);
  }
  out.d1 = ExponentExpr::parse("((p-1)*p^(k-1)+1)*(q-1)+1").evaluate_exponent(b);
  out.d2 = ExponentExpr::parse("(p^(k-1)+1)*(q-1)+1").evaluate_exponent(b);
  const auto i1 = mod_inverse(out.d1 % n, n);
  const auto i2 = mod_inverse(out.d2 % n, n);
  if (!i1 || !i2) return out;
  out.d1_inverse = *i1;
  out.d2_inverse = *i2;

  const FieldPtr f = verification_field(p, k, caps);
  const FieldPolynomial f0 = FieldPolynomial::from(build_f(p, k), *f);
  const FieldPolynomial f1 = FieldPolynomial::from(out.f1, *f);
  const FieldPolynomial f2 = FieldPolynomial::from(out.f2, *f);
  const FieldPolynomial f3 = FieldPolynomial::from(out.f3, *f);
  const std::uint64_t frob = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k - 1));
  out.f1_matches_f = pointwise_equal(f1, substitute(f0, frob, f->one()));
  out.f2_matches_f1 = pointwise_equal(f2, substitute(f1, out.d1_inverse, f->one()));
  out.f3_matches_f1 = pointwise_equal(f3, substitute(f1, out.d2_inverse, -f->one()));
  return out;
}

// ---------------------------------------------------------------------------
// Registry

std::string_view to_string(KCondition c) {
  switch (c) {
    case KCondition::kAll:
      return "all k";
    case KCondition::kEven:
      return "even k";
    case KCondition::kOdd:
      return "odd k";
    case KCondition::kNot0Mod4:
      return "k != 0 mod 4";
    case KCondition::kNot2Mod4:
      return "k != 2 mod 4";
    case KCondition::kOddExp3:
      return "odd k and exp3(t) >= exp3(q+1)";
  }
  return "?";
}

std::string FamilyEntry::tuple_text() const {
  std::string l1 = lambda1.size() > 1 ? "+-1" : std::to_string(lambda1.front());
  return "(" + l1 + ", " + s.render() + ", " + std::to_string(lambda2) + ", " + t.render() + ")";
}

namespace {

FamilyEntry row(std::int64_t p, std::vector<std::int64_t> l1, const char* s, std::int64_t l2, const char* t,
                KCondition cond, const char* num, const char* den, const char* source, bool param = false) {
  return FamilyEntry{p,
                     std::move(l1),
                     ExponentExpr::parse(s),
                     l2,
                     ExponentExpr::parse(t),
                     cond,
                     FractionalPoly{SparsePolynomial::parse(num), SparsePolynomial::parse(den)},
                     source,
                     param};
}

// Fractions are stored expanded: products such as x (A/B) or (A/B)^2 are
// multiplied out so that numerator and denominator are plain sums.
std::vector<FamilyEntry> registry_p3() {
  using K = KCondition;
  return {
      row(3, {-1}, "2", 1, "-2", K::kNot0Mod4, "x^5 + x^3 - x", "-x^4 + x^2 + 1",
          "Likangquan2016arxiv [Theorem 3.2]"),
      row(3, {1}, "3", -1, "-1", K::kOdd, "-x^4 + x^3 + 1", "x^5 + x^2 - x", "Likangquan2016arxiv [Theorem 3.4]"),
      row(3, {-1}, "4", 1, "-2", K::kAll, "x^6 + x^4 - 1", "-x^7 + x^3 + x",
          "Likangquan2016arxiv [Conjecture 5.1 (2)], Linian2016conjecture"),
      row(3, {-1}, "-2", 1, "2", K::kNot2Mod4, "-x^5 + x^3 + x", "x^4 + x^2 - 1",
          "Likangquan2016arxiv [Conjecture 5.1 (3)], Linian2016conjecture"),
      row(3, {-1}, "(q+3)/4", -1, "(3*q+5)/4", K::kEven, "x^((3*q+5)/4+1) - x^((q+1)/2+1) - x",
          "x^((3*q+5)/4) - x - x^((q+3)/2)", "Kyureghyan-Zieve2016 [Theorem 1.1 (d)]"),
      row(3, {-1}, "p^(k/2)", -1, "1-p^(k/2)", K::kEven, "x^(p^(k/2)) - x^(2*p^(k/2)-1) - 1",
          "x^(p^(k/2)-1) - x^(2*p^(k/2)-1) - 1", "Kyureghyan-Zieve2016 [Theorem 1.1 (e)]"),
      row(3, {-1}, "p^(k/2)+1", -1, "-p^(k/2)", K::kEven, "x^(p^(k/2)+1) - x^(2*p^(k/2)+1) - 1",
          "x^(p^(k/2)) - x^(2*p^(k/2)+1) - 1", "Kyureghyan-Zieve2016 [Theorem 1.1 (f)]"),
      row(3, {-1}, "1", -1, "2", K::kEven, "x + 1 - x^2", "x^3 + x^2 - x", "X.Hou-2014arxiv [Theorem A (iv)]"),
  };
}

std::vector<FamilyEntry> registry_p5() {
  using K = KCondition;
  return {
      row(5, {1}, "(q+3)/4", -1, "(q+3)/2", K::kAll,
          "-x^((q+1)/2+(q+3)/2) + 4*x^((q+1)/2+(q+3)/4) - 4*x^((q+1)/2)", "x^((q+3)/2) + 4*x^((q+3)/4) + 4",
          "Wu-Li2017 [Theorem 1]"),
      row(5, {1}, "(q-1)/2", -1, "(q+3)/2", K::kOdd, "-x^((q+3)/2+1) + x^((q-1)/2+1) - x",
          "x^((q+3)/2) - x^((q-1)/2) - 1", "Wu-Li2017 [Theorem 2]"),
      row(5, {1}, "-1", -1, "(q+3)/2", K::kOdd, "x^((q-1)/2+2) - x^3 - x^2", "x^((q+5)/2) - x - 1",
          "Wu-Li2017 [Theorem 3]"),
      row(5, {-1}, "(q+3)/2", 1, "(q+5)/2", K::kOdd, "-x^((q-1)/2+1) + x^((q-3)/2+1) + x",
          "x^((q+5)/2) - x^((q+3)/2) + 1", "Wu-Li2017 [Theorem 4]"),
      row(5, {-1}, "2", 1, "(q+3)/2", K::kEven, "x^((q+3)/2) + x^2 - 1", "x^((q+3)/2+1) - x^3 + x",
          "Wu-Li2017 [Theorem 5]"),
      row(5, {1}, "1", -1, "(q-1)/2", K::kEven, "x^((q+5)/2) - x - 1", "x^((q-1)/2) - x - 1",
          "Wu-Li2017 [Theorem 6]"),
      row(5, {-1}, "1", 1, "(q+5)/2", K::kEven, "x^((q-1)/2) + x - 1", "x^((q+5)/2) - x + 1",
          "Wu-Li2017 [Theorem 7 (i)]"),
      row(5, {1}, "(q+3)/2", 1, "(q+5)/2", K::kEven, "x^((q+1)/2) + x^((q-1)/2) + x",
          "x^((q+5)/2) + x^((q+3)/2) + 1", "Wu-Li2017 [Theorem 7 (ii)]"),
      row(5, {1}, "(q+3)/2", -1, "-1", K::kEven, "x^((q-1)/2+2) - x^3 + x^2", "x^((q+5)/2) + x - 1",
          "Wu-Li2017 [Theorem 7 (iii)]"),
      row(5, {1}, "2", -1, "-2", K::kOdd, "-x^5 - 4*x^3 - 4*x", "x^4 - 4*x^2 + 4",
          "Wu-Li2017 [Proposition 1], mage2017 [Theorem 4.1]"),
      row(5, {-1}, "(q+5)/3", -1, "2*(q+2)/3", K::kEven, "-x^5 + 4*x^3 - 4*x", "x^4 + 4*x^2 + 4",
          "Wu-Li2017 [Proposition 2], mage2017 [Theorem 3.1]"),
      row(5, {1}, "(q+2)/3", 1, "(2*q+4)/3", K::kEven, "x^((2*q+4)/3) + x^((q+2)/3) + 1",
          "x^((2*q+1)/3) + x^((q+2)/3) + 1", "Kyureghyan-Zieve2016 [Theorem 1.1 (c)]"),
      row(5, {-1}, "p^(k/2)", -1, "1-p^(k/2)", K::kEven, "x^(p^(k/2)) - x^(2*p^(k/2)-1) - 1",
          "x^(p^(k/2)-1) - x^(2*p^(k/2)-1) - 1", "Kyureghyan-Zieve2016 [Theorem 1.1 (e)]"),
      row(5, {-1}, "p^(k/2)+1", -1, "-p^(k/2)", K::kEven, "x^(p^(k/2)+1) - x^(2*p^(k/2)+1) - 1",
          "x^(p^(k/2)) - x^(2*p^(k/2)+1) - 1", "Kyureghyan-Zieve2016 [Theorem 1.1 (f)]"),
      row(5, {1}, "t", 1, "-t", K::kEven, "x", "1", "Ding-siam [Theorem 3.4 (i)]", true),
      row(5, {1}, "t", 1, "-t", K::kOddExp3, "x", "1", "Ding-siam [Theorem 3.4 (iii)]", true),
      row(5, {1, -1}, "1", 1, "2", K::kEven, "1", "x", "X.Hou-2014method [Theorem A (ii)]"),
  };
}

}  // namespace

const std::vector<FamilyEntry>& registry(std::int64_t p) {
  static const std::vector<FamilyEntry> p3 = registry_p3();
  static const std::vector<FamilyEntry> p5 = registry_p5();
  if (p == 3) return p3;
  if (p == 5) return p5;
  throw Error(ErrorCode::kUnsupportedCharacteristic, "no registry for p = " + std::to_string(p));
}

bool admissible(const FamilyEntry& row, std::int64_t k, std::optional<std::int64_t> param) {
  switch (row.k_condition) {
    case KCondition::kAll:
      return k >= 1;
    case KCondition::kEven:
      return k >= 2 && k % 2 == 0;
    case KCondition::kOdd:
      return k % 2 == 1;
    case KCondition::kNot0Mod4:
      return k >= 1 && k % 4 != 0;
    case KCondition::kNot2Mod4:
      return k >= 1 && k % 4 != 2;
    case KCondition::kOddExp3: {
      if (k % 2 != 1) return false;
      if (!param) return true;  // some parameter may still qualify
      if (*param == 0) return false;
      const auto q = static_cast<std::uint64_t>(Bindings{row.p, k}.q());
      const auto t = static_cast<std::uint64_t>(*param < 0 ? -*param : *param);
      return valuation(t, 3) >= valuation(q + 1, 3);
    }
  }
  return false;
}

std::vector<RowInstance> instantiate(std::int64_t p, std::size_t index, std::int64_t k,
                                     std::optional<ParamRange> range) {
  const FamilyEntry& r = registry(p).at(index);
  const std::int64_t q = Bindings{p, k}.q();
  std::vector<std::optional<std::int64_t>> params;
  if (r.parametrized) {
    const ParamRange span = range.value_or(ParamRange{1, q});
    for (std::int64_t v = span.first; v <= span.second; ++v) {
      if (r.k_condition != KCondition::kOddExp3 || admissible(r, k, v)) params.emplace_back(v);
    }
  } else {
    params.emplace_back(std::nullopt);
  }
  std::vector<RowInstance> out;
  for (const auto& param : params) {
    const Bindings b{p, k, 0, param};
    const std::int64_t s = r.s.evaluate(b);
    const std::int64_t t = r.t.evaluate(b);
    for (std::int64_t l1 : r.lambda1) {
      out.push_back(RowInstance{index, {l1, s, r.lambda2, t}, param, b, build_family(l1, s, r.lambda2, t, p, k)});
    }
  }
  return out;
}

bool RowVerification::ok() const {
  return k.has_value() && !instances.empty() &&
         std::all_of(instances.begin(), instances.end(), [](const InstanceCheck& c) { return c.ok(); });
}

namespace {

constexpr std::uint64_t kConjugationSearch = 1 << 12;

// Searches a unit a mod |U| and c = +-1 with direct(u) = frac(u^a)^c on U.
std::optional<std::pair<std::uint64_t, int>> find_conjugation(const UnitCircle& circle, const FractionalPoly& frac,
                                                              const std::vector<Element>& direct) {
  const std::uint64_t n = circle.size();
  for (std::uint64_t a = 1; a < n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    for (int c : {1, -1}) {
      bool ok = true;
      try {
        for (std::uint64_t i = 0; ok && i < n; ++i) {
          const Element v = frac_eval(frac, circle.at(mul_mod(i, a, n)));
          ok = (c > 0 ? v : v.inv()) == direct[i];
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDenominatorZero) throw;
        ok = false;
      }
      if (ok) return std::make_pair(a, c);
    }
  }
  return std::nullopt;
}

}  // namespace

RowVerification verify_row(std::int64_t p, std::size_t index, std::int64_t k, const Caps& caps,
                           std::optional<ParamRange> range) {
  const FamilyEntry& r = registry(p).at(index);
  RowVerification out{index, k, {}, {}};
  const FieldPtr f = make_field(static_cast<std::uint64_t>(p), static_cast<unsigned>(2 * k), caps);
  const auto kk = static_cast<unsigned>(k);
  const UnitCircle circle(*f, kk, caps);
  const std::uint64_t q = circle.q();

  for (RowInstance& inst : instantiate(p, index, k, range)) {
    InstanceCheck check{std::move(inst)};
    const FieldPolynomial poly = FieldPolynomial::from(check.instance.poly, *f);
    check.permutes_field = cross_validate(poly, kk, caps).is_permutation.value_or(false);

    const FractionalPoly frac{r.fractional.numerator.bound(check.instance.binding),
                              r.fractional.denominator.bound(check.instance.binding)};
    const Element l1 = f->from_int(check.instance.tuple.lambda1);
    const Element l2 = f->from_int(check.instance.tuple.lambda2);
    const std::uint64_t s = reduce_signed(check.instance.tuple.s, q + 1);
    const std::uint64_t t = reduce_signed(check.instance.tuple.t, q + 1);
    std::vector<Element> values;
    std::vector<std::uint64_t> images;
    bool defined = true;
    bool inside = true;
    bool matches = true;
    circle.for_each([&](std::uint64_t, const Element& u) {
      if (!defined) return;
      Element value;
      try {
        value = frac_eval(frac, u);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDenominatorZero) throw;
        defined = false;
        check.note = "fraction denominator vanishes at " + u.to_string();
        return;
      }
      const Element direct = u * (f->one() + l1 * u.pow(s) + l2 * u.pow(t)).pow(q - 1);
      matches = matches && value == direct;
      inside = inside && value.pow(q + 1).is_one();
      images.push_back(f->rank(value));
      values.push_back(direct);
    });
    std::sort(images.begin(), images.end());
    check.fraction_permutes_U = defined && inside && std::adjacent_find(images.begin(), images.end()) == images.end();
    check.fraction_matches = defined && matches;
    if (defined && !matches && circle.size() <= kConjugationSearch) {
      check.conjugation = find_conjugation(circle, frac, values);
      if (check.conjugation) {
        check.note = "tabulated fraction agrees after u -> u^" + std::to_string(check.conjugation->first) +
                     (check.conjugation->second < 0 ? " and inversion" : "");
      }
    }
    out.instances.push_back(std::move(check));
  }
  if (out.instances.empty()) out.notes.push_back("no admissible parameter in range at k = " + std::to_string(k));
  return out;
}

std::vector<RowVerification> registry_verify(std::int64_t p, const Caps& caps, std::optional<ParamRange> range,
                                             std::int64_t max_k) {
  const auto& rows = registry(p);
  std::vector<RowVerification> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RowVerification result{i, std::nullopt, {}, {}};
    for (std::int64_t k = 1; k <= max_k; ++k) {
      const std::uint64_t q = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k));
      if (q * q > caps.exhaustive && q + 1 > caps.unit_circle) {
        result.notes.push_back("k = " + std::to_string(k) + ": over cap");
        break;
      }
      if (!admissible(rows[i], k)) continue;
      try {
        RowVerification v = verify_row(p, i, k, caps, range);
        if (v.instances.empty()) {
          result.notes.insert(result.notes.end(), v.notes.begin(), v.notes.end());
          continue;
        }
        v.notes.insert(v.notes.begin(), result.notes.begin(), result.notes.end());
        result = std::move(v);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kDivisibilityError) throw;
        result.notes.push_back("k = " + std::to_string(k) + " skipped: " + e.what());
      }
    }
    if (!result.k) result.notes.push_back("no admissible k within caps");
    out.push_back(std::move(result));
  }
  return out;
}

ClassifyReport classify(const SparsePolynomial& candidate, const Caps& caps, std::optional<ParamRange> range) {
  const Bindings& b = candidate.binding();
  ClassifyReport out;
  out.field = make_field(static_cast<std::uint64_t>(b.p), static_cast<unsigned>(2 * b.k), caps);
  const FieldPolynomial H = FieldPolynomial::from(candidate, *out.field);
  if (!is_permutation_exhaustive(H, caps).is_permutation) {
    throw Error(ErrorCode::kNotPermutation, candidate.render_bound() + " does not permute " + out.field->describe());
  }
  const auto& rows = registry(b.p);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!admissible(rows[i], b.k)) continue;
    std::vector<RowInstance> instances;
    try {
      instances = instantiate(b.p, i, b.k, range);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDivisibilityError) throw;
      out.notes.push_back("row " + std::to_string(i) + " skipped: " + e.what());
      continue;
    }
    for (RowInstance& inst : instances) {
      const FieldPolynomial h = FieldPolynomial::from(inst.poly, *out.field);
      std::optional<EquivalenceWitness> w;
      try {
        w = equivalent_bruteforce(H, h, caps);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNotPermutation) throw;
        out.notes.push_back("row " + std::to_string(i) + " instance " + inst.tuple.render() + " is not a permutation");
        continue;
      }
      ++out.instances_tested;
      if (w) out.matches.push_back({std::move(inst), std::move(*w)});
    }
  }
  return out;
}

}  // namespace niho
