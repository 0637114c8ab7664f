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

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "niho/numtheory.hpp"
#include "niho/poly.hpp"

namespace niho {
namespace {

void require_char_3_or_5(std::int64_t p) {
  if (p != 3 && p != 5) {
    throw Error(ErrorCode::kUnsupportedCharacteristic, "identity only stated for p = 3 or 5, got " + std::to_string(p));
  }
}

FieldPtr sweep_field(std::int64_t p, std::int64_t k, const Caps& caps) {
  if (k < 1 || k > static_cast<std::int64_t>(kMaxDegree / 2)) throw Error(ErrorCode::kInvalidArgument, "k out of range");
  FieldPtr f = make_field(static_cast<std::uint64_t>(p), static_cast<unsigned>(2 * k), caps);
  if (f->order() > caps.exhaustive) {
    throw Error(ErrorCode::kSizeCapExceeded, f->describe() + " exceeds the exhaustive cap");
  }
  return f;
}

// Runs fn(x, counters) over every x of the field, summing per-check counters.
template <class Fn>
std::vector<std::uint64_t> sweep(const Field& f, std::size_t n, kernels::Exec exec, Fn fn) {
  std::vector<std::uint64_t> total(n, 0);
  const auto order = static_cast<std::int64_t>(f.order());
  const bool parallel = exec == kernels::Exec::kParallel;
#pragma omp parallel if (parallel)
  {
    std::vector<std::uint64_t> local(n, 0);
#pragma omp for schedule(static)
    for (std::int64_t r = 0; r < order; ++r) fn(f.from_rank(static_cast<std::uint64_t>(r)), local);
#pragma omp critical
    for (std::size_t i = 0; i < n; ++i) total[i] += local[i];
  }
  return total;
}

IdentityReport make_report(const Field& f, const std::vector<std::string>& names,
                           const std::vector<std::uint64_t>& violations, const std::vector<std::uint64_t>& checked) {
  IdentityReport out{f.describe(), {}};
  for (std::size_t i = 0; i < names.size(); ++i) out.checks.push_back({names[i], checked[i], violations[i]});
  return out;
}

}  // namespace

bool IdentityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.violations == 0; });
}

const IdentityCheck& IdentityReport::at(std::string_view name) const {
  for (const IdentityCheck& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::kInvalidArgument, "no check named " + std::string(name));
}

IdentityReport verify_trace_identities(std::int64_t p, std::int64_t k, const Caps& caps, kernels::Exec exec) {
  require_char_3_or_5(p);
  const FieldPtr fp = sweep_field(p, k, caps);
  const Field& f = *fp;
  const auto kk = static_cast<unsigned>(k);
  const Element c2 = f.from_int(2);

  std::vector<std::string> names;
  if (p == 3) {
    names = {"Tr(x^2) = Tr^2 + N", "Tr(x^4) = Tr^4 - N Tr^2 - N^2"};
  } else {
    names = {"Tr(x^2) = Tr^2 - 2N", "Tr(x^3) = Tr^3 + 2N Tr", "Tr(x^4) = Tr^4 + N Tr^2 + 2N^2",
             "Tr(x^6) = Tr^6 - N Tr^4 - N^2 Tr^2 - 2N^3", "Tr(x^8) = Tr^8 + 2N Tr^6 - N^3 Tr^2 + 2N^4"};
  }
  auto counts = sweep(f, names.size(), exec, [&](const Element& x, std::vector<std::uint64_t>& bad) {
    const Element t = trace(x, kk);
    const Element n = norm(x, kk);
    auto tr_pow = [&](std::uint64_t j) { return trace(x.pow(j), kk); };
    if (p == 3) {
      bad[0] += tr_pow(2) != t.pow(2) + n;
      bad[1] += tr_pow(4) != t.pow(4) - n * t.pow(2) - n.pow(2);
    } else {
      bad[0] += tr_pow(2) != t.pow(2) - c2 * n;
      bad[1] += tr_pow(3) != t.pow(3) + c2 * n * t;
      bad[2] += tr_pow(4) != t.pow(4) + n * t.pow(2) + c2 * n.pow(2);
      bad[3] += tr_pow(6) != t.pow(6) - n * t.pow(4) - n.pow(2) * t.pow(2) - c2 * n.pow(3);
      bad[4] += tr_pow(8) != t.pow(8) + c2 * n * t.pow(6) - n.pow(3) * t.pow(2) + c2 * n.pow(4);
    }
  });
  return make_report(f, names, counts, std::vector<std::uint64_t>(names.size(), f.order()));
}

std::uint64_t count_roots_in_U(const std::array<std::int64_t, 3>& abc, std::int64_t p, std::int64_t k,
                               const Caps& caps) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
  const FieldPtr fp = make_field(static_cast<std::uint64_t>(p), static_cast<unsigned>(2 * k), caps);
  const Element a = fp->from_int(abc[0]);
  const Element b = fp->from_int(abc[1]);
  const Element c = fp->from_int(abc[2]);
  std::uint64_t roots = 0;
  UnitCircle(*fp, static_cast<unsigned>(k), caps).for_each([&](std::uint64_t, const Element& u) {
    roots += (a * u * u + b * u + c).is_zero();
  });
  return roots;
}

std::pair<bool, bool> artin_schreier_perm(const Element& u) {
  const Field& f = u.field();
  const std::uint64_t p = f.p();
  const std::uint64_t q = f.order();
  std::vector<bool> hit(q, false);
  bool permutes = true;
  for (std::uint64_t r = 0; r < q && permutes; ++r) {
    const Element x = f.from_rank(r);
    const std::uint64_t image = f.rank(x.pow(p) - u * x);
    if (hit[image]) permutes = false;
    hit[image] = true;
  }
  const bool is_power = !u.is_zero() && u.pow((q - 1) / std::gcd(p - 1, q - 1)).is_one();
  return {permutes, !is_power};
}

std::uint64_t artin_schreier_sweep(std::int64_t p, std::int64_t k, const Caps& caps) {
  const FieldPtr fp = make_field(static_cast<std::uint64_t>(p), static_cast<unsigned>(k), caps);
  if (fp->order() > caps.table_field) throw Error(ErrorCode::kSizeCapExceeded, fp->describe() + " too large");
  std::uint64_t disagreements = 0;
  for (std::uint64_t r = 0; r < fp->order(); ++r) {
    const auto [exhaustive, criterion] = artin_schreier_perm(fp->from_rank(r));
    disagreements += exhaustive != criterion;
  }
  return disagreements;
}

IdentityReport verify_tf_nf(std::int64_t p, std::int64_t k, const Caps& caps, kernels::Exec exec) {
  require_char_3_or_5(p);
  const FieldPtr fp = sweep_field(p, k, caps);
  const Field& f = *fp;
  const auto kk = static_cast<unsigned>(k);
  const auto pp = static_cast<std::uint64_t>(p);
  const FieldPolynomial poly = FieldPolynomial::from(build_f(p, k), f);
  const Element c2 = f.from_int(2);
  const Element c3 = f.from_int(3);

  const std::vector<std::string> names = {"Tr(f) = Tr^p", "N(f) mixed form", "N(f) closed form",
                                          "mixed form = closed form", "Tr(f) = 2x^p on GF(q)"};
  std::vector<std::uint64_t> checked(names.size(), f.order());
  checked[4] = subfield_order(f, kk);
  auto counts = sweep(f, names.size(), exec, [&](const Element& x, std::vector<std::uint64_t>& bad) {
    const Element fx = poly(x);
    const Element t = trace(x, kk);
    const Element n = norm(x, kk);
    const Element nf = norm(fx, kk);
    auto tr_pow = [&](std::uint64_t j) { return trace(x.pow(j), kk); };
    const Element mixed = c3 * n.pow(pp) + n.pow(pp - 1) * tr_pow(2) - n.pow(2) * tr_pow(2 * pp - 4) -
                          n * tr_pow(2 * pp - 2);
    const Element closed =
        p == 3 ? -(n * t.pow(4)) + n.pow(2) * t.pow(2) + n.pow(3)
               : n.pow(5) + c3 * n.pow(4) * t.pow(2) + n.pow(3) * t.pow(4) + c2 * n.pow(2) * t.pow(6) - n * t.pow(8);
    bad[0] += trace(fx, kk) != t.pow(pp);
    bad[1] += nf != mixed;
    bad[2] += nf != closed;
    bad[3] += mixed != closed;
    if (in_subfield(x, kk)) bad[4] += trace(fx, kk) != c2 * x.pow(pp);
  });
  return make_report(f, names, counts, checked);
}

ReductionReport verify_reduction_chain(std::int64_t p, std::int64_t k, const Caps& caps, std::size_t sample_limit) {
  if (p != 5) throw Error(ErrorCode::kUnsupportedCharacteristic, "the reduction chain is stated for p = 5");
  const FieldPtr fp = sweep_field(p, k, caps);
  const Field& f = *fp;
  const auto kk = static_cast<unsigned>(k);
  const std::uint64_t q = subfield_order(f, kk);
  const FieldPolynomial poly = FieldPolynomial::from(build_f(p, k), f);
  const Element one = f.one();
  const Element c2 = f.from_int(2);
  const Element c3 = f.from_int(3);
  const std::uint64_t quartic_exp = (q - 1) / std::gcd<std::uint64_t>(4, q - 1);

  // Fourth powers of GF(q)^*, enumerated directly for the cross-check.
  std::unordered_set<std::uint64_t> fourth_powers;
  {
    const Element gq = f.primitive_element().pow(q + 1);
    Element y = one;
    for (std::uint64_t j = 0; j + 1 < q; ++j, y *= gq) fourth_powers.insert(f.rank(y.pow(4)));
  }

  enum Check { kEq14, kQuintic, kSNotMinusOne, kTNonzero, kEq16, kEq17, kEq18, kFourthCross, kSub21, kCount };
  const std::vector<std::string> names = {"(r-2)^4 (r+1) = s+1",
                                          "r^5 + 3r^4 + r^3 + 2r^2 - r = s",
                                          "s != -1",
                                          "t != 0",
                                          "t^5 + 3t^4 = s+1",
                                          "(1/t)^5 - 3/(s+1) (1/t) = 1/(s+1)",
                                          "3/(s+1) = 3(1 - 1/(c^(1-q) + c^(q-1) - 2))",
                                          "fourth-power test = enumeration",
                                          "Tr(c) = 0: N(x)^5 = N(c)"};
  std::vector<std::uint64_t> bad(kCount, 0);
  std::vector<std::uint64_t> checked(kCount, 0);

  ReductionReport out;
  out.field = fp;
  for (std::uint64_t rank = 0; rank < f.order(); ++rank) {
    const Element x = f.from_rank(rank);
    if (in_subfield(x, kk)) continue;
    const Element c = poly(x);
    if (in_subfield(c, kk)) {
      ++out.subfield_hits;
      continue;
    }
    const Element tx = trace(x, kk);
    const Element tc = trace(c, kk);
    const Element nx = norm(x, kk);
    const Element nc = norm(c, kk);
    if (tc.is_zero()) {
      ++checked[kSub21];
      bad[kSub21] += !tx.is_zero() || nx.pow(5) != nc;
      continue;
    }
    ++out.traces;
    ReductionTrace tr;
    tr.c = c;
    tr.x = x;
    tr.r = nx / tx.pow(2);
    tr.s = nc / tc.pow(2);
    tr.t = tr.r - c2;
    tr.lhs = tr.t.pow(4) * (tr.r + one);
    tr.rhs = tr.s + one;
    for (int i = kEq14; i <= kEq18; ++i) ++checked[i];
    bad[kEq14] += tr.lhs != tr.rhs;
    bad[kQuintic] += tr.r.pow(5) + c3 * tr.r.pow(4) + tr.r.pow(3) + c2 * tr.r.pow(2) - tr.r != tr.s;
    if (tr.rhs.is_zero()) {
      ++bad[kSNotMinusOne];
      continue;
    }
    if (tr.t.is_zero()) {
      ++bad[kTNonzero];
      continue;
    }
    const Element w = c3 / tr.rhs;
    const Element inv_t = tr.t.inv();
    bad[kEq16] += tr.t.pow(5) + c3 * tr.t.pow(4) != tr.rhs;
    bad[kEq17] += inv_t.pow(5) - w * inv_t != tr.rhs.inv();
    const Element u = c.pow(q - 1);
    bad[kEq18] += w != c3 * (one - (u.inv() + u - c2).inv());
    tr.fourth_power_flag = w.pow(quartic_exp).is_one();
    ++checked[kFourthCross];
    bad[kFourthCross] += tr.fourth_power_flag != fourth_powers.contains(f.rank(w));
    out.fourth_power_hits += tr.fourth_power_flag;
    if (out.sample.size() < sample_limit) out.sample.push_back(std::move(tr));
  }
  out.identities = make_report(f, names, bad, checked);
  if (k % 2 != 0) {
    out.note = "k odd: " + std::to_string(out.fourth_power_hits) + " targets with 3/(s+1) a fourth power, " +
               std::to_string(out.subfield_hits) + " points outside GF(q) mapped into GF(q)";
  }
  return out;
}

CorollaryReport verify_corollary_fraction(std::int64_t p, std::int64_t k, const Caps& caps) {
  require_char_3_or_5(p);
  const FieldPtr fp = make_field(static_cast<std::uint64_t>(p), static_cast<unsigned>(2 * k), caps);
  const Field& f = *fp;
  const UnitCircle circle(f, static_cast<unsigned>(k), caps);
  const FractionalPoly frac = corollary_fraction(p, k);
  const auto pp = static_cast<std::uint64_t>(p);

  CorollaryReport out{f.describe()};
  std::vector<std::uint64_t> images;
  bool inside = true;
  circle.for_each([&](std::uint64_t, const Element& u) {
    const Element inner = u.pow(pp - 1) + u.pow(pp) - u;
    const Element direct = u.pow(pp) * inner.pow(circle.q() - 1);
    Element value;
    try {
      value = frac_eval(frac, u);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDenominatorZero) throw;
      ++out.denominator_zeros;
      return;
    }
    ++out.agreement_checked;
    out.agreement_violations += value != direct;
    inside = inside && value.pow(circle.q() + 1).is_one();
    images.push_back(f.rank(value));
  });
  std::sort(images.begin(), images.end());
  out.permutes_U = out.denominator_zeros == 0 && inside &&
                   std::adjacent_find(images.begin(), images.end()) == images.end();
  return out;
}

}  // namespace niho
