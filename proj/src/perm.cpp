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

#include <chrono>
#include <numeric>

namespace niho {
namespace {

void require_exhaustive(const Field& f, const Caps& caps) {
  if (f.order() > caps.exhaustive) {
    throw Error(ErrorCode::kSizeCapExceeded,
                "field order " + std::to_string(f.order()) + " exceeds exhaustive cap " + std::to_string(caps.exhaustive));
  }
}

std::string describe_subfield_failure(const kernels::SubfieldSplitStats& s) {
  if (s.subfield_escape) return "maps " + s.subfield_escape->to_string() + " in GF(q) outside GF(q)";
  return "not injective on GF(q)";
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kExhaustive:
      return "exhaustive";
    case Method::kZieve:
      return "zieve";
    case Method::kSubfieldSplit:
      return "subfield_split";
  }
  return "?";
}

PermutationVerdict is_permutation_exhaustive(const FieldPolynomial& poly, const Caps& caps, Exec exec) {
  require_exhaustive(poly.field(), caps);
  auto res = kernels::field_injectivity(poly, exec);
  return {res.injective, Method::kExhaustive, std::move(res.witness), {}};
}

PermutationVerdict zieve_check(std::uint64_t r, const FieldPolynomial& h, unsigned k, const Caps& caps, Exec exec) {
  const std::uint64_t q = subfield_order(h.field(), k);
  PermutationVerdict v{false, Method::kZieve, std::nullopt, {}};
  const std::uint64_t g = std::gcd(r, q - 1);
  if (g != 1) {
    v.note = "gcd(r, q-1) = " + std::to_string(g);
    return v;
  }
  auto res = kernels::unit_circle_map(r, h, k, exec, caps);
  if (res.h_zero) {
    v.note = "h vanishes at " + res.h_zero->to_string() + " in U";
    return v;
  }
  v.is_permutation = res.injective;
  v.witness = std::move(res.witness);
  return v;
}

std::uint64_t count_image_in_subfield(const FieldPolynomial& poly, unsigned k, const Caps& caps, Exec exec) {
  require_exhaustive(poly.field(), caps);
  return kernels::subfield_split(poly, k, exec, false).leaks;
}

PermutationVerdict subfield_split_check(const FieldPolynomial& poly, unsigned k, const Caps& caps, Exec exec) {
  require_exhaustive(poly.field(), caps);
  const auto s = kernels::subfield_split(poly, k, exec, true);
  PermutationVerdict v{false, Method::kSubfieldSplit, std::nullopt, {}};
  if (!s.subfield_bijective) {
    v.note = describe_subfield_failure(s);
    v.witness = s.subfield_collision;
  } else if (s.leaks != 0) {
    v.note = "subfield leak count " + std::to_string(s.leaks);
  } else if (!s.complement_injective) {
    v.note = "not injective outside GF(q)";
    v.witness = s.complement_collision;
  } else {
    v.is_permutation = true;
  }
  return v;
}

MethodDisagreement::MethodDisagreement(CrossReport report)
    : Error(ErrorCode::kMethodDisagreement, "permutation methods disagree"), report_(std::move(report)) {}

CrossReport cross_validate(const FieldPolynomial& poly, unsigned k, const Caps& caps, Exec exec) {
  const Field& f = poly.field();
  const std::uint64_t q = subfield_order(f, k);
  CrossReport report;

  auto timed = [&](Method m, auto&& fn) {
    MethodRun run{m, std::nullopt, {}, 0};
    const auto t0 = std::chrono::steady_clock::now();
    run.verdict = fn();
    run.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    report.runs.push_back(std::move(run));
  };
  auto skip = [&](Method m, std::string why) { report.runs.push_back({m, std::nullopt, std::move(why), 0}); };

  const bool fits = f.order() <= caps.exhaustive;
  if (fits) {
    timed(Method::kExhaustive, [&] { return is_permutation_exhaustive(poly, caps, exec); });
  } else {
    skip(Method::kExhaustive, "skipped: over cap");
  }

  std::optional<FieldNihoForm> form;
  try {
    form.emplace(niho_decompose(poly, k));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNotNihoShaped) throw;
  }
  if (!form) {
    skip(Method::kZieve, "skipped: not of the form x^r h(x^(q-1))");
  } else if (q + 1 > caps.unit_circle) {
    skip(Method::kZieve, "skipped: over cap");
  } else {
    timed(Method::kZieve, [&] { return zieve_check(form->r, form->h, k, caps, exec); });
  }

  bool q_fixed = true;
  for (const Monomial& t : poly.terms()) q_fixed = q_fixed && in_subfield(t.coeff, k);
  if (!q_fixed) {
    skip(Method::kSubfieldSplit, "skipped: coefficients outside GF(q)");
  } else if (!fits) {
    skip(Method::kSubfieldSplit, "skipped: over cap");
  } else {
    timed(Method::kSubfieldSplit, [&] { return subfield_split_check(poly, k, caps, exec); });
  }

  bool disagree = false;
  for (const MethodRun& run : report.runs) {
    if (!run.verdict) continue;
    if (!report.is_permutation) {
      report.is_permutation = run.verdict->is_permutation;
    } else if (*report.is_permutation != run.verdict->is_permutation) {
      disagree = true;
    }
  }
  if (disagree) throw MethodDisagreement(std::move(report));
  if (!report.is_permutation) throw Error(ErrorCode::kInvalidArgument, "no permutation method applies within caps");
  return report;
}

const std::vector<Table1Row>& table1_reference() {
  static const std::vector<Table1Row> rows = {
      {7, 1, false},  {7, 2, true},   {7, 3, false},  {7, 4, false}, {7, 5, false},
      {7, 6, false},  {11, 1, false}, {11, 2, true},  {11, 3, false}, {11, 4, false},
      {13, 1, false}, {13, 2, true},  {13, 3, false},
  };
  return rows;
}

}  // namespace niho
