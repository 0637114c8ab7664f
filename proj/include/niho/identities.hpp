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

// Exhaustive checks of the trace/norm algebra behind the permutation proof
// for f over GF(q^2), q = 3^k or 5^k. Every check reports how many points it
// visited and how many violated the identity.

#ifndef NIHO_IDENTITIES_HPP_
#define NIHO_IDENTITIES_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "niho/field.hpp"
#include "niho/kernels.hpp"

namespace niho {

struct IdentityCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
};

struct IdentityReport {
  std::string field;  // Field::describe()
  std::vector<IdentityCheck> checks;

  bool ok() const;
  /// The named check; InvalidArgument if absent.
  const IdentityCheck& at(std::string_view name) const;
};

/// Tr(x^j) as polynomials in Tr(x), N(x). p in {3, 5}.
IdentityReport verify_trace_identities(std::int64_t p, std::int64_t k, const Caps& caps = {},
                                       kernels::Exec exec = kernels::Exec::kParallel);

/// #{u in U : a u^2 + b u + c = 0} over GF(p^{2k}).
std::uint64_t count_roots_in_U(const std::array<std::int64_t, 3>& abc, std::int64_t p, std::int64_t k,
                               const Caps& caps = {});

/// For u in GF(q) (an element of a degree-k field): whether x^p - u x
/// permutes GF(q) by exhaustion, and whether u is not a (p-1)th power of a
/// nonzero element. The two should agree.
std::pair<bool, bool> artin_schreier_perm(const Element& u);

/// Same test over every u of GF(p^k); returns the number of disagreements.
std::uint64_t artin_schreier_sweep(std::int64_t p, std::int64_t k, const Caps& caps = {});

/// Tr(f(x)) = Tr(x)^p and the two expressions for N(f(x)).
IdentityReport verify_tf_nf(std::int64_t p, std::int64_t k, const Caps& caps = {},
                            kernels::Exec exec = kernels::Exec::kParallel);

struct ReductionTrace {
  Element c;  // f(x), outside GF(q), Tr(c) != 0
  Element x;
  Element r;  // N(x) / Tr(x)^2
  Element s;  // N(c) / Tr(c)^2
  Element t;  // r - 2
  Element lhs;  // (r-2)^4 (r+1)
  Element rhs;  // s + 1
  bool fourth_power_flag = false;  // 3/(s+1) is a fourth power in GF(q)
};

struct ReductionReport {
  FieldPtr field;  // keeps the elements in `sample` valid
  IdentityReport identities;
  std::uint64_t traces = 0;  // (x, c) pairs in the Tr(c) != 0 branch
  std::uint64_t fourth_power_hits = 0;
  std::uint64_t subfield_hits = 0;  // x outside GF(q) with f(x) in GF(q)
  std::vector<ReductionTrace> sample;  // first few traces in rank order of x
  std::string note;  // set for odd k
};

/// p = 5 only. For odd k the run still completes and counts where the
/// uniqueness argument breaks; `note` says so.
ReductionReport verify_reduction_chain(std::int64_t p, std::int64_t k, const Caps& caps = {},
                                       std::size_t sample_limit = 8);

struct CorollaryReport {
  std::string field;
  bool permutes_U = false;
  std::uint64_t denominator_zeros = 0;
  std::uint64_t agreement_checked = 0;
  std::uint64_t agreement_violations = 0;
};

/// (x + 1 - x^{p-1}) / (x^p + x^{p-1} - x) on U against
/// x^p (x^{p-1} + x^p - x)^{q-1}.
CorollaryReport verify_corollary_fraction(std::int64_t p, std::int64_t k, const Caps& caps = {});

}  // namespace niho

#endif  // NIHO_IDENTITIES_HPP_
