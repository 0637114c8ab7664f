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

// Three independent permutation tests for polynomials over GF(q^2): the full
// occupancy sweep, the unit-circle criterion for x^r h(x^{q-1}), and the
// split into GF(q) and its complement.

#ifndef NIHO_PERM_HPP_
#define NIHO_PERM_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "niho/field.hpp"
#include "niho/kernels.hpp"
#include "niho/poly.hpp"

namespace niho {

using kernels::Exec;

enum class Method { kExhaustive, kZieve, kSubfieldSplit };

std::string_view to_string(Method m);

struct PermutationVerdict {
  bool is_permutation = false;
  Method method = Method::kExhaustive;
  /// Two distinct inputs with equal images. For kZieve they are points of U
  /// colliding under u^r h(u)^{q-1}.
  std::optional<std::pair<Element, Element>> witness;
  std::string note;
};

/// Occupancy table over the whole field. SizeCapExceeded past caps.exhaustive.
PermutationVerdict is_permutation_exhaustive(const FieldPolynomial& poly, const Caps& caps = {},
                                             Exec exec = Exec::kParallel);

/// gcd(r, q-1) = 1 and u -> u^r h(u)^{q-1} injective on U. h lives in
/// GF(q^2) with q = p^k.
PermutationVerdict zieve_check(std::uint64_t r, const FieldPolynomial& h, unsigned k, const Caps& caps = {},
                               Exec exec = Exec::kParallel);

/// #{x outside GF(q) : poly(x) in GF(q)}.
std::uint64_t count_image_in_subfield(const FieldPolynomial& poly, unsigned k, const Caps& caps = {},
                                      Exec exec = Exec::kParallel);

/// Permutes GF(q), no leaks into GF(q), injective on the complement.
/// Meaningful only when the coefficients lie in GF(q).
PermutationVerdict subfield_split_check(const FieldPolynomial& poly, unsigned k, const Caps& caps = {},
                                        Exec exec = Exec::kParallel);

struct MethodRun {
  Method method;
  std::optional<PermutationVerdict> verdict;  // empty when skipped
  std::string skipped;                        // reason, e.g. "skipped: over cap"
  double elapsed_ms = 0;
};

struct CrossReport {
  std::vector<MethodRun> runs;  // exhaustive, zieve, subfield_split
  /// Common verdict of the methods that ran.
  std::optional<bool> is_permutation;
};

/// Thrown by cross_validate when two methods return different booleans.
class MethodDisagreement : public Error {
 public:
  explicit MethodDisagreement(CrossReport report);
  const CrossReport& report() const { return report_; }

 private:
  CrossReport report_;
};

/// Runs every applicable method. Throws MethodDisagreement on a mismatch and
/// InvalidArgument when no method applies.
CrossReport cross_validate(const FieldPolynomial& poly, unsigned k, const Caps& caps = {},
                           Exec exec = Exec::kParallel);

struct Table1Row {
  std::int64_t p;
  std::int64_t k;
  bool expected;  // published verdict for f over GF(p^{2k})
};

/// The 13 published (p, k) rows for p in {7, 11, 13}.
const std::vector<Table1Row>& table1_reference();

}  // namespace niho

#endif  // NIHO_PERM_HPP_
