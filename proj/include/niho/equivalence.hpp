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

// Niho exponents, multiplicative equivalence H(x) = a h(x^d), and the
// registry of known trinomials x + l1 x^{s(q-1)+1} + l2 x^{t(q-1)+1} over
// GF(3^{2k}) and GF(5^{2k}).

#ifndef NIHO_EQUIVALENCE_HPP_
#define NIHO_EQUIVALENCE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "niho/expr.hpp"
#include "niho/field.hpp"
#include "niho/kernels.hpp"
#include "niho/poly.hpp"

namespace niho {

/// Smallest j < k with d = p^j mod (q-1), if any. j = 0 means normalized.
std::optional<unsigned> is_niho(std::uint64_t d, std::uint64_t p, unsigned k);

/// d^{-1} mod (q^2 - 1), absent when gcd(d, q^2 - 1) > 1.
std::optional<std::uint64_t> niho_inverse(std::uint64_t d, std::uint64_t p, unsigned k);

struct EquivalenceWitness {
  Element a;
  std::uint64_t d = 1;
  std::uint64_t d_inverse = 1;
};

/// First (a, d) in ascending d with H(x) = a h(x^d) on the whole field. Both
/// inputs must permute the field (NotPermutation otherwise) and live in the
/// same field (MixedFields).
std::optional<EquivalenceWitness> equivalent_bruteforce(const FieldPolynomial& H, const FieldPolynomial& h,
                                                        const Caps& caps = {},
                                                        kernels::Exec exec = kernels::Exec::kParallel);

/// A concrete member of the family: integers after binding.
struct FamilyTuple {
  std::int64_t lambda1;
  std::int64_t s;
  std::int64_t lambda2;
  std::int64_t t;

  std::string render() const;
  friend bool operator==(const FamilyTuple&, const FamilyTuple&) = default;
};

struct Claim2Equivalent {
  int branch;  // 1 or 2
  std::uint64_t d;
  std::uint64_t d_inverse;
  FamilyTuple tuple;
  SparsePolynomial poly;  // lambda_i F(x^{d_i^{-1}}) in trinomial form
  bool verified = false;  // pointwise equal to lambda_i F(x^{d_i^{-1}})
};

struct Claim2Report {
  std::vector<Claim2Equivalent> equivalents;
  std::vector<std::string> skipped;  // branches with d_i not invertible
};

/// Equivalents of F = x + l1 x^{d1} + l2 x^{d2} obtained by substituting
/// x^{d_i^{-1}} and scaling by l_i.
Claim2Report claim2_equivalents(const FamilyTuple& F, std::int64_t p, std::int64_t k, const Caps& caps = {});

struct Proposition1Report {
  SparsePolynomial f1;
  SparsePolynomial f2;
  SparsePolynomial f3;
  std::uint64_t d1 = 0;
  std::uint64_t d2 = 0;
  std::uint64_t d1_inverse = 0;
  std::uint64_t d2_inverse = 0;
  bool f1_matches_f = false;   // f1(x) = f(x^{p^{k-1}})
  bool f2_matches_f1 = false;  // f2(x) = f1(x^{d1^{-1}})
  bool f3_matches_f1 = false;  // f3(x) = -f1(x^{d2^{-1}})
  bool ok() const { return f1_matches_f && f2_matches_f1 && f3_matches_f1; }
};

/// p in {3, 5}, k even (KParityError otherwise).
Proposition1Report proposition1_forms(std::int64_t p, std::int64_t k, const Caps& caps = {});

enum class KCondition { kAll, kEven, kOdd, kNot0Mod4, kNot2Mod4, kOddExp3 };

std::string_view to_string(KCondition c);

struct FamilyEntry {
  std::int64_t p;
  std::vector<std::int64_t> lambda1;  // one value, or both signs
  ExponentExpr s;
  std::int64_t lambda2;
  ExponentExpr t;
  KCondition k_condition;
  FractionalPoly fractional;  // unbound, in the symbols p, q, k and t
  std::string source;
  bool parametrized = false;  // s and t mention the parameter t

  std::string tuple_text() const;
};

/// The known rows: 8 for p = 3, 17 for p = 5. UnsupportedCharacteristic
/// otherwise.
const std::vector<FamilyEntry>& registry(std::int64_t p);

/// Does the row's k-condition hold? `param` is needed for kOddExp3.
bool admissible(const FamilyEntry& row, std::int64_t k, std::optional<std::int64_t> param = std::nullopt);

struct RowInstance {
  std::size_t row;  // index into registry(p)
  FamilyTuple tuple;
  std::optional<std::int64_t> param;
  Bindings binding;
  SparsePolynomial poly;
};

using ParamRange = std::pair<std::int64_t, std::int64_t>;

/// All instances of a row at (p, k): one per lambda1 sign and parameter
/// value (range defaults to [1, q]). Non-integral formulas throw
/// DivisibilityError.
std::vector<RowInstance> instantiate(std::int64_t p, std::size_t row, std::int64_t k,
                                     std::optional<ParamRange> range = std::nullopt);

struct InstanceCheck {
  RowInstance instance;
  bool permutes_field = false;
  bool fraction_permutes_U = false;
  bool fraction_matches = false;  // equals x (1 + l1 x^s + l2 x^t)^{q-1} on U
  // When the tabulated fraction disagrees: a power map u -> u^a on U and a
  // sign c = +-1 with x (1 + ...)^{q-1} = fraction(u^a)^c, if one exists.
  std::optional<std::pair<std::uint64_t, int>> conjugation;
  std::string note;
  bool ok() const { return permutes_field && fraction_permutes_U && fraction_matches; }
};

struct RowVerification {
  std::size_t row;
  std::optional<std::int64_t> k;  // empty when skipped
  std::vector<InstanceCheck> instances;
  std::vector<std::string> notes;
  bool ok() const;
};

/// Each row at its smallest admissible k with integral exponents and the
/// field within caps.
std::vector<RowVerification> registry_verify(std::int64_t p, const Caps& caps = {},
                                             std::optional<ParamRange> range = std::nullopt, std::int64_t max_k = 8);

RowVerification verify_row(std::int64_t p, std::size_t row, std::int64_t k, const Caps& caps = {},
                           std::optional<ParamRange> range = std::nullopt);

struct ClassifyMatch {
  RowInstance instance;
  EquivalenceWitness witness;
};

struct ClassifyReport {
  FieldPtr field;  // owns the field of every witness
  std::vector<ClassifyMatch> matches;
  std::uint64_t instances_tested = 0;
  std::vector<std::string> notes;
};

/// Brute-force equivalence of `candidate` (bound at (p, k)) against every
/// admissible registry instance at k.
ClassifyReport classify(const SparsePolynomial& candidate, const Caps& caps = {},
                        std::optional<ParamRange> range = std::nullopt);

}  // namespace niho

#endif  // NIHO_EQUIVALENCE_HPP_
