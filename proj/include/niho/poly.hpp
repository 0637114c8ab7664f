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

// Sparse polynomials whose exponents are symbolic in p, q, k, l (and t), the
// builders for the trinomial families studied here, and the Niho split
// poly(x) = x^r * h(x^{q-1}).

#ifndef NIHO_POLY_HPP_
#define NIHO_POLY_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "niho/expr.hpp"
#include "niho/field.hpp"

namespace niho {

struct Term {
  std::int64_t coeff;
  ExponentExpr exponent;
};

/// A term after binding: coeff in [1, p), exponent a concrete integer.
struct BoundTerm {
  std::uint64_t coeff;
  std::uint64_t exponent;
  friend bool operator==(const BoundTerm&, const BoundTerm&) = default;
};

class SparsePolynomial {
 public:
  SparsePolynomial() = default;
  explicit SparsePolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {}

  /// Text format: `x^((p-1)*q+1) + x^(p*q) - 2*x^(q+p-1)`; `1*` may be
  /// omitted, `x` alone means x^1 and a bare integer is a constant.
  static SparsePolynomial parse(std::string_view text);

  /// Evaluates exponents and reduces coefficients mod p. Equal exponents are
  /// merged (with a warning) and zero terms dropped; terms end up sorted by
  /// ascending exponent.
  SparsePolynomial bound(const Bindings& b) const;

  bool is_bound() const { return binding_.has_value(); }
  const Bindings& binding() const;
  std::uint64_t q() const { return static_cast<std::uint64_t>(binding().q()); }
  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<BoundTerm>& bound_terms() const;
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::string render() const;
  /// Integer exponents, coefficients as signed representatives.
  std::string render_bound() const;

 private:
  std::vector<Term> terms_;
  std::optional<Bindings> binding_;
  std::vector<BoundTerm> bound_;
  std::vector<std::string> warnings_;
};

struct Monomial {
  Element coeff;
  std::uint64_t exponent;
};

/// A polynomial with coefficients in a concrete field; canonical (sorted,
/// merged, no zero coefficients).
class FieldPolynomial {
 public:
  FieldPolynomial(const Field& field, std::vector<Monomial> terms);

  /// Requires poly bound with p = field.p() and 2k = field.degree().
  static FieldPolynomial from(const SparsePolynomial& poly, const Field& field);

  const Field& field() const { return *field_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool all_coefficients_in_prime_field() const;

  /// 0^0 = 1.
  Element operator()(const Element& x) const;
  std::string render() const;

 private:
  const Field* field_;
  std::vector<Monomial> terms_;
};

Element eval(const SparsePolynomial& poly, const Element& x);

SparsePolynomial build_f(std::int64_t p, std::int64_t k);
SparsePolynomial build_g(std::int64_t p, std::int64_t k, std::int64_t l);

/// x + lambda1 x^{s(q-1)+1} + lambda2 x^{t(q-1)+1}, exponents reduced into
/// [1, q^2-1]. Colliding exponents merge (warning recorded).
SparsePolynomial build_family(std::int64_t lambda1, std::int64_t s, std::int64_t lambda2, std::int64_t t,
                              std::int64_t p, std::int64_t k);

/// Exponent of a family term, s(q-1)+1 reduced into [1, q^2-1].
std::uint64_t family_exponent(std::int64_t s, std::uint64_t q);

struct NihoSplit {
  std::uint64_t r;
  std::vector<std::uint64_t> h_exponents;  // (e - r) / (q - 1), same order as input
};

/// Common residue r in [1, q-1] of every exponent; NotNihoShaped otherwise.
NihoSplit niho_split(const std::vector<std::uint64_t>& exponents, std::uint64_t q);

struct NihoForm {
  std::uint64_t r;
  SparsePolynomial h;
};

struct FieldNihoForm {
  std::uint64_t r;
  FieldPolynomial h;
};

NihoForm niho_decompose(const SparsePolynomial& poly);
FieldNihoForm niho_decompose(const FieldPolynomial& poly, unsigned k);

struct FractionalPoly {
  SparsePolynomial numerator;
  SparsePolynomial denominator;
};

/// numerator(u) / denominator(u); DenominatorZero when the latter vanishes.
Element frac_eval(const FractionalPoly& fp, const Element& u);

/// (x + 1 - x^{p-1}) / (x^p + x^{p-1} - x), bound at (p, k).
FractionalPoly corollary_fraction(std::int64_t p, std::int64_t k);

}  // namespace niho

#endif  // NIHO_POLY_HPP_
