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

// Integer exponent expressions over the symbols p, q, k, l and t.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | factor
//   factor := atom ('^' atom)?
//   atom   := integer | 'p' | 'q' | 'k' | 'l' | 't' | '(' expr ')'
//
// q is always derived as p^k. '/' is exact integer division; a nonzero
// remainder raises DivisibilityError.

#ifndef NIHO_EXPR_HPP_
#define NIHO_EXPR_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace niho {

struct Bindings {
  std::int64_t p = 0;
  std::int64_t k = 0;
  std::int64_t l = 0;
  std::optional<std::int64_t> t;

  std::int64_t q() const;
  friend bool operator==(const Bindings&, const Bindings&) = default;
};

class ExponentExpr {
 public:
  enum class Kind { kLiteral, kSymbol, kNeg, kAdd, kSub, kMul, kDiv, kPow };

  ExponentExpr() : ExponentExpr(literal(0)) {}

  /// Throws ParseError carrying the offending byte offset.
  static ExponentExpr parse(std::string_view text);
  static ExponentExpr literal(std::int64_t value);
  static ExponentExpr symbol(char name);

  /// Signed value; overflow and inexact division throw.
  std::int64_t evaluate(const Bindings& b) const;
  /// As evaluate, but NegativeExponent when the value is below zero.
  std::uint64_t evaluate_exponent(const Bindings& b) const;

  /// Minimal-parenthesis rendering; parse(render()) reproduces the tree.
  std::string render() const;

  Kind kind() const;
  friend bool operator==(const ExponentExpr& a, const ExponentExpr& b);

  struct Node;

 private:
  explicit ExponentExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  friend class ExprParser;
  friend ExponentExpr make_node(Kind, ExponentExpr, ExponentExpr);
  friend ExponentExpr make_unary(Kind, ExponentExpr);

  std::shared_ptr<const Node> root_;
};

ExponentExpr operator+(ExponentExpr a, ExponentExpr b);
ExponentExpr operator-(ExponentExpr a, ExponentExpr b);
ExponentExpr operator*(ExponentExpr a, ExponentExpr b);
ExponentExpr operator-(ExponentExpr a);

}  // namespace niho

#endif  // NIHO_EXPR_HPP_
