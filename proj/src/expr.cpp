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

#include "niho/expr.hpp"

#include <cctype>

#include "niho/error.hpp"
#include "niho/numtheory.hpp"

namespace niho {

struct ExponentExpr::Node {
  Kind kind;
  std::int64_t value = 0;  // literal
  char name = 0;           // symbol
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExponentExpr::Node>;
using Kind = ExponentExpr::Kind;

void check(bool overflowed) {
  if (overflowed) throw Error(ErrorCode::kOverflow, "exponent expression overflows 64 bits");
}

std::int64_t eval(const ExponentExpr::Node& n, const Bindings& b) {
  std::int64_t out = 0;
  switch (n.kind) {
    case Kind::kLiteral:
      return n.value;
    case Kind::kSymbol:
      switch (n.name) {
        case 'p': return b.p;
        case 'k': return b.k;
        case 'l': return b.l;
        case 'q': return b.q();
        case 't':
          if (!b.t) throw Error(ErrorCode::kUnboundSymbol, "parameter t is not bound");
          return *b.t;
      }
      throw Error(ErrorCode::kUnboundSymbol, std::string("unknown symbol ") + n.name);
    case Kind::kNeg:
      check(__builtin_sub_overflow(std::int64_t{0}, eval(*n.lhs, b), &out));
      return out;
    case Kind::kAdd:
      check(__builtin_add_overflow(eval(*n.lhs, b), eval(*n.rhs, b), &out));
      return out;
    case Kind::kSub:
      check(__builtin_sub_overflow(eval(*n.lhs, b), eval(*n.rhs, b), &out));
      return out;
    case Kind::kMul:
      check(__builtin_mul_overflow(eval(*n.lhs, b), eval(*n.rhs, b), &out));
      return out;
    case Kind::kDiv: {
      const std::int64_t num = eval(*n.lhs, b);
      const std::int64_t den = eval(*n.rhs, b);
      if (den == 0) throw Error(ErrorCode::kDivisionByZero, "division by zero in exponent");
      if (num % den != 0) {
        throw Error(ErrorCode::kDivisibilityError,
                    std::to_string(num) + " is not divisible by " + std::to_string(den));
      }
      return num / den;
    }
    case Kind::kPow: {
      const std::int64_t base = eval(*n.lhs, b);
      const std::int64_t e = eval(*n.rhs, b);
      if (e < 0) throw Error(ErrorCode::kNegativeExponent, "negative power in exponent expression");
      if (base == 0 || base == 1) return e == 0 ? 1 : base;
      if (base == -1) return e % 2 == 0 ? 1 : -1;
      std::int64_t acc = 1;
      for (std::int64_t i = 0; i < e; ++i) check(__builtin_mul_overflow(acc, base, &acc));
      return acc;
    }
  }
  return out;
}

int precedence(Kind kind) {
  switch (kind) {
    case Kind::kAdd:
    case Kind::kSub: return 1;
    case Kind::kMul:
    case Kind::kDiv: return 2;
    case Kind::kNeg: return 3;
    case Kind::kPow: return 4;
    default: return 5;
  }
}

std::string render(const ExponentExpr::Node& n, int required);

std::string render_child(const NodePtr& child, int required) { return render(*child, required); }

std::string render(const ExponentExpr::Node& n, int required) {
  std::string s;
  switch (n.kind) {
    case Kind::kLiteral: s = std::to_string(n.value); break;
    case Kind::kSymbol: s = std::string(1, n.name); break;
    case Kind::kNeg: s = "-" + render_child(n.lhs, 3); break;
    case Kind::kAdd: s = render_child(n.lhs, 1) + "+" + render_child(n.rhs, 2); break;
    case Kind::kSub: s = render_child(n.lhs, 1) + "-" + render_child(n.rhs, 2); break;
    case Kind::kMul: s = render_child(n.lhs, 2) + "*" + render_child(n.rhs, 3); break;
    case Kind::kDiv: s = render_child(n.lhs, 2) + "/" + render_child(n.rhs, 3); break;
    case Kind::kPow: s = render_child(n.lhs, 5) + "^" + render_child(n.rhs, 5); break;
  }
  return precedence(n.kind) < required ? "(" + s + ")" : s;
}

bool equal(const ExponentExpr::Node& a, const ExponentExpr::Node& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::kLiteral: return a.value == b.value;
    case Kind::kSymbol: return a.name == b.name;
    case Kind::kNeg: return equal(*a.lhs, *b.lhs);
    default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
}

}  // namespace

// Recursive-descent parser over the grammar in expr.hpp.
class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    if (text_.find_first_not_of(" \t") == std::string_view::npos) {
      throw ParseError(0, "empty expression");
    }
    NodePtr n = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
    return n;
  }

 private:
  static NodePtr node(Kind kind, NodePtr lhs, NodePtr rhs = nullptr) {
    return std::make_shared<const ExponentExpr::Node>(
        ExponentExpr::Node{kind, 0, 0, std::move(lhs), std::move(rhs)});
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = node(Kind::kAdd, lhs, term());
      } else if (accept('-')) {
        lhs = node(Kind::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = node(Kind::kMul, lhs, unary());
      } else if (accept('/')) {
        lhs = node(Kind::kDiv, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return node(Kind::kNeg, unary());
    return factor();
  }

  NodePtr factor() {
    NodePtr base = atom();
    if (accept('^')) return node(Kind::kPow, base, atom());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        if (__builtin_mul_overflow(value, 10, &value) ||
            __builtin_add_overflow(value, text_[pos_] - '0', &value)) {
          throw ParseError(pos_, "integer literal too large");
        }
        ++pos_;
      }
      auto n = std::make_shared<ExponentExpr::Node>(ExponentExpr::Node{Kind::kLiteral});
      n->value = value;
      return n;
    }
    if (c == 'p' || c == 'q' || c == 'k' || c == 'l' || c == 't') {
      ++pos_;
      auto n = std::make_shared<ExponentExpr::Node>(ExponentExpr::Node{Kind::kSymbol});
      n->name = c;
      return n;
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return inner;
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::int64_t Bindings::q() const {
  if (p < 0 || k < 0) throw Error(ErrorCode::kInvalidArgument, "p and k must be nonnegative");
  return static_cast<std::int64_t>(checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(k)));
}

ExponentExpr ExponentExpr::parse(std::string_view text) { return ExponentExpr(ExprParser(text).parse_all()); }

ExponentExpr ExponentExpr::literal(std::int64_t value) {
  if (value < 0) {
    auto inner = std::make_shared<Node>(Node{Kind::kLiteral});
    inner->value = -value;
    return ExponentExpr(std::make_shared<const Node>(Node{Kind::kNeg, 0, 0, std::move(inner), nullptr}));
  }
  auto n = std::make_shared<Node>(Node{Kind::kLiteral});
  n->value = value;
  return ExponentExpr(std::move(n));
}

ExponentExpr ExponentExpr::symbol(char name) {
  auto n = std::make_shared<Node>(Node{Kind::kSymbol});
  n->name = name;
  return ExponentExpr(std::move(n));
}

std::int64_t ExponentExpr::evaluate(const Bindings& b) const { return eval(*root_, b); }

std::uint64_t ExponentExpr::evaluate_exponent(const Bindings& b) const {
  const std::int64_t v = evaluate(b);
  if (v < 0) {
    throw Error(ErrorCode::kNegativeExponent, render() + " evaluates to " + std::to_string(v));
  }
  return static_cast<std::uint64_t>(v);
}

std::string ExponentExpr::render() const { return niho::render(*root_, 0); }

ExponentExpr::Kind ExponentExpr::kind() const { return root_->kind; }

bool operator==(const ExponentExpr& a, const ExponentExpr& b) { return equal(*a.root_, *b.root_); }

ExponentExpr make_node(ExponentExpr::Kind kind, ExponentExpr a, ExponentExpr b) {
  return ExponentExpr(std::make_shared<const ExponentExpr::Node>(
      ExponentExpr::Node{kind, 0, 0, std::move(a.root_), std::move(b.root_)}));
}

ExponentExpr make_unary(ExponentExpr::Kind kind, ExponentExpr a) {
  return ExponentExpr(
      std::make_shared<const ExponentExpr::Node>(ExponentExpr::Node{kind, 0, 0, std::move(a.root_), nullptr}));
}

ExponentExpr operator+(ExponentExpr a, ExponentExpr b) {
  return make_node(ExponentExpr::Kind::kAdd, std::move(a), std::move(b));
}
ExponentExpr operator-(ExponentExpr a, ExponentExpr b) {
  return make_node(ExponentExpr::Kind::kSub, std::move(a), std::move(b));
}
ExponentExpr operator*(ExponentExpr a, ExponentExpr b) {
  return make_node(ExponentExpr::Kind::kMul, std::move(a), std::move(b));
}
ExponentExpr operator-(ExponentExpr a) { return make_unary(ExponentExpr::Kind::kNeg, std::move(a)); }

}  // namespace niho
