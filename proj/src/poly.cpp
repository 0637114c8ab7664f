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

#include "niho/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "niho/error.hpp"
#include "niho/numtheory.hpp"

namespace niho {
namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  SparsePolynomial parse() {
    std::vector<Term> terms;
    skip_ws();
    if (pos_ == text_.size()) throw ParseError(pos_, "empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      std::int64_t sign = 1;
      if (accept('+')) {
      } else if (accept('-')) {
        sign = -1;
      } else if (!first) {
        throw ParseError(pos_, "expected '+' or '-' between terms");
      }
      terms.push_back(term(sign));
      first = false;
      skip_ws();
      if (pos_ == text_.size()) break;
    }
    return SparsePolynomial(std::move(terms));
  }

 private:
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

  bool at_digit() const { return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])); }

  std::int64_t integer() {
    std::int64_t v = 0;
    while (at_digit()) {
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, text_[pos_] - '0', &v)) {
        throw ParseError(pos_, "integer too large");
      }
      ++pos_;
    }
    return v;
  }

  Term term(std::int64_t sign) {
    skip_ws();
    std::int64_t coeff = 1;
    bool has_coeff = false;
    if (at_digit()) {
      coeff = integer();
      has_coeff = true;
      if (accept('*')) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != 'x') throw ParseError(pos_, "expected 'x' after '*'");
      }
    }
    if (!accept('x')) {
      if (!has_coeff) {
        throw ParseError(pos_, pos_ < text_.size() ? std::string("unexpected '") + text_[pos_] + "'"
                                                   : std::string("unexpected end of polynomial"));
      }
      return Term{sign * coeff, ExponentExpr::literal(0)};
    }
    if (!accept('^')) return Term{sign * coeff, ExponentExpr::literal(1)};
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "missing exponent");
    if (text_[pos_] == '(') {
      const std::size_t open = pos_;
      int depth = 0;
      std::size_t close = open;
      for (; close < text_.size(); ++close) {
        if (text_[close] == '(') ++depth;
        if (text_[close] == ')' && --depth == 0) break;
      }
      if (close >= text_.size()) throw ParseError(open, "unbalanced '('");
      try {
        ExponentExpr e = ExponentExpr::parse(text_.substr(open + 1, close - open - 1));
        pos_ = close + 1;
        return Term{sign * coeff, std::move(e)};
      } catch (const ParseError& err) {
        throw ParseError(open + 1 + err.position(), "bad exponent expression");
      }
    }
    if (at_digit()) return Term{sign * coeff, ExponentExpr::literal(integer())};
    const char c = text_[pos_];
    if (c == 'p' || c == 'q' || c == 'k' || c == 'l' || c == 't') {
      ++pos_;
      return Term{sign * coeff, ExponentExpr::symbol(c)};
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "' in exponent");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_term(std::ostringstream& out, bool first, std::int64_t coeff, const std::string& exponent) {
  const bool negative = coeff < 0;
  const std::int64_t mag = negative ? -coeff : coeff;
  if (first) {
    if (negative) out << '-';
  } else {
    out << (negative ? " - " : " + ");
  }
  if (mag != 1) out << mag << '*';
  out << "x^(" << exponent << ')';
}

std::int64_t signed_rep(std::uint64_t c, std::uint64_t p) {
  return c <= p / 2 ? static_cast<std::int64_t>(c) : static_cast<std::int64_t>(c) - static_cast<std::int64_t>(p);
}

void require_prime_k(std::int64_t p, std::int64_t k) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  }
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be positive");
}

}  // namespace

SparsePolynomial SparsePolynomial::parse(std::string_view text) { return PolyParser(text).parse(); }

SparsePolynomial SparsePolynomial::bound(const Bindings& b) const {
  if (b.p < 2) throw Error(ErrorCode::kInvalidArgument, "characteristic must be at least 2");
  const auto p = static_cast<std::uint64_t>(b.p);
  std::map<std::uint64_t, std::pair<std::uint64_t, int>> merged;
  for (const Term& t : terms_) {
    const std::uint64_t e = t.exponent.evaluate_exponent(b);
    auto& slot = merged[e];
    slot.first = (slot.first + reduce_signed(t.coeff, p)) % p;
    ++slot.second;
  }
  SparsePolynomial out(*this);
  out.binding_ = b;
  out.bound_.clear();
  out.warnings_.clear();
  for (const auto& [e, slot] : merged) {
    if (slot.second > 1) {
      out.warnings_.push_back("exponent " + std::to_string(e) + " occurs in " + std::to_string(slot.second) +
                              " terms; coefficients merged" + (slot.first == 0 ? " to zero" : ""));
    }
    if (slot.first != 0) out.bound_.push_back(BoundTerm{slot.first, e});
  }
  return out;
}

const Bindings& SparsePolynomial::binding() const {
  if (!binding_) throw Error(ErrorCode::kUnboundPolynomial, render());
  return *binding_;
}

const std::vector<BoundTerm>& SparsePolynomial::bound_terms() const {
  if (!binding_) throw Error(ErrorCode::kUnboundPolynomial, render());
  return bound_;
}

std::string SparsePolynomial::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    render_term(out, i == 0, terms_[i].coeff, terms_[i].exponent.render());
  }
  return out.str();
}

std::string SparsePolynomial::render_bound() const {
  const auto& bt = bound_terms();
  if (bt.empty()) return "0";
  std::ostringstream out;
  const auto p = static_cast<std::uint64_t>(binding_->p);
  for (std::size_t i = 0; i < bt.size(); ++i) {
    render_term(out, i == 0, signed_rep(bt[i].coeff, p), std::to_string(bt[i].exponent));
  }
  return out.str();
}

// ---------------------------------------------------------------------------

FieldPolynomial::FieldPolynomial(const Field& field, std::vector<Monomial> terms) : field_(&field) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& a, const Monomial& b) { return a.exponent < b.exponent; });
  for (Monomial& t : terms) {
    if (!(t.coeff.field() == field)) throw Error(ErrorCode::kMixedFields, "coefficient from another field");
    if (!terms_.empty() && terms_.back().exponent == t.exponent) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(Monomial{field.zero() + t.coeff, t.exponent});
    }
  }
  std::erase_if(terms_, [](const Monomial& t) { return t.coeff.is_zero(); });
}

FieldPolynomial FieldPolynomial::from(const SparsePolynomial& poly, const Field& field) {
  const Bindings& b = poly.binding();
  if (static_cast<std::uint64_t>(b.p) != field.p() || static_cast<std::uint64_t>(2 * b.k) != field.degree()) {
    throw Error(ErrorCode::kMixedFields, "polynomial bound at p=" + std::to_string(b.p) + ", k=" +
                                             std::to_string(b.k) + " evaluated over " + field.describe());
  }
  std::vector<Monomial> terms;
  for (const BoundTerm& t : poly.bound_terms()) {
    terms.push_back(Monomial{field.from_int(static_cast<std::int64_t>(t.coeff)), t.exponent});
  }
  return FieldPolynomial(field, std::move(terms));
}

bool FieldPolynomial::all_coefficients_in_prime_field() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Monomial& t) {
    const auto c = t.coeff.coeffs();
    return std::all_of(c.begin() + 1, c.end(), [](std::uint32_t v) { return v == 0; });
  });
}

Element FieldPolynomial::operator()(const Element& x) const {
  Element acc = field_->zero();
  for (const Monomial& t : terms_) acc += t.coeff * x.pow(t.exponent);
  return acc;
}

std::string FieldPolynomial::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Monomial& t = terms_[i];
    if (i) out << " + ";
    const auto c = t.coeff.coeffs();
    const bool prime = std::all_of(c.begin() + 1, c.end(), [](std::uint32_t v) { return v == 0; });
    if (prime) {
      out << signed_rep(c[0], field_->p());
    } else {
      out << t.coeff.to_string();
    }
    out << "*x^(" << t.exponent << ')';
  }
  return out.str();
}

Element eval(const SparsePolynomial& poly, const Element& x) {
  return FieldPolynomial::from(poly, x.field())(x);
}

// ---------------------------------------------------------------------------

SparsePolynomial build_f(std::int64_t p, std::int64_t k) {
  require_prime_k(p, k);
  return SparsePolynomial({{1, ExponentExpr::parse("(p-1)*q+1")},
                           {1, ExponentExpr::parse("p*q")},
                           {-1, ExponentExpr::parse("q+p-1")}})
      .bound({p, k, 0, std::nullopt});
}

SparsePolynomial build_g(std::int64_t p, std::int64_t k, std::int64_t l) {
  require_prime_k(p, k);
  if (l < 0) throw Error(ErrorCode::kInvalidArgument, "l must be nonnegative");
  return SparsePolynomial({{1, ExponentExpr::parse("(q+1)*l+(p-1)*q+1")},
                           {1, ExponentExpr::parse("(q+1)*l+p*q")},
                           {-1, ExponentExpr::parse("(q+1)*l+q+p-1")}})
      .bound({p, k, l, std::nullopt});
}

std::uint64_t family_exponent(std::int64_t s, std::uint64_t q) {
  const std::uint64_t n = q * q - 1;
  const __int128 v = static_cast<__int128>(s) * static_cast<__int128>(q - 1) + 1;
  __int128 r = v % static_cast<__int128>(n);
  if (r < 0) r += n;
  return r == 0 ? n : static_cast<std::uint64_t>(r);
}

SparsePolynomial build_family(std::int64_t lambda1, std::int64_t s, std::int64_t lambda2, std::int64_t t,
                              std::int64_t p, std::int64_t k) {
  require_prime_k(p, k);
  const auto q = static_cast<std::uint64_t>(Bindings{p, k}.q());
  auto lit = [](std::uint64_t e) { return ExponentExpr::literal(static_cast<std::int64_t>(e)); };
  return SparsePolynomial({{1, lit(1)},
                           {lambda1, lit(family_exponent(s, q))},
                           {lambda2, lit(family_exponent(t, q))}})
      .bound({p, k, 0, std::nullopt});
}

NihoSplit niho_split(const std::vector<std::uint64_t>& exponents, std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::kInvalidArgument, "q must be at least 2");
  const std::uint64_t mod = q - 1;
  NihoSplit out{0, {}};
  if (exponents.empty()) {
    out.r = 1;
    return out;
  }
  std::uint64_t residue = exponents.front() % mod;
  for (std::uint64_t e : exponents) {
    if (e % mod != residue) {
      throw Error(ErrorCode::kNotNihoShaped, "exponents " + std::to_string(exponents.front()) + " and " +
                                                 std::to_string(e) + " differ mod " + std::to_string(mod));
    }
  }
  out.r = residue == 0 ? mod : residue;
  for (std::uint64_t e : exponents) {
    if (e < out.r) {
      throw Error(ErrorCode::kNotNihoShaped, "exponent " + std::to_string(e) + " below r = " + std::to_string(out.r));
    }
    out.h_exponents.push_back((e - out.r) / mod);
  }
  return out;
}

NihoForm niho_decompose(const SparsePolynomial& poly) {
  const auto& bt = poly.bound_terms();
  std::vector<std::uint64_t> exps;
  for (const BoundTerm& t : bt) exps.push_back(t.exponent);
  const NihoSplit split = niho_split(exps, poly.q());
  const auto p = static_cast<std::uint64_t>(poly.binding().p);
  std::vector<Term> h;
  for (std::size_t i = 0; i < bt.size(); ++i) {
    h.push_back(Term{signed_rep(bt[i].coeff, p), ExponentExpr::literal(static_cast<std::int64_t>(split.h_exponents[i]))});
  }
  return NihoForm{split.r, SparsePolynomial(std::move(h)).bound(poly.binding())};
}

FieldNihoForm niho_decompose(const FieldPolynomial& poly, unsigned k) {
  const std::uint64_t q = subfield_order(poly.field(), k);
  std::vector<std::uint64_t> exps;
  for (const Monomial& t : poly.terms()) exps.push_back(t.exponent);
  const NihoSplit split = niho_split(exps, q);
  std::vector<Monomial> h;
  for (std::size_t i = 0; i < poly.terms().size(); ++i) {
    h.push_back(Monomial{poly.terms()[i].coeff, split.h_exponents[i]});
  }
  return FieldNihoForm{split.r, FieldPolynomial(poly.field(), std::move(h))};
}

Element frac_eval(const FractionalPoly& fp, const Element& u) {
  const Element den = eval(fp.denominator, u);
  if (den.is_zero()) throw Error(ErrorCode::kDenominatorZero, "denominator vanishes at " + u.to_string());
  return eval(fp.numerator, u) / den;
}

FractionalPoly corollary_fraction(std::int64_t p, std::int64_t k) {
  require_prime_k(p, k);
  const Bindings b{p, k, 0, std::nullopt};
  return FractionalPoly{SparsePolynomial::parse("x + 1 - x^(p-1)").bound(b),
                        SparsePolynomial::parse("x^(p) + x^(p-1) - x").bound(b)};
}

}  // namespace niho
