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

#include "niho/field.hpp"

#include <algorithm>
#include <sstream>

#include "niho/numtheory.hpp"

namespace niho {
namespace {

// Dense polynomials over F_p used only for the irreducibility test.
using DensePoly = std::vector<std::uint64_t>;

void trim(DensePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod f, f monic.
DensePoly poly_mod(DensePoly a, const DensePoly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  for (std::size_t i = a.size(); i-- > m;) {
    const std::uint64_t c = a[i] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= m; ++j) {
      a[i - m + j] = (a[i - m + j] + (p - c) * f[j]) % p;
    }
  }
  a.resize(std::min(a.size(), m));
  for (auto& c : a) c %= p;
  trim(a);
  return a;
}

DensePoly poly_mulmod(const DensePoly& a, const DensePoly& b, const DensePoly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  DensePoly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(prod), f, p);
}

DensePoly poly_powmod(DensePoly base, std::uint64_t e, const DensePoly& f, std::uint64_t p) {
  DensePoly result{1};
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

DensePoly poly_gcd(DensePoly a, DensePoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    // a mod b with b made monic
    const std::uint64_t lead_inv = pow_mod(b.back(), p - 2, p);
    DensePoly monic = b;
    for (auto& c : monic) c = c * lead_inv % p;
    a = poly_mod(std::move(a), monic, p);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

bool is_irreducible(std::span<const std::uint32_t> monic, std::uint64_t p) {
  const std::size_t m = monic.size() - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  if (monic[0] == 0) return false;
  const DensePoly f(monic.begin(), monic.end());
  // frob[i] = x^{p^i} mod f
  std::vector<DensePoly> frob(m + 1);
  frob[0] = poly_mod(DensePoly{0, 1}, f, p);
  for (std::size_t i = 1; i <= m; ++i) frob[i] = poly_powmod(frob[i - 1], p, f, p);
  if (frob[m] != frob[0]) return false;
  for (std::uint64_t ell : prime_factors(m)) {
    DensePoly diff = frob[m / ell];
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    const DensePoly g = poly_gcd(f, diff, p);
    if (g.size() != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Element

const Field& Element::field() const {
  if (!field_) throw Error(ErrorCode::kInvalidArgument, "element has no field");
  return *field_;
}

std::span<const std::uint32_t> Element::coeffs() const {
  return {c_.data(), field_ ? field_->degree() : 0u};
}

bool Element::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint32_t c) { return c == 0; });
}

bool Element::is_one() const {
  if (c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t c) { return c == 0; });
}

namespace {

const Field& common_field(const Element& a, const Element& b) {
  const Field& fa = a.field();
  const Field& fb = b.field();
  if (&fa != &fb && !(fa == fb)) {
    throw Error(ErrorCode::kMixedFields, fa.describe() + " vs " + fb.describe());
  }
  return fa;
}

}  // namespace

Element& Element::operator+=(const Element& rhs) {
  common_field(*this, rhs).add_raw(c_.data(), rhs.c_.data(), c_.data());
  return *this;
}

Element& Element::operator-=(const Element& rhs) { return *this += -rhs; }

Element& Element::operator*=(const Element& rhs) {
  const Field& f = common_field(*this, rhs);
  Coeffs out{};
  f.mul_raw(c_.data(), rhs.c_.data(), out.data());
  c_ = out;
  return *this;
}

Element& Element::operator/=(const Element& rhs) {
  common_field(*this, rhs);
  return *this *= rhs.inv();
}

Element Element::operator-() const {
  const auto p = static_cast<std::uint32_t>(field().p());
  Element out = *this;
  for (unsigned i = 0; i < field_->degree(); ++i) out.c_[i] = c_[i] == 0 ? 0 : p - c_[i];
  return out;
}

Element Element::pow(std::uint64_t exponent) const {
  const Field& f = field();
  if (is_zero()) return exponent == 0 ? f.one() : f.zero();
  exponent %= f.mult_order();
  Element result = f.one();
  Element base = *this;
  while (exponent) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

Element Element::inv() const {
  if (is_zero()) throw Error(ErrorCode::kDivisionByZero, "inverse of zero");
  return pow(field().mult_order() - 1);
}

bool operator==(const Element& a, const Element& b) {
  if (a.field_ != b.field_) {
    if (!a.field_ || !b.field_ || !(*a.field_ == *b.field_)) return false;
  }
  return a.c_ == b.c_;
}

std::string Element::to_string() const {
  std::ostringstream out;
  out << '[';
  for (unsigned i = 0; i < (field_ ? field_->degree() : 0u); ++i) {
    if (i) out << ',';
    out << c_[i];
  }
  out << ']';
  return out.str();
}

// ---------------------------------------------------------------------------
// Field

FieldPtr make_field(std::uint64_t p, unsigned m, const Caps& caps) {
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "extension degree must be positive");
  if (p >= kMaxCharacteristic || m > kMaxDegree) {
    throw Error(ErrorCode::kSizeCapExceeded,
                "GF(" + std::to_string(p) + "^" + std::to_string(m) + ") outside supported range");
  }
  std::uint64_t order = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (order > caps.field_order / p) {
      throw Error(ErrorCode::kSizeCapExceeded, "GF(" + std::to_string(p) + "^" + std::to_string(m) +
                                                   ") exceeds field cap " + std::to_string(caps.field_order));
    }
    order *= p;
  }
  return FieldPtr(new Field(p, m));
}

Field::Field(std::uint64_t p, unsigned m) : p_(p), m_(m), order_(checked_pow(p, m)), mod_(p) {
  // Least monic irreducible, coefficients compared c0 first. For m > 1 every
  // candidate with c0 = 0 is divisible by x, so the scan starts at c0 = 1.
  std::vector<std::uint32_t> cand(m + 1, 0);
  cand[m] = 1;
  for (std::uint64_t idx = m > 1 ? order_ / p : 0; idx < order_; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned i = m; i-- > 0;) {
      cand[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (is_irreducible(cand, p)) break;
  }
  modulus_ = cand;
  neg_low_.resize(m);
  for (unsigned j = 0; j < m; ++j) {
    neg_low_[j] = modulus_[j] == 0 ? 0 : static_cast<std::uint32_t>(p - modulus_[j]);
  }

  factors_ = prime_factors(order_ - 1);
  for (std::uint64_t r = 1; r < order_; ++r) {
    Element g = from_rank(r);
    if (element_order(g) == order_ - 1) {
      primitive_ = g;
      break;
    }
  }

  if (m % 2 == 0) {
    const std::uint64_t q = checked_pow(p, m / 2);
    std::vector<std::uint32_t> entries(std::size_t{m} * m);
    Element basis = one();
    Element x = zero();
    if (m > 1) x.c_[1] = 1;
    for (unsigned col = 0; col < m; ++col) {
      const Element image = basis.pow(q);
      for (unsigned row = 0; row < m; ++row) entries[std::size_t{row} * m + col] = image.c_[row];
      basis *= x;
    }
    frob_half_ = LinearMap(m, std::move(entries));
  }
}

std::string Field::describe() const {
  std::ostringstream out;
  out << "GF(" << p_ << '^' << m_ << ") mod [";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) out << ',';
    out << modulus_[i];
  }
  out << ']';
  return out.str();
}

Element Field::make() const {
  Element e;
  e.field_ = this;
  return e;
}

Element Field::zero() const { return make(); }

Element Field::one() const {
  Element e = make();
  e.c_[0] = 1;
  return e;
}

Element Field::from_int(std::int64_t v) const {
  Element e = make();
  e.c_[0] = static_cast<std::uint32_t>(reduce_signed(v, p_));
  return e;
}

Element Field::from_coeffs(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > m_) {
    throw Error(ErrorCode::kInvalidArgument, "too many coefficients for " + describe());
  }
  Element e = make();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    e.c_[i] = static_cast<std::uint32_t>(reduce_signed(coeffs[i], p_));
  }
  return e;
}

Element Field::from_raw(const std::uint32_t* c) const {
  Element e = make();
  std::copy(c, c + m_, e.c_.begin());
  return e;
}

Element Field::from_rank(std::uint64_t rank) const {
  if (rank >= order_) throw Error(ErrorCode::kInvalidArgument, "rank out of range");
  Element e = make();
  for (unsigned i = m_; i-- > 0;) {
    e.c_[i] = static_cast<std::uint32_t>(rank % p_);
    rank /= p_;
  }
  return e;
}

std::uint64_t Field::element_order(const Element& x) const {
  if (x.is_zero()) throw Error(ErrorCode::kDivisionByZero, "order of zero");
  std::uint64_t ord = order_ - 1;
  for (std::uint64_t ell : factors_) {
    while (ord % ell == 0 && x.pow(ord / ell).is_one()) ord /= ell;
  }
  return ord;
}

LinearMap Field::multiplier(const Element& c) const {
  std::vector<std::uint32_t> entries(std::size_t{m_} * m_);
  Element basis = one();
  Element x = zero();
  if (m_ > 1) x.c_[1] = 1;
  for (unsigned col = 0; col < m_; ++col) {
    const Element image = c * basis;
    for (unsigned row = 0; row < m_; ++row) entries[std::size_t{row} * m_ + col] = image.c_[row];
    if (m_ > 1) basis *= x;
  }
  return LinearMap(m_, std::move(entries));
}

void Field::mul_raw(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const {
  std::uint64_t acc[2 * kMaxDegree - 1];
  const unsigned width = 2 * m_ - 1;
  for (unsigned i = 0; i < width; ++i) acc[i] = 0;
  for (unsigned i = 0; i < m_; ++i) {
    const std::uint64_t ai = a[i];
    if (ai == 0) continue;
    for (unsigned j = 0; j < m_; ++j) acc[i + j] += ai * b[j];
  }
  for (unsigned i = width; i-- > m_;) {
    const std::uint64_t c = mod_.reduce(acc[i]);
    if (c == 0) continue;
    const unsigned base = i - m_;
    for (unsigned j = 0; j < m_; ++j) acc[base + j] += c * neg_low_[j];
  }
  for (unsigned i = 0; i < m_; ++i) out[i] = mod_.reduce(acc[i]);
}

// ---------------------------------------------------------------------------
// GF(q^2) / GF(q)

std::uint64_t subfield_order(const Field& field, unsigned k) {
  if (k == 0 || field.degree() != 2 * k) {
    throw Error(ErrorCode::kDegreeMismatch, field.describe() + " is not of degree 2*" + std::to_string(k));
  }
  return checked_pow(field.p(), k);
}

Element frobenius_q(const Element& x, unsigned k) {
  const Field& f = x.field();
  subfield_order(f, k);
  Coeffs buf{};
  f.frobenius_half().apply(f.mod(), x.data(), buf.data());
  return f.from_raw(buf.data());
}

Element trace(const Element& x, unsigned k) { return x + frobenius_q(x, k); }

Element norm(const Element& x, unsigned k) { return x * frobenius_q(x, k); }

bool in_subfield(const Element& x, unsigned k) { return frobenius_q(x, k) == x; }

UnitCircle::UnitCircle(const Field& field, unsigned k, const Caps& caps) {
  q_ = subfield_order(field, k);
  size_ = q_ + 1;
  if (size_ > caps.unit_circle) {
    throw Error(ErrorCode::kSizeCapExceeded,
                "|U| = " + std::to_string(size_) + " exceeds cap " + std::to_string(caps.unit_circle));
  }
  zeta_ = field.primitive_element().pow(q_ - 1);
}

std::vector<Element> UnitCircle::materialize() const {
  std::vector<Element> out;
  out.reserve(size_);
  for_each([&](std::uint64_t, const Element& u) { out.push_back(u); });
  return out;
}

}  // namespace niho
