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

// Prime-power fields GF(p^m) as F_p[x]/(f) for the lexicographically least
// monic irreducible f, plus the relative q-Frobenius, trace and norm of
// GF(q^2)/GF(q) when m = 2k.

#ifndef NIHO_FIELD_HPP_
#define NIHO_FIELD_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "niho/error.hpp"

namespace niho {

inline constexpr std::size_t kMaxDegree = 32;
inline constexpr std::uint64_t kMaxCharacteristic = std::uint64_t{1} << 24;

/// Size limits for the different kinds of sweeps.
struct Caps {
  std::uint64_t field_order = std::uint64_t{1} << 48;  // construction
  std::uint64_t exhaustive = std::uint64_t{1} << 27;   // full-field sweeps, p^{2k}
  std::uint64_t unit_circle = std::uint64_t{1} << 24;  // q + 1
  std::uint64_t table_field = std::uint64_t{1} << 22;  // log/exp tables
  std::uint64_t equivalence_work = std::uint64_t{1} << 34;  // phi(q^2-1) * q^2
};

/// Barrett reduction by a fixed modulus below 2^24; inputs up to 2^64.
class ModP {
 public:
  ModP() = default;
  explicit ModP(std::uint64_t p) : p_(p), m_(~std::uint64_t{0} / p) {}

  std::uint64_t p() const { return p_; }

  std::uint32_t reduce(std::uint64_t x) const {
    const auto quot = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * m_) >> 64);
    std::uint64_t r = x - quot * p_;
    if (r >= p_) r -= p_;
    return static_cast<std::uint32_t>(r);
  }

 private:
  std::uint64_t p_ = 1;
  std::uint64_t m_ = 0;
};

using Coeffs = std::array<std::uint32_t, kMaxDegree>;

/// F_p-linear endomorphism of GF(p^m) in the polynomial basis.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(unsigned m, std::vector<std::uint32_t> entries) : m_(m), entries_(std::move(entries)) {}

  /// out = M * in; in and out must not alias.
  void apply(const ModP& mod, const std::uint32_t* in, std::uint32_t* out) const {
    const std::uint32_t* row = entries_.data();
    for (unsigned r = 0; r < m_; ++r, row += m_) {
      std::uint64_t acc = 0;
      for (unsigned c = 0; c < m_; ++c) acc += std::uint64_t{row[c]} * in[c];
      out[r] = mod.reduce(acc);
    }
  }

  bool empty() const { return entries_.empty(); }

 private:
  unsigned m_ = 0;
  std::vector<std::uint32_t> entries_;  // row-major
};

class Field;

/// A field value: m residues mod p, always fully reduced. Holds a non-owning
/// pointer to its field, which must outlive it.
class Element {
 public:
  Element() = default;

  const Field& field() const;
  bool has_field() const { return field_ != nullptr; }
  std::span<const std::uint32_t> coeffs() const;
  std::uint32_t operator[](std::size_t i) const { return c_[i]; }
  const std::uint32_t* data() const { return c_.data(); }

  bool is_zero() const;
  bool is_one() const;

  Element& operator+=(const Element& rhs);
  Element& operator-=(const Element& rhs);
  Element& operator*=(const Element& rhs);
  Element& operator/=(const Element& rhs);
  friend Element operator+(Element lhs, const Element& rhs) { return lhs += rhs; }
  friend Element operator-(Element lhs, const Element& rhs) { return lhs -= rhs; }
  friend Element operator*(Element lhs, const Element& rhs) { return lhs *= rhs; }
  friend Element operator/(Element lhs, const Element& rhs) { return lhs /= rhs; }
  Element operator-() const;

  /// 0^0 = 1; exponents are reduced mod p^m - 1 only for nonzero bases.
  Element pow(std::uint64_t exponent) const;
  Element inv() const;

  friend bool operator==(const Element& a, const Element& b);

  /// "[c0,c1,...]" low degree first.
  std::string to_string() const;

 private:
  friend class Field;
  const Field* field_ = nullptr;
  Coeffs c_{};
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Deterministic GF(p^m): same (p, m) always gives the same modulus.
FieldPtr make_field(std::uint64_t p, unsigned m, const Caps& caps = {});

class Field {
 public:
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  std::uint64_t p() const { return p_; }
  unsigned degree() const { return m_; }
  std::uint64_t order() const { return order_; }
  std::uint64_t mult_order() const { return order_ - 1; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const ModP& mod() const { return mod_; }

  /// `GF(p^m) mod [c0,c1,...,cm]`
  std::string describe() const;

  Element zero() const;
  Element one() const;
  Element from_int(std::int64_t v) const;
  Element from_coeffs(std::span<const std::int64_t> coeffs) const;
  /// Wraps m already-reduced residues.
  Element from_raw(const std::uint32_t* c) const;

  /// Rank of an element: its coefficient vector read as a base-p integer with
  /// c0 most significant, so rank order is the low-degree-first lex order.
  Element from_rank(std::uint64_t rank) const;
  std::uint64_t rank(const Element& x) const { return rank_raw(x.data()); }
  std::uint64_t rank_raw(const std::uint32_t* c) const {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < m_; ++i) r = r * p_ + c[i];
    return r;
  }

  /// The least element (by rank) of multiplicative order p^m - 1.
  const Element& primitive_element() const { return primitive_; }
  const std::vector<std::uint64_t>& mult_order_factors() const { return factors_; }
  std::uint64_t element_order(const Element& x) const;

  /// Matrix of y -> c*y.
  LinearMap multiplier(const Element& c) const;
  /// Matrix of y -> y^q for q = p^{m/2}; empty for odd m.
  const LinearMap& frobenius_half() const { return frob_half_; }

  void mul_raw(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const;
  void add_raw(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const {
    for (unsigned i = 0; i < m_; ++i) {
      std::uint32_t s = a[i] + b[i];
      out[i] = s >= p_ ? s - static_cast<std::uint32_t>(p_) : s;
    }
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

 private:
  friend FieldPtr make_field(std::uint64_t p, unsigned m, const Caps& caps);
  Field(std::uint64_t p, unsigned m);

  Element make() const;

  std::uint64_t p_;
  unsigned m_;
  std::uint64_t order_;
  ModP mod_;
  std::vector<std::uint32_t> modulus_;  // m + 1 coefficients, monic
  std::vector<std::uint32_t> neg_low_;  // -modulus[0..m)
  std::vector<std::uint64_t> factors_;  // primes dividing p^m - 1
  Element primitive_;
  LinearMap frob_half_;
};

/// Monic irreducible test over F_p by Rabin's criterion. coeffs low-first.
bool is_irreducible(std::span<const std::uint32_t> monic, std::uint64_t p);

// Relative structure of GF(q^2) over GF(q), q = p^k. All require m = 2k.
Element frobenius_q(const Element& x, unsigned k);
Element trace(const Element& x, unsigned k);
Element norm(const Element& x, unsigned k);
bool in_subfield(const Element& x, unsigned k);

/// Checks m = 2k and returns q = p^k.
std::uint64_t subfield_order(const Field& field, unsigned k);

/// The order-(q+1) subgroup U = {u : u^{q+1} = 1}, generated on demand as
/// powers of g^{q-1}.
class UnitCircle {
 public:
  UnitCircle(const Field& field, unsigned k, const Caps& caps = {});

  std::uint64_t size() const { return size_; }
  std::uint64_t q() const { return q_; }
  const Element& generator() const { return zeta_; }
  Element at(std::uint64_t i) const { return zeta_.pow(i); }
  std::vector<Element> materialize() const;

  /// Calls fn(index, u) for u = zeta^index in index order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    Element u = zeta_.field().one();
    for (std::uint64_t i = 0; i < size_; ++i) {
      fn(i, u);
      u *= zeta_;
    }
  }

 private:
  std::uint64_t q_;
  std::uint64_t size_;
  Element zeta_;
};

inline UnitCircle unit_circle(const Field& field, unsigned k, const Caps& caps = {}) {
  return UnitCircle(field, k, caps);
}

}  // namespace niho

#endif  // NIHO_FIELD_HPP_
