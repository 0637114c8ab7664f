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

#include "niho/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "niho/numtheory.hpp"

namespace niho::kernels {
namespace {

class Bitset {
 public:
  explicit Bitset(std::uint64_t size) : words_((size + 63) / 64, 0) {}

  /// Atomically sets the bit and reports whether it was already set.
  bool test_and_set(std::uint64_t i) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    std::atomic_ref<std::uint64_t> word(words_[i >> 6]);
    return (word.fetch_or(mask, std::memory_order_relaxed) & mask) != 0;
  }

  void clear() { std::fill(words_.begin(), words_.end(), 0); }

 private:
  std::vector<std::uint64_t> words_;
};

std::int64_t chunk_count(std::uint64_t n) {
  return static_cast<std::int64_t>(std::clamp<std::uint64_t>(n / 32768, 1, 16384));
}

std::uint64_t chunk_begin(std::int64_t c, std::int64_t chunks, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(n) * static_cast<std::uint64_t>(c) /
                                    static_cast<std::uint64_t>(chunks));
}

bool fixed_by(const LinearMap& map, const ModP& mod, const std::uint32_t* v, unsigned m) {
  Coeffs image{};
  map.apply(mod, v, image.data());
  return std::equal(v, v + m, image.data());
}

// First repeated value along an enumeration: returns (index of earlier,
// index of later). `values` must be in enumeration order.
std::optional<std::pair<std::uint64_t, std::uint64_t>> first_duplicate(const std::vector<std::uint64_t>& values) {
  if (values.size() < 2) return std::nullopt;
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return values[a] != values[b] ? values[a] < values[b] : a < b;
  });
  std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (values[order[i]] != values[order[i - 1]]) continue;
    // order[i-1] is the smallest index of its group only if it starts it
    std::size_t start = i - 1;
    while (start > 0 && values[order[start - 1]] == values[order[i]]) --start;
    const std::pair<std::uint64_t, std::uint64_t> cand{order[start], order[start + 1]};
    if (!best || cand.second < best->second) best = cand;
    while (i + 1 < order.size() && values[order[i + 1]] == values[order[i]]) ++i;
  }
  return best;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---------------------------------------------------------------------------

MonomialWalk::Plan MonomialWalk::plan(const FieldPolynomial& poly, const Element& base) {
  const Field& f = poly.field();
  Plan plan{&f, base, {}, {}, {}};
  for (const Monomial& t : poly.terms()) {
    const std::uint64_t e = t.exponent % f.mult_order();
    plan.exponents.push_back(e);
    plan.coeffs.push_back(t.coeff);
    plan.steps.push_back(f.multiplier(base.pow(e)));
  }
  return plan;
}

MonomialWalk::MonomialWalk(const Plan& plan, std::uint64_t start)
    : plan_(&plan), m_(plan.field->degree()), state_(plan.exponents.size() * m_), scratch_(m_) {
  const std::uint64_t n = plan.field->mult_order();
  for (std::size_t j = 0; j < plan.exponents.size(); ++j) {
    const Element s = plan.coeffs[j] * plan.base.pow(mul_mod(start % n, plan.exponents[j], n));
    std::copy(s.data(), s.data() + m_, state_.begin() + static_cast<std::ptrdiff_t>(j * m_));
  }
}

void MonomialWalk::value(std::uint32_t* out) const {
  std::fill(out, out + m_, 0u);
  for (std::size_t j = 0; j < plan_->exponents.size(); ++j) {
    plan_->field->add_raw(out, state_.data() + j * m_, out);
  }
}

void MonomialWalk::advance() {
  for (std::size_t j = 0; j < plan_->exponents.size(); ++j) {
    std::uint32_t* s = state_.data() + j * m_;
    plan_->steps[j].apply(plan_->field->mod(), s, scratch_.data());
    std::copy(scratch_.begin(), scratch_.end(), s);
  }
}

// ---------------------------------------------------------------------------

namespace {

InjectivityResult field_injectivity_serial(const FieldPolynomial& poly) {
  const Field& f = poly.field();
  Bitset seen(f.order());
  for (std::uint64_t r = 0; r < f.order(); ++r) {
    const Element x = f.from_rank(r);
    const std::uint64_t image = f.rank(poly(x));
    if (!seen.test_and_set(image)) continue;
    for (std::uint64_t r1 = 0; r1 < r; ++r1) {
      const Element x1 = f.from_rank(r1);
      if (f.rank(poly(x1)) == image) return {false, ElementPair{x1, x}};
    }
  }
  return {true, std::nullopt};
}

// Serial re-walk in the parallel path's order; finds the first collision.
// `include` filters walk positions (all of them for the full field).
template <class Include>
std::optional<ElementPair> first_walk_collision(const FieldPolynomial& poly, Bitset& seen, bool with_zero,
                                                Include include) {
  const Field& f = poly.field();
  const Element& g = f.primitive_element();
  const auto plan = MonomialWalk::plan(poly, g);
  seen.clear();
  std::optional<std::uint64_t> zero_image;
  if (with_zero) {
    zero_image = f.rank(poly(f.zero()));
    seen.test_and_set(*zero_image);
  }
  Coeffs buf{};
  MonomialWalk walk(plan, 0);
  for (std::uint64_t i = 0; i < f.mult_order(); ++i, walk.advance()) {
    if (!include(i)) continue;
    walk.value(buf.data());
    const std::uint64_t image = f.rank_raw(buf.data());
    if (!seen.test_and_set(image)) continue;
    const Element x2 = g.pow(i);
    if (zero_image && *zero_image == image) return ElementPair{f.zero(), x2};
    MonomialWalk again(plan, 0);
    for (std::uint64_t j = 0; j < i; ++j, again.advance()) {
      if (!include(j)) continue;
      again.value(buf.data());
      if (f.rank_raw(buf.data()) == image) return ElementPair{g.pow(j), x2};
    }
  }
  return std::nullopt;
}

InjectivityResult field_injectivity_parallel(const FieldPolynomial& poly) {
  const Field& f = poly.field();
  const std::uint64_t n = f.mult_order();
  Bitset seen(f.order());
  seen.test_and_set(f.rank(poly(f.zero())));
  const auto plan = MonomialWalk::plan(poly, f.primitive_element());
  std::atomic<bool> collided{false};
  const std::int64_t chunks = chunk_count(n);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    if (collided.load(std::memory_order_relaxed)) continue;
    const std::uint64_t lo = chunk_begin(c, chunks, n);
    const std::uint64_t hi = chunk_begin(c + 1, chunks, n);
    MonomialWalk walk(plan, lo);
    Coeffs buf{};
    for (std::uint64_t i = lo; i < hi; ++i) {
      walk.value(buf.data());
      if (seen.test_and_set(f.rank_raw(buf.data()))) {
        collided.store(true, std::memory_order_relaxed);
        break;
      }
      if ((i & 4095) == 0 && collided.load(std::memory_order_relaxed)) break;
      walk.advance();
    }
  }
  if (!collided.load()) return {true, std::nullopt};
  return {false, first_walk_collision(poly, seen, true, [](std::uint64_t) { return true; })};
}

}  // namespace

InjectivityResult field_injectivity(const FieldPolynomial& poly, Exec exec) {
  return exec == Exec::kSerial ? field_injectivity_serial(poly) : field_injectivity_parallel(poly);
}

// ---------------------------------------------------------------------------

namespace {

// The GF(q) half of the split: images of 0, g^{q+1}, g^{2(q+1)}, ... in that
// order (serial) or rank order (reference), checked for escape and collision.
void subfield_part(const std::vector<Element>& domain, const FieldPolynomial& poly, unsigned k,
                   SubfieldSplitStats& out) {
  const Field& f = poly.field();
  std::vector<std::uint64_t> images;
  images.reserve(domain.size());
  for (const Element& x : domain) {
    const Element y = poly(x);
    if (!out.subfield_escape && !in_subfield(y, k)) {
      out.subfield_escape = x;
      out.subfield_bijective = false;
    }
    images.push_back(f.rank(y));
  }
  if (auto dup = first_duplicate(images)) {
    out.subfield_bijective = false;
    out.subfield_collision = ElementPair{domain[dup->first], domain[dup->second]};
  }
}

SubfieldSplitStats subfield_split_serial(const FieldPolynomial& poly, unsigned k, bool track) {
  const Field& f = poly.field();
  subfield_order(f, k);
  SubfieldSplitStats out;
  std::vector<Element> subfield;
  Bitset seen(track ? f.order() : 0);
  for (std::uint64_t r = 0; r < f.order(); ++r) {
    const Element x = f.from_rank(r);
    if (in_subfield(x, k)) {
      subfield.push_back(x);
      continue;
    }
    const Element y = poly(x);
    if (in_subfield(y, k)) ++out.leaks;
    if (!track) continue;
    if (seen.test_and_set(f.rank(y)) && out.complement_injective) {
      out.complement_injective = false;
      for (std::uint64_t r1 = 0; r1 < r; ++r1) {
        const Element x1 = f.from_rank(r1);
        if (!in_subfield(x1, k) && poly(x1) == y) {
          out.complement_collision = ElementPair{x1, x};
          break;
        }
      }
    }
  }
  subfield_part(subfield, poly, k, out);
  return out;
}

SubfieldSplitStats subfield_split_parallel(const FieldPolynomial& poly, unsigned k, bool track) {
  const Field& f = poly.field();
  const std::uint64_t q = subfield_order(f, k);
  const std::uint64_t n = f.mult_order();
  const unsigned m = f.degree();
  SubfieldSplitStats out;

  std::vector<Element> subfield{f.zero()};
  const Element gq = f.primitive_element().pow(q + 1);
  Element x = f.one();
  for (std::uint64_t j = 0; j + 1 < q; ++j, x *= gq) subfield.push_back(x);
  subfield_part(subfield, poly, k, out);

  Bitset seen(track ? f.order() : 0);
  const auto plan = MonomialWalk::plan(poly, f.primitive_element());
  const LinearMap& frob = f.frobenius_half();
  std::uint64_t leaks = 0;
  bool collided = false;
  const std::int64_t chunks = chunk_count(n);

#pragma omp parallel for schedule(dynamic, 1) reduction(+ : leaks) reduction(|| : collided)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = chunk_begin(c, chunks, n);
    const std::uint64_t hi = chunk_begin(c + 1, chunks, n);
    MonomialWalk walk(plan, lo);
    Coeffs buf{};
    for (std::uint64_t i = lo; i < hi; ++i, walk.advance()) {
      if (i % (q + 1) == 0) continue;
      walk.value(buf.data());
      if (fixed_by(frob, f.mod(), buf.data(), m)) ++leaks;
      if (track && seen.test_and_set(f.rank_raw(buf.data()))) collided = true;
    }
  }
  out.leaks = leaks;
  if (collided) {
    out.complement_injective = false;
    out.complement_collision =
        first_walk_collision(poly, seen, false, [q](std::uint64_t i) { return i % (q + 1) != 0; });
  }
  return out;
}

}  // namespace

SubfieldSplitStats subfield_split(const FieldPolynomial& poly, unsigned k, Exec exec, bool track_injectivity) {
  return exec == Exec::kSerial ? subfield_split_serial(poly, k, track_injectivity)
                               : subfield_split_parallel(poly, k, track_injectivity);
}

// ---------------------------------------------------------------------------

namespace {

UnitCircleMapResult finish_unit_circle(const UnitCircle& circle, std::optional<std::uint64_t> zero_index,
                                       const std::vector<std::uint64_t>& images) {
  UnitCircleMapResult out;
  if (zero_index) {
    out.injective = false;
    out.h_zero = circle.at(*zero_index);
    return out;
  }
  if (auto dup = first_duplicate(images)) {
    out.injective = false;
    out.witness = ElementPair{circle.at(dup->first), circle.at(dup->second)};
  }
  return out;
}

}  // namespace

UnitCircleMapResult unit_circle_map(std::uint64_t r, const FieldPolynomial& h, unsigned k, Exec exec,
                                    const Caps& caps) {
  const Field& f = h.field();
  const UnitCircle circle(f, k, caps);
  const std::uint64_t q = circle.q();
  const std::uint64_t size = circle.size();
  std::vector<std::uint64_t> images(size);

  if (exec == Exec::kSerial) {
    std::optional<std::uint64_t> zero_index;
    for (std::uint64_t i = 0; i < size; ++i) {
      const Element u = circle.at(i);
      const Element hv = h(u);
      if (hv.is_zero()) {
        zero_index = i;
        break;
      }
      images[i] = f.rank(u.pow(r) * hv.pow(q - 1));
    }
    return finish_unit_circle(circle, zero_index, images);
  }

  const auto h_plan = MonomialWalk::plan(h, circle.generator());
  const auto r_plan = MonomialWalk::plan(FieldPolynomial(f, {Monomial{f.one(), r}}), circle.generator());
  std::uint64_t zero_index = std::numeric_limits<std::uint64_t>::max();
  const std::int64_t chunks = chunk_count(size);

#pragma omp parallel for schedule(dynamic, 1) reduction(min : zero_index)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t lo = chunk_begin(c, chunks, size);
    const std::uint64_t hi = chunk_begin(c + 1, chunks, size);
    MonomialWalk hw(h_plan, lo);
    MonomialWalk rw(r_plan, lo);
    Coeffs hbuf{};
    Coeffs rbuf{};
    for (std::uint64_t i = lo; i < hi; ++i, hw.advance(), rw.advance()) {
      hw.value(hbuf.data());
      const Element hv = f.from_raw(hbuf.data());
      if (hv.is_zero()) {
        zero_index = std::min(zero_index, i);
        break;
      }
      rw.value(rbuf.data());
      images[i] = f.rank(f.from_raw(rbuf.data()) * hv.pow(q - 1));
    }
  }
  return finish_unit_circle(circle, zero_index == std::numeric_limits<std::uint64_t>::max()
                                        ? std::nullopt
                                        : std::optional<std::uint64_t>(zero_index),
                            images);
}

}  // namespace niho::kernels
