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

// Sweep kernels behind the permutation tests. Every kernel has two paths:
// Exec::kSerial is the plain reference (rank-order enumeration, generic
// evaluation with pow) kept for cross-checking; Exec::kParallel walks
// x = g^i with precomputed multiplication matrices and splits the walk across
// OpenMP threads. Both paths return the same booleans and counts.

#ifndef NIHO_KERNELS_HPP_
#define NIHO_KERNELS_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "niho/field.hpp"
#include "niho/poly.hpp"

namespace niho::kernels {

enum class Exec { kSerial, kParallel };

using ElementPair = std::pair<Element, Element>;

/// Evaluates sum_j c_j * x^{e_j} along x = base^i, i = start, start+1, ...
class MonomialWalk {
 public:
  struct Plan {
    const Field* field;
    Element base;
    std::vector<std::uint64_t> exponents;  // reduced mod p^m - 1
    std::vector<Element> coeffs;
    std::vector<LinearMap> steps;  // multiplication by base^{e_j}
  };

  static Plan plan(const FieldPolynomial& poly, const Element& base);

  MonomialWalk(const Plan& plan, std::uint64_t start);

  /// Current value into out[0..m).
  void value(std::uint32_t* out) const;
  void advance();

 private:
  const Plan* plan_;
  unsigned m_;
  std::vector<std::uint32_t> state_;
  std::vector<std::uint32_t> scratch_;
};

struct InjectivityResult {
  bool injective = true;
  /// First collision in the kernel's enumeration order; x1 precedes x2.
  std::optional<ElementPair> witness;
};

/// Is x -> poly(x) injective on the whole field? Serial order: by rank.
/// Parallel order: 0, g^0, g^1, ... for g the primitive element.
InjectivityResult field_injectivity(const FieldPolynomial& poly, Exec exec);

struct SubfieldSplitStats {
  bool subfield_bijective = true;   // poly permutes GF(q)
  std::uint64_t leaks = 0;          // x outside GF(q) with poly(x) in GF(q)
  bool complement_injective = true; // poly injective on GF(q^2) \ GF(q)
  std::optional<Element> subfield_escape;     // x in GF(q) with poly(x) outside
  std::optional<ElementPair> subfield_collision;
  std::optional<ElementPair> complement_collision;
};

/// One sweep computing the three quantities of the subfield split. With
/// track_injectivity false only `leaks` (and the GF(q) part) is computed.
SubfieldSplitStats subfield_split(const FieldPolynomial& poly, unsigned k, Exec exec, bool track_injectivity = true);

struct UnitCircleMapResult {
  bool injective = true;
  std::optional<Element> h_zero;  // some u in U with h(u) = 0
  std::optional<ElementPair> witness;
};

/// Injectivity of u -> u^r h(u)^{q-1} on U. A zero of h makes it fail.
UnitCircleMapResult unit_circle_map(std::uint64_t r, const FieldPolynomial& h, unsigned k, Exec exec,
                                    const Caps& caps = {});

/// Number of OpenMP threads the parallel paths will use (1 without OpenMP).
int max_threads();

}  // namespace niho::kernels

#endif  // NIHO_KERNELS_HPP_
