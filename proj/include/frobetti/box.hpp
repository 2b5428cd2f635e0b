/*
 * Copyright 2026 The frobetti Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Graded pieces of B = P/(x1^q, ..., xn^q) and of M = B/(f). Passing q > degree
// gives the full polynomial ring in that degree.

#include <cstdint>
#include <memory>
#include <vector>

#include "frobetti/ffla.hpp"
#include "frobetti/polyring.hpp"

namespace frobetti {

/// Monomials of one degree with every exponent below q, in descending graded-lex order.
class BoxSlice {
 public:
  static std::shared_ptr<const BoxSlice> get(int n, int q, int degree);

  int num_vars() const noexcept { return n_; }
  int q() const noexcept { return q_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return keys_.size(); }
  std::uint64_t key(std::size_t i) const { return keys_[i]; }
  Monomial monomial(std::size_t i) const { return Monomial::from_key(n_, keys_[i]); }
  /// Index of a key, or -1 when the monomial is outside the box.
  std::ptrdiff_t index_of(std::uint64_t key) const;

 private:
  BoxSlice(int n, int q, int degree);
  int n_, q_, degree_;
  std::vector<std::uint64_t> keys_;
};

/// Rank of multiplication by f from B_i to B_{i+d}.
std::size_t box_mult_rank(const HomogPoly& f, int q, int i);
/// Basis of ker(f : B_i -> B_{i+d}), as coefficient vectors over BoxSlice(n, q, i).
std::vector<std::vector<std::uint32_t>> box_mult_kernel(const HomogPoly& f, int q, int i);

/// Coordinates of f * u in the box slice of degree deg f + deg u (terms leaving the box drop).
void box_product(const HomogPoly& f, std::uint64_t u_key, const BoxSlice& target,
                 std::vector<std::pair<std::size_t, std::uint32_t>>& out);

/// One graded piece M_j of M = B/(f); f may be zero, giving B_j itself.
class QuotientSlice {
 public:
  QuotientSlice(const HomogPoly& f, int q, int j);

  int degree() const noexcept { return j_; }
  const BoxSlice& ambient() const { return *box_; }
  std::size_t dim() const noexcept { return standard_.size(); }
  /// Ambient indices of the standard monomials (non-pivot columns).
  const std::vector<std::size_t>& standard() const noexcept { return standard_; }
  /// Coordinates over the standard monomials of an ambient vector.
  std::vector<std::uint32_t> normal_form(std::span<const std::uint32_t> ambient) const;
  /// Normal form of the monomial with the given key (zero vector if outside the box).
  std::vector<std::uint32_t> normal_form_key(std::uint64_t key) const;
  /// Normal form of the ambient basis monomial idx, from a table of all of them built on
  /// first use (a reduced echelon form projected onto the standard monomials).
  std::span<const std::uint32_t> nf_of(std::size_t idx) const;

 private:
  Prime p_;
  int j_;
  std::shared_ptr<const BoxSlice> box_;
  std::unique_ptr<EchelonBasis> ech_;
  std::vector<std::size_t> standard_;
  std::vector<std::ptrdiff_t> std_pos_;
  mutable std::vector<std::uint32_t> table_;
};

}  // namespace frobetti
