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

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frobetti/ffla.hpp"

namespace frobetti {

inline constexpr int kMaxVars = 5;
inline constexpr int kExpBits = 12;
inline constexpr int kMaxExponent = (1 << kExpBits) - 1;

/// Binomial coefficient C(n, k); zero when n < 0, k < 0 or k > n.
std::int64_t binom(std::int64_t n, std::int64_t k);

/// Monomial in at most five variables. The exponents are packed into one 64-bit key with the
/// first variable most significant, so comparing keys of equal degree is lexicographic order.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::initializer_list<int> exps);
  explicit Monomial(const std::vector<int>& exps);
  static Monomial from_key(int n, std::uint64_t key);
  static Monomial one(int n) { return from_key(n, 0); }
  static Monomial variable(int n, int i, int power = 1);

  int num_vars() const noexcept { return n_; }
  int degree() const noexcept { return deg_; }
  std::uint64_t key() const noexcept { return key_; }
  int operator[](int i) const noexcept {
    return static_cast<int>((key_ >> shift(i)) & kMaxExponent);
  }
  std::vector<int> exponents() const;

  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const noexcept;
  Monomial operator/(const Monomial& o) const;  // requires o | *this

  bool operator==(const Monomial& o) const noexcept { return n_ == o.n_ && key_ == o.key_; }
  /// Graded lexicographic order with x1 > x2 > ... > xn.
  std::strong_ordering operator<=>(const Monomial& o) const noexcept {
    if (deg_ != o.deg_) return deg_ <=> o.deg_;
    return key_ <=> o.key_;
  }

  static constexpr int shift(int i) { return (kMaxVars - 1 - i) * kExpBits; }

 private:
  std::uint64_t key_ = 0;
  int n_ = 0;
  int deg_ = 0;
};

/// All monomials of one degree, in descending graded-lex order (x1^a first).
class GradedBasis {
 public:
  static std::shared_ptr<const GradedBasis> get(int n, int degree);

  int num_vars() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return keys_.size(); }
  Monomial monomial(std::size_t i) const { return Monomial::from_key(n_, keys_[i]); }
  std::uint64_t key(std::size_t i) const { return keys_[i]; }
  const std::vector<std::uint64_t>& keys() const noexcept { return keys_; }
  /// Position of a monomial of this degree; closed form, no search.
  std::size_t rank(const Monomial& m) const;
  std::size_t rank_key(std::uint64_t key) const;

 private:
  GradedBasis(int n, int degree);
  int n_;
  int degree_;
  std::vector<std::uint64_t> keys_;
};

std::size_t basis_size(int n, int degree);

/// Homogeneous element of a graded piece: a coefficient vector over GradedBasis(n, degree).
/// The same layout serves polynomials in S and divided-power elements in D.
template <class Tag>
class GradedElement {
 public:
  GradedElement(Prime p, int n, int degree);
  GradedElement(Prime p, int n, int degree, std::vector<std::uint32_t> coeffs);
  static GradedElement from_terms(Prime p, int n, int degree,
                                  const std::vector<std::pair<Monomial, std::int64_t>>& terms);
  static GradedElement monomial(Prime p, const Monomial& m, std::uint32_t c = 1);

  Prime prime() const noexcept { return p_; }
  int num_vars() const noexcept { return n_; }
  int degree() const noexcept { return degree_; }
  const GradedBasis& basis() const { return *basis_; }
  const std::vector<std::uint32_t>& coeffs() const noexcept { return coeffs_; }
  std::vector<std::uint32_t>& coeffs() noexcept { return coeffs_; }

  std::uint32_t coeff(const Monomial& m) const;
  void set_coeff(const Monomial& m, std::int64_t c);
  bool is_zero() const noexcept;
  std::size_t num_terms() const noexcept;
  /// Nonzero terms in basis order.
  std::vector<std::pair<Monomial, std::uint32_t>> terms() const;
  /// First nonzero term in basis order (the grlex leading term). Requires a nonzero element.
  std::pair<Monomial, std::uint32_t> leading_term() const;

  GradedElement operator+(const GradedElement& o) const;
  GradedElement operator-(const GradedElement& o) const;
  GradedElement operator-() const;
  GradedElement scaled(std::uint32_t c) const;
  bool operator==(const GradedElement& o) const noexcept;

 private:
  void check_compatible(const GradedElement& o) const;

  Prime p_;
  int n_;
  int degree_;
  std::shared_ptr<const GradedBasis> basis_;
  std::vector<std::uint32_t> coeffs_;
};

struct PolyTag {};
struct DividedTag {};
using HomogPoly = GradedElement<PolyTag>;
using DividedElem = GradedElement<DividedTag>;

extern template class GradedElement<PolyTag>;
extern template class GradedElement<DividedTag>;

/// Contraction x^a . x^(b) = x^(b-a) when a <= b componentwise, else 0.
DividedElem contract(const Monomial& m, const DividedElem& g);
/// Extends contraction linearly in the polynomial argument.
DividedElem poly_apply(const HomogPoly& f, const DividedElem& g);
HomogPoly poly_mul(const HomogPoly& a, const HomogPoly& b);
/// Product of a polynomial and a monomial.
HomogPoly poly_mul(const HomogPoly& a, const Monomial& m);

/// Variable names: x, y, z for n <= 3, otherwise x1 ... xn.
std::string variable_name(int n, int i);
std::string format_monomial(const Monomial& m);
/// Coefficients are printed as signed representatives in (-p/2, p/2].
std::string format_poly(const HomogPoly& f);
/// Parses e.g. "x^3*y - x*y^3 + 2*z^4". Accepts x,y,z (n <= 3) and x1..xn.
/// Throws InvalidArgument when the text is malformed or not homogeneous.
HomogPoly parse_poly(std::string_view text, Prime p, int n);

}  // namespace frobetti
