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

// Sparse polynomials in any number of variables and matrices over them. Used where entries
// of different degrees meet (free-module maps, Pfaffians of generic matrices).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frobetti/ffla.hpp"
#include "frobetti/polyring.hpp"

namespace frobetti {

class SparsePoly {
 public:
  using Exps = std::vector<int>;

  SparsePoly(Prime p, int n);
  static SparsePoly constant(Prime p, int n, std::int64_t c);
  static SparsePoly variable(Prime p, int n, int i);
  static SparsePoly from_homog(const HomogPoly& f);

  Prime prime() const noexcept { return p_; }
  int num_vars() const noexcept { return n_; }
  /// Nonzero terms keyed by exponent vector (lexicographic map order).
  const std::map<Exps, std::uint32_t>& terms() const noexcept { return terms_; }
  void add_term(const Exps& e, std::int64_t c);
  std::uint32_t coeff(const Exps& e) const;

  bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest total degree of a term; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  /// Requires n <= 5 and every term of the given degree.
  HomogPoly to_homog(int degree) const;

  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator-() const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly scaled(std::uint32_t c) const;
  SparsePoly& operator+=(const SparsePoly& o);
  bool operator==(const SparsePoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

  std::string to_string() const;

 private:
  void check_compatible(const SparsePoly& o) const;

  Prime p_;
  int n_;
  std::map<Exps, std::uint32_t> terms_;
};

/// Dense matrix of sparse polynomials; rows index the target, columns the source.
class PolyMatrix {
 public:
  PolyMatrix(Prime p, int n, std::size_t rows, std::size_t cols);
  /// f times the k x k identity.
  static PolyMatrix scalar(const SparsePoly& f, std::size_t k);

  Prime prime() const noexcept { return p_; }
  int num_vars() const noexcept { return n_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  SparsePoly& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const SparsePoly& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix transpose() const;
  bool operator==(const PolyMatrix& o) const;
  bool is_zero() const;
  /// Largest entry degree, -1 when the matrix is zero.
  int max_degree() const;
  /// Whether every nonzero entry is homogeneous of degree k.
  bool entries_of_degree(int k) const;
  /// Scalar matrix when every entry is constant.
  FMatrix to_scalar() const;
  static PolyMatrix from_scalar(const FMatrix& m, int n);

  std::string to_string() const;

 private:
  Prime p_;
  int n_;
  std::size_t rows_, cols_;
  std::vector<SparsePoly> a_;
};

}  // namespace frobetti
