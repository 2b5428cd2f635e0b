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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "frobetti/error.hpp"

namespace frobetti {

/// A prime modulus p < 2^31 together with field operations on residues in [0, p).
class Prime {
 public:
  explicit Prime(std::uint64_t p);

  std::uint32_t value() const noexcept { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  /// Inverse of a nonzero residue; throws InvalidArgument on zero.
  std::uint32_t inv(std::uint32_t a) const;
  /// Residue of an arbitrary signed integer.
  std::uint32_t reduce(std::int64_t a) const noexcept;
  /// Signed representative in (-p/2, p/2].
  std::int64_t symmetric(std::uint32_t a) const noexcept;

  bool operator==(const Prime& o) const noexcept { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Dense row-major matrix over GF(p).
class FMatrix {
 public:
  FMatrix(Prime p, std::size_t rows, std::size_t cols);
  static FMatrix identity(Prime p, std::size_t n);
  static FMatrix from_rows(Prime p, std::size_t cols,
                           const std::vector<std::vector<std::int64_t>>& rows);

  Prime prime() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = p_.reduce(v); }

  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  void append_row(std::span<const std::uint32_t> values);

  FMatrix transpose() const;
  FMatrix operator*(const FMatrix& rhs) const;
  bool is_zero() const noexcept;
  bool operator==(const FMatrix& o) const noexcept;

 private:
  Prime p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

struct RrefResult {
  FMatrix reduced;
  std::size_t rank;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form. Pivots are 1, pivot columns are cleared above and below.
RrefResult rref(const FMatrix& m);
std::size_t rank(const FMatrix& m);
/// Right null space {x : m x = 0}; one row per free column, in ascending free-column order,
/// with a 1 in that free column.
FMatrix kernel_basis(const FMatrix& m);
/// Whether v lies in the span of the rows of m.
bool row_space_membership(const FMatrix& m, std::span<const std::uint32_t> v);

/// Incremental echelon basis for vectors of a fixed length. Each stored row keeps only the
/// window from its leading column to its last nonzero entry, so banded inputs stay cheap.
class EchelonBasis {
 public:
  EchelonBasis(Prime p, std::size_t ncols);

  Prime prime() const noexcept { return p_; }
  std::size_t ncols() const noexcept { return ncols_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Inserts the vector whose support lies in [offset, offset + values.size()).
  /// Returns true when it was independent of the rows already stored.
  bool insert(std::size_t offset, std::span<const std::uint32_t> values);
  bool insert(std::span<const std::uint32_t> dense) { return insert(0, dense); }

  /// Normal form: the input reduced so that it vanishes on every pivot column.
  std::vector<std::uint32_t> reduce(std::span<const std::uint32_t> dense) const;
  bool contains(std::span<const std::uint32_t> dense) const;

  bool is_pivot(std::size_t col) const { return pivot_at_[col] >= 0; }
  std::vector<std::size_t> pivot_columns() const;
  /// Stored row with leading column col (leading entry 1); empty when col is not a pivot.
  std::span<const std::uint32_t> pivot_row(std::size_t col) const;
  std::vector<std::size_t> free_columns() const;

  /// Basis of {x : r . x = 0 for every stored row r}, one vector per free column
  /// (ascending), each with a 1 in its free column.
  std::vector<std::vector<std::uint32_t>> kernel_vectors() const;

 private:
  struct Row {
    std::size_t lead;
    std::vector<std::uint32_t> values;
  };

  void reduce_range(std::uint32_t* v, std::size_t lo, std::size_t hi) const;

  Prime p_;
  std::size_t ncols_;
  std::uint64_t capacity_;  // lazy axpy steps before a row must be reduced
  std::vector<Row> rows_;
  std::vector<std::int32_t> pivot_at_;
  std::vector<std::uint32_t> work_;
};

namespace detail {

/// Number of unreduced updates dst += c * src (c, src < p) that fit in 32 bits.
std::uint64_t lazy_capacity(std::uint32_t p) noexcept;

inline void axpy_raw(std::uint32_t* dst, const std::uint32_t* src, std::size_t len,
                     std::uint32_t c) noexcept {
  for (std::size_t k = 0; k < len; ++k) dst[k] += c * src[k];
}

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t len, std::uint32_t c,
              std::uint32_t p) noexcept;

}  // namespace detail

}  // namespace frobetti
