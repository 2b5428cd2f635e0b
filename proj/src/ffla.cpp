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

#include "frobetti/ffla.hpp"

#include <algorithm>
#include <string>

namespace frobetti {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
  if (p >= (1ULL << 31) || !is_prime(p)) {
    throw PreconditionError("not a prime below 2^31: " + std::to_string(p));
  }
}

std::uint32_t Prime::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint64_t r = 1 % p_, b = a % p_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t Prime::inv(std::uint32_t a) const {
  a %= p_;
  if (a == 0) throw InvalidArgument("inverse of zero");
  std::int64_t t = 0, nt = 1, r = p_, nr = a;
  while (nr) {
    std::int64_t q = r / nr;
    std::swap(t, nt);
    nt -= q * t;
    std::swap(r, nr);
    nr -= q * r;
  }
  return reduce(t);
}

std::uint32_t Prime::reduce(std::int64_t a) const noexcept {
  std::int64_t r = a % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::int64_t Prime::symmetric(std::uint32_t a) const noexcept {
  return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
}

namespace detail {

std::uint64_t lazy_capacity(std::uint32_t p) noexcept {
  std::uint64_t m = static_cast<std::uint64_t>(p - 1) * (p - 1);
  if (m == 0) return ~0ULL;
  std::uint64_t room = 0xFFFFFFFFULL - (p - 1);
  return m > room ? 0 : room / m;
}

void axpy_mod(std::uint32_t* dst, const std::uint32_t* src, std::size_t len, std::uint32_t c,
              std::uint32_t p) noexcept {
  for (std::size_t k = 0; k < len; ++k) {
    dst[k] = static_cast<std::uint32_t>((dst[k] + static_cast<std::uint64_t>(c) * src[k]) % p);
  }
}

}  // namespace detail

FMatrix::FMatrix(Prime p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FMatrix FMatrix::identity(Prime p, std::size_t n) {
  FMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

FMatrix FMatrix::from_rows(Prime p, std::size_t cols,
                           const std::vector<std::vector<std::int64_t>>& rows) {
  FMatrix m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void FMatrix::append_row(std::span<const std::uint32_t> values) {
  if (values.size() != cols_) throw InvalidArgument("row length mismatch");
  for (auto v : values) data_.push_back(v % p_.value());
  ++rows_;
}

FMatrix FMatrix::transpose() const {
  FMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  return t;
}

FMatrix FMatrix::operator*(const FMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InvalidArgument("matrix product dimension mismatch");
  if (!(p_ == rhs.p_)) throw InvalidArgument("matrix product over different primes");
  FMatrix out(p_, rows_, rhs.cols_);
  const std::uint32_t p = p_.value();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint32_t* dst = out.data_.data() + r * rhs.cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint32_t c = data_[r * cols_ + k];
      if (c) detail::axpy_mod(dst, rhs.data_.data() + k * rhs.cols_, rhs.cols_, c, p);
    }
  }
  return out;
}

bool FMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == 0; });
}

bool FMatrix::operator==(const FMatrix& o) const noexcept {
  return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

// Gauss elimination with lazy reduction. full = true clears above pivots too.
RrefResult eliminate(const FMatrix& m, bool full) {
  FMatrix a = m;
  const Prime pr = m.prime();
  const std::uint32_t p = pr.value();
  const std::uint64_t cap = detail::lazy_capacity(p);
  const std::size_t R = a.rows(), C = a.cols();
  std::vector<std::uint64_t> load(R, 0);
  auto reduce_row = [&](std::size_t r) {
    for (auto& v : a.row(r)) v %= p;
    load[r] = 0;
  };
  std::vector<std::size_t> pivots;
  std::size_t rk = 0;
  for (std::size_t col = 0; col < C && rk < R; ++col) {
    std::size_t piv = R;
    for (std::size_t r = rk; r < R; ++r) {
      std::uint32_t& v = a.row(r)[col];
      v %= p;
      if (v) {
        piv = r;
        break;
      }
    }
    if (piv == R) continue;
    if (piv != rk) {
      std::swap_ranges(a.row(piv).begin(), a.row(piv).end(), a.row(rk).begin());
      std::swap(load[piv], load[rk]);
    }
    reduce_row(rk);
    std::uint32_t inv = pr.inv(a.row(rk)[col]);
    for (auto& v : a.row(rk)) v = pr.mul(v, inv);
    const std::uint32_t* src = a.row(rk).data() + col;
    const std::size_t len = C - col;
    for (std::size_t r = full ? 0 : rk + 1; r < R; ++r) {
      if (r == rk) continue;
      std::uint32_t c = a.row(r)[col] % p;
      if (!c) continue;
      std::uint32_t* dst = a.row(r).data() + col;
      if (cap == 0) {
        detail::axpy_mod(dst, src, len, p - c, p);
        continue;
      }
      if (load[r] >= cap) reduce_row(r);
      detail::axpy_raw(dst, src, len, p - c);
      ++load[r];
    }
    pivots.push_back(col);
    ++rk;
  }
  for (std::size_t r = 0; r < R; ++r) reduce_row(r);
  return {std::move(a), rk, std::move(pivots)};
}

}  // namespace

RrefResult rref(const FMatrix& m) { return eliminate(m, true); }

std::size_t rank(const FMatrix& m) {
  EchelonBasis e(m.prime(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.rank();
}

FMatrix kernel_basis(const FMatrix& m) {
  RrefResult res = rref(m);
  std::vector<char> is_piv(m.cols(), 0);
  for (auto c : res.pivot_cols) is_piv[c] = 1;
  const Prime pr = m.prime();
  FMatrix out(pr, 0, m.cols());
  std::vector<std::uint32_t> v(m.cols());
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::fill(v.begin(), v.end(), 0);
    v[f] = 1;
    for (std::size_t k = 0; k < res.rank; ++k) v[res.pivot_cols[k]] = pr.neg(res.reduced(k, f));
    out.append_row(v);
  }
  return out;
}

bool row_space_membership(const FMatrix& m, std::span<const std::uint32_t> v) {
  if (v.size() != m.cols()) throw InvalidArgument("vector length does not match matrix width");
  EchelonBasis e(m.prime(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.contains(v);
}

EchelonBasis::EchelonBasis(Prime p, std::size_t ncols)
    : p_(p),
      ncols_(ncols),
      capacity_(detail::lazy_capacity(p.value())),
      pivot_at_(ncols, -1),
      work_(ncols, 0) {}

void EchelonBasis::reduce_range(std::uint32_t* v, std::size_t lo, std::size_t hi) const {
  const std::uint32_t p = p_.value();
  for (std::size_t k = lo; k < hi; ++k) v[k] %= p;
}

bool EchelonBasis::insert(std::size_t offset, std::span<const std::uint32_t> values) {
  if (offset + values.size() > ncols_) throw InvalidArgument("vector exceeds basis width");
  const std::uint32_t p = p_.value();
  std::uint32_t* w = work_.data();
  for (std::size_t k = 0; k < values.size(); ++k) w[offset + k] = values[k] % p;
  std::size_t lead = offset, end = offset + values.size();
  std::uint64_t load = 0;
  while (true) {
    while (lead < end) {
      std::uint32_t v = w[lead] % p;
      w[lead] = v;
      if (v) break;
      ++lead;
    }
    if (lead == end) return false;
    std::int32_t r = pivot_at_[lead];
    if (r < 0) {
      reduce_range(w, lead, end);
      std::size_t last = end;
      while (last > lead && w[last - 1] == 0) --last;
      std::uint32_t inv = p_.inv(w[lead]);
      Row row{lead, std::vector<std::uint32_t>(last - lead)};
      for (std::size_t k = lead; k < last; ++k) row.values[k - lead] = p_.mul(w[k], inv);
      std::fill(w + lead, w + end, 0);
      pivot_at_[lead] = static_cast<std::int32_t>(rows_.size());
      rows_.push_back(std::move(row));
      return true;
    }
    const Row& pr = rows_[r];
    const std::uint32_t c = p - w[lead];
    const std::size_t rend = pr.lead + pr.values.size();
    if (rend > end) end = rend;
    if (capacity_ == 0) {
      detail::axpy_mod(w + lead, pr.values.data(), pr.values.size(), c, p);
    } else {
      if (load >= capacity_) {
        reduce_range(w, lead, end);
        load = 0;
      }
      detail::axpy_raw(w + lead, pr.values.data(), pr.values.size(), c);
      ++load;
    }
  }
}

std::vector<std::uint32_t> EchelonBasis::reduce(std::span<const std::uint32_t> dense) const {
  if (dense.size() != ncols_) throw InvalidArgument("vector length does not match basis width");
  const std::uint32_t p = p_.value();
  std::vector<std::uint32_t> w(dense.begin(), dense.end());
  for (auto& v : w) v %= p;
  std::uint64_t load = 0;
  for (std::size_t col = 0; col < ncols_; ++col) {
    std::uint32_t v = w[col] % p;
    w[col] = v;
    if (!v || pivot_at_[col] < 0) continue;
    const Row& pr = rows_[pivot_at_[col]];
    if (capacity_ == 0) {
      detail::axpy_mod(w.data() + col, pr.values.data(), pr.values.size(), p - v, p);
    } else {
      if (load >= capacity_) {
        reduce_range(w.data(), col, ncols_);
        load = 0;
      }
      detail::axpy_raw(w.data() + col, pr.values.data(), pr.values.size(), p - v);
      ++load;
    }
    w[col] = 0;
  }
  return w;
}

bool EchelonBasis::contains(std::span<const std::uint32_t> dense) const {
  auto w = reduce(dense);
  return std::all_of(w.begin(), w.end(), [](std::uint32_t v) { return v == 0; });
}

std::vector<std::size_t> EchelonBasis::pivot_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < ncols_; ++c)
    if (pivot_at_[c] >= 0) out.push_back(c);
  return out;
}

std::span<const std::uint32_t> EchelonBasis::pivot_row(std::size_t col) const {
  if (pivot_at_[col] < 0) return {};
  return rows_[pivot_at_[col]].values;
}

std::vector<std::size_t> EchelonBasis::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < ncols_; ++c)
    if (pivot_at_[c] < 0) out.push_back(c);
  return out;
}

std::vector<std::vector<std::uint32_t>> EchelonBasis::kernel_vectors() const {
  const std::uint32_t p = p_.value();
  const bool small = p < (1U << 16);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::size_t f : free_columns()) {
    std::vector<std::uint32_t> x(ncols_, 0);
    x[f] = 1;
    for (std::size_t c = f; c-- > 0;) {
      std::int32_t r = pivot_at_[c];
      if (r < 0) continue;
      const Row& row = rows_[r];
      std::uint64_t acc = 0;
      for (std::size_t k = 1; k < row.values.size(); ++k) {
        acc += static_cast<std::uint64_t>(row.values[k]) * x[c + k];
        if (!small) acc %= p;
      }
      x[c] = p_.neg(static_cast<std::uint32_t>(acc % p));
    }
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace frobetti
