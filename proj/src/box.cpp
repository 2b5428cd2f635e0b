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

#include "frobetti/box.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <tuple>

namespace frobetti {

namespace {

void enumerate_box(int n, int var, int remaining, int cap, std::uint64_t prefix,
                   std::vector<std::uint64_t>& out) {
  if (var == n - 1) {
    if (remaining <= cap) out.push_back(prefix | (static_cast<std::uint64_t>(remaining) << Monomial::shift(var)));
    return;
  }
  // the remaining variables can absorb at most (n - var - 1) * cap
  int rest = (n - var - 1) * cap;
  for (int e = std::min(remaining, cap); e >= 0 && remaining - e <= rest; --e) {
    enumerate_box(n, var + 1, remaining - e, cap,
                  prefix | (static_cast<std::uint64_t>(e) << Monomial::shift(var)), out);
  }
}

}  // namespace

BoxSlice::BoxSlice(int n, int q, int degree) : n_(n), q_(q), degree_(degree) {
  if (n < 1 || n > kMaxVars) throw InvalidArgument("number of variables must be 1..5");
  if (q < 1) throw InvalidArgument("box side must be positive");
  if (degree < 0) return;
  int cap = std::min(q - 1, kMaxExponent);
  enumerate_box(n, 0, degree, cap, 0, keys_);
}

std::shared_ptr<const BoxSlice> BoxSlice::get(int n, int q, int degree) {
  if (q > degree) q = std::max(degree, 0) + 1;  // the box constraint is vacuous
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const BoxSlice>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, q, degree}];
  if (!slot) slot.reset(new BoxSlice(n, q, degree));
  return slot;
}

std::ptrdiff_t BoxSlice::index_of(std::uint64_t key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key, std::greater<>());
  if (it == keys_.end() || *it != key) return -1;
  return it - keys_.begin();
}

void box_product(const HomogPoly& f, std::uint64_t u_key, const BoxSlice& target,
                 std::vector<std::pair<std::size_t, std::uint32_t>>& out) {
  out.clear();
  const GradedBasis& fb = f.basis();
  const int n = f.num_vars();
  const int cap = target.q() - 1;
  for (std::size_t t = 0; t < fb.size(); ++t) {
    std::uint32_t c = f.coeffs()[t];
    if (!c) continue;
    std::uint64_t k = fb.key(t) + u_key;
    bool inside = true;
    for (int v = 0; v < n && inside; ++v)
      inside = static_cast<int>((k >> Monomial::shift(v)) & kMaxExponent) <= cap;
    if (!inside) continue;
    std::ptrdiff_t idx = target.index_of(k);
    if (idx >= 0) out.emplace_back(static_cast<std::size_t>(idx), c);
  }
}

namespace {

// Inserts a sparse row through its [min, max] window.
bool insert_sparse(EchelonBasis& e, std::vector<std::pair<std::size_t, std::uint32_t>>& row,
                   std::vector<std::uint32_t>& buf) {
  if (row.empty()) return false;
  std::size_t lo = row.front().first, hi = lo;
  for (const auto& [i, c] : row) {
    lo = std::min(lo, i);
    hi = std::max(hi, i);
  }
  buf.assign(hi - lo + 1, 0);
  for (const auto& [i, c] : row) buf[i - lo] = e.prime().add(buf[i - lo], c);
  return e.insert(lo, buf);
}

}  // namespace

std::size_t box_mult_rank(const HomogPoly& f, int q, int i) {
  const int n = f.num_vars();
  auto src = BoxSlice::get(n, q, i);
  auto tgt = BoxSlice::get(n, q, i + f.degree());
  if (src->size() == 0 || tgt->size() == 0) return 0;
  EchelonBasis e(f.prime(), tgt->size());
  std::vector<std::pair<std::size_t, std::uint32_t>> row;
  std::vector<std::uint32_t> buf;
  for (std::size_t u = 0; u < src->size(); ++u) {
    box_product(f, src->key(u), *tgt, row);
    insert_sparse(e, row, buf);
    if (e.rank() == tgt->size()) break;
  }
  return e.rank();
}

std::vector<std::vector<std::uint32_t>> box_mult_kernel(const HomogPoly& f, int q, int i) {
  const int n = f.num_vars();
  auto src = BoxSlice::get(n, q, i);
  auto tgt = BoxSlice::get(n, q, i + f.degree());
  EchelonBasis e(f.prime(), src->size());
  if (src->size() == 0) return {};
  auto terms = f.terms();
  std::vector<std::pair<std::size_t, std::uint32_t>> row;
  std::vector<std::uint32_t> buf;
  for (std::size_t t = 0; t < tgt->size(); ++t) {
    row.clear();
    Monomial tm = tgt->monomial(t);
    for (const auto& [m, c] : terms) {
      if (!m.divides(tm)) continue;
      std::ptrdiff_t idx = src->index_of(tm.key() - m.key());
      if (idx >= 0) row.emplace_back(static_cast<std::size_t>(idx), c);
    }
    insert_sparse(e, row, buf);
    if (e.rank() == src->size()) return {};
  }
  return e.kernel_vectors();
}

QuotientSlice::QuotientSlice(const HomogPoly& f, int q, int j)
    : p_(f.prime()), j_(j), box_(BoxSlice::get(f.num_vars(), q, j)) {
  ech_ = std::make_unique<EchelonBasis>(p_, box_->size());
  if (!f.is_zero() && j >= f.degree()) {
    auto src = BoxSlice::get(f.num_vars(), q, j - f.degree());
    std::vector<std::pair<std::size_t, std::uint32_t>> row;
    std::vector<std::uint32_t> buf;
    for (std::size_t u = 0; u < src->size() && ech_->rank() < box_->size(); ++u) {
      box_product(f, src->key(u), *box_, row);
      insert_sparse(*ech_, row, buf);
    }
  }
  standard_ = ech_->free_columns();
  std_pos_.assign(box_->size(), -1);
  for (std::size_t k = 0; k < standard_.size(); ++k) std_pos_[standard_[k]] = static_cast<std::ptrdiff_t>(k);
}

std::vector<std::uint32_t> QuotientSlice::normal_form(std::span<const std::uint32_t> ambient) const {
  auto r = ech_->reduce(ambient);
  std::vector<std::uint32_t> out(standard_.size());
  for (std::size_t k = 0; k < standard_.size(); ++k) out[k] = r[standard_[k]];
  return out;
}

std::vector<std::uint32_t> QuotientSlice::normal_form_key(std::uint64_t key) const {
  std::ptrdiff_t idx = box_->index_of(key);
  if (idx < 0) return std::vector<std::uint32_t>(standard_.size(), 0);
  if (std_pos_[idx] >= 0) {
    std::vector<std::uint32_t> out(standard_.size(), 0);
    out[std_pos_[idx]] = 1;
    return out;
  }
  std::vector<std::uint32_t> v(box_->size(), 0);
  v[idx] = 1;
  return normal_form(v);
}

std::span<const std::uint32_t> QuotientSlice::nf_of(std::size_t idx) const {
  const std::size_t m = standard_.size();
  if (table_.empty() && m > 0) {
    const std::uint32_t p = p_.value();
    const std::uint64_t cap = detail::lazy_capacity(p);
    table_.assign(box_->size() * m, 0);
    std::vector<std::uint32_t> acc(m);
    for (std::size_t c = box_->size(); c-- > 0;) {
      std::uint32_t* dst = table_.data() + c * m;
      if (std_pos_[c] >= 0) {
        dst[std_pos_[c]] = 1;
        continue;
      }
      auto row = ech_->pivot_row(c);
      std::fill(acc.begin(), acc.end(), 0);
      std::uint64_t load = 0;
      for (std::size_t k = 1; k < row.size(); ++k) {
        if (!row[k]) continue;
        const std::uint32_t* src = table_.data() + (c + k) * m;
        if (cap == 0) {
          detail::axpy_mod(acc.data(), src, m, row[k], p);
          continue;
        }
        if (load >= cap) {
          for (auto& v : acc) v %= p;
          load = 0;
        }
        detail::axpy_raw(acc.data(), src, m, row[k]);
        ++load;
      }
      for (std::size_t t = 0; t < m; ++t) dst[t] = p_.neg(acc[t] % p);
    }
  }
  return {table_.data() + idx * m, m};
}

}  // namespace frobetti
