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

#include "frobetti/koszul.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "frobetti/invsys.hpp"

namespace frobetti {

std::vector<unsigned> wedge_basis(int n, int a) {
  std::vector<unsigned> out;
  if (a < 0 || a > n) return out;
  std::vector<int> idx(a);
  for (int k = 0; k < a; ++k) idx[k] = k;
  while (true) {
    unsigned mask = 0;
    for (int v : idx) mask |= 1U << v;
    out.push_back(mask);
    int k = a - 1;
    while (k >= 0 && idx[k] == n - a + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int t = k + 1; t < a; ++t) idx[t] = idx[t - 1] + 1;
  }
  return out;
}

namespace {

std::map<unsigned, std::size_t> wedge_index(int n, int a) {
  std::map<unsigned, std::size_t> m;
  auto b = wedge_basis(n, a);
  for (std::size_t k = 0; k < b.size(); ++k) m[b[k]] = k;
  return m;
}

// Calls fn(variable, sign, mask without variable) for every factor of the wedge monomial.
template <class Fn>
void for_each_removal(int n, unsigned mask, Fn fn) {
  int pos = 0;
  for (int v = 0; v < n; ++v) {
    if (!(mask & (1U << v))) continue;
    ++pos;
    fn(v, pos % 2 == 1 ? 1 : -1, mask & ~(1U << v));
  }
}

// Row-echelon pivot column of each row of a reduced echelon matrix.
std::vector<std::size_t> leading_columns(const FMatrix& m) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    std::size_t c = 0;
    while (c < row.size() && row[c] == 0) ++c;
    out.push_back(c);
  }
  return out;
}

}  // namespace

StrandMatrix strand_matrix(StrandKind kind, Prime p, int n, int a, int b, const DividedElem* phi) {
  if (n < 1 || n > kMaxVars || a < 0 || a > n || b < 0) {
    throw InvalidArgument("strand index out of range");
  }
  const auto src_w = wedge_basis(n, a);
  const auto tgt_w = wedge_index(n, a - 1);
  const std::size_t tw = tgt_w.size();

  if (kind == StrandKind::Kappa || kind == StrandKind::Kos) {
    auto sb = GradedBasis::get(n, b);
    auto tb = GradedBasis::get(n, b + 1);
    FMatrix m(p, src_w.size() * sb->size(), tw * tb->size());
    for (std::size_t w = 0; w < src_w.size(); ++w) {
      for (std::size_t u = 0; u < sb->size(); ++u) {
        for_each_removal(n, src_w[w], [&](int v, int sign, unsigned rest) {
          std::size_t col = tgt_w.at(rest) * tb->size() +
                            tb->rank_key(sb->key(u) + (1ULL << Monomial::shift(v)));
          m.set(w * sb->size() + u, col, static_cast<std::int64_t>(m(w * sb->size() + u, col)) + sign);
        });
      }
    }
    return {kind, a, b, std::move(m)};
  }

  if (kind == StrandKind::Eta) {
    auto sb = GradedBasis::get(n, b);
    const std::size_t tdim = basis_size(n, b - 1);
    FMatrix m(p, src_w.size() * sb->size(), tw * tdim);
    if (b == 0) return {kind, a, b, std::move(m)};
    auto tb = GradedBasis::get(n, b - 1);
    for (std::size_t w = 0; w < src_w.size(); ++w) {
      for (std::size_t u = 0; u < sb->size(); ++u) {
        Monomial g = sb->monomial(u);
        for_each_removal(n, src_w[w], [&](int v, int sign, unsigned rest) {
          if (g[v] == 0) return;
          std::size_t col = tgt_w.at(rest) * tdim + tb->rank_key(g.key() - (1ULL << Monomial::shift(v)));
          m.set(w * sb->size() + u, col, static_cast<std::int64_t>(m(w * sb->size() + u, col)) + sign);
        });
      }
    }
    return {kind, a, b, std::move(m)};
  }

  if (!phi) throw InvalidArgument("eta_prime needs an inverse polynomial");
  if (phi->num_vars() != n || !(phi->prime() == p)) throw InvalidArgument("phi does not match the strand");
  const int s = phi->degree();
  FMatrix src_basis = dprime_basis(*phi, s - b);
  FMatrix tgt_basis = dprime_basis(*phi, s - b + 1);
  const auto tgt_lead = leading_columns(tgt_basis);
  const std::size_t sd = src_basis.rows(), td = tgt_basis.rows();
  FMatrix m(p, src_w.size() * sd, tw * td);
  if (sd == 0 || td == 0 || b == 0) return {kind, a, b, std::move(m)};
  auto sb = GradedBasis::get(n, b);
  auto tb = GradedBasis::get(n, b - 1);
  for (std::size_t w = 0; w < src_w.size(); ++w) {
    for (std::size_t k = 0; k < sd; ++k) {
      auto row = src_basis.row(k);
      for_each_removal(n, src_w[w], [&](int v, int sign, unsigned rest) {
        // ambient image x_v . row, then coordinates in the echelon basis of D'_{b-1}
        std::vector<std::uint32_t> img(tb->size(), 0);
        for (std::size_t u = 0; u < sb->size(); ++u) {
          if (!row[u]) continue;
          std::uint64_t key = sb->key(u);
          if (((key >> Monomial::shift(v)) & kMaxExponent) == 0) continue;
          img[tb->rank_key(key - (1ULL << Monomial::shift(v)))] = row[u];
        }
        for (std::size_t t = 0; t < td; ++t) {
          std::uint32_t c = img[tgt_lead[t]];
          if (!c) continue;
          std::size_t col = tgt_w.at(rest) * td + t;
          std::int64_t val = sign > 0 ? c : -static_cast<std::int64_t>(c);
          m.set(w * sd + k, col, static_cast<std::int64_t>(m(w * sd + k, col)) + val);
        }
      });
    }
  }
  return {kind, a, b, std::move(m)};
}

namespace {

// rank of eta on Λ^a ⊗ D'_j, D'_j spanned by the contractions m . phi, m in S_{s-j}.
// Coordinates are interleaved (monomial-major) so that the rows stay banded.
std::size_t eta_image_rank(const DividedElem& phi, int a, int j) {
  const int n = phi.num_vars(), s = phi.degree();
  if (a < 1 || a > n || j < 1 || j > s) return 0;
  const auto src_w = wedge_basis(n, a);
  const auto tgt_w = wedge_index(n, a - 1);
  const std::size_t tw = tgt_w.size();
  auto mb = GradedBasis::get(n, s - j);
  auto tb = GradedBasis::get(n, j - 1);
  const Prime p = phi.prime();
  EchelonBasis e(p, tb->size() * tw);
  auto terms = phi.terms();
  std::vector<std::pair<std::size_t, std::uint32_t>> entries;
  std::vector<std::uint32_t> buf;
  for (std::size_t u = 0; u < mb->size(); ++u) {
    Monomial m = mb->monomial(u);
    for (unsigned mask : src_w) {
      entries.clear();
      for (const auto& [b, c] : terms) {
        if (!m.divides(b)) continue;
        Monomial g = b / m;
        for_each_removal(n, mask, [&](int v, int sign, unsigned rest) {
          if (g[v] == 0) return;
          std::size_t col = tb->rank_key(g.key() - (1ULL << Monomial::shift(v))) * tw + tgt_w.at(rest);
          entries.emplace_back(col, sign > 0 ? c : p.neg(c));
        });
      }
      if (entries.empty()) continue;
      std::size_t lo = entries.front().first, hi = lo;
      for (const auto& [col, c] : entries) {
        lo = std::min(lo, col);
        hi = std::max(hi, col);
      }
      buf.assign(hi - lo + 1, 0);
      for (const auto& [col, c] : entries) buf[col - lo] = p.add(buf[col - lo], c);
      e.insert(lo, buf);
    }
  }
  return e.rank();
}

}  // namespace

std::int64_t c_rank(const DividedElem& phi, int i, int j) {
  const int n = phi.num_vars(), s = phi.degree();
  if (i < 0 || i > n || j < 0 || j > s) throw InvalidArgument("c_rank index out of range");
  const std::int64_t dim = binom(n, i) * static_cast<std::int64_t>(catalecticant_rank(phi, s - j));
  return dim - static_cast<std::int64_t>(eta_image_rank(phi, i, j)) -
         static_cast<std::int64_t>(eta_image_rank(phi, i + 1, j + 1));
}

DegreeLedger truncated_degree_ledger(const DividedElem& phi, int m) {
  const int n = phi.num_vars(), s = phi.degree();
  if (m < 1 || m > s + 1) throw InvalidArgument("need 1 <= m <= s + 1");
  const Prime p = phi.prime();
  DegreeLedger led;
  FMatrix prev = ann_piece(phi, m);
  if (prev.rows() > 0) led.measured.insert(m);
  for (int i = m + 1; i <= s + 1; ++i) {
    FMatrix cur = ann_piece(phi, i);
    auto sb = GradedBasis::get(n, i - 1);
    auto tb = GradedBasis::get(n, i);
    EchelonBasis e(p, tb->size());
    std::vector<std::uint32_t> v(tb->size());
    for (std::size_t r = 0; r < prev.rows(); ++r) {
      for (int var = 0; var < n; ++var) {
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t u = 0; u < sb->size(); ++u) {
          if (prev(r, u)) v[tb->rank_key(sb->key(u) + (1ULL << Monomial::shift(var)))] = prev(r, u);
        }
        e.insert(v);
      }
    }
    const std::size_t r0 = e.rank();
    for (std::size_t r = 0; r < cur.rows(); ++r) e.insert(cur.row(r));
    if (e.rank() > r0) led.measured.insert(i);
    prev = std::move(cur);
  }
  led.predicted = {m, m + 1};
  const int t = s - m;
  for (int j = 0; j <= t - 1; ++j) {
    if (c_rank(phi, 1, j) != 0) led.predicted.insert(m + t - j + 1);
  }
  led.contained = std::includes(led.predicted.begin(), led.predicted.end(), led.measured.begin(),
                                led.measured.end());
  return led;
}

}  // namespace frobetti
