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

#include "frobetti/invsys.hpp"

#include <algorithm>

#include "frobetti/linkage.hpp"

namespace frobetti {

namespace {

// Sparse row of Phi_i for the monomial with the given key.
void cat_row(const std::vector<std::pair<Monomial, std::uint32_t>>& terms, const Monomial& m,
             const GradedBasis& target, std::vector<std::pair<std::size_t, std::uint32_t>>& out) {
  out.clear();
  for (const auto& [b, c] : terms) {
    if (m.divides(b)) out.emplace_back(target.rank_key(b.key() - m.key()), c);
  }
}

}  // namespace

FMatrix catalecticant(const DividedElem& phi, int i) {
  const int n = phi.num_vars(), s = phi.degree();
  if (i < 0 || i > s) throw InvalidArgument("catalecticant degree out of range");
  auto src = GradedBasis::get(n, i);
  auto tgt = GradedBasis::get(n, s - i);
  FMatrix m(phi.prime(), src->size(), tgt->size());
  auto terms = phi.terms();
  std::vector<std::pair<std::size_t, std::uint32_t>> row;
  for (std::size_t r = 0; r < src->size(); ++r) {
    cat_row(terms, src->monomial(r), *tgt, row);
    for (const auto& [c, v] : row) m.set(r, c, v);
  }
  return m;
}

std::size_t catalecticant_rank(const DividedElem& phi, int i) {
  const int n = phi.num_vars(), s = phi.degree();
  if (i < 0 || i > s) return 0;
  auto src = GradedBasis::get(n, i);
  auto tgt = GradedBasis::get(n, s - i);
  EchelonBasis e(phi.prime(), tgt->size());
  const std::size_t cap = std::min(src->size(), tgt->size());
  auto terms = phi.terms();
  std::vector<std::pair<std::size_t, std::uint32_t>> row;
  std::vector<std::uint32_t> buf;
  for (std::size_t r = 0; r < src->size() && e.rank() < cap; ++r) {
    cat_row(terms, src->monomial(r), *tgt, row);
    if (row.empty()) continue;
    std::size_t lo = row.front().first, hi = lo;
    for (const auto& [c, v] : row) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    buf.assign(hi - lo + 1, 0);
    for (const auto& [c, v] : row) buf[c - lo] = v;
    e.insert(lo, buf);
  }
  return e.rank();
}

FMatrix ann_piece(const DividedElem& phi, int i) {
  const int n = phi.num_vars();
  if (i < 0) throw InvalidArgument("negative degree");
  if (i > phi.degree()) return FMatrix::identity(phi.prime(), basis_size(n, i));
  return kernel_basis(catalecticant(phi, i).transpose());
}

std::vector<std::int64_t> hilbert_function(const DividedElem& phi) {
  std::vector<std::int64_t> h;
  for (int i = 0; i <= phi.degree(); ++i) h.push_back(static_cast<std::int64_t>(catalecticant_rank(phi, i)));
  return h;
}

FMatrix dprime_basis(const DividedElem& phi, int m) {
  const int n = phi.num_vars(), s = phi.degree();
  if (m < 0 || m > s) return FMatrix(phi.prime(), 0, basis_size(n, s - m));
  RrefResult r = rref(catalecticant(phi, m));
  FMatrix out(phi.prime(), 0, r.reduced.cols());
  for (std::size_t k = 0; k < r.rank; ++k) out.append_row(r.reduced.row(k));
  return out;
}

std::int64_t ci_hilbert(int n, int q, int j) {
  if (j < 0) return 0;
  std::int64_t h = 0;
  for (int k = 0; k <= n; ++k) {
    std::int64_t term = binom(n, k) * binom(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(k) * q + n - 1, n - 1);
    h += (k % 2 ? -term : term);
  }
  return h;
}

bool is_power_of(std::uint64_t q, std::uint64_t p) noexcept {
  if (p < 2 || q < p) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

CompressedReport is_relatively_compressed(const HomogPoly& f, int q, CheckMode mode) {
  CompressedReport rep;
  rep.n = f.num_vars();
  rep.d = f.degree();
  rep.q = q;
  rep.mode = mode;
  if (f.is_zero()) throw PreconditionError("f must be nonzero");
  if (rep.d < 1 || rep.d >= q) throw PreconditionError("need 1 <= deg f < q");
  rep.s = rep.n * (q - 1) - rep.d;
  if (!is_power_of(static_cast<std::uint64_t>(q), f.prime().value())) {
    rep.warnings.push_back("q is not a power of p");
  }
  if (rep.d == 1) rep.warnings.push_back("deg f = 1: the link is a complete intersection");
  DividedElem phi = link_inverse_poly(f, q);
  std::vector<int> degs;
  if (mode == CheckMode::Quick) {
    degs.push_back((rep.s + 1) / 2);
  } else {
    for (int i = 0; i <= rep.s; ++i) degs.push_back(i);
  }
  rep.compressed = true;
  for (int i : degs) {
    DegreeCheck c{i, static_cast<std::int64_t>(catalecticant_rank(phi, i)),
                  std::min(ci_hilbert(rep.n, q, i), ci_hilbert(rep.n, q, rep.s - i))};
    if (c.measured != c.expected) rep.compressed = false;
    rep.degrees.push_back(c);
  }
  return rep;
}

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform(std::uint64_t bound) noexcept {
  const std::uint64_t limit = ~0ULL - (~0ULL % bound);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

HomogPoly random_form(Prime p, int n, int d, SplitMix64& rng) {
  HomogPoly f(p, n, d);
  for (auto& c : f.coeffs()) c = static_cast<std::uint32_t>(rng.uniform(p.value()));
  return f;
}

DividedElem random_divided(Prime p, int n, int s, SplitMix64& rng) {
  DividedElem g(p, n, s);
  for (auto& c : g.coeffs()) c = static_cast<std::uint32_t>(rng.uniform(p.value()));
  return g;
}

SearchResult random_compressed_search(Prime p, int n, int d, int q, std::uint64_t seed,
                                      int max_attempts) {
  if (d < 1 || d >= q) throw PreconditionError("need 1 <= d < q");
  SplitMix64 rng(seed);
  SearchResult res;
  while (res.attempts < max_attempts) {
    ++res.attempts;
    HomogPoly f = random_form(p, n, d, rng);
    if (f.is_zero()) continue;
    if (is_relatively_compressed(f, q, CheckMode::Quick).compressed) {
      res.f = std::move(f);
      return res;
    }
  }
  return res;
}

}  // namespace frobetti
