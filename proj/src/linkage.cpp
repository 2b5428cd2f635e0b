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

#include "frobetti/linkage.hpp"

#include <algorithm>
#include <memory>

#include "frobetti/box.hpp"
#include "frobetti/invsys.hpp"

namespace frobetti {

namespace {

void check_link_input(const HomogPoly& f, int q) {
  if (f.is_zero()) throw PreconditionError("f must be nonzero");
  if (f.degree() < 1 || f.degree() >= q) throw PreconditionError("need 1 <= deg f < q");
}

using Kernel = std::vector<std::vector<std::uint32_t>>;

// Number of new minimal generators of J in degree i, given bases of K_{i-1} and K_i where
// K_t = ker(f : B_t -> B_{t+d}) = J_t / (x^q)_t.
std::int64_t new_generators(const HomogPoly& f, int q, int i, const Kernel& prev, const Kernel& cur,
                            bool& ci_minimal) {
  const int n = f.num_vars();
  const Prime p = f.prime();
  // in degree q the Frobenius powers themselves are present, so work in all of S_q
  auto target = BoxSlice::get(n, i == q ? i + 1 : q, i);
  auto src_prev = BoxSlice::get(n, q, i - 1);
  auto src_cur = BoxSlice::get(n, q, i);
  EchelonBasis e(p, target->size());
  std::vector<std::uint32_t> buf(target->size());
  auto insert_dense = [&](const std::vector<std::pair<std::size_t, std::uint32_t>>& entries) {
    if (entries.empty()) return;
    std::size_t lo = target->size(), hi = 0;
    for (const auto& [k, c] : entries) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    std::vector<std::uint32_t> w(hi - lo + 1, 0);
    for (const auto& [k, c] : entries) w[k - lo] = c;
    e.insert(lo, w);
  };
  std::vector<std::pair<std::size_t, std::uint32_t>> entries;
  for (const auto& v : prev) {
    for (int var = 0; var < n; ++var) {
      const std::uint64_t shift = 1ULL << Monomial::shift(var);
      entries.clear();
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k]) continue;
        std::uint64_t key = src_prev->key(k) + shift;
        std::ptrdiff_t idx = target->index_of(key);
        if (idx >= 0) entries.emplace_back(static_cast<std::size_t>(idx), v[k]);
      }
      insert_dense(entries);
    }
  }
  const std::size_t r0 = e.rank();
  if (i == q) {
    for (int var = 0; var < n; ++var) {
      std::ptrdiff_t idx = target->index_of(Monomial::variable(n, var, q).key());
      insert_dense({{static_cast<std::size_t>(idx), 1}});
    }
    if (e.rank() - r0 != static_cast<std::size_t>(n)) ci_minimal = false;
  }
  for (const auto& v : cur) {
    entries.clear();
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k]) continue;
      std::ptrdiff_t idx = target->index_of(src_cur->key(k));
      entries.emplace_back(static_cast<std::size_t>(idx), v[k]);
    }
    insert_dense(entries);
  }
  return static_cast<std::int64_t>(e.rank() - r0);
}

// dim soc(M)_j for M = P/(x^q, f), given the slices M_j and M_{j+1}.
std::int64_t socle_dim(const QuotientSlice& mj, const QuotientSlice& mj1, int n, Prime p) {
  const std::size_t dj = mj.dim(), dj1 = mj1.dim();
  if (dj == 0) return 0;
  if (dj1 == 0) return static_cast<std::int64_t>(dj);
  EchelonBasis e(p, n * dj1);
  std::vector<std::uint32_t> row(n * dj1);
  const BoxSlice& amb = mj.ambient();
  const BoxSlice& amb1 = mj1.ambient();
  for (std::size_t u : mj.standard()) {
    std::fill(row.begin(), row.end(), 0);
    for (int var = 0; var < n; ++var) {
      std::ptrdiff_t idx = amb1.index_of(amb.key(u) + (1ULL << Monomial::shift(var)));
      if (idx < 0) continue;
      auto nf = mj1.nf_of(static_cast<std::size_t>(idx));
      std::copy(nf.begin(), nf.end(), row.begin() + var * dj1);
    }
    e.insert(row);
  }
  return static_cast<std::int64_t>(dj - e.rank());
}

}  // namespace

DividedElem link_inverse_poly(const HomogPoly& f, int q) {
  if (f.degree() >= q) throw PreconditionError("deg f must be below q");
  if (f.degree() < 1) throw PreconditionError("deg f must be positive");
  const int n = f.num_vars();
  DividedElem phi(f.prime(), n, n * (q - 1) - f.degree());
  std::vector<int> e(n);
  for (const auto& [m, c] : f.terms()) {
    for (int i = 0; i < n; ++i) e[i] = q - 1 - m[i];
    phi.set_coeff(Monomial(e), c);
  }
  return phi;
}

std::int64_t GeneratorProfile::total() const {
  std::int64_t t = 0;
  for (const auto& [deg, c] : counts) t += c;
  return t;
}

std::int64_t SocleReport::total() const {
  std::int64_t t = 0;
  for (const auto& [deg, c] : dims) t += c;
  return t;
}

GeneratorProfile measured_generator_profile(const HomogPoly& f, int q, ProfileMode mode) {
  check_link_input(f, q);
  const int n = f.num_vars(), d = f.degree();
  const int s = n * (q - 1) - d, N = n * (q - 1);
  GeneratorProfile prof;

  // f is injective on B_a exactly for a <= a_star (a socle argument in B)
  auto injective = [&](int a) { return box_mult_rank(f, q, a) == BoxSlice::get(n, q, a)->size(); };
  int lo = -1, hi = s + 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    (injective(mid) ? lo : hi) = mid;
  }
  const int a_star = lo;

  int direct_top = s + 1;
  if (mode == ProfileMode::Auto) {
    if (n == 3) {
      direct_top = (s + 3) / 2;
    } else if (n > 3) {
      direct_top = std::min(s + 1, std::max(s / 2 + 2, q));
    }
  }

  std::vector<std::int64_t> hilb(s + 2, 0);  // H_i(P/J)
  for (int i = 0; i <= std::min(a_star, s); ++i) hilb[i] = static_cast<std::int64_t>(BoxSlice::get(n, q, i)->size());
  if (q <= a_star) prof.counts[q] += n;

  Kernel prev;
  for (int i = a_star + 1; i <= direct_top; ++i) {
    Kernel cur = box_mult_kernel(f, q, i);
    if (i <= s) hilb[i] = static_cast<std::int64_t>(BoxSlice::get(n, q, i)->size() - cur.size());
    std::int64_t c = new_generators(f, q, i, prev, cur, prof.ci_minimal);
    if (c) prof.counts[i] += c;
    prev = std::move(cur);
  }

  if (direct_top < s + 1 && n == 3) {
    // P/J is Gorenstein of socle degree s with resolution P <- F1 <- F1*(-s-3) <- P(-s-3),
    // so the Euler characteristic of the Hilbert series determines the upper generators.
    for (int i = direct_top + 1; i <= s; ++i) hilb[i] = hilb[s - i];
    auto h = [&](int i) { return (i < 0 || i > s) ? std::int64_t{0} : hilb[i]; };
    for (int i = direct_top + 1; i <= s + 1; ++i) {
      std::int64_t c = h(i) - 3 * h(i - 1) + 3 * h(i - 2) - h(i - 3);
      auto it = prof.counts.find(s + 3 - i);
      std::int64_t mirror = it == prof.counts.end() ? 0 : it->second;
      std::int64_t b = mirror - c;
      if (b < 0) throw Error("inconsistent Hilbert function in generator profile");
      if (b) prof.counts[i] += b;
    }
  } else if (direct_top < s + 1) {
    // generators of ann_B(f) in degree i are dual to soc(B/fB) in degree n(q-1) - i
    for (int i = direct_top + 1; i <= s + 1; ++i) {
      int j = N - i;
      QuotientSlice mj(f, q, j), mj1(f, q, j + 1);
      std::int64_t c = socle_dim(mj, mj1, n, f.prime());
      if (c) prof.counts[i] += c;
    }
  }
  return prof;
}

std::int64_t even_generator_count(int n, int d, int q) {
  const int s = n * (q - 1) - d;
  const std::int64_t a = s / 2;
  return binom(a + n, n - 1) - binom(a + n - 2, n - 1) + n * binom(a - q + n - 2, n - 1) -
         n * binom(a - q + n, n - 1);
}

GeneratorProfile predicted_generator_profile(int n, int d, int q) {
  if (n < 3) throw PreconditionError("prediction needs n >= 3");
  if (d < 1 || static_cast<std::int64_t>(n - 2) * q < n + d) {
    throw PreconditionError("prediction needs (n-2) q >= n + d");
  }
  const int s = n * (q - 1) - d;
  GeneratorProfile prof;
  prof.counts[q] += n;
  if (s % 2 == 0) {
    std::int64_t c = even_generator_count(n, d, q);
    if (n == 3 && c != 2 * d) throw Error("generator count identity failed");
    prof.counts[s / 2 + 1] += c;
  } else {
    // K_t = |B_t| - |B_{s-t}| above the middle degree of a compressed link
    const int a = s / 2;
    std::int64_t first = ci_hilbert(n, q, a + 1) - ci_hilbert(n, q, a);
    std::int64_t bound = ci_hilbert(n, q, a + 2) - ci_hilbert(n, q, a - 1);
    prof.counts[a + 1] += first;
    prof.counts[a + 2] += bound;
    prof.bounds.insert(a + 2);
  }
  return prof;
}

SocleReport socle_direct(const HomogPoly& f, int q) {
  const int n = f.num_vars();
  if (!f.is_zero() && f.degree() >= q) throw PreconditionError("need deg f < q");
  const int N = n * (q - 1);
  SocleReport rep;
  auto cur = std::make_unique<QuotientSlice>(f, q, 0);
  for (int j = 0; j <= N; ++j) {
    auto next = std::make_unique<QuotientSlice>(f, q, j + 1);
    std::int64_t c = socle_dim(*cur, *next, n, f.prime());
    if (c) rep.dims[j] = c;
    cur = std::move(next);
  }
  return rep;
}

SocleReport socle_via_link(const HomogPoly& f, int q) {
  GeneratorProfile prof = measured_generator_profile(f, q);
  if (!prof.ci_minimal) {
    throw PreconditionError("link degeneracy: the Frobenius powers are not minimal generators of J");
  }
  const int n = f.num_vars(), N = n * (q - 1);
  SocleReport rep;
  for (auto [deg, c] : prof.counts) {
    if (deg == q) c -= n;
    if (c > 0) rep.dims[N - deg] += c;
  }
  return rep;
}

KuShiftResult ku_shift_check(const HomogPoly& f, int q0, int q1) {
  const int n = f.num_vars(), d = f.degree();
  const auto p = f.prime().value();
  if (q1 < q0) throw PreconditionError("need q1 >= q0");
  if (q0 < d + 3) throw PreconditionError("need q0 >= d + 3 (q0 = " + std::to_string(q0) + ")");
  for (int q : {q0, q1}) {
    if (!is_power_of(static_cast<std::uint64_t>(q), p)) {
      throw PreconditionError("q = " + std::to_string(q) + " is not a power of p");
    }
    if (!is_relatively_compressed(f, q, CheckMode::Quick).compressed) {
      throw PreconditionError("link is not relatively compressed at q = " + std::to_string(q));
    }
  }
  if ((n * (q1 - q0)) % 2) throw PreconditionError("shift n (q1 - q0) / 2 is not an integer");
  KuShiftResult res;
  res.shift = n * (q1 - q0) / 2;
  res.low = socle_via_link(f, q0);
  res.high = socle_via_link(f, q1);
  SocleReport moved;
  for (const auto& [deg, c] : res.low.dims) moved.dims[deg + res.shift] = c;
  res.equal = moved == res.high;
  return res;
}

}  // namespace frobetti
