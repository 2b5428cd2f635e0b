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

#include "frobetti/pfaffian.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "frobetti/error.hpp"

namespace frobetti {

SkewPolyMatrix::SkewPolyMatrix(Prime p, int n, std::size_t size) : m_(p, n, size, size) {}

SkewPolyMatrix SkewPolyMatrix::from_matrix(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidArgument("alternating matrix must be square");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!m(i, i).is_zero()) throw InvalidArgument("alternating matrix needs a zero diagonal");
    for (std::size_t j = i + 1; j < m.rows(); ++j) {
      if (!(m(j, i) == -m(i, j))) throw InvalidArgument("matrix is not skew-symmetric");
    }
  }
  SkewPolyMatrix x(m.prime(), m.num_vars(), m.rows());
  x.m_ = m;
  return x;
}

void SkewPolyMatrix::set(std::size_t i, std::size_t j, const SparsePoly& v) {
  if (i == j) throw InvalidArgument("diagonal of an alternating matrix is zero");
  m_(i, j) = v;
  m_(j, i) = -v;
}

SkewPolyMatrix SkewPolyMatrix::deleting(const std::vector<std::size_t>& idx) const {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < size(); ++i) {
    if (std::find(idx.begin(), idx.end(), i) == idx.end()) keep.push_back(i);
  }
  SkewPolyMatrix r(prime(), num_vars(), keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) r.m_(a, b) = m_(keep[a], keep[b]);
  }
  return r;
}

namespace {

constexpr std::size_t kMaxExpansion = 20;

class PfaffianMemo {
 public:
  explicit PfaffianMemo(const SkewPolyMatrix& x) : x_(x) {}

  SparsePoly operator()(std::uint32_t mask) {
    if (mask == 0) return SparsePoly::constant(x_.prime(), x_.num_vars(), 1);
    auto it = memo_.find(mask);
    if (it != memo_.end()) return it->second;
    const int first = std::countr_zero(mask);
    const std::uint32_t rest = mask & ~(1U << first);
    SparsePoly sum(x_.prime(), x_.num_vars());
    int pos = 0;  // position of j among the remaining indices, 1 for the second index
    for (std::uint32_t m = rest; m; m &= m - 1) {
      const int j = std::countr_zero(m);
      ++pos;
      const SparsePoly& a = x_(first, j);
      if (a.is_zero()) continue;
      SparsePoly term = a * (*this)(rest & ~(1U << j));
      // (-1)^j with j the 1-based position within the current index set, here pos + 1
      sum += pos % 2 == 1 ? term : -term;
    }
    memo_.emplace(mask, sum);
    return sum;
  }

 private:
  const SkewPolyMatrix& x_;
  std::unordered_map<std::uint32_t, SparsePoly> memo_;
};

}  // namespace

SparsePoly pfaffian(const SkewPolyMatrix& x) {
  if (x.size() % 2) throw InvalidArgument("Pfaffian needs an even size");
  if (x.size() > kMaxExpansion) throw InvalidArgument("matrix too large for Pfaffian expansion");
  PfaffianMemo memo(x);
  return memo(x.size() == 0 ? 0U : static_cast<std::uint32_t>((1ULL << x.size()) - 1));
}

SkewPolyMatrix pfaffian_adjoint(const SkewPolyMatrix& x) {
  if (x.size() % 2) throw InvalidArgument("Pfaffian adjoint needs an even size");
  if (x.size() > kMaxExpansion) throw InvalidArgument("matrix too large for Pfaffian expansion");
  const std::size_t m = x.size();
  PfaffianMemo memo(x);
  const std::uint32_t all = static_cast<std::uint32_t>((1ULL << m) - 1);
  SkewPolyMatrix r(x.prime(), x.num_vars(), m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      SparsePoly pf = memo(all & ~(1U << i) & ~(1U << j));
      // 1-based i + j has the same parity as 0-based i + j
      r.set(i, j, (i + j) % 2 == 0 ? pf : -pf);
    }
  }
  return r;
}

bool be_pfaffian_check(const std::vector<SparsePoly>& gens, const SkewPolyMatrix& x) {
  if (gens.size() != x.size()) throw InvalidArgument("number of generators differs from the matrix size");
  if (x.size() % 2 == 0) throw InvalidArgument("signed maximal Pfaffians need an odd size");
  if (x.size() > kMaxExpansion) throw InvalidArgument("matrix too large for Pfaffian expansion");
  PfaffianMemo memo(x);
  const std::uint32_t all = static_cast<std::uint32_t>((1ULL << x.size()) - 1);
  const Prime p = x.prime();
  std::uint32_t c = 0;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    SparsePoly pf = memo(all & ~(1U << j));
    // (-1)^{j+1} with 1-based j is + for the first index
    SparsePoly expected = j % 2 == 0 ? pf : -pf;
    if (expected.is_zero() || gens[j].is_zero()) {
      if (!(expected.is_zero() && gens[j].is_zero())) return false;
      continue;
    }
    if (!c) {
      const auto& [e, v] = *expected.terms().begin();
      c = p.mul(gens[j].coeff(e), p.inv(v));
      if (!c) return false;
    }
    if (!(gens[j] == expected.scaled(c))) return false;
  }
  return c != 0;
}

SparsePoly determinant(const PolyMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("determinant needs a square matrix");
  const std::size_t n = a.rows();
  if (n > kMaxExpansion) throw InvalidArgument("matrix too large for Laplace expansion");
  if (n == 0) return SparsePoly::constant(a.prime(), a.num_vars(), 1);
  // det of the last k rows against the column set mask, k = popcount(mask)
  std::unordered_map<std::uint32_t, SparsePoly> level;
  for (std::size_t c = 0; c < n; ++c) level.emplace(1U << c, a(n - 1, c));
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t row = n - k;
    std::unordered_map<std::uint32_t, SparsePoly> next;
    for (const auto& [mask, sub] : level) {
      if (sub.is_zero()) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (mask & (1U << c)) continue;
        const SparsePoly& e = a(row, c);
        if (e.is_zero()) continue;
        const std::uint32_t big = mask | (1U << c);
        // sign of c's position inside the column set
        const int pos = std::popcount(big & ((1U << c) - 1));
        SparsePoly term = e * sub;
        auto it = next.find(big);
        if (it == next.end()) it = next.emplace(big, SparsePoly(a.prime(), a.num_vars())).first;
        it->second += pos % 2 ? -term : term;
      }
    }
    level = std::move(next);
  }
  auto it = level.find(static_cast<std::uint32_t>((1ULL << n) - 1));
  return it == level.end() ? SparsePoly(a.prime(), a.num_vars()) : it->second;
}

std::uint32_t scalar_determinant(const FMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("determinant needs a square matrix");
  const Prime p = a.prime();
  const std::size_t n = a.rows();
  std::vector<std::uint32_t> m(a.row(0).data(), a.row(0).data() + n * n);
  std::uint32_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && !m[piv * n + c]) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[piv * n + k], m[c * n + k]);
      det = p.neg(det);
    }
    det = p.mul(det, m[c * n + c]);
    const std::uint32_t inv = p.inv(m[c * n + c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const std::uint32_t fct = p.mul(m[r * n + c], inv);
      if (!fct) continue;
      for (std::size_t k = c; k < n; ++k) m[r * n + k] = p.sub(m[r * n + k], p.mul(fct, m[c * n + k]));
    }
  }
  return det;
}

PfCertificate certify_pf_of_tail(const PolyMatrix& a, const HomogPoly& f) {
  PfCertificate cert;
  if (a.rows() != a.cols()) throw InvalidArgument("tail matrix must be square");
  if (f.is_zero()) throw InvalidArgument("f must be nonzero");
  if (a.rows() != static_cast<std::size_t>(2 * f.degree())) {
    cert.warnings.push_back("matrix size " + std::to_string(a.rows()) + " differs from 2 deg f");
  }
  if (!a.entries_of_degree(1)) cert.warnings.push_back("entries are not all linear");
  SparsePoly det = determinant(a);
  SparsePoly f2 = SparsePoly::from_homog(f) * SparsePoly::from_homog(f);
  if (det.is_zero()) return cert;
  const auto& [e, v] = *f2.terms().begin();
  const Prime p = f.prime();
  const std::uint32_t c = p.mul(det.coeff(e), p.inv(v));
  if (c && det == f2.scaled(c)) {
    cert.certified = true;
    cert.unit = c;
  }
  return cert;
}

}  // namespace frobetti
