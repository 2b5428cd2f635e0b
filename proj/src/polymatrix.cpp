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

#include "frobetti/polymatrix.hpp"

#include <algorithm>

#include "frobetti/error.hpp"

namespace frobetti {

SparsePoly::SparsePoly(Prime p, int n) : p_(p), n_(n) {
  if (n < 1) throw InvalidArgument("need at least one variable");
}

SparsePoly SparsePoly::constant(Prime p, int n, std::int64_t c) {
  SparsePoly r(p, n);
  r.add_term(Exps(n, 0), c);
  return r;
}

SparsePoly SparsePoly::variable(Prime p, int n, int i) {
  if (i < 0 || i >= n) throw InvalidArgument("variable index out of range");
  SparsePoly r(p, n);
  Exps e(n, 0);
  e[i] = 1;
  r.add_term(e, 1);
  return r;
}

SparsePoly SparsePoly::from_homog(const HomogPoly& f) {
  SparsePoly r(f.prime(), f.num_vars());
  for (const auto& [m, c] : f.terms()) r.add_term(m.exponents(), c);
  return r;
}

void SparsePoly::add_term(const Exps& e, std::int64_t c) {
  if (static_cast<int>(e.size()) != n_) throw InvalidArgument("exponent vector length mismatch");
  std::uint32_t v = p_.reduce(c);
  if (!v) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, v);
    return;
  }
  it->second = p_.add(it->second, v);
  if (!it->second) terms_.erase(it);
}

std::uint32_t SparsePoly::coeff(const Exps& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

int SparsePoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

bool SparsePoly::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (d >= 0 && s != d) return false;
    d = s;
  }
  return true;
}

HomogPoly SparsePoly::to_homog(int degree) const {
  HomogPoly f(p_, n_, degree);
  for (const auto& [e, c] : terms_) {
    Monomial m(e);
    if (m.degree() != degree) throw InvalidArgument("term of the wrong degree");
    f.set_coeff(m, c);
  }
  return f;
}

void SparsePoly::check_compatible(const SparsePoly& o) const {
  if (!(p_ == o.p_) || n_ != o.n_) throw InvalidArgument("incompatible polynomials");
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly r = *this;
  r += o;
  return r;
}

SparsePoly SparsePoly::operator-() const { return scaled(p_.value() - 1); }

SparsePoly SparsePoly::operator-(const SparsePoly& o) const { return *this + (-o); }

SparsePoly SparsePoly::scaled(std::uint32_t c) const {
  SparsePoly r(p_, n_);
  c %= p_.value();
  if (!c) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, p_.mul(v, c));
  return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  check_compatible(o);
  SparsePoly r(p_, n_);
  Exps e(n_);
  for (const auto& [a, ca] : terms_) {
    for (const auto& [b, cb] : o.terms_) {
      for (int i = 0; i < n_; ++i) e[i] = a[i] + b[i];
      r.add_term(e, p_.mul(ca, cb));
    }
  }
  return r;
}

std::string SparsePoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  // largest degree first, lexicographic within a degree
  std::vector<std::pair<Exps, std::uint32_t>> sorted(terms_.begin(), terms_.end());
  auto deg = [](const Exps& e) {
    int t = 0;
    for (int x : e) t += x;
    return t;
  };
  std::stable_sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
    int da = deg(a.first), db = deg(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  for (const auto& [e, c] : sorted) {
    std::int64_t v = p_.symmetric(c);
    std::string mono;
    for (int i = 0; i < n_; ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += n_ <= 3 ? std::string(1, "xyz"[i]) : "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::int64_t a = v < 0 ? -v : v;
    std::string term;
    if (mono.empty()) {
      term = std::to_string(a);
    } else {
      term = a == 1 ? mono : std::to_string(a) + "*" + mono;
    }
    if (s.empty()) {
      s = v < 0 ? "-" + term : term;
    } else {
      s += v < 0 ? " - " + term : " + " + term;
    }
  }
  return s;
}

PolyMatrix::PolyMatrix(Prime p, int n, std::size_t rows, std::size_t cols)
    : p_(p), n_(n), rows_(rows), cols_(cols), a_(rows * cols, SparsePoly(p, n)) {}

PolyMatrix PolyMatrix::scalar(const SparsePoly& f, std::size_t k) {
  PolyMatrix m(f.prime(), f.num_vars(), k, k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = f;
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidArgument("matrix shapes do not compose");
  PolyMatrix r(p_, n_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const SparsePoly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
      }
    }
  }
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix r(p_, n_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  }
  return r;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool PolyMatrix::is_zero() const {
  for (const auto& e : a_) {
    if (!e.is_zero()) return false;
  }
  return true;
}

int PolyMatrix::max_degree() const {
  int d = -1;
  for (const auto& e : a_) d = std::max(d, e.degree());
  return d;
}

bool PolyMatrix::entries_of_degree(int k) const {
  for (const auto& e : a_) {
    if (!e.is_zero() && (!e.is_homogeneous() || e.degree() != k)) return false;
  }
  return true;
}

FMatrix PolyMatrix::to_scalar() const {
  FMatrix m(p_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const SparsePoly& e = (*this)(i, j);
      if (e.degree() > 0) throw InvalidArgument("matrix entry is not a constant");
      m.set(i, j, e.coeff(SparsePoly::Exps(n_, 0)));
    }
  }
  return m;
}

PolyMatrix PolyMatrix::from_scalar(const FMatrix& m, int n) {
  PolyMatrix r(m.prime(), n, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j)) r(i, j) = SparsePoly::constant(m.prime(), n, m(i, j));
    }
  }
  return r;
}

std::string PolyMatrix::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < rows_; ++i) {
    s += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
    s += "]\n";
  }
  return s;
}

}  // namespace frobetti
