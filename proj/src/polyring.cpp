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

#include "frobetti/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace frobetti {

std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Monomial::Monomial(std::initializer_list<int> exps) : Monomial(std::vector<int>(exps)) {}

Monomial::Monomial(const std::vector<int>& exps) {
  if (exps.empty() || exps.size() > static_cast<std::size_t>(kMaxVars)) {
    throw InvalidArgument("monomials support 1 to 5 variables");
  }
  n_ = static_cast<int>(exps.size());
  for (int i = 0; i < n_; ++i) {
    if (exps[i] < 0 || exps[i] > kMaxExponent) throw InvalidArgument("exponent out of range");
    key_ |= static_cast<std::uint64_t>(exps[i]) << shift(i);
    deg_ += exps[i];
  }
}

Monomial Monomial::from_key(int n, std::uint64_t key) {
  Monomial m;
  m.n_ = n;
  m.key_ = key;
  for (int i = 0; i < n; ++i) m.deg_ += m[i];
  return m;
}

Monomial Monomial::variable(int n, int i, int power) {
  std::vector<int> e(n, 0);
  e.at(i) = power;
  return Monomial(e);
}

std::vector<int> Monomial::exponents() const {
  std::vector<int> e(n_);
  for (int i = 0; i < n_; ++i) e[i] = (*this)[i];
  return e;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial m;
  m.n_ = n_;
  m.deg_ = deg_ + o.deg_;
  for (int i = 0; i < n_; ++i) {
    if ((*this)[i] + o[i] > kMaxExponent) throw InvalidArgument("exponent overflow");
  }
  m.key_ = key_ + o.key_;
  return m;
}

bool Monomial::divides(const Monomial& o) const noexcept {
  for (int i = 0; i < n_; ++i)
    if ((*this)[i] > o[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  if (!o.divides(*this)) throw InvalidArgument("monomial division is not exact");
  return from_key(n_, key_ - o.key_);
}

std::size_t basis_size(int n, int degree) {
  if (degree < 0) return 0;
  return static_cast<std::size_t>(binom(degree + n - 1, n - 1));
}

namespace {

void enumerate(int n, int var, int remaining, std::uint64_t prefix, std::vector<std::uint64_t>& out) {
  if (var == n - 1) {
    out.push_back(prefix | (static_cast<std::uint64_t>(remaining) << Monomial::shift(var)));
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    enumerate(n, var + 1, remaining - e, prefix | (static_cast<std::uint64_t>(e) << Monomial::shift(var)),
              out);
  }
}

}  // namespace

GradedBasis::GradedBasis(int n, int degree) : n_(n), degree_(degree) {
  if (n < 1 || n > kMaxVars) throw InvalidArgument("number of variables must be 1..5");
  if (degree > kMaxExponent) throw InvalidArgument("degree out of range");
  if (degree < 0) return;
  keys_.reserve(basis_size(n, degree));
  enumerate(n, 0, degree, 0, keys_);
}

std::shared_ptr<const GradedBasis> GradedBasis::get(int n, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const GradedBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, degree}];
  if (!slot) slot.reset(new GradedBasis(n, degree));
  return slot;
}

std::size_t GradedBasis::rank_key(std::uint64_t key) const {
  std::size_t idx = 0;
  std::int64_t rem = degree_;
  for (int k = 0; k + 1 < n_; ++k) {
    std::int64_t e = static_cast<std::int64_t>((key >> Monomial::shift(k)) & kMaxExponent);
    idx += static_cast<std::size_t>(binom(rem - e + n_ - k - 2, n_ - k - 1));
    rem -= e;
  }
  return idx;
}

std::size_t GradedBasis::rank(const Monomial& m) const {
  if (m.num_vars() != n_ || m.degree() != degree_) {
    throw InvalidArgument("monomial does not belong to this basis");
  }
  return rank_key(m.key());
}

template <class Tag>
GradedElement<Tag>::GradedElement(Prime p, int n, int degree)
    : p_(p), n_(n), degree_(degree), basis_(GradedBasis::get(n, degree)),
      coeffs_(basis_->size(), 0) {}

template <class Tag>
GradedElement<Tag>::GradedElement(Prime p, int n, int degree, std::vector<std::uint32_t> coeffs)
    : p_(p), n_(n), degree_(degree), basis_(GradedBasis::get(n, degree)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_->size()) throw InvalidArgument("coefficient vector has wrong length");
  for (auto& c : coeffs_) c %= p_.value();
}

template <class Tag>
GradedElement<Tag> GradedElement<Tag>::from_terms(
    Prime p, int n, int degree, const std::vector<std::pair<Monomial, std::int64_t>>& terms) {
  GradedElement e(p, n, degree);
  for (const auto& [m, c] : terms) {
    std::size_t i = e.basis_->rank(m);
    e.coeffs_[i] = p.add(e.coeffs_[i], p.reduce(c));
  }
  return e;
}

template <class Tag>
GradedElement<Tag> GradedElement<Tag>::monomial(Prime p, const Monomial& m, std::uint32_t c) {
  GradedElement e(p, m.num_vars(), m.degree());
  e.coeffs_[e.basis_->rank(m)] = c % p.value();
  return e;
}

template <class Tag>
std::uint32_t GradedElement<Tag>::coeff(const Monomial& m) const {
  return coeffs_[basis_->rank(m)];
}

template <class Tag>
void GradedElement<Tag>::set_coeff(const Monomial& m, std::int64_t c) {
  coeffs_[basis_->rank(m)] = p_.reduce(c);
}

template <class Tag>
bool GradedElement<Tag>::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint32_t c) { return c == 0; });
}

template <class Tag>
std::size_t GradedElement<Tag>::num_terms() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coeffs_.begin(), coeffs_.end(), [](std::uint32_t c) { return c != 0; }));
}

template <class Tag>
std::vector<std::pair<Monomial, std::uint32_t>> GradedElement<Tag>::terms() const {
  std::vector<std::pair<Monomial, std::uint32_t>> out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i]) out.emplace_back(basis_->monomial(i), coeffs_[i]);
  return out;
}

template <class Tag>
std::pair<Monomial, std::uint32_t> GradedElement<Tag>::leading_term() const {
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i]) return {basis_->monomial(i), coeffs_[i]};
  throw InvalidArgument("leading term of zero");
}

template <class Tag>
void GradedElement<Tag>::check_compatible(const GradedElement& o) const {
  if (!(p_ == o.p_) || n_ != o.n_ || degree_ != o.degree_) {
    throw InvalidArgument("incompatible graded elements");
  }
}

template <class Tag>
GradedElement<Tag> GradedElement<Tag>::operator+(const GradedElement& o) const {
  check_compatible(o);
  GradedElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = p_.add(r.coeffs_[i], o.coeffs_[i]);
  return r;
}

template <class Tag>
GradedElement<Tag> GradedElement<Tag>::operator-(const GradedElement& o) const {
  check_compatible(o);
  GradedElement r = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = p_.sub(r.coeffs_[i], o.coeffs_[i]);
  return r;
}

template <class Tag>
GradedElement<Tag> GradedElement<Tag>::operator-() const {
  GradedElement r = *this;
  for (auto& c : r.coeffs_) c = p_.neg(c);
  return r;
}

template <class Tag>
GradedElement<Tag> GradedElement<Tag>::scaled(std::uint32_t c) const {
  GradedElement r = *this;
  for (auto& v : r.coeffs_) v = p_.mul(v, c);
  return r;
}

template <class Tag>
bool GradedElement<Tag>::operator==(const GradedElement& o) const noexcept {
  return p_ == o.p_ && n_ == o.n_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
}

template class GradedElement<PolyTag>;
template class GradedElement<DividedTag>;

DividedElem contract(const Monomial& m, const DividedElem& g) {
  if (m.num_vars() != g.num_vars()) throw InvalidArgument("variable count mismatch");
  if (m.degree() > g.degree()) throw InvalidArgument("contraction degree underflow");
  DividedElem out(g.prime(), g.num_vars(), g.degree() - m.degree());
  const GradedBasis& gb = g.basis();
  const GradedBasis& ob = out.basis();
  for (std::size_t i = 0; i < gb.size(); ++i) {
    std::uint32_t c = g.coeffs()[i];
    if (!c) continue;
    Monomial b = gb.monomial(i);
    if (m.divides(b)) out.coeffs()[ob.rank_key(b.key() - m.key())] = c;
  }
  return out;
}

DividedElem poly_apply(const HomogPoly& f, const DividedElem& g) {
  if (!(f.prime() == g.prime())) throw InvalidArgument("prime mismatch");
  if (f.degree() > g.degree()) throw InvalidArgument("contraction degree underflow");
  const Prime p = f.prime();
  DividedElem out(p, g.num_vars(), g.degree() - f.degree());
  for (const auto& [m, c] : f.terms()) {
    DividedElem part = contract(m, g);
    for (std::size_t i = 0; i < part.coeffs().size(); ++i) {
      if (part.coeffs()[i]) out.coeffs()[i] = p.add(out.coeffs()[i], p.mul(c, part.coeffs()[i]));
    }
  }
  return out;
}

HomogPoly poly_mul(const HomogPoly& a, const HomogPoly& b) {
  if (!(a.prime() == b.prime()) || a.num_vars() != b.num_vars()) {
    throw InvalidArgument("incompatible polynomials");
  }
  const Prime p = a.prime();
  HomogPoly out(p, a.num_vars(), a.degree() + b.degree());
  const GradedBasis& ob = out.basis();
  auto bt = b.terms();
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : bt) {
      std::size_t i = ob.rank_key((ma * mb).key());
      out.coeffs()[i] = p.add(out.coeffs()[i], p.mul(ca, cb));
    }
  }
  return out;
}

HomogPoly poly_mul(const HomogPoly& a, const Monomial& m) {
  HomogPoly out(a.prime(), a.num_vars(), a.degree() + m.degree());
  const GradedBasis& ab = a.basis();
  const GradedBasis& ob = out.basis();
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (a.coeffs()[i]) out.coeffs()[ob.rank_key(ab.key(i) + m.key())] = a.coeffs()[i];
  }
  return out;
}

std::string variable_name(int n, int i) {
  if (n <= 3) return std::string(1, "xyz"[i]);
  return "x" + std::to_string(i + 1);
}

std::string format_monomial(const Monomial& m) {
  std::string s;
  for (int i = 0; i < m.num_vars(); ++i) {
    int e = m[i];
    if (!e) continue;
    if (!s.empty()) s += "*";
    s += variable_name(m.num_vars(), i);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string format_poly(const HomogPoly& f) {
  std::string s;
  for (const auto& [m, c] : f.terms()) {
    std::int64_t v = f.prime().symmetric(c);
    bool neg = v < 0;
    std::int64_t a = neg ? -v : v;
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    std::string mono = format_monomial(m);
    if (m.degree() == 0) {
      s += std::to_string(a);
    } else if (a == 1) {
      s += mono;
    } else {
      s += std::to_string(a) + "*" + mono;
    }
  }
  return s.empty() ? "0" : s;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, Prime p, int n) : t_(text), p_(p), n_(n) {}

  HomogPoly run() {
    std::vector<std::pair<Monomial, std::int64_t>> terms;
    skip();
    if (eof()) fail("empty polynomial");
    bool first = true;
    while (!eof()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++i_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      terms.push_back(term(sign));
      first = false;
      skip();
    }
    int deg = -1;
    for (const auto& [m, c] : terms) {
      if (p_.reduce(c) == 0) continue;
      if (deg < 0) deg = m.degree();
      if (m.degree() != deg) throw InvalidArgument("polynomial is not homogeneous");
    }
    if (deg < 0) deg = terms.front().first.degree();
    std::vector<std::pair<Monomial, std::int64_t>> kept;
    for (const auto& t : terms)
      if (t.first.degree() == deg) kept.push_back(t);
    return HomogPoly::from_terms(p_, n_, deg, kept);
  }

 private:
  bool eof() const { return i_ >= t_.size(); }
  char peek() const { return t_[i_]; }
  void skip() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidArgument("cannot parse polynomial at position " + std::to_string(i_) + ": " + msg);
  }

  std::int64_t number() {
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number");
    std::int64_t v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = (v * 10 + (peek() - '0')) % static_cast<std::int64_t>(p_.value());
      ++i_;
    }
    return v;
  }

  int exponent_number() {
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an exponent");
    std::int64_t v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (peek() - '0');
      if (v > kMaxExponent) fail("exponent too large");
      ++i_;
    }
    return static_cast<int>(v);
  }

  int variable() {
    char c = peek();
    if (c == 'x' && i_ + 1 < t_.size() && std::isdigit(static_cast<unsigned char>(t_[i_ + 1]))) {
      ++i_;
      int k = exponent_number();
      if (k < 1 || k > n_) fail("variable index out of range");
      return k - 1;
    }
    if (n_ <= 3) {
      const std::string names = "xyz";
      auto pos = names.find(c);
      if (pos != std::string::npos && static_cast<int>(pos) < n_) {
        ++i_;
        return static_cast<int>(pos);
      }
    }
    fail("unknown variable");
  }

  std::pair<Monomial, std::int64_t> term(int sign) {
    std::int64_t coeff = sign;
    std::vector<int> e(n_, 0);
    bool any = false;
    while (true) {
      skip();
      if (eof()) fail("dangling operator");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = coeff * number() % static_cast<std::int64_t>(p_.value());
      } else {
        int v = variable();
        skip();
        int pw = 1;
        if (!eof() && peek() == '^') {
          ++i_;
          skip();
          pw = exponent_number();
        }
        e[v] += pw;
        if (e[v] > kMaxExponent) fail("exponent too large");
      }
      any = true;
      skip();
      if (!eof() && peek() == '*') {
        ++i_;
        continue;
      }
      if (!eof() && (peek() == 'x' || peek() == 'y' || peek() == 'z')) continue;
      break;
    }
    if (!any) fail("empty term");
    return {Monomial(e), coeff};
  }

  std::string_view t_;
  std::size_t i_ = 0;
  Prime p_;
  int n_;
};

}  // namespace

HomogPoly parse_poly(std::string_view text, Prime p, int n) {
  if (n < 1 || n > kMaxVars) throw InvalidArgument("number of variables must be 1..5");
  return Parser(text, p, n).run();
}

}  // namespace frobetti
