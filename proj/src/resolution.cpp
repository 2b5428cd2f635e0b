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

#include "frobetti/resolution.hpp"

#include <algorithm>
#include <iomanip>
#include <list>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "frobetti/box.hpp"
#include "frobetti/error.hpp"
#include "frobetti/linkage.hpp"

namespace frobetti {

// ---------------------------------------------------------------------------------------
// BettiTable

BettiTable::BettiTable(RingTag ring, int length) : ring_(ring), length_(length) {
  if (length < 0) throw InvalidArgument("negative table length");
}

void BettiTable::set(int i, int j, std::int64_t beta) {
  if (i < 0 || i > length_) throw InvalidArgument("homological degree out of range");
  if (beta < 0) throw InvalidArgument("negative Betti number");
  if (beta == 0) {
    b_.erase({i, j});
  } else {
    b_[{i, j}] = beta;
  }
}

std::int64_t BettiTable::at(int i, int j) const {
  auto it = b_.find({i, j});
  return it == b_.end() ? 0 : it->second;
}

std::int64_t BettiTable::total(int i) const {
  std::int64_t t = 0;
  for (const auto& [k, v] : b_) {
    if (k.first == i) t += v;
  }
  return t;
}

std::vector<int> BettiTable::twists(int i) const {
  std::vector<int> out;
  for (const auto& [k, v] : b_) {
    if (k.first == i) out.insert(out.end(), static_cast<std::size_t>(v), k.second);
  }
  return out;
}

std::string BettiTable::to_text() const {
  std::set<int> rows;
  for (const auto& [k, v] : b_) rows.insert(k.second - k.first);
  std::vector<std::vector<std::string>> cells;  // header, total, rows
  std::vector<std::string> labels;
  auto add_line = [&](std::string label, auto value) {
    labels.push_back(std::move(label));
    std::vector<std::string> line;
    for (int i = 0; i <= length_; ++i) line.push_back(value(i));
    cells.push_back(std::move(line));
  };
  add_line("", [](int i) { return std::to_string(i); });
  add_line("total:", [&](int i) { return std::to_string(total(i)); });
  for (int r : rows) {
    add_line(std::to_string(r) + ":", [&](int i) {
      std::int64_t v = at(i, i + r);
      return v ? std::to_string(v) : std::string(".");
    });
  }
  std::size_t lw = 0;
  for (const auto& l : labels) lw = std::max(lw, l.size());
  std::vector<std::size_t> cw(length_ + 1, 0);
  for (const auto& line : cells) {
    for (int i = 0; i <= length_; ++i) cw[i] = std::max(cw[i], line[i].size());
  }
  std::ostringstream os;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    os << std::setw(static_cast<int>(lw)) << labels[k];
    for (int i = 0; i <= length_; ++i) os << ' ' << std::setw(static_cast<int>(cw[i])) << cells[k][i];
    os << '\n';
  }
  return os.str();
}

std::string BettiTable::to_json() const {
  nlohmann::ordered_json j;
  j["ring"] = ring_ == RingTag::P ? "P" : "R";
  j["length"] = length_;
  auto arr = nlohmann::json::array();
  for (const auto& [k, v] : b_) arr.push_back({k.first, k.second, v});
  j["entries"] = arr;
  return j.dump();
}

BettiTable BettiTable::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad Betti table JSON: ") + e.what());
  }
  const std::string ring = j.at("ring").get<std::string>();
  if (ring != "P" && ring != "R") throw InvalidArgument("ring must be P or R");
  int length = 0;
  if (j.contains("length")) {
    length = j.at("length").get<int>();
  } else {
    for (const auto& e : j.at("entries")) length = std::max(length, e.at(0).get<int>());
  }
  BettiTable t(ring == "P" ? RingTag::P : RingTag::R, length);
  for (const auto& e : j.at("entries")) t.set(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<std::int64_t>());
  return t;
}

BettiTable BettiTable::from_text(std::string_view text, RingTag ring) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> lines;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (!tok.empty()) lines.push_back(tok);
  }
  if (lines.size() < 2) throw InvalidArgument("Betti grid needs a header and a total line");
  const int length = static_cast<int>(lines[0].size()) - 1;
  BettiTable t(ring, length);
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const auto& tok = lines[k];
    if (tok.size() != static_cast<std::size_t>(length) + 2 || tok[0].back() != ':') {
      throw InvalidArgument("malformed Betti grid row");
    }
    const int r = std::stoi(tok[0].substr(0, tok[0].size() - 1));
    for (int i = 0; i <= length; ++i) {
      if (tok[i + 1] != ".") t.set(i, i + r, std::stoll(tok[i + 1]));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------------------
// threads

namespace {
int g_threads = 0;
}

void set_thread_limit(int threads) { g_threads = std::max(0, threads); }

int thread_limit() {
  if (g_threads > 0) return g_threads;
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

namespace {

// ---------------------------------------------------------------------------------------
// Normal forms in P/(f), f possibly absent.

bool key_divides(std::uint64_t a, std::uint64_t b, int n) {
  for (int i = 0; i < n; ++i) {
    int s = Monomial::shift(i);
    if (((a >> s) & kMaxExponent) > ((b >> s) & kMaxExponent)) return false;
  }
  return true;
}

struct RingSlice {
  int degree = 0;
  std::vector<std::uint64_t> std_keys;  // standard monomials, descending
  std::vector<std::int32_t> std_pos;    // per monomial of P_k: position if standard, else -1
  std::vector<std::int32_t> row_of;     // per monomial of P_k: row of table, else -1
  std::vector<std::uint32_t> table;     // normal forms of the non-standard monomials
  std::size_t dim() const { return std_keys.size(); }
  std::span<const std::uint32_t> row(std::size_t r) const {
    return {table.data() + r * dim(), dim()};
  }
};

class RingNF {
 public:
  RingNF(Prime p, int n, const HomogPoly* f) : p_(p), n_(n) {
    if (f && !f->is_zero()) {
      f_terms_ = f->terms();
      d_ = f->degree();
      lead_ = f_terms_.front().first.key();
      lc_inv_ = p.inv(f_terms_.front().second);
    }
  }

  Prime prime() const { return p_; }
  int num_vars() const { return n_; }

  std::shared_ptr<const RingSlice> slice(int k) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(k);
    if (it != cache_.end()) {
      lru_.remove(k);
      lru_.push_front(k);
      return it->second;
    }
    auto s = build(k);
    bytes_ += s->table.size() * 4 + s->std_pos.size() * 8;
    cache_[k] = s;
    lru_.push_front(k);
    while (bytes_ > kBudget && lru_.size() > 1) {
      int victim = lru_.back();
      lru_.pop_back();
      auto v = cache_.find(victim);
      bytes_ -= v->second->table.size() * 4 + v->second->std_pos.size() * 8;
      cache_.erase(v);
    }
    return s;
  }

  std::size_t dim(int k) { return k < 0 ? 0 : slice(k)->dim(); }

 private:
  static constexpr std::size_t kBudget = std::size_t{768} << 20;

  std::shared_ptr<RingSlice> build(int k) {
    auto s = std::make_shared<RingSlice>();
    s->degree = k;
    if (k < 0) return s;
    auto basis = GradedBasis::get(n_, k);
    const std::size_t N = basis->size();
    s->std_pos.assign(N, -1);
    s->row_of.assign(N, -1);
    std::vector<std::size_t> nonstd;
    for (std::size_t i = 0; i < N; ++i) {
      if (d_ > 0 && key_divides(lead_, basis->key(i), n_)) {
        s->row_of[i] = static_cast<std::int32_t>(nonstd.size());
        nonstd.push_back(i);
      } else {
        s->std_pos[i] = static_cast<std::int32_t>(s->std_keys.size());
        s->std_keys.push_back(basis->key(i));
      }
    }
    const std::size_t D = s->std_keys.size();
    s->table.assign(nonstd.size() * D, 0);
    // ascending order: every term of the reduction lies strictly below the monomial
    std::vector<std::uint64_t> acc(D);
    for (std::size_t r = nonstd.size(); r-- > 0;) {
      const std::uint64_t w = basis->key(nonstd[r]) - lead_;
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t t = 1; t < f_terms_.size(); ++t) {
        const std::uint32_t c = p_.mul(p_.neg(f_terms_[t].second), lc_inv_);
        const std::size_t idx = basis->rank_key(f_terms_[t].first.key() + w);
        if (s->std_pos[idx] >= 0) {
          acc[s->std_pos[idx]] += c;
        } else {
          const std::uint32_t* src = s->table.data() + s->row_of[idx] * D;
          for (std::size_t x = 0; x < D; ++x) acc[x] += static_cast<std::uint64_t>(c) * src[x];
        }
      }
      std::uint32_t* dst = s->table.data() + r * D;
      for (std::size_t x = 0; x < D; ++x) dst[x] = static_cast<std::uint32_t>(acc[x] % p_.value());
    }
    return s;
  }

  Prime p_;
  int n_;
  int d_ = 0;
  std::vector<std::pair<Monomial, std::uint32_t>> f_terms_;
  std::uint64_t lead_ = 0;
  std::uint32_t lc_inv_ = 0;
  std::mutex mu_;
  std::map<int, std::shared_ptr<RingSlice>> cache_;
  std::list<int> lru_;
  std::size_t bytes_ = 0;
};

// Accumulator for sums of products below p^2; reduces before 64 bits overflow.
class Accumulator {
 public:
  Accumulator(Prime p, std::size_t len) : p_(p), acc_(len, 0) {
    const std::uint64_t m = static_cast<std::uint64_t>(p.value() - 1) * (p.value() - 1);
    cap_ = m == 0 ? ~0ULL : ~0ULL / m - 1;
  }
  void add(std::size_t pos, std::uint64_t v) {
    acc_[pos] += v;
    tick();
  }
  void add_row(std::size_t off, std::uint32_t c, std::span<const std::uint32_t> row) {
    std::uint64_t* dst = acc_.data() + off;
    for (std::size_t x = 0; x < row.size(); ++x) dst[x] += static_cast<std::uint64_t>(c) * row[x];
    tick();
  }
  std::vector<std::uint32_t> take() {
    std::vector<std::uint32_t> out(acc_.size());
    for (std::size_t x = 0; x < acc_.size(); ++x) out[x] = static_cast<std::uint32_t>(acc_[x] % p_.value());
    return out;
  }

 private:
  void tick() {
    if (++count_ >= cap_) {
      for (auto& a : acc_) a %= p_.value();
      count_ = 0;
    }
  }
  Prime p_;
  std::vector<std::uint64_t> acc_;
  std::uint64_t cap_;
  std::uint64_t count_ = 0;
};

// Homogeneous element of a graded free module: comp[l] lies in R_{degree - twist_l}.
struct Elem {
  int degree = 0;
  std::vector<std::vector<std::uint32_t>> comp;
};

std::vector<std::size_t> offsets(RingNF& ring, const std::vector<int>& tw, int j) {
  std::vector<std::size_t> off(tw.size() + 1, 0);
  for (std::size_t l = 0; l < tw.size(); ++l) off[l + 1] = off[l] + ring.dim(j - tw[l]);
  return off;
}

// u * g written flat in degree deg(g) + deg(u) of the module with twists tw.
void mul_monomial(RingNF& ring, const Elem& g, const std::vector<int>& tw, std::uint64_t u_key,
                  int e, const std::vector<std::size_t>& off, Accumulator& acc) {
  const int n = ring.num_vars();
  for (std::size_t l = 0; l < tw.size(); ++l) {
    const int c = g.degree - tw[l];
    if (c < 0 || g.comp[l].empty()) continue;
    auto src = ring.slice(c);
    auto dst = ring.slice(c + e);
    auto basis = GradedBasis::get(n, c + e);
    for (std::size_t s = 0; s < g.comp[l].size(); ++s) {
      const std::uint32_t h = g.comp[l][s];
      if (!h) continue;
      const std::size_t idx = basis->rank_key(src->std_keys[s] + u_key);
      if (dst->std_pos[idx] >= 0) {
        acc.add(off[l] + dst->std_pos[idx], h);
      } else {
        acc.add_row(off[l], h, dst->row(dst->row_of[idx]));
      }
    }
  }
}

Elem unflatten(RingNF& ring, const std::vector<int>& tw, int j, std::span<const std::uint32_t> v) {
  Elem e;
  e.degree = j;
  auto off = offsets(ring, tw, j);
  e.comp.resize(tw.size());
  for (std::size_t l = 0; l < tw.size(); ++l) e.comp[l].assign(v.begin() + off[l], v.begin() + off[l + 1]);
  return e;
}

// Echelon of the degree-j part of the submodule generated by gens (all of degree < j).
EchelonBasis span_in_degree(RingNF& ring, const std::vector<Elem>& gens, const std::vector<int>& tw,
                            int j, const std::vector<std::size_t>& off) {
  EchelonBasis e(ring.prime(), off.back());
  for (const auto& g : gens) {
    if (g.degree >= j) continue;
    auto us = ring.slice(j - g.degree);
    for (std::uint64_t u : us->std_keys) {
      Accumulator acc(ring.prime(), off.back());
      mul_monomial(ring, g, tw, u, j - g.degree, off, acc);
      auto v = acc.take();
      e.insert(v);
    }
  }
  return e;
}

// Kernel of the map with generator images `images` (in the module with twists tgt) from the
// free module with twists src, in degree j. Rows are flat vectors of the source.
std::vector<std::vector<std::uint32_t>> kernel_in_degree(RingNF& ring, const std::vector<Elem>& images,
                                                         const std::vector<int>& src,
                                                         const std::vector<int>& tgt, int j) {
  auto soff = offsets(ring, src, j);
  auto toff = offsets(ring, tgt, j);
  const std::size_t S = soff.back(), T = toff.back();
  std::vector<std::vector<std::uint32_t>> out;
  if (S == 0) return out;
  if (T == 0) {
    for (std::size_t x = 0; x < S; ++x) {
      std::vector<std::uint32_t> v(S, 0);
      v[x] = 1;
      out.push_back(std::move(v));
    }
    return out;
  }
  FMatrix mt(ring.prime(), T, S);
  for (std::size_t k = 0; k < src.size(); ++k) {
    auto us = ring.slice(j - src[k]);
    for (std::size_t ui = 0; ui < us->std_keys.size(); ++ui) {
      Accumulator acc(ring.prime(), T);
      mul_monomial(ring, images[k], tgt, us->std_keys[ui], j - src[k], toff, acc);
      auto v = acc.take();
      const std::size_t col = soff[k] + ui;
      for (std::size_t t = 0; t < T; ++t) {
        if (v[t]) mt.set(t, col, v[t]);
      }
    }
  }
  FMatrix kb = kernel_basis(mt);
  for (std::size_t r = 0; r < kb.rows(); ++r) out.emplace_back(kb.row(r).begin(), kb.row(r).end());
  return out;
}

// Picks minimal generators of degree j among candidate vectors, given the generators found so
// far (lower degrees). Appends them to gens.
std::size_t select_generators(RingNF& ring, std::vector<Elem>& gens, const std::vector<int>& tw, int j,
                              const std::vector<std::vector<std::uint32_t>>& candidates) {
  if (candidates.empty()) return 0;
  auto off = offsets(ring, tw, j);
  EchelonBasis e = span_in_degree(ring, gens, tw, j, off);
  std::size_t added = 0;
  for (const auto& v : candidates) {
    if (e.rank() == off.back()) break;
    if (e.insert(v)) {
      gens.push_back(unflatten(ring, tw, j, v));
      ++added;
    }
  }
  return added;
}

// Generators of ker(F_src -> F_tgt) over the listed degrees, in ascending order.
std::vector<Elem> syzygy_generators(RingNF& ring, const std::vector<Elem>& images, const std::vector<int>& src,
                                    const std::vector<int>& tgt, const std::vector<int>& degrees) {
  std::vector<Elem> gens;
  const std::size_t batch = static_cast<std::size_t>(thread_limit());
  for (std::size_t b0 = 0; b0 < degrees.size(); b0 += batch) {
    const std::size_t b1 = std::min(degrees.size(), b0 + batch);
    std::vector<std::vector<std::vector<std::uint32_t>>> kernels(b1 - b0);
    if (b1 - b0 == 1) {
      kernels[0] = kernel_in_degree(ring, images, src, tgt, degrees[b0]);
    } else {
      std::vector<std::thread> workers;
      for (std::size_t k = b0; k < b1; ++k) {
        workers.emplace_back([&, k] { kernels[k - b0] = kernel_in_degree(ring, images, src, tgt, degrees[k]); });
      }
      for (auto& w : workers) w.join();
    }
    for (std::size_t k = b0; k < b1; ++k) select_generators(ring, gens, src, degrees[k], kernels[k - b0]);
  }
  return gens;
}

std::vector<int> degrees_of(const std::vector<Elem>& gens) {
  std::vector<int> out;
  for (const auto& g : gens) out.push_back(g.degree);
  return out;
}

SparsePoly to_sparse(RingNF& ring, int degree, const std::vector<std::uint32_t>& coeffs) {
  SparsePoly r(ring.prime(), ring.num_vars());
  if (degree < 0) return r;
  auto s = ring.slice(degree);
  for (std::size_t x = 0; x < coeffs.size(); ++x) {
    if (coeffs[x]) r.add_term(Monomial::from_key(ring.num_vars(), s->std_keys[x]).exponents(), coeffs[x]);
  }
  return r;
}

GradedFreeMap to_map(RingNF& ring, const std::vector<Elem>& images, const std::vector<int>& tgt) {
  GradedFreeMap m{degrees_of(images), tgt, PolyMatrix(ring.prime(), ring.num_vars(), tgt.size(), images.size())};
  for (std::size_t c = 0; c < images.size(); ++c) {
    for (std::size_t r = 0; r < tgt.size(); ++r) {
      m.matrix(r, c) = to_sparse(ring, images[c].degree - tgt[r], images[c].comp[r]);
    }
  }
  return m;
}

std::vector<std::uint32_t> nf_of_poly(RingNF& ring, const HomogPoly& g) {
  auto s = ring.slice(g.degree());
  Accumulator acc(ring.prime(), s->dim());
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    const std::uint32_t c = g.coeffs()[i];
    if (!c) continue;
    if (s->std_pos[i] >= 0) {
      acc.add(s->std_pos[i], c);
    } else {
      acc.add_row(0, c, s->row(s->row_of[i]));
    }
  }
  return acc.take();
}

// Minimal generators of the ideal generated by the given forms, as elements of F_0 = ring.
std::vector<Elem> ideal_generators(RingNF& ring, std::vector<HomogPoly> forms) {
  std::stable_sort(forms.begin(), forms.end(),
                   [](const HomogPoly& a, const HomogPoly& b) { return a.degree() < b.degree(); });
  std::vector<Elem> gens;
  const std::vector<int> tw{0};
  std::size_t k = 0;
  while (k < forms.size()) {
    const int j = forms[k].degree();
    std::vector<std::vector<std::uint32_t>> cand;
    for (; k < forms.size() && forms[k].degree() == j; ++k) cand.push_back(nf_of_poly(ring, forms[k]));
    select_generators(ring, gens, tw, j, cand);
  }
  return gens;
}

std::vector<HomogPoly> frobenius_powers(Prime p, int n, int q) {
  std::vector<HomogPoly> out;
  for (int i = 0; i < n; ++i) out.push_back(HomogPoly::monomial(p, Monomial::variable(n, i, q)));
  return out;
}

void check_instance(const HomogPoly& f, int q) {
  if (q < 1) throw InvalidArgument("q must be positive");
  if (!f.is_zero() && f.degree() >= q) throw PreconditionError("need deg f < q");
  if (!f.is_zero() && f.degree() < 1) throw PreconditionError("need deg f >= 1");
}

BettiTable table_from_steps(RingTag ring, int length, const std::vector<std::vector<Elem>>& steps) {
  BettiTable t(ring, length);
  t.set(0, 0, 1);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::map<int, std::int64_t> c;
    for (const auto& g : steps[i]) ++c[g.degree];
    for (auto [j, v] : c) t.set(static_cast<int>(i) + 1, j, v);
  }
  return t;
}

std::int64_t quotient_dim(const HomogPoly& f, int q, int j) {
  const int n = f.num_vars();
  auto b = BoxSlice::get(n, q, j);
  std::int64_t dim = static_cast<std::int64_t>(b->size());
  if (!f.is_zero() && j >= f.degree()) dim -= static_cast<std::int64_t>(box_mult_rank(f, q, j - f.degree()));
  return dim;
}

}  // namespace

// ---------------------------------------------------------------------------------------
// over P

Resolution resolve_over_P(const HomogPoly& f, int q) {
  check_instance(f, q);
  const int n = f.num_vars();
  RingNF ring(f.prime(), n, nullptr);
  std::vector<HomogPoly> forms = frobenius_powers(f.prime(), n, q);
  if (!f.is_zero()) forms.push_back(f);
  std::vector<std::vector<Elem>> steps;
  std::vector<std::vector<int>> tw{{0}};
  steps.push_back(ideal_generators(ring, forms));
  tw.push_back(degrees_of(steps.back()));
  const int top = n * (q - 1);
  for (int i = 2; i <= n; ++i) {
    const auto& src = tw[i - 1];
    if (src.empty()) break;
    std::vector<int> degs;
    for (int j = *std::min_element(src.begin(), src.end()) + 1; j <= top + i; ++j) degs.push_back(j);
    steps.push_back(syzygy_generators(ring, steps.back(), src, tw[i - 2], degs));
    tw.push_back(degrees_of(steps.back()));
  }
  Resolution res{RingTag::P, q, {}, table_from_steps(RingTag::P, n, steps), {}};
  for (std::size_t i = 0; i < steps.size(); ++i) res.maps.push_back(to_map(ring, steps[i], tw[i]));
  return res;
}

BettiTable betti_over_P(const HomogPoly& f, int q) {
  check_instance(f, q);
  const int n = f.num_vars();
  if (n != 3) return resolve_over_P(f, q).betti;
  const Prime p = f.prime();
  BettiTable t(RingTag::P, 3);
  t.set(0, 0, 1);
  const bool has_f = !f.is_zero();
  const int d = has_f ? f.degree() : 0;
  if (has_f) t.set(1, d, 1);
  {
    // x_i^q modulo f P_{q-d}
    auto basis = GradedBasis::get(n, q);
    EchelonBasis e(p, basis->size());
    if (has_f) {
      auto mb = GradedBasis::get(n, q - d);
      auto terms = f.terms();
      std::vector<std::uint32_t> v(basis->size());
      for (std::size_t u = 0; u < mb->size(); ++u) {
        std::fill(v.begin(), v.end(), 0);
        for (const auto& [m, c] : terms) v[basis->rank_key(m.key() + mb->key(u))] = c;
        e.insert(v);
      }
    }
    const std::size_t r0 = e.rank();
    for (int i = 0; i < n; ++i) {
      std::vector<std::uint32_t> v(basis->size(), 0);
      v[basis->rank(Monomial::variable(n, i, q))] = 1;
      e.insert(v);
    }
    t.set(1, q, t.at(1, q) + static_cast<std::int64_t>(e.rank() - r0));
  }
  for (auto [j, c] : socle_direct(f, q).dims) t.set(3, j + 3, c);
  // Euler characteristic of each degree fixes beta_2
  const int top = n * (q - 1);
  std::vector<std::int64_t> hs(top + 1);
  for (int j = 0; j <= top; ++j) hs[j] = quotient_dim(f, q, j);
  for (int j = 0; j <= top + 3; ++j) {
    std::int64_t c = 0;
    for (int k = 0; k <= 3; ++k) {
      if (j - k >= 0 && j - k <= top) c += (k % 2 ? -1 : 1) * binom(3, k) * hs[j - k];
    }
    const std::int64_t b2 = c - t.at(0, j) + t.at(1, j) + t.at(3, j);
    if (b2 < 0) throw Error("inconsistent Betti numbers in degree " + std::to_string(j));
    t.set(2, j, b2);
  }
  return t;
}

// ---------------------------------------------------------------------------------------
// over R

Resolution resolve_over_R(const HomogPoly& f, int q, int steps, std::optional<int> degree_cap) {
  check_instance(f, q);
  if (f.is_zero()) throw PreconditionError("f must be nonzero");
  if (steps < 1) throw InvalidArgument("steps must be at least 1");
  const int n = f.num_vars(), d = f.degree();
  RingNF ring(f.prime(), n, &f);
  Resolution res{RingTag::R, q, {}, BettiTable(RingTag::R, steps), {}};

  std::vector<std::set<int>> candidates;
  if (!degree_cap) {
    // twists of the Shamash resolution: F_i = sum_k G_{i-2k}(-k d)
    BettiTable g = betti_over_P(f, q);
    candidates.resize(steps + 1);
    for (int i = 0; i <= steps; ++i) {
      for (int k = 0; 2 * k <= i; ++k) {
        if (i - 2 * k > g.length()) continue;
        for (int t : g.twists(i - 2 * k)) candidates[i].insert(t + k * d);
      }
    }
  }

  std::vector<std::vector<Elem>> gens;
  std::vector<std::vector<int>> tw{{0}};
  gens.push_back(ideal_generators(ring, frobenius_powers(f.prime(), n, q)));
  if (gens.back().size() != static_cast<std::size_t>(n)) {
    throw PreconditionError("the Frobenius powers are not independent in R");
  }
  tw.push_back(degrees_of(gens.back()));
  for (int i = 2; i <= steps; ++i) {
    const auto& src = tw[i - 1];
    if (src.empty()) {
      gens.emplace_back();
      tw.emplace_back();
      continue;
    }
    const int lo = *std::min_element(src.begin(), src.end()) + 1;
    std::vector<int> degs;
    int cap = 0;
    if (degree_cap) {
      const int slack = *degree_cap > 0 ? *degree_cap : q + d;
      cap = *std::max_element(src.begin(), src.end()) + slack;
      for (int j = lo; j <= cap; ++j) degs.push_back(j);
    } else {
      for (int j : candidates[i]) {
        if (j >= lo) degs.push_back(j);
      }
    }
    gens.push_back(syzygy_generators(ring, gens.back(), src, tw[i - 2], degs));
    tw.push_back(degrees_of(gens.back()));
    if (degree_cap) {
      for (int j : tw.back()) {
        if (j == cap) {
          throw PreconditionError("generators of F_" + std::to_string(i) + " reach the degree cap " +
                                  std::to_string(cap) + "; rerun with a larger --degree-cap");
        }
      }
    }
  }
  res.betti = table_from_steps(RingTag::R, steps, gens);
  for (std::size_t i = 0; i < gens.size(); ++i) res.maps.push_back(to_map(ring, gens[i], tw[i]));
  if (degree_cap) res.notes.push_back("degree cap scan");
  return res;
}

BettiTable betti_over_R(const HomogPoly& f, int q, int steps, std::optional<int> degree_cap) {
  return resolve_over_R(f, q, steps, degree_cap).betti;
}

// ---------------------------------------------------------------------------------------
// audit

namespace {

// h with g = h * f, if it exists.
std::optional<HomogPoly> divide_exact(const HomogPoly& g, const HomogPoly& f) {
  const Prime p = g.prime();
  const int n = g.num_vars(), d = f.degree();
  if (g.is_zero()) return HomogPoly(p, n, std::max(0, g.degree() - d));
  if (g.degree() < d) return std::nullopt;
  auto terms = f.terms();
  const std::uint64_t lead = terms.front().first.key();
  const std::uint32_t lc_inv = p.inv(terms.front().second);
  auto basis = GradedBasis::get(n, g.degree());
  auto hb = GradedBasis::get(n, g.degree() - d);
  std::vector<std::uint32_t> r = g.coeffs();
  HomogPoly h(p, n, g.degree() - d);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r[i]) continue;
    if (!key_divides(lead, basis->key(i), n)) return std::nullopt;
    const std::uint64_t w = basis->key(i) - lead;
    const std::uint32_t c = p.mul(r[i], lc_inv);
    h.coeffs()[hb->rank_key(w)] = c;
    for (const auto& [m, fc] : terms) {
      std::size_t k = basis->rank_key(m.key() + w);
      r[k] = p.sub(r[k], p.mul(c, fc));
    }
  }
  return h;
}

bool zero_mod_f(const SparsePoly& e, const HomogPoly& f) {
  if (e.is_zero()) return true;
  if (!e.is_homogeneous()) return false;
  return divide_exact(e.to_homog(e.degree()), f).has_value();
}

}  // namespace

ExactnessAudit audit_resolution(const Resolution& res, const HomogPoly& f) {
  ExactnessAudit a;
  for (std::size_t i = 0; i + 1 < res.maps.size(); ++i) {
    const auto& m0 = res.maps[i].matrix;
    const auto& m1 = res.maps[i + 1].matrix;
    if (m0.cols() == 0 || m1.cols() == 0) continue;
    PolyMatrix prod = m0 * m1;
    for (std::size_t r = 0; r < prod.rows(); ++r) {
      for (std::size_t c = 0; c < prod.cols(); ++c) {
        const bool ok = res.ring == RingTag::P ? prod(r, c).is_zero() : zero_mod_f(prod(r, c), f);
        if (!ok) {
          a.compositions_zero = false;
          a.failures.push_back("d_" + std::to_string(i + 1) + " d_" + std::to_string(i + 2) + " != 0");
          r = prod.rows();
          break;
        }
      }
    }
  }
  if (res.ring == RingTag::P) {
    const int n = f.num_vars(), top = n * (res.q - 1);
    const auto& t = res.betti;
    for (int j = 0; j <= top + n + 1; ++j) {
      std::int64_t chi = 0;
      for (int i = 0; i <= t.length(); ++i) {
        for (int tw : t.twists(i)) chi += (i % 2 ? -1 : 1) * static_cast<std::int64_t>(basis_size(n, j - tw));
      }
      const std::int64_t dim = j <= top ? quotient_dim(f, res.q, j) : 0;
      if (chi != dim) {
        a.euler_matches = false;
        a.failures.push_back("Euler characteristic differs in degree " + std::to_string(j));
      }
    }
  }
  return a;
}

// ---------------------------------------------------------------------------------------
// tails

namespace {

std::optional<int> uniform_shift(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size() || a.empty()) return std::nullopt;
  const int s = b.front() - a.front();
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (b[k] - a[k] != s) return std::nullopt;
  }
  return s;
}

}  // namespace

TailInfo detect_periodic_tail(const BettiTable& t) {
  TailInfo info;
  const int L = t.length();
  for (int i0 = 1; i0 + 2 <= L; ++i0) {
    const std::int64_t r = t.total(i0);
    if (r == 0) continue;
    bool ok = true;
    for (int i = i0; i <= L && ok; ++i) ok = t.total(i) == r;
    std::optional<int> shift;
    for (int i = i0; i + 2 <= L && ok; ++i) {
      auto s = uniform_shift(t.twists(i), t.twists(i + 2));
      if (!s || (shift && *s != *shift)) ok = false;
      shift = s;
    }
    if (!ok) continue;
    info.found = true;
    info.start = i0;
    info.rank = r;
    info.period_shift = *shift;
    auto g1 = uniform_shift(t.twists(i0), t.twists(i0 + 1));
    auto g2 = uniform_shift(t.twists(i0 + 1), t.twists(i0 + 2));
    if (g1 && g2) info.gaps = std::make_pair(*g1, *g2);
    return info;
  }
  return info;
}

TailComparison compare_tails(const BettiTable& a, const BettiTable& b) {
  TailComparison c;
  TailInfo ta = detect_periodic_tail(a), tb = detect_periodic_tail(b);
  if (!ta.found || !tb.found) {
    c.message = !ta.found ? "no tail in the first table" : "no tail in the second table";
    return c;
  }
  const int start = std::max(ta.start, tb.start), end = std::min(a.length(), b.length());
  std::optional<int> shift;
  for (int i = start; i <= end; ++i) {
    auto s = uniform_shift(a.twists(i), b.twists(i));
    if (!s || (shift && *s != *shift)) {
      c.message = "tails differ in homological degree " + std::to_string(i);
      return c;
    }
    shift = s;
  }
  if (!shift) {
    c.message = "no common tail range";
    return c;
  }
  c.equal = true;
  c.shift = *shift;
  c.message = "tails equal after shift " + std::to_string(*shift);
  return c;
}

// ---------------------------------------------------------------------------------------
// matrix factorizations

MatrixFactorization extract_tail_mf(const HomogPoly& f, int q, int at_step) {
  if (at_step < 1) throw InvalidArgument("at_step must be at least 1");
  return extract_tail_mf(resolve_over_R(f, q, at_step + 1), f, at_step);
}

MatrixFactorization extract_tail_mf(const Resolution& res, const HomogPoly& f, int at_step) {
  if (res.ring != RingTag::R) throw InvalidArgument("matrix factorizations come from resolutions over R");
  if (at_step < 1 || static_cast<std::size_t>(at_step) + 1 > res.maps.size()) {
    throw InvalidArgument("resolution too short for the requested step");
  }
  const GradedFreeMap& m0 = res.maps[at_step - 1];
  const GradedFreeMap& m1 = res.maps[at_step];
  const std::size_t r = m0.target.size();
  if (r == 0 || m0.source.size() != r || m1.source.size() != r) {
    throw PreconditionError("not a matrix factorization: ranks differ around step " + std::to_string(at_step));
  }
  const Prime p = f.prime();
  const int n = f.num_vars();
  PolyMatrix prod = m0.matrix * m1.matrix;
  FMatrix h(p, r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const SparsePoly& e = prod(i, j);
      if (e.is_zero()) continue;
      if (!e.is_homogeneous() || e.degree() != f.degree()) {
        throw PreconditionError("not a matrix factorization: product entry of the wrong degree");
      }
      auto quo = divide_exact(e.to_homog(f.degree()), f);
      if (!quo) throw PreconditionError("not a matrix factorization: product entry not divisible by f");
      h.set(i, j, quo->coeffs()[0]);
    }
  }
  // invert h through the reduced form of [h | I]
  FMatrix aug(p, r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug.set(i, j, h(i, j));
    aug.set(i, r + i, 1);
  }
  RrefResult red = rref(aug);
  if (red.rank < r || red.pivot_cols[r - 1] >= r) {
    throw PreconditionError("not a matrix factorization: the scalar factor is singular");
  }
  FMatrix hinv(p, r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) hinv.set(i, j, red.reduced(i, r + j));
  }
  PolyMatrix a = m0.matrix;
  PolyMatrix b = m1.matrix * PolyMatrix::from_scalar(hinv, n);
  const PolyMatrix ff = PolyMatrix::scalar(SparsePoly::from_homog(f), r);
  if (!(a * b == ff) || !(b * a == ff)) throw PreconditionError("not a matrix factorization");
  MatrixFactorization mf{a, b, f, at_step, a.max_degree(), b.max_degree()};
  if (mf.a_degree > mf.b_degree) {
    std::swap(mf.a, mf.b);
    std::swap(mf.a_degree, mf.b_degree);
  }
  return mf;
}

}  // namespace frobetti
