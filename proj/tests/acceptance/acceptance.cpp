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

// Acceptance suite: one PASS/FAIL line per criterion, exact comparisons throughout.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "frobetti/cli.hpp"
#include "frobetti/hk.hpp"
#include "frobetti/invsys.hpp"
#include "frobetti/koszul.hpp"
#include "frobetti/linkage.hpp"
#include "frobetti/pfaffian.hpp"
#include "frobetti/resolution.hpp"

using namespace frobetti;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    notes.push_back("fail: " + why);
  }
  void info(const std::string& s) { notes.push_back(s); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

std::string profile_text(const std::map<int, std::int64_t>& m) {
  std::string s = "{";
  for (const auto& [k, v] : m) s += (s.size() > 1 ? ", " : "") + std::to_string(k) + ":" + std::to_string(v);
  return s + "}";
}

struct Instance {
  int p, q, d;
  HomogPoly f;
};

// Random relatively compressed instances over n = 3 with q >= d + 3.
const std::vector<Instance>& compressed_instances() {
  static const std::vector<Instance> list = [] {
    struct Draw {
      int p, q, d;
      std::uint64_t seed;
    };
    const std::vector<Draw> draws = {
        {5, 5, 2, 1},    {7, 7, 2, 1},    {7, 7, 3, 1},    {7, 7, 4, 1},    {11, 11, 2, 1},
        {11, 11, 3, 1},  {11, 11, 4, 1},  {11, 11, 5, 1},  {11, 11, 6, 1},  {5, 25, 2, 1},
        {5, 25, 3, 1},   {5, 25, 4, 1},   {5, 25, 5, 1},   {5, 25, 6, 1},   {7, 49, 3, 1},
        {7, 49, 4, 1},   {11, 11, 3, 2},  {11, 11, 4, 2},  {5, 25, 3, 2},   {5, 25, 4, 2},
        {7, 7, 4, 2},    {11, 11, 6, 2},
    };
    std::vector<Instance> out;
    for (const auto& s : draws) {
      SearchResult r = random_compressed_search(Prime(s.p), 3, s.d, s.q, s.seed, 100);
      if (r.f) out.push_back({s.p, s.q, s.d, *r.f});
    }
    return out;
  }();
  return list;
}

std::string instance_name(const Instance& in) {
  return "p=" + std::to_string(in.p) + " q=" + std::to_string(in.q) + " f=" + format_poly(in.f);
}

// ---------------------------------------------------------------------------------------

Outcome criterion_golden_corpus() {
  Outcome o;
  std::ostringstream out, err;
  auto t0 = std::chrono::steady_clock::now();
  const int code = run_cli({"reproduce-examples"}, out, err);
  o.info("reproduce-examples exit " + std::to_string(code) + " in " + fmt_seconds(seconds_since(t0)));
  if (code != kExitOk) o.fail("reproduce-examples returned " + std::to_string(code) + ": " + err.str());
  std::istringstream lines(out.str());
  std::string line;
  int betti_cases = 0;
  while (std::getline(lines, line)) {
    if (line.rfind("PASS ex", 0) == 0) ++betti_cases;
    if (line.rfind("FAIL", 0) == 0) o.fail(line);
  }
  if (betti_cases != 12) o.fail("expected 12 passing Betti tables, saw " + std::to_string(betti_cases));
  // per-case timing for the largest tables
  for (const char* name : {"ex2-p7-e2", "ex1-diag-e2", "ex2-p5-diag-e2"}) {
    std::ostringstream o2, e2;
    auto t1 = std::chrono::steady_clock::now();
    run_cli({"reproduce-examples", "--only", name}, o2, e2);
    const double s = seconds_since(t1);
    o.info(std::string(name) + " " + fmt_seconds(s));
    if (s > 60.0) o.fail(std::string(name) + " exceeded 60 s");
  }
  return o;
}

Outcome criterion_generator_degrees() {
  Outcome o;
  struct Case {
    int p;
    const char* f;
    int q;
    std::map<int, std::int64_t> counts;
    std::set<int> degrees;
  };
  const std::vector<Case> cases = {
      {5, "x*y^2+y*z^2+z*x^2", 25, {{25, 3}, {35, 3}, {36, 1}}, {}},
      {5, "x*y^2+y*z^2+z*x^2", 125, {{125, 3}, {185, 3}, {186, 1}}, {}},
      {7, "x^4+y^4+z^4", 7, {{7, 6}, {9, 1}}, {}},
      {7, "x^4+y^4+z^4", 49, {}, {49, 70, 72}},
  };
  for (const auto& c : cases) {
    HomogPoly f = parse_poly(c.f, Prime(c.p), 3);
    GeneratorProfile g = measured_generator_profile(f, c.q);
    const std::string label = std::string(c.f) + " p=" + std::to_string(c.p) + " q=" + std::to_string(c.q);
    if (!c.counts.empty() && g.counts != c.counts) o.fail(label + " gave " + profile_text(g.counts));
    if (!c.degrees.empty()) {
      std::set<int> got;
      for (const auto& [k, v] : g.counts) got.insert(k);
      if (got != c.degrees) o.fail(label + " gave " + profile_text(g.counts));
    }
    o.info(label + ": " + profile_text(g.counts));
  }
  return o;
}

Outcome criterion_tail_stability() {
  Outcome o;
  HomogPoly f = parse_poly("x*y^3+y*z^3+z*x^3", Prime(7), 3);
  BettiTable a = betti_over_R(f, 7, 4), b = betti_over_R(f, 49, 4);
  for (const auto* t : {&a, &b}) {
    TailInfo tail = detect_periodic_tail(*t);
    if (!tail.found) {
      o.fail("no tail detected");
      continue;
    }
    if (tail.rank != 8) o.fail("tail rank " + std::to_string(tail.rank));
    if (!tail.gaps || *tail.gaps != std::make_pair(1, 3)) o.fail("tail gaps are not (1, 3)");
  }
  TailComparison cmp = compare_tails(a, b);
  if (!cmp.equal || cmp.shift != 63) o.fail("comparison: " + cmp.message);
  o.info(cmp.message);
  return o;
}

Outcome criterion_hk() {
  Outcome o;
  struct Case {
    int p;
    const char* f;
    int q;
    std::int64_t expected;
  };
  for (const Case& c : {Case{7, "x*y^3+y*z^3+z*x^3", 7, 142}, Case{7, "x*y^3+y*z^3+z*x^3", 49, 7198},
                        Case{5, "x^3*y-x*y^3+x^3*z-x*z^3-y*z^3", 25, 1870}}) {
    HomogPoly f = parse_poly(c.f, Prime(c.p), 3);
    auto t0 = std::chrono::steady_clock::now();
    HKReport r = hk_direct(f, c.q);
    const double s = seconds_since(t0);
    const Rational formula = hk_formula(f.degree(), c.q);
    const std::string label = "q=" + std::to_string(c.q) + " direct " + std::to_string(r.direct);
    if (r.direct != c.expected) o.fail(label + ", expected " + std::to_string(c.expected));
    if (formula != Rational(r.direct)) o.fail(label + " differs from the closed form");
    if (!r.formula_applies) o.fail(label + ": closed form reported inapplicable");
    if (s > 30.0) o.fail(label + " took " + fmt_seconds(s));
    o.info(label + " (" + fmt_seconds(s) + ")");
  }
  return o;
}

Outcome criterion_socles() {
  Outcome o;
  const auto& inst = compressed_instances();
  if (inst.size() < 20) o.fail("only " + std::to_string(inst.size()) + " compressed instances found");
  int even = 0, odd = 0;
  for (const auto& in : inst) {
    SocleReport direct = socle_direct(in.f, in.q);
    SocleReport link = socle_via_link(in.f, in.q);
    if (!(direct == link)) o.fail(instance_name(in) + ": direct " + profile_text(direct.dims) + " vs link " + profile_text(link.dims));
    const int s = 3 * (in.q - 1) - in.d;
    if (s % 2 == 0) {
      ++even;
      std::map<int, std::int64_t> want{{(3 * (in.q - 1) + in.d - 2) / 2, 2 * in.d}};
      if (direct.dims != want) o.fail(instance_name(in) + ": even-s socle " + profile_text(direct.dims));
    } else {
      ++odd;
      const int s1 = 3 * (in.q - 1) - (s + 1) / 2, s3 = s1 - 1;
      auto at = [&](int deg) { return direct.dims.count(deg) ? direct.dims.at(deg) : 0; };
      if (at(s1) != in.d || at(s3) > 3 * in.d || direct.total() != at(s1) + at(s3)) {
        o.fail(instance_name(in) + ": odd-s socle " + profile_text(direct.dims));
      }
    }
  }
  o.info(std::to_string(inst.size()) + " instances (" + std::to_string(even) + " even s, " + std::to_string(odd) + " odd s)");
  return o;
}

Outcome criterion_cokernels() {
  Outcome o;
  int phis = 0;
  for (int n : {2, 3, 4}) {
    for (int s = 2; s <= (n == 4 ? 5 : 8); ++s) {
      for (std::uint64_t seed = 0; seed < 2; ++seed) {
        SplitMix64 rng(1000 * n + 10 * s + seed);
        const Prime p(seed ? 7 : 5);
        DividedElem phi = random_divided(p, n, s, rng);
        ++phis;
        for (int j = 0; j <= s - 1; ++j) {
          if (std::int64_t c = c_rank(phi, 0, j); c != 0) {
            o.fail("C_{0," + std::to_string(j) + "} = " + std::to_string(c) + " for n=" + std::to_string(n) + " s=" + std::to_string(s));
          }
        }
      }
    }
  }
  o.info("C_0 vanishes on " + std::to_string(phis) + " random inverse polynomials");

  int boundary_fail = 0, upper_ok = 0, upper_total = 0;
  for (const auto& in : compressed_instances()) {
    DividedElem phi = link_inverse_poly(in.f, in.q);
    const int s = phi.degree();
    const int m_low = (s - 1) / 2;  // smallest integer m with m >= s/2 - 1
    for (int m = m_low; m <= s - 1; ++m) {
      const std::int64_t c = c_rank(phi, 1, s - m - 1);
      if (2 * m >= s) {
        ++upper_total;
        if (c == 0) ++upper_ok;
      }
      if (c != 0) {
        if (2 * m < s) ++boundary_fail;
        o.fail(instance_name(in) + ": C_{1," + std::to_string(s - m - 1) + "} = " + std::to_string(c) + " at m=" +
               std::to_string(m) + " (s=" + std::to_string(s) + ")");
      }
    }
  }
  o.info("nonzero C_1 below m = s/2: " + std::to_string(boundary_fail) + " instances; for m >= s/2: " +
         std::to_string(upper_ok) + "/" + std::to_string(upper_total) + " vanish");
  return o;
}

Outcome criterion_catalecticant_duality() {
  Outcome o;
  int count = 0;
  for (int n : {1, 2, 3, 4}) {
    for (int s = 0; s <= 7; ++s) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        SplitMix64 rng(7919 * n + 31 * s + seed);
        const Prime p(seed == 0 ? 2 : seed == 1 ? 5 : 101);
        DividedElem phi = random_divided(p, n, s, rng);
        ++count;
        for (int i = 0; i <= s; ++i) {
          if (!(catalecticant(phi, i) == catalecticant(phi, s - i).transpose())) {
            o.fail("n=" + std::to_string(n) + " s=" + std::to_string(s) + " i=" + std::to_string(i));
          }
        }
      }
    }
  }
  o.info(std::to_string(count) + " random inverse polynomials, every i");
  return o;
}

SkewPolyMatrix random_scalar_skew(Prime p, std::size_t size, SplitMix64& rng) {
  SkewPolyMatrix x(p, 1, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      x.set(i, j, SparsePoly::constant(p, 1, static_cast<std::int64_t>(rng.uniform(p.value()))));
    }
  }
  return x;
}

SparsePoly random_linear(Prime p, int n, SplitMix64& rng) {
  SparsePoly out(p, n);
  for (int v = 0; v < n; ++v) {
    out += SparsePoly::variable(p, n, v).scaled(static_cast<std::uint32_t>(rng.uniform(p.value())));
  }
  return out;
}

Outcome criterion_pfaffians() {
  Outcome o;
  SplitMix64 rng(2026);
  int squares = 0;
  for (std::size_t size : {2u, 4u, 6u, 8u, 10u}) {
    for (int rep = 0; rep < 24; ++rep) {
      const Prime p(rep % 3 == 0 ? 3 : rep % 3 == 1 ? 7 : 10007);
      SkewPolyMatrix x = random_scalar_skew(p, size, rng);
      SparsePoly pf = pfaffian(x);
      const std::uint32_t det = scalar_determinant(x.matrix().to_scalar());
      const std::uint32_t pf0 = pf.coeff(std::vector<int>(1, 0));
      if (p.mul(pf0, pf0) != det) o.fail("Pf^2 != det at size " + std::to_string(size));
      ++squares;
    }
  }
  int adjoints = 0;
  for (std::size_t size : {2u, 4u, 6u, 8u}) {
    for (int rep = 0; rep < 6; ++rep) {
      const Prime p(rep % 2 ? 5 : 31);
      SkewPolyMatrix x(p, 3, size);
      if (rep < 3) {
        x = random_scalar_skew(p, size, rng);
      } else {
        for (std::size_t i = 0; i < size; ++i)
          for (std::size_t j = i + 1; j < size; ++j) x.set(i, j, random_linear(p, 3, rng));
      }
      SkewPolyMatrix adj = pfaffian_adjoint(x);
      PolyMatrix want = PolyMatrix::scalar(pfaffian(x), size);
      if (!(x.matrix() * adj.matrix() == want) || !(adj.matrix() * x.matrix() == want)) {
        o.fail("X X^v != Pf(X) I at size " + std::to_string(size));
      }
      ++adjoints;
    }
  }
  o.info(std::to_string(squares) + " Pf^2 = det checks, " + std::to_string(adjoints) + " adjoint identities");

  HomogPoly f = parse_poly("x*y^3+y*z^3+z*x^3", Prime(7), 3);
  std::vector<MatrixFactorization> tails;
  for (int q : {7, 49}) {
    MatrixFactorization mf = extract_tail_mf(f, q, 3);
    PfCertificate cert = certify_pf_of_tail(mf.a, f);
    if (!cert.certified) o.fail("tail at q=" + std::to_string(q) + " not certified");
    o.info("q=" + std::to_string(q) + ": det A = " + std::to_string(Prime(7).symmetric(cert.unit)) + " f^2");
    tails.push_back(mf);
  }
  int controls = 0;
  const Prime p7(7);
  for (int rep = 0; rep < 12; ++rep) {
    PolyMatrix a(p7, 3, 8, 8);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j) a(i, j) = random_linear(p7, 3, rng);
    if (certify_pf_of_tail(a, f).certified) o.fail("random linear 8x8 matrix certified");
    ++controls;
  }
  for (int rep = 0; rep < 12; ++rep) {
    // The (i, j) cofactor of A is c f B(j, i), so adding a linear form at an entry with
    // B(j, i) != 0 moves det A off the line k f^2 (f is irreducible).
    const MatrixFactorization& mf = tails[rep % 2];
    PolyMatrix a = mf.a;
    std::size_t i = 0, j = 0;
    do {
      i = rng.uniform(8);
      j = rng.uniform(8);
    } while (mf.b(j, i).is_zero());
    a(i, j) += SparsePoly::variable(p7, 3, static_cast<int>(rng.uniform(3))).scaled(1 + static_cast<std::uint32_t>(rng.uniform(6)));
    if (certify_pf_of_tail(a, f).certified) o.fail("perturbed tail matrix certified");
    ++controls;
  }
  o.info(std::to_string(controls) + " negative controls rejected");
  return o;
}

Outcome criterion_hilbert_series() {
  Outcome o;
  int checked = 0;
  for (const auto& in : compressed_instances()) {
    if ((in.q + in.d) % 2 == 0) continue;
    SeriesCheck c = hilbert_series_check(in.f, in.q);
    ++checked;
    if (c.verdict != SeriesVerdict::True) o.fail(instance_name(in) + ": " + to_string(c.verdict) + " " + c.reason);
  }
  if (checked == 0) o.fail("no opposite-parity instances");
  o.info(std::to_string(checked) + " opposite-parity instances");
  return o;
}

Outcome criterion_four_variables() {
  Outcome o;
  for (int q : {8, 16}) {
    // q need not be a power of the characteristic here
    SearchResult r = random_compressed_search(Prime(101), 4, 2, q, 3, 50);
    if (!r.f) {
      o.fail("no compressed quadric found for q=" + std::to_string(q));
      continue;
    }
    GeneratorProfile g = measured_generator_profile(*r.f, q);
    const std::int64_t non_ci = g.total() - 4;
    const std::int64_t want = even_generator_count(4, 2, q);
    if (!g.ci_minimal || non_ci != want) {
      o.fail("q=" + std::to_string(q) + ": measured " + std::to_string(non_ci) + ", expected " + std::to_string(want));
    }
    o.info("q=" + std::to_string(q) + ": " + std::to_string(non_ci) + " non-CI generators, binomial count " + std::to_string(want));
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden Betti corpus", criterion_golden_corpus},
      {"link generator degrees", criterion_generator_degrees},
      {"tail stability under Frobenius", criterion_tail_stability},
      {"Hilbert-Kunz closed form", criterion_hk},
      {"socle direct vs link", criterion_socles},
      {"cokernel vanishing", criterion_cokernels},
      {"catalecticant duality", criterion_catalecticant_duality},
      {"Pfaffian suite", criterion_pfaffians},
      {"Hilbert series identity", criterion_hilbert_series},
      {"four-variable generator count", criterion_four_variables},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << k + 1 << " (" << criteria[k].first << "): " << (o.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& note : o.notes) {
      std::cout << "    " << note << "\n";
    }
    std::cout.flush();
  }
  std::cout << failures << " of " << criteria.size() << " criteria failed\n";
  return failures == 0 ? 0 : 1;
}
