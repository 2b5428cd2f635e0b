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

#include "frobetti/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobetti/error.hpp"
#include "frobetti/hk.hpp"
#include "frobetti/invsys.hpp"
#include "frobetti/koszul.hpp"
#include "frobetti/linkage.hpp"
#include "frobetti/pfaffian.hpp"
#include "frobetti/resolution.hpp"

#ifndef FROBETTI_DEFAULT_GOLDEN_DIR
#define FROBETTI_DEFAULT_GOLDEN_DIR "golden"
#endif

namespace frobetti {

using Json = nlohmann::ordered_json;

std::string golden_dir() {
  if (const char* env = std::getenv("FROBETTI_GOLDEN_DIR"); env && *env) return env;
  return FROBETTI_DEFAULT_GOLDEN_DIR;
}

namespace {

constexpr const char* kGrammar =
    "Polynomials: sums of terms c*m with optional sign and integer coefficient; a monomial is a "
    "product of powers v or v^e joined by '*' or juxtaposition. Variables are x, y, z for n <= 3 "
    "and x1 .. xn otherwise. Every term must have the same degree. Example: \"x^3*y - x*y^3\".";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Instance {
  HomogPoly f;
  bool random = false;
};

Instance make_instance(const JobConfig& c) {
  if (!is_prime(c.p)) throw UsageError("-p must be a prime");
  if (c.n < 1 || c.n > kMaxVars) throw UsageError("-n must be between 1 and 5");
  if (c.f.empty()) throw UsageError("-f is required");
  const Prime p(c.p);
  if (c.f == "random") {
    if (c.d < 1) throw UsageError("-f random needs -d >= 1");
    SplitMix64 rng(c.seed);
    return {random_form(p, c.n, c.d, rng), true};
  }
  try {
    return {parse_poly(c.f, p, c.n), false};
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("cannot parse -f: ") + e.what());
  }
}

void check_qs(const JobConfig& c, bool required = true) {
  if (required && c.qs.empty()) throw UsageError("-q is required");
  for (int q : c.qs) {
    if (q < 2) throw UsageError("q must be at least 2");
    if (!c.allow_any_q && !is_power_of(static_cast<std::uint64_t>(q), c.p)) {
      throw UsageError("q = " + std::to_string(q) + " is not a power of p = " + std::to_string(c.p) +
                       " (pass --allow-any-q to override)");
    }
  }
}

Json header(const std::string& cmd, const JobConfig& c, const Instance& inst) {
  Json j;
  j["command"] = cmd;
  j["p"] = c.p;
  j["n"] = c.n;
  j["f"] = format_poly(inst.f);
  j["d"] = inst.f.degree();
  if (inst.random) {
    j["seed"] = c.seed;
  } else {
    j["seed"] = nullptr;
  }
  return j;
}

std::string header_line(const JobConfig& c, const Instance& inst) {
  std::ostringstream os;
  os << "f = " << format_poly(inst.f) << "  (p = " << c.p << ", n = " << c.n << ", d = " << inst.f.degree();
  if (inst.random) os << ", random seed " << c.seed;
  os << ")\n";
  return os.str();
}

std::string map_text(const std::map<int, std::int64_t>& m) {
  std::string s = "{";
  for (const auto& [k, v] : m) {
    if (s.size() > 1) s += ", ";
    s += std::to_string(k) + ": " + std::to_string(v);
  }
  return s + "}";
}

Json map_json(const std::map<int, std::int64_t>& m) {
  Json arr = Json::array();
  for (const auto& [k, v] : m) arr.push_back({k, v});
  return arr;
}

std::string rational_text(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Json tail_json(const TailInfo& t) {
  Json j;
  j["found"] = t.found;
  if (t.found) {
    j["start"] = t.start;
    j["rank"] = t.rank;
    j["period_shift"] = t.period_shift;
    if (t.gaps) {
      j["gaps"] = {t.gaps->first, t.gaps->second};
    } else {
      j["gaps"] = nullptr;
    }
  }
  return j;
}

std::string tail_text(const TailInfo& t) {
  if (!t.found) return "tail: none\n";
  std::ostringstream os;
  os << "tail: from " << t.start << ", rank " << t.rank << ", period shift " << t.period_shift;
  if (t.gaps) os << ", gaps (" << t.gaps->first << ", " << t.gaps->second << ")";
  os << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------------------

int cmd_check_compressed(const JobConfig& c, std::ostream& out) {
  Instance inst = make_instance(c);
  check_qs(c);
  if (c.mode != "quick" && c.mode != "full") throw UsageError("--mode must be quick or full");
  const CheckMode mode = c.mode == "full" ? CheckMode::Full : CheckMode::Quick;
  Json j = header("check-compressed", c, inst);
  j["reports"] = Json::array();
  std::string text = header_line(c, inst);
  for (int q : c.qs) {
    CompressedReport r = is_relatively_compressed(inst.f, q, mode);
    Json rj;
    rj["q"] = q;
    rj["s"] = r.s;
    rj["mode"] = c.mode;
    rj["compressed"] = r.compressed;
    rj["degrees"] = Json::array();
    for (const auto& dc : r.degrees) {
      rj["degrees"].push_back({{"degree", dc.degree}, {"measured", dc.measured}, {"expected", dc.expected}});
    }
    rj["warnings"] = r.warnings;
    j["reports"].push_back(rj);
    text += "q = " + std::to_string(q) + ": " + (r.compressed ? "compressed" : "not compressed") +
            " (s = " + std::to_string(r.s) + ", " + c.mode + ")\n";
    for (const auto& dc : r.degrees) {
      if (dc.measured != dc.expected) {
        text += "  degree " + std::to_string(dc.degree) + ": H = " + std::to_string(dc.measured) +
                ", expected " + std::to_string(dc.expected) + "\n";
      }
    }
    for (const auto& w : r.warnings) text += "  warning: " + w + "\n";
  }
  out << (c.format == "json" ? j.dump(2) + "\n" : text);
  return kExitOk;
}

int cmd_betti(const JobConfig& c, const std::string& ring, std::ostream& out) {
  Instance inst = make_instance(c);
  check_qs(c);
  if (c.steps < 1) throw UsageError("--steps must be at least 1");
  if (ring != "R" && ring != "P") throw UsageError("--ring must be R or P");
  Json j = header("betti", c, inst);
  j["ring"] = ring;
  j["steps"] = ring == "R" ? c.steps : c.n;
  j["results"] = Json::array();
  std::string text = header_line(c, inst);
  std::vector<BettiTable> tables;
  for (int q : c.qs) {
    BettiTable t = ring == "R" ? betti_over_R(inst.f, q, c.steps, c.degree_cap) : betti_over_P(inst.f, q);
    TailInfo tail = detect_periodic_tail(t);
    Json rj;
    rj["q"] = q;
    rj["betti"] = Json::parse(t.to_json());
    rj["tail"] = tail_json(tail);
    j["results"].push_back(rj);
    text += "\nq = " + std::to_string(q) + " over " + ring + "\n" + t.to_text() + tail_text(tail);
    tables.push_back(std::move(t));
  }
  j["comparisons"] = Json::array();
  for (std::size_t k = 0; k + 1 < tables.size(); ++k) {
    TailComparison cmp = compare_tails(tables[k], tables[k + 1]);
    j["comparisons"].push_back({{"q0", c.qs[k]},
                                {"q1", c.qs[k + 1]},
                                {"equal", cmp.equal},
                                {"shift", cmp.equal ? Json(cmp.shift) : Json(nullptr)},
                                {"message", cmp.message}});
    text += "\nq = " + std::to_string(c.qs[k]) + " -> " + std::to_string(c.qs[k + 1]) + ": " + cmp.message + "\n";
  }
  out << (c.format == "json" ? j.dump(2) + "\n" : text);
  return kExitOk;
}

int cmd_socle(const JobConfig& c, std::ostream& out) {
  Instance inst = make_instance(c);
  check_qs(c);
  Json j = header("socle", c, inst);
  j["results"] = Json::array();
  std::string text = header_line(c, inst);
  for (int q : c.qs) {
    SocleReport direct = socle_direct(inst.f, q);
    Json rj;
    rj["q"] = q;
    rj["direct"] = map_json(direct.dims);
    rj["total"] = direct.total();
    text += "q = " + std::to_string(q) + ": socle " + map_text(direct.dims) + " (total " +
            std::to_string(direct.total()) + ")";
    try {
      SocleReport link = socle_via_link(inst.f, q);
      rj["via_link"] = map_json(link.dims);
      rj["agree"] = link == direct;
      text += "; via link " + map_text(link.dims) + (link == direct ? ": agree\n" : ": DIFFER\n");
    } catch (const PreconditionError& e) {
      rj["via_link"] = nullptr;
      rj["agree"] = nullptr;
      rj["note"] = e.what();
      text += std::string("; via link unavailable: ") + e.what() + "\n";
    }
    j["results"].push_back(rj);
  }
  out << (c.format == "json" ? j.dump(2) + "\n" : text);
  return kExitOk;
}

int cmd_hk(const JobConfig& c, std::ostream& out) {
  Instance inst = make_instance(c);
  check_qs(c);
  Json j = header("hk", c, inst);
  j["results"] = Json::array();
  std::string text = header_line(c, inst);
  for (int q : c.qs) {
    HKReport r = hk_direct(inst.f, q);
    SeriesCheck s = hilbert_series_check(inst.f, q);
    const std::string formula = r.formula ? rational_text(*r.formula) : "n/a";
    Json rj;
    rj["q"] = q;
    rj["direct"] = r.direct;
    rj["formula"] = formula;
    rj["formula_applies"] = r.formula_applies;
    rj["opposite_parity"] = r.opposite_parity;
    rj["agree"] = r.formula ? Json(r.formula->denominator() == 1 && r.formula->numerator() == r.direct) : Json(nullptr);
    rj["series_check"] = to_string(s.verdict);
    rj["profile"] = r.profile;
    j["results"].push_back(rj);
    text += "q = " + std::to_string(q) + ": HK direct " + std::to_string(r.direct) + ", formula " + formula +
            ", series check " + to_string(s.verdict);
    if (!s.reason.empty()) text += " (" + s.reason + ")";
    text += "\n";
  }
  out << (c.format == "json" ? j.dump(2) + "\n" : text);
  return kExitOk;
}

int cmd_pfaffian_check(const JobConfig& c, std::optional<int> step, std::ostream& out) {
  Instance inst = make_instance(c);
  check_qs(c);
  Json j = header("pfaffian-check", c, inst);
  j["results"] = Json::array();
  std::string text = header_line(c, inst);
  bool all = true;
  for (int q : c.qs) {
    const int steps = std::max(c.steps, step ? *step + 1 : 4);
    Resolution res = resolve_over_R(inst.f, q, steps, c.degree_cap);
    TailInfo tail = detect_periodic_tail(res.betti);
    int at = step ? *step : (tail.found ? tail.start + 1 : -1);
    if (at < 1) throw PreconditionError("no periodic tail within " + std::to_string(steps) + " steps at q = " + std::to_string(q));
    if (at + 1 > steps) res = resolve_over_R(inst.f, q, at + 1, c.degree_cap);
    MatrixFactorization mf = extract_tail_mf(res, inst.f, at);
    PfCertificate cert = certify_pf_of_tail(mf.a, inst.f);
    all = all && cert.certified;
    Json rj;
    rj["q"] = q;
    rj["step"] = at;
    rj["size"] = mf.a.rows();
    rj["a_degree"] = mf.a_degree;
    rj["b_degree"] = mf.b_degree;
    rj["certified"] = cert.certified;
    rj["unit"] = cert.unit;
    rj["warnings"] = cert.warnings;
    Json rows = Json::array();
    for (std::size_t r = 0; r < mf.a.rows(); ++r) {
      Json row = Json::array();
      for (std::size_t col = 0; col < mf.a.cols(); ++col) row.push_back(mf.a(r, col).to_string());
      rows.push_back(row);
    }
    rj["a"] = rows;
    j["results"].push_back(rj);
    text += "q = " + std::to_string(q) + ": matrix factorization at step " + std::to_string(at) + ", size " +
            std::to_string(mf.a.rows()) + ", entry degrees " + std::to_string(mf.a_degree) + " and " +
            std::to_string(mf.b_degree) + "\n" + mf.a.to_string() + "det = " +
            (cert.certified ? std::to_string(Prime(c.p).symmetric(cert.unit)) + " * f^2: certified\n" : "not a unit times f^2\n");
    for (const auto& w : cert.warnings) text += "  warning: " + w + "\n";
  }
  out << (c.format == "json" ? j.dump(2) + "\n" : text);
  return all ? kExitOk : kExitPrecondition;
}

int cmd_ledger(const JobConfig& c, std::optional<int> m_opt, std::ostream& out) {
  Instance inst = make_instance(c);
  check_qs(c);
  Json j = header("ledger", c, inst);
  j["results"] = Json::array();
  std::string text = header_line(c, inst);
  for (int q : c.qs) {
    if (inst.f.degree() >= q) throw PreconditionError("need deg f < q");
    DividedElem phi = link_inverse_poly(inst.f, q);
    const int s = phi.degree();
    const int m = m_opt ? *m_opt : (s + 1) / 2;
    DegreeLedger led = truncated_degree_ledger(phi, m);
    Json c1 = Json::array();
    for (int jj = 0; jj < s - m; ++jj) c1.push_back({jj, c_rank(phi, 1, jj)});
    Json rj;
    rj["q"] = q;
    rj["s"] = s;
    rj["m"] = m;
    rj["measured"] = led.measured;
    rj["predicted"] = led.predicted;
    rj["contained"] = led.contained;
    rj["c1"] = c1;
    j["results"].push_back(rj);
    auto set_text = [](const std::set<int>& st) {
      std::string r = "{";
      for (int v : st) r += (r.size() > 1 ? ", " : "") + std::to_string(v);
      return r + "}";
    };
    text += "q = " + std::to_string(q) + ", s = " + std::to_string(s) + ", m = " + std::to_string(m) +
            ": measured " + set_text(led.measured) + ", predicted " + set_text(led.predicted) +
            (led.contained ? ", contained\n" : ", NOT contained\n");
  }
  out << (c.format == "json" ? j.dump(2) + "\n" : text);
  return kExitOk;
}

// ---------------------------------------------------------------------------------------
// golden corpus

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct CaseOutcome {
  bool pass = false;
  std::string detail;
};

CaseOutcome run_case(const Json& cs, const std::string& dir) {
  const Prime p(cs.at("p").get<std::uint32_t>());
  const int n = cs.value("n", 3);
  const HomogPoly f = parse_poly(cs.at("f").get<std::string>(), p, n);
  const int q = cs.at("q").get<int>();
  const std::string kind = cs.at("kind").get<std::string>();
  if (kind == "betti") {
    const int steps = cs.value("steps", 4);
    BettiTable t = betti_over_R(f, q, steps);
    const std::string text = t.to_text();
    const std::string want_text = read_file(dir + "/" + cs.at("text").get<std::string>());
    if (text != want_text) return {false, "text grid differs; computed:\n" + text};
    if (cs.contains("json")) {
      std::string want_json = read_file(dir + "/" + cs.at("json").get<std::string>());
      while (!want_json.empty() && (want_json.back() == '\n' || want_json.back() == '\r')) want_json.pop_back();
      if (t.to_json() != want_json) return {false, "JSON sidecar differs; computed " + t.to_json()};
    }
    return {true, "totals " + [&] {
              std::string s;
              for (int i = 0; i <= t.length(); ++i) s += (i ? " " : "") + std::to_string(t.total(i));
              return s;
            }()};
  }
  if (kind == "generators") {
    const Json want = Json::parse(read_file(dir + "/" + cs.at("json").get<std::string>()));
    GeneratorProfile prof = measured_generator_profile(f, q);
    if (want.contains("counts")) {
      std::map<int, std::int64_t> w;
      for (const auto& e : want.at("counts")) w[e.at(0).get<int>()] = e.at(1).get<std::int64_t>();
      if (w != prof.counts) return {false, "generator profile " + map_text(prof.counts) + ", expected " + map_text(w)};
    }
    if (want.contains("degrees")) {
      std::set<int> w = want.at("degrees").get<std::set<int>>(), got;
      for (const auto& [k, v] : prof.counts) got.insert(k);
      if (w != got) return {false, "generator degrees differ: computed " + map_text(prof.counts)};
    }
    return {true, "profile " + map_text(prof.counts)};
  }
  throw std::runtime_error("unknown case kind " + kind);
}

int cmd_reproduce(const std::string& only, const std::string& dir_opt, const std::string& format, std::ostream& out,
                  std::ostream& err) {
  const std::string dir = dir_opt.empty() ? golden_dir() : dir_opt;
  Json manifest;
  try {
    manifest = Json::parse(read_file(dir + "/manifest.json"));
  } catch (const std::exception& e) {
    err << "error: cannot load golden manifest from " << dir << ": " << e.what() << "\n";
    return kExitUsage;
  }
  Json results = Json::array();
  std::string text;
  bool any = false, all = true;
  for (const auto& cs : manifest.at("cases")) {
    const std::string name = cs.at("name").get<std::string>();
    if (!only.empty() && name != only) continue;
    any = true;
    CaseOutcome o;
    try {
      o = run_case(cs, dir);
    } catch (const std::exception& e) {
      o = {false, e.what()};
    }
    all = all && o.pass;
    results.push_back({{"name", name}, {"kind", cs.at("kind")}, {"status", o.pass ? "pass" : "fail"}, {"detail", o.detail}});
    text += (o.pass ? "PASS " : "FAIL ") + name + ": " + o.detail + "\n";
  }
  if (!any) {
    err << "error: no golden case named '" << only << "'\n";
    return kExitUsage;
  }
  if (format == "json") {
    Json j;
    j["command"] = "reproduce-examples";
    j["cases"] = results;
    j["all_pass"] = all;
    out << j.dump(2) << "\n";
  } else {
    out << text;
  }
  return all ? kExitOk : kExitGoldenMismatch;
}

void add_common(CLI::App* sub, JobConfig& c, bool with_steps) {
  sub->add_option("-p,--prime", c.p, "characteristic p")->required();
  sub->add_option("-n,--vars", c.n, "number of variables")->capture_default_str();
  sub->add_option("-f,--poly", c.f, "homogeneous polynomial, or 'random'")->required();
  sub->add_option("-d,--degree", c.d, "degree of a random polynomial");
  sub->add_option("--seed", c.seed, "seed of a random polynomial")->capture_default_str();
  sub->add_option("-q", c.qs, "comma-separated list of q values")->delimiter(',')->required();
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  sub->add_option("--threads", c.threads, "worker cap (0 = all cores)")->capture_default_str();
  sub->add_flag("--allow-any-q", c.allow_any_q, "accept q that are not powers of p");
  if (with_steps) {
    sub->add_option("--steps", c.steps, "homological degrees to compute")->capture_default_str();
    sub->add_option("--degree-cap", c.degree_cap,
                    "scan every degree up to (max twist) + CAP in each step; 0 means q + d");
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Betti tables, links and Hilbert-Kunz data of R/m^[q] for hypersurfaces R = k[x]/(f)"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  JobConfig c;
  std::string ring = "R", only, gdir;
  std::optional<int> step, m;

  auto* cc = app.add_subcommand("check-compressed", "relative compressedness of (x^q) : f");
  add_common(cc, c, false);
  cc->add_option("--mode", c.mode, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
  auto* bt = app.add_subcommand("betti", "Betti tables of R/m^[q] over R, with tail comparison");
  add_common(bt, c, true);
  bt->add_option("--ring", ring, "R (default) or P")->check(CLI::IsMember({"R", "P"}));
  auto* so = app.add_subcommand("socle", "socle of P/(x^q, f), directly and through the link");
  add_common(so, c, false);
  auto* hk = app.add_subcommand("hk", "Hilbert-Kunz function, closed form and series check");
  add_common(hk, c, false);
  auto* pf = app.add_subcommand("pfaffian-check", "extract the tail matrix factorization and certify det = c f^2");
  add_common(pf, c, true);
  pf->add_option("--step", step, "homological step of the differential to lift (default: tail start + 1)");
  auto* lg = app.add_subcommand("ledger", "generator degrees of truncated links against the C_{1,j} ranks");
  add_common(lg, c, false);
  lg->add_option("-m", m, "truncation degree (default ceil(s/2))");
  auto* rp = app.add_subcommand("reproduce-examples", "recompute the golden corpus and compare byte for byte");
  rp->add_option("--only", only, "run a single named case");
  rp->add_option("--golden-dir", gdir, "corpus directory (default $FROBETTI_GOLDEN_DIR)");
  rp->add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "json"}));

  std::vector<std::string> argv_store{"frobetti"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c.threads > 0) set_thread_limit(c.threads);
    if (*cc) return cmd_check_compressed(c, out);
    if (*bt) return cmd_betti(c, ring, out);
    if (*so) return cmd_socle(c, out);
    if (*hk) return cmd_hk(c, out);
    if (*pf) return cmd_pfaffian_check(c, step, out);
    if (*lg) return cmd_ledger(c, m, out);
    if (*rp) return cmd_reproduce(only, gdir, c.format, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitUsage;
}

}  // namespace frobetti
