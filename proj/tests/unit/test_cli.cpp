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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "frobetti/cli.hpp"

using namespace frobetti;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "-p", "7"}).code, kExitUsage);
  EXPECT_EQ(run({"betti", "-p", "7", "-f", "x^4+y^4+z^4", "-q", "7", "--format", "xml"}).code, kExitUsage);
  EXPECT_EQ(run({"hk", "-p", "6", "-f", "x^2", "-q", "36"}).code, kExitUsage);
  EXPECT_EQ(run({"hk", "-p", "5", "-f", "x^2+", "-q", "5"}).code, kExitUsage);
}

TEST(Cli, QMustBeAPowerOfP) {
  CliResult r = run({"check-compressed", "-p", "5", "-f", "x*y^2+y*z^2+z*x^2", "-q", "4"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--allow-any-q"), std::string::npos);
  EXPECT_EQ(run({"check-compressed", "-p", "5", "-f", "x*y^2+y*z^2+z*x^2", "-q", "4", "--allow-any-q"}).code,
            kExitOk);
}

TEST(Cli, PreconditionFailure) {
  CliResult r = run({"socle", "-p", "5", "-f", "x^5+y^5+z^5", "-q", "5"});
  EXPECT_EQ(r.code, kExitPrecondition);
}

TEST(Cli, CheckCompressedKnownExample) {
  CliResult r = run({"check-compressed", "-p", "5", "-f", "x*y^2+y*z^2+z*x^2", "-q", "25,125", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["reports"].size(), 2u);
  EXPECT_TRUE(j["reports"][0]["compressed"].get<bool>());
  EXPECT_TRUE(j["reports"][1]["compressed"].get<bool>());
}

TEST(Cli, BettiGridAndTailComparison) {
  CliResult r = run({"betti", "-p", "7", "-f", "x*y^3+y*z^3+z*x^3", "-q", "7,49"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("total: 1 3 8 8 8\n    0: 1 . . . .\n    6: . 3 . . .\n   10: . . 8 8 .\n   12: . . . . 8\n"),
            std::string::npos);
  EXPECT_NE(r.out.find("q = 7 -> 49: tails equal after shift 63"), std::string::npos);
}

TEST(Cli, RandomInstanceIsReproducible) {
  std::vector<std::string> args{"check-compressed", "-p", "7", "-f", "random", "-d", "4", "--seed", "7", "-q", "7"};
  CliResult a = run(args), b = run(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("random seed 7"), std::string::npos);
  EXPECT_EQ(run({"hk", "-p", "7", "-f", "random", "-q", "7"}).code, kExitUsage);  // no -d
}

TEST(Cli, HkPfaffianLedgerSocle) {
  CliResult hk = run({"hk", "-p", "7", "-f", "x*y^3+y*z^3+z*x^3", "-q", "7"});
  EXPECT_NE(hk.out.find("HK direct 142, formula 142, series check true"), std::string::npos);
  CliResult pf = run({"pfaffian-check", "-p", "7", "-f", "x*y^3+y*z^3+z*x^3", "-q", "7"});
  EXPECT_EQ(pf.code, kExitOk) << pf.err;
  EXPECT_NE(pf.out.find("certified"), std::string::npos);
  CliResult pd = run({"pfaffian-check", "-p", "5", "-f", "x^4+y^4+z^4", "-q", "25"});
  EXPECT_EQ(pd.code, kExitPrecondition);
  CliResult led = run({"ledger", "-p", "7", "-f", "x*y^3+y*z^3+z*x^3", "-q", "7"});
  EXPECT_NE(led.out.find(", contained"), std::string::npos);
  CliResult so = run({"socle", "-p", "7", "-f", "x*y^3+y*z^3+z*x^3", "-q", "7", "--format", "json"});
  auto j = nlohmann::json::parse(so.out);
  EXPECT_TRUE(j["results"][0]["agree"].get<bool>());
}

TEST(Cli, GoldenSubsetAndUnknownName) {
  CliResult one = run({"reproduce-examples", "--only", "ex1-e1"});
  EXPECT_EQ(one.code, kExitOk) << one.err;
  EXPECT_EQ(one.out.rfind("PASS ex1-e1", 0), 0u);
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 1);
  EXPECT_EQ(run({"reproduce-examples", "--only", "no-such-case"}).code, kExitUsage);
}

TEST(Cli, CorruptedGoldenFileIsNamed) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "frobetti_golden_copy";
  fs::remove_all(dir);
  fs::copy(golden_dir(), dir, fs::copy_options::recursive);
  {
    std::ofstream bad(dir / "ex1-e1.txt", std::ios::trunc);
    bad << "       0 1\ntotal: 1 3\n";
  }
  CliResult r = run({"reproduce-examples", "--golden-dir", dir.string(), "--only", "ex1-e1"});
  EXPECT_EQ(r.code, kExitGoldenMismatch);
  EXPECT_EQ(r.out.rfind("FAIL ex1-e1", 0), 0u);
  fs::remove_all(dir);
}
