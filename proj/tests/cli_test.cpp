/* Copyright 2026 The niho Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "niho/cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

namespace niho::cli {
namespace {

struct Result {
  int code;
  std::vector<nlohmann::json> lines;
  std::string raw;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "niho");
  std::ostringstream out, err;
  Result r{run(args, out, err), {}, out.str(), err.str()};
  std::istringstream in(r.raw);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] == '{') r.lines.push_back(nlohmann::json::parse(line));
  }
  return r;
}

TEST(Cli, CheckBuiltins) {
  const Result f52 = run_cli({"check", "--p", "5", "--k", "2", "--builtin", "f"});
  EXPECT_EQ(f52.code, kExitOk);
  ASSERT_EQ(f52.lines.size(), 1u);
  EXPECT_EQ(f52.lines[0]["is_permutation"], true);
  EXPECT_EQ(f52.lines[0]["field"].get<std::string>().rfind("GF(5^4) mod [", 0), 0u);
  EXPECT_EQ(f52.lines[0]["methods"].size(), 3u);

  const Result f72 = run_cli({"check", "--p", "7", "--k", "2", "--builtin", "f"});
  EXPECT_EQ(f72.lines.at(0)["is_permutation"], true);

  const Result g = run_cli({"check", "--p", "5", "--k", "2", "--builtin", "g", "--l", "1"});
  EXPECT_EQ(g.lines.at(0)["is_permutation"], true);
  EXPECT_EQ(g.lines.at(0)["poly"], "-x^(55) + x^(127) + x^(151)");
}

TEST(Cli, CheckParsedPolynomial) {
  const Result r = run_cli({"check", "--p", "5", "--k", "2", "--poly", "x^(q) + x^(2)"});
  EXPECT_EQ(r.code, kExitOk);
  ASSERT_EQ(r.lines.size(), 1u);
  EXPECT_EQ(r.lines[0]["poly"], "x^(2) + x^(25)");
  EXPECT_EQ(r.lines[0]["is_permutation"], false);
  EXPECT_EQ(r.lines[0]["methods"][0]["witness"].size(), 2u);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"check", "--p", "4", "--k", "2"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"check", "--p", "5"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"check", "--p", "5", "--k", "2", "--poly", "x^(q"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"check", "--p", "5", "--k", "2", "--builtin", "h"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"identities", "--p", "7", "--k", "1"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"check", "--p", "5", "--k", "20"}).code, kExitCap);
  EXPECT_EQ(run_cli({"--help"}).code, kExitOk);
  EXPECT_NE(run_cli({"--help"}).raw.find("65 size cap"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"check", "--p", "3", "--k", "3", "--builtin", "f"};
  EXPECT_EQ(run_cli(args).raw, run_cli(args).raw);
}

TEST(Cli, Identities) {
  const Result r = run_cli({"identities", "--p", "5", "--k", "2"});
  EXPECT_EQ(r.code, kExitOk) << r.raw;
  ASSERT_GE(r.lines.size(), 6u);
  for (const auto& line : r.lines) {
    EXPECT_TRUE(line.contains("field"));
    EXPECT_EQ(line["command"], "identities");
  }
}

TEST(Cli, RegistryListing) {
  const Result r = run_cli({"registry", "--p", "3"});
  EXPECT_EQ(r.code, kExitOk);
  ASSERT_EQ(r.lines.size(), 8u);
  EXPECT_EQ(r.lines[7]["source"], "X.Hou-2014arxiv [Theorem A (iv)]");
  const Result tsv = run_cli({"registry", "--p", "5", "--tsv"});
  EXPECT_EQ(tsv.raw.rfind("#command\tfield\trow", 0), 0u);
}

TEST(Cli, Equiv) {
  const Result r5 = run_cli({"equiv", "--p", "5", "--k", "2"});
  EXPECT_EQ(r5.code, kExitOk);
  ASSERT_EQ(r5.lines.size(), 1u);
  EXPECT_EQ(r5.lines[0]["result"], "no matches");
  const Result r3 = run_cli({"equiv", "--p", "3", "--k", "2"});
  ASSERT_EQ(r3.lines.at(0)["matches"].size(), 1u);
  EXPECT_EQ(r3.lines[0]["matches"][0]["tuple"], "(-1, 1, -1, 2)");
  EXPECT_TRUE(r3.lines[0]["matches"][0].contains("a"));
  EXPECT_TRUE(r3.lines[0]["matches"][0].contains("d"));
}

TEST(Cli, SearchFindsF) {
  const Result r = run_cli({"search", "--p", "3", "--k", "2"});
  EXPECT_EQ(r.code, kExitOk);
  bool found = false;
  for (const auto& line : r.lines) {
    if (line.contains("lambda1") && line["lambda1"] == 1 && line["lambda2"] == -1) found = true;
  }
  EXPECT_TRUE(found);
  EXPECT_GT(r.lines.back()["hits"].get<int>(), 0);
}

TEST(Cli, SearchDegenerateCharacteristicTwo) {
  const Result r = run_cli({"search", "--p", "2", "--k", "3", "--coeff-range", "0:1"});
  EXPECT_EQ(r.code, kExitOk);
  ASSERT_FALSE(r.lines.empty());
  EXPECT_NE(r.lines[0]["note"].get<std::string>().find("x^(pq)"), std::string::npos);
}

TEST(Cli, FieldAndTable) {
  const Result f = run_cli({"field", "--p", "3", "--k", "2"});
  EXPECT_EQ(f.lines.at(0)["order"], 9);
  const Result t = run_cli({"table1"});
  EXPECT_EQ(t.code, kExitOk);
  ASSERT_EQ(t.lines.size(), 14u);
  EXPECT_EQ(t.lines.back()["matched"], 13);
}

}  // namespace
}  // namespace niho::cli
