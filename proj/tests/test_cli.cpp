#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "essdim/cli.hpp"

using namespace essdim;
using namespace essdim::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "essdim");
  std::vector<char *> argv;
  for (auto &a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, FactorPrimePower) {
  EXPECT_EQ(factor_prime_power(9), std::make_pair(std::uint64_t{3}, 2u));
  EXPECT_EQ(factor_prime_power(7), std::make_pair(std::uint64_t{7}, 1u));
  EXPECT_EQ(factor_prime_power(1024), std::make_pair(std::uint64_t{2}, 10u));
  EXPECT_FALSE(factor_prime_power(12));
  EXPECT_FALSE(factor_prime_power(1));
}

TEST(Cli, EdExamples) {
  auto a = invoke({"ed", "--family", "PSL", "--n", "2", "--q", "5", "--l", "3", "--format", "json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(nlohmann::json::parse(a.out)["result"]["value"], 1);
  auto b = invoke({"ed", "--family", "Sp", "--n", "4", "--q", "3", "--l", "5", "--format", "json"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(nlohmann::json::parse(b.out)["result"]["value"], 1);
  auto c = invoke({"ed", "--family", "GL", "--n", "3", "--q", "3", "--l", "2"});
  EXPECT_EQ(c.code, 2);
  EXPECT_NE(c.err.find("q ≡ 3 (mod 4) unsupported for linear families at l = 2"), std::string::npos);
}

TEST(Cli, EdUsageErrors) {
  EXPECT_EQ(invoke({"ed", "--family", "GL", "--n", "3", "--q", "12", "--l", "3"}).code, 1);
  EXPECT_EQ(invoke({"ed", "--family", "XX", "--n", "3", "--q", "5", "--l", "3"}).code, 1);
  EXPECT_EQ(invoke({"ed", "--family", "GL", "--q", "5", "--l", "3"}).code, 1);
  EXPECT_EQ(invoke({"ed", "--family", "GL", "--n", "3", "--q", "5", "--l", "3", "--format", "xml"}).code, 1);
  EXPECT_EQ(invoke({"frobnicate"}).code, 1);
  EXPECT_EQ(invoke({"ed", "--family", "GL", "--n", "3", "--q", "5", "--l", "5"}).code, 2);
}

TEST(Cli, EdPAndRFlags) {
  auto a = invoke({"ed", "--family", "PSU", "--n", "4", "--p", "2", "--r", "1", "--l", "3", "--format", "csv"});
  ASSERT_EQ(a.code, 0);
  EXPECT_NE(a.out.find(",3,"), std::string::npos);
  auto b = invoke({"ed", "--family", "O", "--epsilon", "-", "--n", "6", "--q", "2", "--l", "3"});
  ASSERT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("= 3"), std::string::npos);
}

TEST(Cli, SylowExamples) {
  auto a = invoke({"sylow", "--family", "GL", "--n", "8", "--q", "2", "--l", "3", "--format", "json"});
  ASSERT_EQ(a.code, 0);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["d"], 2);
  EXPECT_EQ(j["s"], 1);
  EXPECT_EQ(j["n0"], 4);
  EXPECT_EQ(j["blocks"].size(), 2u);
  EXPECT_EQ(j["blocks"][0]["size"], 3);
  EXPECT_EQ(j["blocks"][1]["size"], 1);
  EXPECT_EQ(j["predicted_center_rank"], 2);
  EXPECT_EQ(j["sylow_exponent"], 5);

  auto b = invoke({"sylow", "--family", "U", "--n", "4", "--q", "2", "--l", "5"});
  ASSERT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("d = 4"), std::string::npos);
  EXPECT_NE(b.out.find("d ≢ 2 (mod 4)"), std::string::npos);

  auto c = invoke({"sylow", "--family", "GL", "--n", "1", "--q", "7", "--l", "3"});
  ASSERT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("structure: Z/3 "), std::string::npos);
  EXPECT_NE(c.out.find("abelian: yes"), std::string::npos);
}

TEST(Cli, SylowCheckForms) {
  auto a = invoke({"sylow", "--family", "Sp", "--n", "6", "--q", "2", "--l", "3", "--check-forms",
                   "--generators", "--format", "json"});
  ASSERT_EQ(a.code, 0);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_TRUE(j["forms"]["ok"].get<bool>());
  EXPECT_GT(j["generators"]["matrices"].size(), 0u);
}

TEST(Cli, VerifyExamples) {
  auto a = invoke({"verify", "--families", "GL", "--ls", "2,3", "--qs", "4,5,7", "--max-n", "4",
                   "--format", "json"});
  EXPECT_EQ(a.code, 0);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["summary"]["mismatch"], 0);
  EXPECT_EQ(j["records"].size(), j["grid"].size());

  auto b = invoke({"verify", "--family", "SL", "--n", "3", "--q", "7", "--l", "3", "--format", "json"});
  const auto jb = nlohmann::json::parse(b.out);
  ASSERT_EQ(jb["records"].size(), 1u);
  EXPECT_TRUE(jb["records"][0]["edge"].get<bool>());
  EXPECT_EQ(jb["records"][0]["status"], "mismatch");
  EXPECT_EQ(b.code, 0);  // edge tuples do not fail by default
  EXPECT_EQ(invoke({"verify", "--family", "SL", "--n", "3", "--q", "7", "--l", "3", "--strict"}).code, 3);

  auto c = invoke({"verify", "--max-n", "0", "--format", "json"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(nlohmann::json::parse(c.out)["records"].size(), 0u);

  EXPECT_EQ(invoke({"verify", "--budget", "0"}).code, 1);
}

TEST(Cli, VerifyRecordsAreInGridOrderAndDeterministic) {
  const std::vector<std::string> args{"verify", "--families", "GL,SL", "--ls", "3", "--qs", "4,7",
                                      "--max-n", "5", "--format", "json"};
  auto seq = args;
  seq.insert(seq.end(), {"--threads", "1"});
  auto par = args;
  par.insert(par.end(), {"--threads", "4"});
  const auto a = invoke(seq), b = invoke(par);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, invoke(seq).out);
  const auto grid = build_grid({"GL", "SL"}, {3}, {4, 7}, 5);
  const auto j = nlohmann::json::parse(a.out);
  ASSERT_EQ(j["records"].size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(j["records"][i]["n"], grid[i].n);
}

TEST(Cli, VerifyCsv) {
  auto a = invoke({"verify", "--families", "GL", "--ls", "3", "--qs", "4", "--max-n", "3", "--format", "csv"});
  EXPECT_EQ(a.code, 0);
  std::istringstream in(a.out);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 4u);
}

TEST(Cli, TableRows) {
  auto a = invoke({"table", "--format", "json"});
  const auto j = nlohmann::json::parse(a.out);
  ASSERT_EQ(j["rows"].size(), 14u);
  EXPECT_EQ(j["rows"][0]["group"], "PSL_2(F_5)");
  EXPECT_EQ(j["rows"][0]["computed"], 1);
  EXPECT_TRUE(j["rows"][0]["pass"].get<bool>());
  bool seen_o8 = false, seen_sp6 = false;
  for (const auto &r : j["rows"]) {
    if (r["group"] == "O^+(8,2)" && r["l"] == 5) {
      EXPECT_EQ(r["computed"], 2);
      seen_o8 = true;
    }
    if (r["group"] == "Sp(6,2)" && r["l"] == 5) {
      EXPECT_EQ(r["computed"], 1);
      seen_sp6 = true;
    }
  }
  EXPECT_TRUE(seen_o8 && seen_sp6);
  EXPECT_EQ(a.code, j["all_pass"].get<bool>() ? 0 : 3);
}

TEST(Cli, ModelMapping) {
  auto gl = model_for({Family{FamilyTag::GL}, 8, 2, 1, 3});
  ASSERT_TRUE(gl);
  EXPECT_EQ(gl->m, 4u);
  EXPECT_EQ(gl->variant, WreathVariant::GL);
  auto psl = model_for({Family{FamilyTag::PSL}, 4, 5, 1, 2});
  ASSERT_TRUE(psl);
  EXPECT_EQ(psl->variant, WreathVariant::PSLCase1);
  auto psl2 = model_for({Family{FamilyTag::PSL}, 2, 17, 1, 2});
  ASSERT_TRUE(psl2);
  EXPECT_EQ(psl2->variant, WreathVariant::PSLCase2);
  EXPECT_FALSE(model_for({Family{FamilyTag::PSL}, 2, 5, 1, 7}));
  for (const auto &m : {*gl, *psl, *psl2}) EXPECT_EQ(m.order(), m.build().order());
}
