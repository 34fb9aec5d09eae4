#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "tek/cli.hpp"

using namespace tek;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "tek");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return std::string(TEK_CONFIG_DIR) + "/" + name; }

}  // namespace

TEST(Cli, BracketOfDegreeDerivationsIsZero) {
  const Outcome r = run({"--config", config("bracket_d0_d1.json"), "bracket"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(r.out, "0\n");
}

TEST(Cli, BracketCarriesTheMuCocycle) {
  const Outcome r = run({"--config", config("bracket_skew_mu1.json"), "--json", "bracket"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("result").at("skew"), Json::parse(R"([[1, 1, "1/1"]])"));
  EXPECT_EQ(j.at("result").at("k"), Json::parse(R"([[1, 1, "1/1", "0/1"]])"));
}

TEST(Cli, Form) {
  const Outcome r = run({"--config", config("form_d0_k0.json"), "form"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(r.out, "1/1\n");
}

TEST(Cli, MalformedJsonIsAParseError) {
  const Outcome r = run({"--config", config("malformed.json"), "bracket"});
  EXPECT_EQ(r.code, kExitParse);
  EXPECT_NE(r.err.find("parse error"), std::string::npos);
  EXPECT_EQ(run({"--config", config("no_such_file.json"), "bracket"}).code, kExitParse);
  EXPECT_EQ(run({"frobnicate"}).code, kExitParse);
  EXPECT_EQ(run({"--config", config("bracket_d0_d1.json"), "form", "--box", "x"}).code, kExitParse);
}

TEST(Cli, CheckPassesAndFails) {
  const Outcome ok = run({"--config", config("jacobi_sl2.json"), "check", "jacobi"});
  EXPECT_EQ(ok.code, kExitPass) << ok.out;
  EXPECT_NE(ok.out.find("jacobi: PASS"), std::string::npos);
  const Outcome bad = run({"--config", config("jacobi_corrupted.json"), "--json", "check", "jacobi"});
  EXPECT_EQ(bad.code, kExitViolation);
  const Json j = Json::parse(bad.out);
  EXPECT_FALSE(j.at("passed").get<bool>());
  EXPECT_GT(j.at("violation_count").get<long>(), 0);
  EXPECT_FALSE(j.at("violations").empty());
}

TEST(Cli, UnknownSuiteIsSemantic) {
  EXPECT_EQ(run({"check", "nonsense"}).code, kExitSemantic);
}

TEST(Cli, HeisenbergFixturesFromConfig) {
  const Outcome r = run({"--config", config("heisenberg_r2.json"), "--json", "check", "heisenberg"});
  ASSERT_EQ(r.code, kExitPass) << r.out << r.err;
  const Json j = Json::parse(r.out);
  for (const auto& f : j.at("details").at("fixtures")) EXPECT_EQ(f.at("r"), 2);
}

TEST(Cli, ModuleWeights) {
  const Outcome r = run({"--config", config("weights_sl2.json"), "--json", "module", "weights"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  const Json j = Json::parse(r.out).at("weights");
  // 3 h-weights times 9 exponents, each of dimension dim U = 2
  EXPECT_EQ(j.size(), 27u);
  for (const auto& row : j) EXPECT_EQ(row[1], 2);
  EXPECT_EQ(j[0][0], Json::parse(R"([["-2/1"], "-1/2", "-1/1"])"));
}

TEST(Cli, ModuleAct) {
  const Outcome r = run({"--config", config("act_realization.json"), "--json", "module", "act"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("result").at("terms"), Json::parse(R"([[0, 1, 1, 0, 0, "-1/1"]])"));
}

TEST(Cli, Nilpotence) {
  const Outcome r = run({"--config", config("nilpotence_f.json"), "module", "nilpotence"});
  EXPECT_EQ(r.code, kExitPass) << r.err;
  EXPECT_EQ(r.out, "3\n");
  const Outcome b = run({"--config", config("nilpotence_bound.json"), "module", "nilpotence"});
  EXPECT_EQ(b.code, kExitBound);
  EXPECT_NE(b.err.find("Failure"), std::string::npos);
}

TEST(Cli, InvalidSpecIsSemantic) {
  const Outcome r = run({"--config", config("invalid_type_i.json"), "module", "act"});
  EXPECT_EQ(r.code, kExitSemantic);
  EXPECT_NE(r.err.find("semantic error"), std::string::npos);
}

TEST(Cli, SeededRunsAreDeterministic) {
  const std::vector<std::string> args = {"--config", config("invariance_seeded.json"), "--json", "check", "invariance"};
  const Outcome a = run(args), b = run(args);
  ASSERT_EQ(a.code, kExitPass) << a.out;
  EXPECT_EQ(a.out, b.out);
  const Outcome c = run({"--config", config("invariance_seeded.json"), "--seed", "7", "--json", "check", "invariance"});
  EXPECT_EQ(Json::parse(c.out).at("details").at("seed"), 7);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, WritesToFile) {
  const std::string path = ::testing::TempDir() + "tek_cli_out.txt";
  const Outcome r = run({"--config", config("bracket_d0_d1.json"), "--out", path, "bracket"});
  ASSERT_EQ(r.code, kExitPass);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "0");
}

TEST(Cli, ConfigValidation) {
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"algebra": {"rank": 7}})")), SemanticError);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"algebra": {"mu": "1/0"}})")), ParseError);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"sweep": {"samples": 0}})")), SemanticError);
  EXPECT_THROW(run_config_from_json(Json::parse(R"({"sweep": {"seed": -1}})")), ParseError);
  EXPECT_THROW(run_config_from_json(Json::parse("[1]")), ParseError);
  const RunConfig rc = run_config_from_json(Json::parse(R"({"algebra": {"rank": 2, "mu": "-3/2"}})"));
  EXPECT_EQ(rc.algebra.g().rank, 2);
  EXPECT_EQ(rc.algebra.mu, Q(-3, 2));
  EXPECT_EQ(rc.sweep.samples, 10000);
  EXPECT_EQ(rc.sweep.seed, 1u);
}
