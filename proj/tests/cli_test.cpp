#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "clearnet/io.hpp"
#include "json.hpp"
#include "support/fixtures.hpp"

namespace clearnet {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "clearnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Outcome r;
  r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("clearnet_cli_" + std::to_string(rd()));
    fs::create_directories(dir_);
    sys_a_ = (dir_ / "sys_a.json").string();
    write_text_file(sys_a_, serialize_system_json(to_document(testing::sys_a(), {"A", "B"})));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    write_text_file(p, text);
    return p.string();
  }

  fs::path dir_;
  std::string sys_a_;
};

TEST_F(CliTest, VerifySysAPasses) {
  const Outcome r = run({"verify", "--input", sys_a_, "--r", "0.8", "--m", "0.5"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const Json j = r.json();
  EXPECT_TRUE(j["report"]["passed"].get<bool>());
  EXPECT_LE(j["report"]["max_abs_gap"].get<double>(), 1e-8);
  EXPECT_DOUBLE_EQ(j["report"]["tolerance"].get<double>(), 1e-7);
  EXPECT_NEAR(j["report"]["sigma_clearing"][0].get<double>(), 5.36190, 1e-4);
}

TEST_F(CliTest, VerifyFailureExitsTwo) {
  const Outcome r = run({"verify", "--input", sys_a_, "--r", "0.8", "--m", "0.5", "--tol=-1"});
  EXPECT_EQ(r.code, cli::kVerifyFailed);
  EXPECT_FALSE(r.json()["report"]["passed"].get<bool>());
}

TEST_F(CliTest, VerifyRelaxedWarnsOnAlternativeForm) {
  const Outcome r =
      run({"verify", "--input", sys_a_, "--r", "0.5", "--m", "0.5", "--kind", "relaxed"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NEAR(r.json()["report"]["alternative_form_gap"].get<double>(), 0.75, 1e-8);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST_F(CliTest, VerifyPreconditionExitsThree) {
  const std::string bad = file("bad.json", R"({"liabilities": [[0, 10, 0], [12, 0, 0], [0, 0, 0]],
    "pre_shock_assets": [5, 5, 1]})");
  const Outcome r = run({"verify", "--input", bad, "--r", "0.5", "--m", "0.5"});
  EXPECT_EQ(r.code, cli::kPreconditionViolated);
  EXPECT_NE(r.err.find("PreconditionViolated"), std::string::npos);
}

TEST_F(CliTest, ClearWithoutShockPaysInFull) {
  const Outcome r = run({"clear", "--input", sys_a_, "--r", "0.8"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["clearing"]["payments"][0].get<double>(), 10.0);
  EXPECT_EQ(j["clearing"]["payments"][1].get<double>(), 10.0);
  EXPECT_EQ(j["clearing"]["losses"], Json::parse("[0.0, 0.0, 0.0]"));
  EXPECT_EQ(j["clearing"]["iterations"].get<int>(), 1);
  EXPECT_EQ(j["oracle_gap"].get<double>(), 0.0);
}

TEST_F(CliTest, ClearCsvWithAssets) {
  const std::string csv = file("sys.csv", "A,B,SINK\n0,2,8\n3,0,7\n0,0,0\n");
  const std::string assets = file("assets.csv", "3.5\n4\n1\n");
  const Outcome r = run({"clear", "--input", csv, "--assets", assets, "--r", "0.8"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NEAR(r.json()["clearing"]["payments"][0].get<double>(), 4.63810, 1e-4);
}

TEST_F(CliTest, SpectralSysA) {
  const Outcome r = run({"spectral", "--input", sys_a_});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const Json j = r.json();
  EXPECT_LT(j["report"]["radius_estimate"].get<double>(), 1.0);
  EXPECT_TRUE(j["invertible"].get<bool>());
  EXPECT_EQ(j["report"]["invertible_for_r"]["lower"].get<double>(), 0.0);
  EXPECT_EQ(j["report"]["invertible_for_r"]["upper"].get<double>(), 1.0);
  EXPECT_TRUE(j["report"]["invertible_for_r"]["upper_closed"].get<bool>());
}

TEST_F(CliTest, ShockAndKatz) {
  Outcome r = run({"shock", "--input", sys_a_, "--kind", "full", "--m", "0.5", "--r", "0.8"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.json()["scenario"]["post_shock_assets"], Json::parse("[3.5, 4.0, 1.0]"));

  r = run({"shock", "--input", sys_a_, "--kind", "relaxed", "--m", "0.5", "--r", "0.5"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_LE(r.json()["certificate"]["candidate_gap"].get<double>(), 1e-8);

  r = run({"shock", "--input", sys_a_, "--kind", "relaxed", "--r", "0.8", "--max-steps", "1000",
           "--strategy", "bisection"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.json()["scenario"]["search_steps"].get<int>(), 1);

  r = run({"shock", "--input", sys_a_, "--kind", "relaxed", "--max-steps", "1"});
  EXPECT_EQ(r.code, cli::kPreconditionViolated);
  EXPECT_NE(r.err.find("SearchExhausted"), std::string::npos);

  r = run({"katz", "--input", sys_a_, "--r", "0.8", "--m", "0.5"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NEAR(r.json()["beta"][0].get<double>(), 4.1, 1e-12);
  EXPECT_NEAR(r.json()["sigma"][1].get<double>(), 5.25790, 1e-4);
}

TEST_F(CliTest, GenIsDeterministicAndValid) {
  const std::string a = (dir_ / "a.json").string();
  const std::string b = (dir_ / "b.json").string();
  ASSERT_EQ(run({"gen", "--seed", "42", "--n", "5", "--density", "0.4", "--out", a}).code,
            cli::kOk);
  ASSERT_EQ(run({"gen", "--seed", "42", "--n", "5", "--density", "0.4", "--out", b}).code,
            cli::kOk);
  EXPECT_EQ(read_text_file(a), read_text_file(b));
  EXPECT_EQ(run({"verify", "--input", a, "--r", "0.7", "--m", "0.3"}).code, cli::kOk);

  const Outcome stdout_run = run({"gen", "--seed", "42", "--n", "5", "--density", "0.4", "--out", "-"});
  EXPECT_EQ(stdout_run.out, read_text_file(a));
}

TEST_F(CliTest, ReportsAreByteIdentical) {
  const std::vector<std::string> args{"verify", "--input", sys_a_, "--r", "0.8", "--m", "0.5"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> clear{"clear", "--input", sys_a_, "--r", "0.3"};
  EXPECT_EQ(run(clear).out, run(clear).out);
}

TEST_F(CliTest, PrettyTable) {
  const Outcome r = run({"--pretty", "katz", "--input", sys_a_, "--r", "0.8", "--m", "0.5"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("node"), std::string::npos);
  EXPECT_NE(r.out.find("SINK"), std::string::npos);
  EXPECT_NE(r.out.find("sigma"), std::string::npos);
}

TEST_F(CliTest, InputErrorsExitOne) {
  Outcome r = run({"clear", "--input", (dir_ / "missing.json").string()});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("IoError"), std::string::npos);

  r = run({"clear", "--input", file("broken.json", "{\"liabilities\": [[0, 1],")});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);

  r = run({"clear", "--input", file("ragged.csv", "0,1\n0\n"), "--assets",
           file("o.csv", "1\n1\n")});
  EXPECT_EQ(r.code, cli::kInputError);

  r = run({"clear"});
  EXPECT_EQ(r.code, cli::kInputError);
  r = run({"bogus"});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

}  // namespace
}  // namespace clearnet
