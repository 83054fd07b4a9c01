#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cmdeg/cli.hpp"

using cmdeg::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const char* default_prec = nullptr) {
  std::ostringstream out, err;
  auto env = [default_prec](const char* name) -> const char* {
    return std::string(name) == "CMDEG_DEFAULT_PREC" ? default_prec : nullptr;
  };
  const int code = cmdeg::cli::run(args, out, err, env);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EvalQAtOne) {
  const auto r = run({"eval", "--special", "Q", "--t", "1", "--prec", "128"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("precision_bits"), 128);
  EXPECT_EQ(j.at("value").at("bits"), 128);
  EXPECT_EQ(j.at("value").at("decimal").get<std::string>().substr(0, 12), "1.1600733514");
}

TEST(Cli, EvalVariants) {
  const Json a = Json::parse(run({"eval", "--spec", "2,2", "--t", "1"}).out);
  const Json b = Json::parse(run({"eval", "--special", "Q", "--t", "1"}).out);
  EXPECT_EQ(a.at("value"), b.at("value"));
  EXPECT_EQ(run({"eval", "--psi", "1", "--t", "2", "--format", "text"}).code, 0);
  EXPECT_EQ(run({"eval", "--lgamma", "--t", "1/2", "--format", "csv"}).code, 0);
  const auto text = run({"eval", "--psi", "0", "--t", "1", "--format", "text", "--prec", "64"});
  EXPECT_NE(text.out.find("64 bits"), std::string::npos);
}

TEST(Cli, DefaultPrecisionFromEnvironment) {
  const Json j = Json::parse(run({"eval", "--psi", "1", "--t", "1"}, "200").out);
  EXPECT_EQ(j.at("precision_bits"), 200);
  const Json k = Json::parse(run({"eval", "--psi", "1", "--t", "1", "--prec", "96"}, "200").out);
  EXPECT_EQ(k.at("precision_bits"), 96);
  EXPECT_EQ(run({"eval", "--psi", "1", "--t", "1"}, "lots").code, 2);
}

TEST(Cli, KernelCoefficientsExact) {
  const auto r = run({"kernel", "coeffs", "--from", "7", "--to", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  const std::vector<std::string> expected{"5/7", "25/14", "193/84", "85/42", "5065/3696"};
  ASSERT_EQ(j.at("coefficients").size(), 5u);
  for (size_t i = 0; i < 5; ++i) EXPECT_EQ(j.at("coefficients")[i].at("two_c"), expected[i]);
}

TEST(Cli, KernelSubcommands) {
  EXPECT_EQ(Json::parse(run({"kernel", "scan", "--to", "200"}).out).at("all_positive"), true);
  EXPECT_EQ(run({"kernel", "--order", "4", "--s", "2"}).code, 0);
  const Json lap = Json::parse(run({"kernel", "laplace", "--t", "1"}).out);
  EXPECT_LT(cmdeg::real_from_json(lap.at("abs_difference")), cmdeg::Real(1e-20, 64));
  EXPECT_EQ(run({"kernel", "--order", "5", "--s", "2"}).code, 2);
  EXPECT_EQ(run({"kernel", "coeffs", "--from", "6"}).code, 2);
  EXPECT_EQ(run({"kernel"}).code, 2);
}

TEST(Cli, Bernoulli) {
  const auto r = run({"bernoulli", "--max", "4", "--format", "csv"});
  EXPECT_EQ(r.out, "n,value\n0,1\n1,-1/2\n2,1/6\n3,0\n4,-1/30\n");
  EXPECT_EQ(run({"bernoulli"}).code, 2);
}

TEST(Cli, CmCheckCsvAndRoundTrip) {
  const auto csv = run({"cmcheck", "--special", "Q", "--r", "4", "--format", "csv", "--grid", "log:1e-3:1e4:20", "--max-order", "4"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 1 + 20 * 5);
  const auto js = run({"cmcheck", "--spec", "2,2", "--r", "101/20", "--grid", "log:1e-3:1:10", "--max-order", "2"});
  const auto report = cmdeg::cm_check_report_from_json(Json::parse(js.out));
  EXPECT_EQ(report.verdict, cmdeg::Verdict::violation);
  EXPECT_EQ(cmdeg::to_json(report).dump(2) + "\n", js.out);
}

TEST(Cli, DegreeText) {
  const auto r = run({"degree", "--special", "PsiGap", "--format", "text"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("[1.0, 1.0]"), std::string::npos);
  EXPECT_NE(r.out.find("numerical evidence"), std::string::npos);
}

TEST(Cli, ConjecturesCsv) {
  const auto r = run({"conjectures", "--n-range", "0:1", "--m-range", "0:1", "--format", "csv", "--grid",
                      "log:1e-3:1e2:12", "--max-order", "4", "--step", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,m,lower,upper,conjectured");
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"degree", "--spec", "2,0", "--grid", "log:1e-2:1e2:16", "--max-order", "5", "--threads", "3"};
  const auto a = run(args);
  auto args1 = args;
  args1.back() = "1";
  const auto b = run(args1);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "cmdeg_cli_test_out.json";
  const auto r = run({"eval", "--special", "Q", "--t", "2", "--out", path.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  EXPECT_EQ(buffer.str(), run({"eval", "--special", "Q", "--t", "2"}).out);
  std::filesystem::remove(path);
  EXPECT_EQ(run({"eval", "--special", "Q", "--t", "2", "--out", "/nonexistent-dir/x.json"}).code, 1);
}

TEST(Cli, UsageErrors) {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {},
           {"frobnicate"},
           {"eval"},
           {"eval", "--t", "1"},
           {"eval", "--special", "Q"},
           {"eval", "--special", "R", "--t", "1"},
           {"eval", "--special", "Q", "--spec", "2,2", "--t", "1"},
           {"eval", "--spec", "2", "--t", "1"},
           {"eval", "--spec", "9,0", "--t", "1"},
           {"eval", "--special", "Q", "--t", "-1"},
           {"eval", "--special", "Q", "--t", "abc"},
           {"eval", "--special", "Q", "--t", "1", "--prec", "8"},
           {"eval", "--special", "Q", "--t", "1", "--format", "xml"},
           {"cmcheck", "--special", "Q", "--r", "-1"},
           {"cmcheck", "--special", "Q", "--grid", "log:1:2"},
           {"cmcheck", "--special", "Q", "--max-order", "0"},
           {"degree", "--special", "Q", "--step", "2"},
           {"conjectures", "--n-range", "0:9"},
           {"conjectures", "--m-range", "3:1"},
       }) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 2) << (args.empty() ? std::string("<none>") : args[0]);
    EXPECT_NE(r.err.find("Usage"), std::string::npos);
  }
}

TEST(Cli, ComputationErrorIsStructured) {
  const auto r = run({"kernel", "laplace", "--t", "1", "--max-level", "1"});
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.err);
  EXPECT_EQ(j.at("kind"), "error");
  EXPECT_EQ(j.at("error"), "QuadratureNotConverged");
}

TEST(Cli, Help) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("cmcheck"), std::string::npos);
}
