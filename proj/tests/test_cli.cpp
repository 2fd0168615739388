#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "wittperv/cli.hpp"

namespace wittperv {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wittperv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string WriteTemp(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << body;
  return path.string();
}

TEST(CliTest, WittPrimeFieldLevelTwo) {
  const Result r = Cli({"witt", "--p", "3", "--modulus", "x", "--levels", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("W_2(k): order 9, invariant factors [9]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("multiplication"), std::string::npos);

  const Result j = Cli({"witt", "--p", "3", "--modulus", "x", "--levels", "2", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  const auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["levels"][1]["invariant_factors"], nlohmann::json::array({9}));
  EXPECT_EQ(doc["levels"][1]["add"].size(), 9u);
}

TEST(CliTest, PipelineF4JsonPasses) {
  const Result r = Cli({"drinfeld", "--p", "2", "--modulus", "x^2+x+1", "--levels", "3", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["verdict"], "pass");
  EXPECT_EQ(doc["params"]["p"], 2);
}

TEST(CliTest, PipelineDualNumbers) {
  const Result r = Cli({"drinfeld", "--p", "2", "--modulus", "t^2", "--levels", "2"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("skipped(k is not perfect)"), std::string::npos);
}

TEST(CliTest, DeterministicOutput) {
  const std::vector<std::string> args = {"drinfeld", "--p", "3", "--modulus", "t^2", "--levels", "2",
                                         "--format", "json"};
  EXPECT_EQ(Cli(args).out, Cli(args).out);
}

TEST(CliTest, BadFlagsExitTwo) {
  EXPECT_EQ(Cli({"witt", "--p", "4"}).code, 2);
  EXPECT_EQ(Cli({"witt", "--model", "neither"}).code, 2);
  EXPECT_EQ(Cli({"nosuch"}).code, 2);
  EXPECT_EQ(Cli({}).code, 2);
  EXPECT_EQ(Cli({"drinfeld", "--modulus", "x^2+"}).code, 2);
}

TEST(CliTest, CapExceededExitTwo) {
  const Result r = Cli({"drinfeld", "--p", "3", "--modulus", "x^2+1", "--levels", "3", "--cap", "100"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("raise --cap"), std::string::npos);
}

TEST(CliTest, PervCheckAcceptsAndRejects) {
  const std::string good = WriteTemp("wittperv_good.txt",
                                     "# M(Z,2)_{1,2}\nphi: 4\npsi: 8\nu: 0 1 2 3 0 1 2 3\nv: 0 2 4 6\n");
  const Result ok = Cli({"perv-check", good});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("verdict: pass"), std::string::npos);

  const std::string bad = WriteTemp("wittperv_bad.txt", "phi: 2\npsi: 2\nu: 0 1\nv: 0 1\n");
  const Result fail = Cli({"perv-check", bad, "--format", "json"});
  EXPECT_EQ(fail.code, 1);
  EXPECT_EQ(nlohmann::json::parse(fail.out)["verdict"], "fail");

  const std::string broken = WriteTemp("wittperv_broken.txt", "phi: 2\npsi: 2\nu: 0 1\n");
  EXPECT_EQ(Cli({"perv-check", broken}).code, 2);
  EXPECT_EQ(Cli({"perv-check", "/nonexistent/file"}).code, 2);
}

TEST(CliTest, ExamplesPass) {
  const Result r = Cli({"examples", "--seed", "3", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"], "pass");
}

}  // namespace
}  // namespace wittperv
