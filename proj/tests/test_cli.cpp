#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(LIMITLAB_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string sample(const char* name) { return std::string(LIMITLAB_SAMPLE_DIR) + "/" + name; }

nlohmann::json structured(const std::string& args, int expect_code) {
  Result r = run(args + " --format structured");
  EXPECT_EQ(r.code, expect_code) << args << "\n" << r.out;
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, ClassifyDirichlet) {
  auto j = structured("classify --fn " + sample("dirichlet.fn") + " --at 0", 0);
  EXPECT_EQ(j["command"], "classify");
  EXPECT_EQ(j["status"], "decided");
  EXPECT_EQ(j["result"]["types"]["T1"]["exists"], "no");
  EXPECT_EQ(j["result"]["types"]["T5"]["exists"], "yes");
  EXPECT_EQ(j["result"]["types"]["T5"]["value"], "0");
  EXPECT_EQ(j["result"]["chain_consistent"], true);
}

TEST(Cli, InlineFunctionAndLimitCheck) {
  auto j = structured("limit --fn 'piecewise { 1 on cantor(0,1); else 0 }' --at 1/3 --type t6 --value 0", 0);
  EXPECT_EQ(j["result"]["status"], "pass");
  EXPECT_FALSE(j["result"]["witness"].empty());
  auto k = structured("limit --fn 'piecewise { 1 on cantor(0,1); else 0 }' --at 1/3 --type T5 --value 0", 0);
  EXPECT_EQ(k["result"]["status"], "fail");
  EXPECT_TRUE(k["result"]["evidence"].is_string());
}

TEST(Cli, MeasureDensityCardinality) {
  auto m = structured("measure --set " + sample("omega.set"), 0);
  EXPECT_EQ(m["result"]["value"], "69/80");
  EXPECT_EQ(m["result"]["exact"], true);
  auto d = structured("density --set " + sample("omega.set") + " --at 0", 0);
  EXPECT_EQ(d["result"]["verdict"], "zero");
  auto c = structured("cardinality --set 'points(1,2) | points(3)'", 0);
  EXPECT_EQ(c["result"]["class"], "finite");
  EXPECT_EQ(c["result"]["count"], 3);
  auto l = structured("cardinality --set 'seq(1/n) | [5,6]' --at 0 --value 1", 0);
  EXPECT_EQ(l["result"]["class"], "uncountable");
  EXPECT_EQ(l["result"]["local"]["class"], "countably_infinite");
}

TEST(Cli, Decompose) {
  auto j = structured("decompose --fn " + sample("spikes.fn") + " --at 0 --value 0 --type t5", 0);
  EXPECT_EQ(j["result"]["verified"], true);
  EXPECT_TRUE(j["result"]["g"].is_string());
  Result bad = run("decompose --fn " + sample("spikes.fn") + " --at 0 --value 1 --type t5");
  EXPECT_EQ(bad.code, 1);
}

TEST(Cli, EstimateIsSeedReproducible) {
  std::string args = "estimate --set " + sample("omega.set") + " --at 0 --value 1 --seed 9 --samples 20000";
  auto a = structured(args, 0);
  auto b = structured(args, 0);
  EXPECT_EQ(a["result"]["mc"], b["result"]["mc"]);
  EXPECT_EQ(a["result"]["exact"]["value"], "69/80");
  EXPECT_EQ(a["result"]["exact"]["agrees"], true);
  EXPECT_EQ(a["result"]["profile"]["points"].size(), 12u);
}

TEST(Cli, Errors) {
  auto j = structured("measure --set '[0,'", 1);
  EXPECT_EQ(j["status"], "error");
  EXPECT_EQ(j["error"]["kind"], "SyntaxError");
  EXPECT_EQ(j["error"]["line"], 1);
  EXPECT_EQ(j["error"]["column"], 4);
  auto k = structured("classify --fn 'piecewise { else x }'", 1);
  EXPECT_EQ(k["error"]["kind"], "RangeError");
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("measure --set R --format yaml").code, 1);
}

TEST(Cli, TextOutput) {
  Result r = run("classify --fn " + sample("omega.fn") + " --at 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("T2  yes  L = 0"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("T6  no"), std::string::npos) << r.out;
}

TEST(Cli, VerifyDecompositionRoundTrip) {
  auto j = structured("verify --fn " + sample("dirichlet.fn") + " --at 0 --value 0 --type t5", 0);
  EXPECT_EQ(j["result"]["verified"], true);
}
