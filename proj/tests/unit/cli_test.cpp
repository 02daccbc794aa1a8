// Copyright 2026 The tailfit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "tailfit/cli.hpp"

namespace tailfit {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tailfit_cli_" + std::to_string(getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }
  fs::path dir_;
};

bool single_error_line(const std::string& err) {
  return err.rfind("tailfit: ", 0) == 0 &&
         std::count(err.begin(), err.end(), '\n') == 1 && err.back() == '\n';
}

TEST_F(CliTest, UsageErrors) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {}, {"frobnicate"}, {"fit", "--dist", "weibull"}, {"bin"},
           {"bin", "--width", "1", "--bins", "3"}, {"simulate", "lognormal", "--mu", "1"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, kExitFailure);
    EXPECT_TRUE(single_error_line(r.err)) << r.err;
    EXPECT_NE(r.err.find("usage_error"), std::string::npos);
  }
}

TEST_F(CliTest, HelpExitsCleanly) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("simulate"), std::string::npos);
}

TEST_F(CliTest, SimulateIsSeeded) {
  const auto a = run({"simulate", "--seed", "5", "lognormal", "--mu", "1", "--sigma", "2", "-n", "100"});
  const auto b = run({"simulate", "--seed", "5", "lognormal", "--mu", "1", "--sigma", "2", "-n", "100"});
  const auto c = run({"simulate", "--seed", "6", "lognormal", "--mu", "1", "--sigma", "2", "-n", "100"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 100);
}

TEST_F(CliTest, SimulateGibratCsv) {
  const auto r = run({"simulate", "--seed", "1", "gibrat", "--steps", "3", "--agents", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("agent,step,size\n0,0,1\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 2 * 4);
  const auto last = run({"simulate", "gibrat", "--steps", "3", "--agents", "2", "--final-only"});
  EXPECT_EQ(std::count(last.out.begin(), last.out.end(), '\n'), 3);
}

TEST_F(CliTest, FitBothIsDeterministic) {
  const auto data = path("d.txt");
  ASSERT_EQ(run({"simulate", "--seed", "3", "-o", data, "lognormal", "--mu", "4", "--sigma",
                 "1.5", "-n", "3000"}).code, kExitOk);
  const std::vector<std::string> args{"fit", "--input", data, "--dist", "both",
                                      "--bootstrap", "100", "--seed", "7"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["dist"], "both");
  EXPECT_TRUE(j["gamma"].is_number());
  EXPECT_TRUE(j["p"].is_number());
  EXPECT_TRUE(j["mu"].is_number());
  EXPECT_TRUE(j["LR"].is_number());
  EXPECT_TRUE(j["loglik_p"].is_number());
  EXPECT_EQ(j["n"], 3000);
}

TEST_F(CliTest, FitPowerLawAtFixedCutoff) {
  const auto data = path("pl.bin");
  ASSERT_EQ(run({"--format", "bin", "simulate", "--seed", "2", "-o", data, "powerlaw",
                 "--gamma", "1.53", "--tau", "59", "-n", "100000"}).code, kExitOk);
  const auto r = run({"fit", "--input", data, "--dist", "powerlaw", "--xmin", "59"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["gamma"].get<double>(), 1.53, 0.01);
  EXPECT_EQ(j["xmin"], 59.0);
  EXPECT_TRUE(j["mu"].is_null());
}

TEST_F(CliTest, FitReadsStdinAndWritesCsv) {
  std::string input;
  for (int i = 1; i <= 400; ++i) input += std::to_string(i * i % 997 + 1) + "\n";
  const auto r = run({"--format", "csv", "fit", "--dist", "lognormal"}, input);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("dist,gamma,p,xmin,mu,sigma,loglik_p,LR,n\nlognormal,,,,", 0), 0u);
}

TEST_F(CliTest, FitRejectsTooFewReplicates) {
  const auto r = run({"fit", "--bootstrap", "50"}, "1\n2\n3\n");
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_TRUE(single_error_line(r.err));
}

TEST_F(CliTest, DegenerateAndMissingInput) {
  std::string same;
  for (int i = 0; i < 100; ++i) same += "5\n";
  const auto d = run({"fit"}, same);
  EXPECT_EQ(d.code, kExitDegenerate);
  EXPECT_NE(d.err.find("degenerate_sample"), std::string::npos);
  const auto e = run({"fit"}, "");
  EXPECT_EQ(e.code, kExitDegenerate);
  const auto m = run({"fit", "-i", path("nope.txt")});
  EXPECT_EQ(m.code, kExitFailure);
  EXPECT_NE(m.err.find("io_error"), std::string::npos);
  EXPECT_TRUE(single_error_line(m.err));
  const auto bad = run({"fit"}, "1\n2\nthree\n");
  EXPECT_EQ(bad.code, kExitFailure);
  EXPECT_TRUE(single_error_line(bad.err));
}

TEST_F(CliTest, BinWritesHistogram) {
  const auto r = run({"bin", "--log-bins", "1"}, "1\n5\n20\n500\n1000\n");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "bin_left,bin_right,count,density\n1,10,2,0.044444444444444446\n"
                   "10,100,1,0.0022222222222222222\n100,1000,2,0.00044444444444444447\n");
  const auto q = run({"bin", "--width", "60", "--quantize", "60"}, "30\n61\n130\n");
  ASSERT_EQ(q.code, kExitOk) << q.err;
  EXPECT_EQ(q.out, "bin_left,bin_right,count,density\n60,120,1,0.008333333333333333\n"
                   "120,180,1,0.008333333333333333\n");
  EXPECT_NE(q.err.find("dropped 1"), std::string::npos);
}

TEST_F(CliTest, IngestWritesDurationsAndSummary) {
  const auto events = path("e.csv");
  std::ofstream(events) << "actor,timestamp\na,0\nb,5\na,10\nb,7\nb,7\nb,x\n";
  const auto r = run({"ingest", "--events", events, "--summary", path("s.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "2\n10\n");
  const auto s = nlohmann::json::parse(slurp(path("s.json")));
  EXPECT_EQ(s["events_read"], 5);
  EXPECT_EQ(s["events_dropped"], 1);
  EXPECT_EQ(s["actors"], 2);
  EXPECT_EQ(s["durations_emitted"], 2);
  EXPECT_EQ(s["zero_gaps_dropped"], 1);
}

TEST_F(CliTest, IngestPrecomputed) {
  const auto r = run({"ingest", "--events", "-", "--precomputed"}, "7\n3\n0\n");
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, "3\n7\n");
  EXPECT_EQ(r.err, "{\"events_read\":3,\"events_dropped\":0,\"actors\":0,"
                   "\"durations_emitted\":2,\"zero_gaps_dropped\":1}\n");
  EXPECT_EQ(run({"ingest", "--events", "-", "--precomputed", "--direction", "in"}, "1\n").code,
            kExitFailure);
}

TEST_F(CliTest, IngestSplitsByResolution) {
  const auto events = path("e.csv");
  std::ofstream(events) << "actor,timestamp\na,0\na,120\na,300\na,1000.5\na,1003\n";
  const auto r = run({"ingest", "--events", events, "-o", path("d"), "--split-step", "60",
                      "--split-epoch", "500"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(slurp(path("d.coarse")), "2\n3\n");
  EXPECT_EQ(slurp(path("d.fine")), "2.5\n");
}

TEST_F(CliTest, CompareWritesRow) {
  const auto data = path("d.txt");
  ASSERT_EQ(run({"simulate", "--seed", "4", "-o", data, "powerlaw", "--gamma", "1.53",
                 "--tau", "59", "-n", "100000"}).code, kExitOk);
  const auto r = run({"compare", "-i", data, "--xmin", "59"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["dist"], "both");
  EXPECT_GT(j["LR"].get<double>(), 0.0);
  EXPECT_EQ(j["xmin"], 59.0);
}

TEST_F(CliTest, ReportListsAndSkipsBadRows) {
  const auto rows = path("rows.jsonl");
  std::ofstream(rows)
      << R"({"dist":"powerlaw","gamma":1.53,"p":0.23,"xmin":59,"mu":null,"sigma":null,"loglik_p":null,"LR":null,"n":7156722})"
      << "\nnot json\n"
      << R"({"dist":"lognormal","gamma":null})" << "\n";
  const auto r = run({"report", rows});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
  EXPECT_NE(r.out.find("| powerlaw | 1.53 | 0.23 | 59 |"), std::string::npos);
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 2);
  EXPECT_NE(r.err.find("rows.jsonl:2"), std::string::npos);
  EXPECT_NE(r.err.find("rows.jsonl:3"), std::string::npos);

  const auto bad = path("bad.jsonl");
  std::ofstream(bad) << "{}\n";
  const auto b = run({"report", bad});
  EXPECT_NE(b.code, kExitOk);
}

TEST_F(CliTest, ReportKeepsInputOrder) {
  const auto data = path("d.txt");
  ASSERT_EQ(run({"simulate", "--seed", "8", "-o", data, "lognormal", "--mu", "3", "--sigma",
                 "1", "-n", "2000"}).code, kExitOk);
  const auto a = run({"fit", "-i", data, "--dist", "lognormal", "-o", path("a.jsonl")});
  const auto b = run({"fit", "-i", data, "--dist", "powerlaw", "-o", path("b.jsonl")});
  ASSERT_EQ(a.code + b.code, 0);
  const auto r = run({"report", "--table", "csv", path("b.jsonl"), path("a.jsonl")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto first = r.out.find("\npowerlaw,");
  const auto second = r.out.find("\nlognormal,");
  ASSERT_NE(first, std::string::npos);
  ASSERT_NE(second, std::string::npos);
  EXPECT_LT(first, second);
}

TEST_F(CliTest, ThreadCapDoesNotChangeOutput) {
  const auto data = path("d.txt");
  ASSERT_EQ(run({"simulate", "--seed", "9", "-o", data, "lognormal", "--mu", "3", "--sigma",
                 "1.2", "-n", "2000"}).code, kExitOk);
  const auto a = run({"--threads", "1", "fit", "-i", data, "--bootstrap", "100"});
  const auto b = run({"--threads", "3", "fit", "-i", data, "--bootstrap", "100"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

}  // namespace
}  // namespace tailfit
