// Copyright 2026 The qec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "qec/cli.hpp"
#include "qec/constructions.hpp"

namespace {

using namespace qec;
namespace fs = std::filesystem;

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    write_text_file(path(name), text);
    return path(name);
  }
  fs::path dir_;
};

const std::string kGhz = std::string(QEC_SAMPLES_DIR) + "/ghz3.json";

TEST_F(CliTest, GhzCsv) {
  const auto r = run({"entropy-vector", kGhz});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "A,B,C,AB,AC,BC,ABC\n1,1,1,1,1,1,0\n");
}

TEST_F(CliTest, V4TracedDisplayOrder) {
  const auto file = path("v4.json");
  save_state(file, v_state(4).state);
  const auto r = run({"entropy-vector", file, "--trace-out", "4", "--paper-order"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\n2,2,2,4,4,4,2\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, MalformedAndIncompleteInput) {
  auto r = run({"entropy-vector", write("bad.json", "{\"dims\": [2, 2")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("malformed JSON"), std::string::npos);
  r = run({"entropy-vector", write("nodims.json", "{\"amplitudes\": [[1, 0]]}")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'dims'"), std::string::npos);
  r = run({"entropy-vector", write("short.json", "{\"dims\": [2, 2], \"amplitudes\": [[1, 0]]}")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'amplitudes'"), std::string::npos);
  r = run({"entropy-vector", path("missing.json")});
  EXPECT_EQ(r.code, 2);
  r = run({"entropy-vector", kGhz, "--trace-out", "7"});
  EXPECT_EQ(r.code, 2);
  r = run({"no-such-command"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, DimensionCapExceeded) {
  const auto r = run({"entropy-vector", kGhz, "--cap", "4"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("numerical failure"), std::string::npos);
}

TEST_F(CliTest, ConstructNamedStates) {
  auto r = run({"construct", "vN", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_TRUE(j["consistent"].get<bool>());
  EXPECT_EQ(j["state"]["dims"], Json::array({4, 4, 4, 4}));

  r = run({"construct", "family", "--alpha", "2", "--beta", "0", "--gamma", "0", "--delta", "0", "--paper-order"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  const auto claimed = j["claimed"]["values"].get<std::vector<double>>();
  const std::vector<double> expect{2, 2, 2, 4, 4, 4, 2};
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(claimed[i], expect[i], 1e-12);

  r = run({"construct", "tilde-v4", "--a", "1,0,0,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);

  EXPECT_EQ(run({"construct", "family", "--alpha", "1"}).code, 2);
  EXPECT_EQ(run({"construct", "xyz"}).code, 2);
}

TEST_F(CliTest, RoundTripBitForBit) {
  const auto file = path("w4.json");
  auto r = run({"construct", "wN", "--n", "4", "--out", file});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto built = Json::parse(r.out)["verified"]["values"];
  r = run({"entropy-vector", file, "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["values"].dump(), built.dump());
  const auto again = load_state(file).pure();
  EXPECT_EQ(again.amplitudes(), w_state(4).state.amplitudes());
}

TEST_F(CliTest, ConeCheckShortSegment) {
  const auto r = run({"cone-check", "--vector", "0.3,0.3,0.3,0.6,0.6,0.6,0.3", "--paper-order"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["inside"].get<bool>());
  EXPECT_TRUE(j["line"]["on_line"].get<bool>());
  EXPECT_TRUE(j["tip"]["exclusion_advisory"].get<bool>());
  EXPECT_EQ(j["tip"]["triggered_by"], Json::array({"refined"}));
  EXPECT_NEAR(j["tip"]["corollary_sum"].get<double>(), 1.2, 1e-12);
}

TEST_F(CliTest, ConeCheckInputs) {
  EXPECT_EQ(run({"cone-check", "--vector", "1,2"}).code, 2);
  EXPECT_EQ(run({"cone-check"}).code, 2);
  const auto r = run({"cone-check", "--state", kGhz});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out)["inside"].get<bool>());
  const auto out = run({"cone-check", "--vector", "1,0,2"});
  EXPECT_EQ(out.code, 0);
  EXPECT_FALSE(Json::parse(out.out)["inside"].get<bool>());
}

TEST_F(CliTest, VerifyLemmas) {
  const auto file = path("w4.json");
  save_state(file, w_state(4).state);
  auto r = run({"verify-lemmas", file, "--party", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_TRUE(j["theorem1"]["holds"].get<bool>());

  save_state(file, random_pure(PartyDims{2, 2, 2}, 3));
  r = run({"verify-lemmas", file});
  ASSERT_EQ(r.code, 0) << r.err;
  j = Json::parse(r.out);
  EXPECT_TRUE(j["margins"]["lemma2"].is_null());

  const auto mixed = path("mixed.json");
  write_text_file(mixed, to_json(random_density(PartyDims{2, 2}, 2, 1)).dump());
  r = run({"verify-lemmas", mixed});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("purify"), std::string::npos);
}

TEST_F(CliTest, Figure2) {
  const auto r = run({"figure2", "--resolution", "3", "--max", "1"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "hA,hC,hABC,inside_sigma3,excluded_by_corollary");
  std::size_t rows = 0;
  bool saw_origin = false;
  while (std::getline(in, line)) {
    ++rows;
    if (line == "0,0,0,1,0") saw_origin = true;
  }
  EXPECT_EQ(rows, 27u);
  EXPECT_TRUE(saw_origin);
  // (0.5, 0.5, 0.5): on the line, singles below h(1/8).
  EXPECT_NE(r.out.find("\n0.5,0.5,0.5,1,1\n"), std::string::npos);
  EXPECT_EQ(run({"figure2", "--resolution", "1"}).code, 2);
  const auto file = path("f.csv");
  EXPECT_EQ(run({"figure2", "--resolution", "2", "--out", file}).code, 0);
  EXPECT_TRUE(fs::exists(file));
}

TEST_F(CliTest, ProbeConfigs) {
  auto r = run({"probe", write("bad.json", "{\"mode\": \"other\"}")});
  EXPECT_EQ(r.code, 2);
  r = run({"probe", write("neg.json", "{\"mode\": \"theorem\", \"restarts\": 0}")});
  EXPECT_EQ(r.code, 2);
  r = run({"probe", write("scale.json",
                          "{\"mode\": \"scale\", \"scale\": 2, \"restarts\": 1, \"max_iterations\": 3, \"threads\": 1}")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_LE(j["distance"].get<double>(), 1e-6);
  EXPECT_TRUE(j["target_on_line"].get<bool>());
}

TEST_F(CliTest, ProbeTheoremSmall) {
  const auto r = run({"probe", write("t.json",
                                     "{\"mode\": \"theorem\", \"dims\": [2, 2, 2, 2], \"restarts\": 1, "
                                     "\"max_iterations\": 10, \"threads\": 1}")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["all_feasible_above_one"].get<bool>());
}

TEST_F(CliTest, Help) { EXPECT_EQ(run({"--help"}).code, 0); }

}  // namespace
