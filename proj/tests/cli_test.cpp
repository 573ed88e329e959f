// Copyright 2026 The SliceMend Authors
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


#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "slicemend/bench.hpp"
#include "slicemend/project.hpp"

namespace slicemend::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kCorpus = SLICEMEND_CORPUS_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json read(const fs::path& p) { return read_json(p); }

json without_times(json j) { return normalize_json(j); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / "slicemend_cli_test" / info->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv(kStepBudgetEnv);
  }
  void TearDown() override {
    unsetenv(kStepBudgetEnv);
    fs::remove_all(dir_);
  }

  // A project built from a corpus fixture with one line replaced.
  fs::path mutated(std::string_view fixture, int line, std::string_view text,
                   json manifest_extra = json::object()) {
    const fs::path src = kCorpus / fixture;
    const fs::path dst = dir_ / "project";
    fs::remove_all(dst);
    fs::create_directories(dst);
    std::istringstream in(read_text(src / "program.mini"));
    std::string program;
    std::string l;
    for (int i = 1; std::getline(in, l); ++i) program += (i == line ? std::string(text) : l) + "\n";
    write_text(dst / "program.mini", program);
    fs::copy_file(src / "tests.json", dst / "tests.json");
    json manifest = {{"program", "program.mini"}, {"tests", "tests.json"}};
    manifest.update(manifest_extra);
    write_json(dst / "manifest.json", manifest);
    return dst;
  }

  fs::path path(std::string_view name) const { return dir_ / name; }

  fs::path dir_;
};

// `sum = in2 + in3` became a subtraction.
constexpr int kFaultLine = 6;
constexpr std::string_view kFaultText = "    sum = in2 - in3";

TEST_F(CliTest, PipelineMatchesChainedCommands) {
  const auto project = mutated("calc_dispatch", kFaultLine, kFaultText).string();
  const auto out = path("pipeline");
  ASSERT_EQ(cli({"run-pipeline", "--project", project, "--out", out.string()}).code, kOk);

  ASSERT_EQ(cli({"slice", "--project", project, "--out", path("slice.mini").string(), "--report",
                 path("slice-report.json").string()})
                .code,
            kOk);
  ASSERT_EQ(cli({"reduce-tests", "--project", project, "--slice-report",
                 path("slice-report.json").string(), "--out", path("reduced-tests.json").string(),
                 "--report", path("reduction-report.json").string()})
                .code,
            kOk);
  ASSERT_EQ(cli({"localize", "--project", project, "--out", path("suspicious.json").string()}).code,
            kOk);
  ASSERT_EQ(cli({"repair", "--project", project, "--suspicious", path("suspicious.json").string(),
                 "--out", path("outcome.json").string()})
                .code,
            kOk);

  EXPECT_EQ(read_text(out / "slice.mini"), read_text(path("slice.mini")));
  for (const char* name : {"slice-report.json", "reduced-tests.json", "reduction-report.json",
                           "suspicious.json", "outcome.json"}) {
    EXPECT_EQ(without_times(read(out / name)), without_times(read(path(name)))) << name;
  }
  const json outcome = read(out / "outcome.json");
  EXPECT_TRUE(outcome["patched"]);
  EXPECT_EQ(outcome["patch"]["line"], kFaultLine);
  EXPECT_EQ(outcome["setup"], "R(P,T,SL)");
  EXPECT_TRUE(outcome["valid_on_full_suite"]);
}

TEST_F(CliTest, ReducedBothPipelineMatchesChainedCommands) {
  const auto project = mutated("calc_dispatch", kFaultLine, kFaultText).string();
  const auto out = path("pipeline");
  ASSERT_EQ(cli({"run-pipeline", "--project", project, "--out", out.string(), "--setup",
                 "reduced-both", "--filter-sl-by-slice"})
                .code,
            kOk);
  for (const char* name : {"slice.mini", "slice-report.json", "reduced-tests.json",
                           "reduction-report.json", "suspicious.json", "outcome.json"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  // The chain: localize with the reduced suite and the slice filter, repair
  // against the reduced suite.
  ASSERT_EQ(cli({"localize", "--project", project, "--suite",
                 (out / "reduced-tests.json").string(), "--slice-report",
                 (out / "slice-report.json").string(), "--out", path("sl.json").string()})
                .code,
            kOk);
  EXPECT_EQ(read(path("sl.json")), read(out / "suspicious.json"));
  ASSERT_EQ(cli({"repair", "--project", project, "--suspicious", path("sl.json").string(),
                 "--suite", (out / "reduced-tests.json").string(), "--setup", "reduced-both",
                 "--out", path("outcome.json").string()})
                .code,
            kOk);
  json a = without_times(read(out / "outcome.json"));
  json b = without_times(read(path("outcome.json")));
  // Only run-pipeline takes the filter flag.
  a["config"].erase("filter_sl_by_slice");
  b["config"].erase("filter_sl_by_slice");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a["setup"], "R(P,T_R,SL_R)");

  const json reduction = read(out / "reduction-report.json");
  EXPECT_LT(reduction["kept"].size(), reduction["original_size"].get<std::size_t>());
}

// The failing runs never reach the `sum > 100` cap, so the slice drops it,
// yet a kept passing test needs it. No edit of the slice passes T_R.
TEST_F(CliTest, SlicedProgramLosesTheCap) {
  const auto project = mutated("calc_dispatch", kFaultLine, kFaultText).string();
  const auto out = path("pipeline");
  const auto r = cli({"run-pipeline", "--project", project, "--out", out.string(), "--setup",
                      "sliced-program"});
  EXPECT_EQ(r.code, kNoPatch) << r.err;
  const json outcome = read(out / "outcome.json");
  EXPECT_EQ(outcome["setup"], "R(P_S,T_R,SL_R)");
  EXPECT_EQ(outcome["stop"], "search-exhausted");
  EXPECT_EQ(read_text(out / "slice.mini").find("sum > 100"), std::string::npos);
}

TEST_F(CliTest, AllPassingSuiteExits3) {
  const auto project = (kCorpus / "calc_dispatch").string();
  const auto r = cli({"run-pipeline", "--project", project, "--out", path("o").string()});
  EXPECT_EQ(r.code, kNoFailingTests);
  const json e = json::parse(r.err);
  EXPECT_EQ(e["exit"], kNoFailingTests);
  EXPECT_EQ(e["error"]["kind"], "no-failing-tests");
  EXPECT_EQ(cli({"localize", "--project", project, "--out", path("sl.json").string()}).code,
            kNoFailingTests);
}

TEST_F(CliTest, CandidateBudgetOfOneOnDeepFaultExits4) {
  const auto project = mutated("calc_dispatch", kFaultLine, kFaultText).string();
  const auto r = cli({"run-pipeline", "--project", project, "--out", path("o").string(),
                      "--candidate-budget", "1"});
  EXPECT_EQ(r.code, kNoPatch);
  const json outcome = read(path("o") / "outcome.json");
  EXPECT_FALSE(outcome["patched"]);
  EXPECT_TRUE(outcome["patch"].is_null());
  EXPECT_EQ(outcome["npc"], 1);
  EXPECT_EQ(outcome["stop"], "candidate-budget");
  EXPECT_EQ(outcome["config"]["candidate_budget"], 1);
}

TEST_F(CliTest, PatchThatOnlyPassesReducedSuiteExits5) {
  // The curated bug lives in buggy.mini; stage it as the project program.
  const fs::path p = dir_ / "gate";
  fs::create_directories(p);
  fs::copy_file(kCorpus / "gate_boundary" / "buggy.mini", p / "program.mini");
  fs::copy_file(kCorpus / "gate_boundary" / "tests.json", p / "tests.json");
  const auto r =
      cli({"run-pipeline", "--project", p.string(), "--out", path("o").string(), "--setup",
           "reduced-suite"});
  EXPECT_EQ(r.code, kPatchInvalidOnFullSuite) << r.err;
  EXPECT_FALSE(read(path("o") / "outcome.json")["valid_on_full_suite"]);
  EXPECT_EQ(cli({"run-pipeline", "--project", p.string(), "--out", path("f").string()}).code,
            kOk);
}

TEST_F(CliTest, InputErrorsExit2) {
  // Duplicate test names.
  const fs::path dup = dir_ / "dup";
  fs::create_directories(dup);
  write_text(dup / "program.mini", "print in1\n");
  write_json(dup / "tests.json",
             json::array({{{"name", "a"}, {"inputs", {{"in1", 1}}}, {"expected_output", {"1"}}},
                          {{"name", "a"}, {"inputs", {{"in1", 2}}}, {"expected_output", {"2"}}}}));
  auto r = cli({"run-pipeline", "--project", dup.string(), "--out", path("o").string()});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(json::parse(r.err)["error"]["message"].get<std::string>().find("'a'"),
            std::string::npos);

  // Manifest without a program.
  const fs::path bad = dir_ / "bad";
  fs::create_directories(bad);
  write_json(bad / "manifest.json", {{"tests", "tests.json"}});
  EXPECT_EQ(cli({"slice", "--project", bad.string(), "--out", path("s").string(), "--report",
                 path("r").string()})
                .code,
            kInputError);

  // Non-positive budget in the manifest.
  const auto zero = mutated("calc_dispatch", kFaultLine, kFaultText, {{"step_budget", 0}});
  EXPECT_EQ(cli({"run-pipeline", "--project", zero.string(), "--out", path("o").string()}).code,
            kInputError);

  // Program that does not parse.
  write_text(dup / "program.mini", "if in1 > 0 {\nprint in1\n");
  r = cli({"run", "--project", dup.string()});
  EXPECT_EQ(r.code, kInputError);

  // Unknown flag and bad criterion.
  EXPECT_EQ(cli({"slice", "--nope"}).code, kInputError);
  const auto project = mutated("calc_dispatch", kFaultLine, kFaultText);
  r = cli({"slice", "--project", project.string(), "--out", path("s").string(), "--report",
           path("r").string(), "--criterion", "var:sum"});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_EQ(json::parse(r.err)["exit"], kInputError);
}

TEST_F(CliTest, MismatchedSliceReportExits2) {
  const auto project = mutated("calc_dispatch", kFaultLine, kFaultText).string();
  // Deleting only the opening line of a block leaves an unbalanced program.
  write_json(path("slice-report.json"), {{"deleted_lines", {1}}, {"original_size", 39}});
  const auto r = cli({"reduce-tests", "--project", project, "--slice-report",
                      path("slice-report.json").string(), "--out", path("t.json").string(),
                      "--report", path("r.json").string()});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_EQ(json::parse(r.err)["error"]["kind"], "mismatched-slice");
}

TEST_F(CliTest, StepBudgetPrecedence) {
  const auto project = mutated("calc_dispatch", kFaultLine, kFaultText, {{"step_budget", 5000}});
  const auto report = path("r.json").string();
  const std::vector<std::string> args = {"slice",    "--project", project.string(), "--out",
                                         path("s").string(), "--report", report};
  ASSERT_EQ(cli(args).code, kOk);
  EXPECT_EQ(read(report)["config"]["step_budget"], 5000);

  setenv(kStepBudgetEnv, "7000", 1);
  ASSERT_EQ(cli(args).code, kOk);
  EXPECT_EQ(read(report)["config"]["step_budget"], 7000);

  setenv(kStepBudgetEnv, "-3", 1);
  EXPECT_EQ(cli(args).code, kInputError);
  unsetenv(kStepBudgetEnv);

  mutated("calc_dispatch", kFaultLine, kFaultText);
  ASSERT_EQ(cli(args).code, kOk);
  EXPECT_EQ(read(report)["config"]["step_budget"], kDefaultStepBudget);
}

TEST_F(CliTest, ArtifactSchemas) {
  const auto project = mutated("calc_dispatch", kFaultLine, kFaultText).string();
  const auto out = path("o");
  ASSERT_EQ(cli({"run-pipeline", "--project", project, "--out", out.string()}).code, kOk);

  const json slice = read(out / "slice-report.json");
  for (const char* k : {"config", "deleted_lines", "oracle_calls", "parse_rejections",
                        "cache_hits", "accepted_deletions", "slice_size", "original_size"}) {
    EXPECT_TRUE(slice.contains(k)) << k;
  }
  EXPECT_EQ(slice["slice_size"].get<std::size_t>() + slice["deleted_lines"].size(),
            slice["original_size"].get<std::size_t>());
  for (const char* k : {"window", "step_budget", "candidate_budget", "time_budget_ms",
                        "criterion", "slice_inputs", "filter_sl_by_slice", "setup", "jobs"}) {
    EXPECT_TRUE(slice["config"].contains(k)) << k;
  }

  const json reduction = read(out / "reduction-report.json");
  EXPECT_EQ(reduction["kept"].size() + reduction["dropped"].size(),
            reduction["original_size"].get<std::size_t>());
  EXPECT_EQ(reduction["kept_failing"].get<std::size_t>() +
                reduction["kept_passing"].get<std::size_t>(),
            reduction["kept"].size());

  const json tests = read(out / "reduced-tests.json");
  ASSERT_TRUE(tests.is_array());
  EXPECT_EQ(tests.size(), reduction["kept"].size());
  for (const auto& t : tests) {
    EXPECT_TRUE(t.contains("name") && t.contains("inputs") && t.contains("expected_output") &&
                t.contains("verdict"));
  }

  const json sl = read(out / "suspicious.json");
  ASSERT_TRUE(sl.is_array());
  ASSERT_FALSE(sl.empty());
  double previous = 2.0;
  for (const auto& e : sl) {
    const double s = e["score"].get<double>();
    EXPECT_GT(s, 0.0);
    EXPECT_LE(s, previous);
    previous = s;
  }

  const json outcome = read(out / "outcome.json");
  for (const char* k : {"config", "patched", "patch", "npc", "rt_ms", "validations", "setup",
                        "stop", "valid_on_full_suite"}) {
    EXPECT_TRUE(outcome.contains(k)) << k;
  }
  EXPECT_EQ(outcome["stop"], "plausible-patch");
  for (const char* k : {"line", "template", "description"}) {
    EXPECT_TRUE(outcome["patch"].contains(k)) << k;
  }
}

TEST_F(CliTest, RunAndLabel) {
  const auto project = (kCorpus / "calc_dispatch").string();
  auto r = cli({"run", "--project", project, "--inputs", R"({"in1": 3, "in2": 4, "in3": 5})"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "20\n0\n");
  r = cli({"run", "--project", project});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.find("fail"), std::string::npos);

  ASSERT_EQ(cli({"label", "--project", project, "--out", path("t.json").string()}).code, kOk);
  EXPECT_EQ(read(path("t.json")), read(kCorpus / "calc_dispatch" / "tests.json"));
}

TEST_F(CliTest, BenchWritesReports) {
  const fs::path corpus = dir_ / "corpus";
  fs::create_directories(corpus);
  fs::copy(kCorpus / "calc_dispatch", corpus / "calc_dispatch");
  const auto r = cli({"bench", "--corpus", corpus.string(), "--seeds", "2", "--rng", "3", "--out",
                      path("b").string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  for (const char* name : {"table1.csv", "table2.csv", "table3.csv", "table4.csv",
                           "summary.json"}) {
    EXPECT_TRUE(fs::exists(path("b") / name)) << name;
  }
  const json s = read(path("b") / "summary.json");
  EXPECT_EQ(s["config"]["rng"], 3);
  EXPECT_EQ(s["bugs"], 2);
}

TEST_F(CliTest, HelpAndNoCommand) {
  EXPECT_EQ(cli({"--help"}).code, kOk);
  EXPECT_NE(cli({}).code, kOk);
}

}  // namespace
}  // namespace slicemend::cli
