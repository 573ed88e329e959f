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


// End-to-end acceptance run over the corpus. Prints one PASS/FAIL line per
// criterion and exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "slicemend/bench.hpp"
#include "support/brute_force.hpp"

namespace slicemend {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr int kSeeds = 10;
constexpr std::uint64_t kRng = 7;
constexpr std::string_view kDonorTag = "slice-deletes-donor";

struct Check {
  bool pass = true;
  std::string detail;
  std::vector<std::string> offenders;

  void fail(std::string what) {
    pass = false;
    offenders.push_back(std::move(what));
  }
};

int failures = 0;

void report(int number, std::string_view title, const Check& v) {
  std::cout << (v.pass ? "PASS" : "FAIL") << " [" << number << "] " << title << ": " << v.detail
            << '\n';
  for (std::size_t i = 0; i < v.offenders.size() && i < 10; ++i) {
    std::cout << "    " << v.offenders[i] << '\n';
  }
  if (v.offenders.size() > 10) std::cout << "    ... " << v.offenders.size() - 10 << " more\n";
  failures += v.pass ? 0 : 1;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t rank_or_past_end(const std::optional<std::size_t>& rank, std::size_t size) {
  return rank.value_or(size + 1);
}

std::vector<TestCase> failing_tests(const TestSuite& suite) {
  std::vector<TestCase> out;
  for (const auto& t : suite.tests()) {
    if (t.verdict_on_original == slicemend::Verdict::kFail) out.push_back(t);
  }
  return out;
}

// Reference suspicious list: Ochiai from raw runs, positive scores only,
// descending score then ascending line, restricted to `keep` when given.
std::vector<SuspiciousEntry> oracle_list(const Program& p, const std::vector<TestCase>& tests,
                                         const Program* keep) {
  std::vector<SuspiciousEntry> out;
  for (auto [line, score] : testing::ochiai_by_hand(p, tests)) {
    if (score <= 0.0) continue;
    if (keep != nullptr && !keep->contains(line)) continue;
    out.push_back({line, score});
  }
  std::sort(out.begin(), out.end(), [](const SuspiciousEntry& a, const SuspiciousEntry& b) {
    return a.score != b.score ? a.score > b.score : a.line < b.line;
  });
  return out;
}

bool same_list(const SuspiciousList& got, const std::vector<SuspiciousEntry>& want) {
  if (got.entries.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (got.entries[i].line != want[i].line) return false;
    if (std::abs(got.entries[i].score - want[i].score) > 1e-12) return false;
  }
  return true;
}

std::vector<Bindings> inputs_of(const std::vector<TestCase>& tests) {
  std::vector<Bindings> out;
  for (const auto& t : tests) out.push_back(t.inputs);
  return out;
}

// Window re-deletion over a finished slice, and for small programs a check of
// every deletion subset.
void check_minimality(const std::string& name, const Program& program,
                      const std::vector<TestCase>& inputs, Check& v, std::size_t& checked,
                      std::size_t& brute_forced) {
  const ObservationTarget target;
  const SliceResult s = orbs_slice(program, {target, inputs, kDefaultWindow});
  const auto in = inputs_of(inputs);
  const auto reference = testing::observe_without(program, {}, target, in);
  const auto on_slice = testing::observe_without(program, s.deleted_lines, target, in);
  ++checked;
  if (!reference || !on_slice || *reference != *on_slice) {
    v.fail(name + ": slice does not reproduce the program");
    return;
  }
  const auto removable =
      testing::removable_windows(s.slice, target, in, *reference, kDefaultWindow);
  if (!removable.empty()) {
    v.fail(name + ": " + std::to_string(removable.size()) + " window(s) still removable");
  }
  if (program.indices().size() > 12) return;
  ++brute_forced;
  const auto preserving = testing::preserving_deletions(program, target, in);
  if (std::find(preserving.begin(), preserving.end(), s.deleted_lines) == preserving.end()) {
    v.fail(name + ": brute force rejects the slice");
  }
  for (const auto& d : preserving) {
    if (d.size() == s.deleted_lines.size() + 1 &&
        std::includes(d.begin(), d.end(), s.deleted_lines.begin(), s.deleted_lines.end())) {
      v.fail(name + ": one more line can go");
      break;
    }
  }
}

// Small programs alongside the corpus for the subset check.
struct SmallProgram {
  const char* name;
  const char* source;
  std::vector<Bindings> inputs;
};

const std::vector<SmallProgram>& small_programs() {
  static const std::vector<SmallProgram> programs = {
      {"small/branch",
       "a = in1 + 1\nb = in1 * 2\nif a > 3 {\n  print a\n} else {\n  c = b\n}\nprint 7",
       {{{"in1", 1}}, {{"in1", 5}}}},
      {"small/loop",
       "s = 0\ni = 0\nt = 9\nwhile i < in1 {\n  s = s + i\n  i = i + 1\n}\nprint s",
       {{{"in1", 0}}, {{"in1", 3}}}},
      {"small/dead",
       "x = in1\ny = x + 1\nz = y * 2\nw = in1 - 1\nprint y\nq = w",
       {{{"in1", 2}}, {{"in1", -4}}}},
  };
  return programs;
}

bool same_normalized_reports(const fs::path& a, const fs::path& b, std::string& why) {
  for (const char* name : {"table1.csv", "table2.csv", "table3.csv", "table4.csv"}) {
    if (normalize_csv(read_text(a / name)) != normalize_csv(read_text(b / name))) {
      why = name;
      return false;
    }
  }
  if (normalize_json(read_json(a / "summary.json")).dump(2) !=
      normalize_json(read_json(b / "summary.json")).dump(2)) {
    why = "summary.json";
    return false;
  }
  return true;
}

int run_acceptance() {
  const fs::path corpus_dir = SLICEMEND_CORPUS_DIR;
  const auto start = Clock::now();
  const auto corpus = load_corpus(corpus_dir);
  const auto bugs = corpus_bugs(corpus, kSeeds, kRng, kDefaultStepBudget);
  const auto comparisons = run_bench(bugs, BenchConfig{});
  const double bench_seconds = seconds_since(start);

  std::vector<const SetupComparison*> agg;
  for (const auto& c : comparisons) {
    if (!c.has_tag(kKnownNegativeTag)) agg.push_back(&c);
  }
  std::cout << "corpus: " << corpus.size() << " fixtures, " << comparisons.size() << " bugs ("
            << agg.size() << " aggregated), rng " << kRng << ", " << kSeeds
            << " seeds per fixture\n";

  // 1. Failing tests survive suite reduction.
  {
    Check v;
    std::size_t ok = 0;
    for (const auto* c : agg) {
      if (c->reduced_failing_count == c->failing_count && c->failing_count > 0) {
        ++ok;
      } else {
        v.fail(c->bug_id + ": " + std::to_string(c->failing_count) + " -> " +
               std::to_string(c->reduced_failing_count));
      }
    }
    if (bench_seconds >= 120.0) v.fail("corpus run took " + std::to_string(bench_seconds) + " s");
    std::ostringstream d;
    d << ok << "/" << agg.size() << " bugs, corpus run " << std::fixed
      << std::setprecision(1) << bench_seconds << " s";
    v.detail = d.str();
    report(1, "failing-test preservation", v);
  }

  // 2. Dead-feature fixtures reduce their suites to at most half.
  {
    Check v;
    std::size_t n = 0;
    std::vector<double> rates;
    for (const auto* c : agg) {
      if (!c->has_tag(kDeadFeatureTag)) continue;
      ++n;
      rates.push_back(c->reduction_rate());
      if (c->reduction_rate() > 0.5) {
        v.fail(c->bug_id + ": rate " + std::to_string(c->reduction_rate()));
      }
    }
    if (n == 0) v.fail("no dead-feature bugs");
    const double worst = rates.empty() ? 0.0 : *std::max_element(rates.begin(), rates.end());
    std::ostringstream d;
    d << n - v.offenders.size() << "/" << n << " dead-feature bugs at rate <= 0.5 (worst "
      << std::fixed << std::setprecision(3) << worst << ", median " << median(rates) << ")";
    v.detail = d.str();
    report(2, "meaningful reduction", v);
  }

  // 3. The faulty line stays in the slice and in SL_R.
  {
    Check v;
    for (const auto* c : agg) {
      if (!c->fault_in_slice) {
        v.fail(c->bug_id + ": line " + std::to_string(c->ground_truth_line) +
               " sliced away (" + c->description + ")");
      } else if (!c->fl_rank_reduced) {
        v.fail(c->bug_id + ": line " + std::to_string(c->ground_truth_line) + " not in SL_R");
      }
    }
    v.detail = std::to_string(agg.size() - v.offenders.size()) + "/" +
               std::to_string(agg.size()) + " bugs keep the fault";
    report(3, "fault retention", v);
  }

  // 4. Median fault rank does not get worse with SL_R.
  {
    Check v;
    std::vector<double> full;
    std::vector<double> reduced;
    std::size_t improved = 0;
    std::size_t regressed = 0;
    for (const auto* c : agg) {
      const auto rf = rank_or_past_end(c->fl_rank_full, c->fl_size_full);
      const auto rr = rank_or_past_end(c->fl_rank_reduced, c->fl_size_reduced);
      full.push_back(static_cast<double>(rf));
      reduced.push_back(static_cast<double>(rr));
      improved += rr < rf ? 1 : 0;
      regressed += rr > rf ? 1 : 0;
    }
    if (median(reduced) > median(full)) v.fail("median rank got worse");
    if (improved == 0) v.fail("no bug improved");
    std::ostringstream d;
    d << "median rank " << median(full) << " -> " << median(reduced) << ", improved " << improved
      << ", regressed " << regressed;
    v.detail = d.str();
    report(4, "rank improvement", v);
  }

  // 5. A better rank with the same lines above it costs fewer candidates.
  {
    Check v;
    std::size_t applicable = 0;
    for (const auto* c : agg) {
      const auto rf = rank_or_past_end(c->fl_rank_full, c->fl_size_full);
      const auto rr = rank_or_past_end(c->fl_rank_reduced, c->fl_size_reduced);
      if (!(rr < rf && c->prefix_preserved)) continue;
      ++applicable;
      const auto before = c->outcome(Setup::kFull).npc;
      const auto after = c->outcome(Setup::kReducedSl).npc;
      if (!(after < before)) {
        v.fail(c->bug_id + ": NPC " + std::to_string(before) + " -> " + std::to_string(after));
      }
    }
    v.detail = std::to_string(applicable - v.offenders.size()) + "/" +
               std::to_string(applicable) + " qualifying bugs with strictly lower NPC";
    report(5, "NPC improvement", v);
  }

  // 6. The reduced suite never costs more validations, and usually fewer.
  {
    Check v;
    std::size_t strict = 0;
    for (const auto* c : agg) {
      const auto full = c->outcome(Setup::kFull).validations_run;
      const auto reduced = c->outcome(Setup::kReducedSuite).validations_run;
      if (reduced > full) {
        v.fail(c->bug_id + ": " + std::to_string(full) + " -> " + std::to_string(reduced));
      }
      strict += reduced < full ? 1 : 0;
    }
    if (2 * strict < agg.size()) v.fail("strictly cheaper on fewer than half the bugs");
    v.detail = "no increase on " + std::to_string(agg.size() - v.offenders.size()) + "/" +
               std::to_string(agg.size()) + ", strictly cheaper on " + std::to_string(strict);
    report(6, "validation-cost reduction", v);
  }

  // 7. Reduced setups give valid patches; the sliced program can lose one.
  {
    Check v;
    for (const auto* c : agg) {
      for (auto s : {Setup::kReducedSuite, Setup::kReducedSl, Setup::kReducedBoth}) {
        const auto a = c->audit(s);
        if (a != PatchAudit::kIdenticalToBaseline && a != PatchAudit::kDifferentButValid) {
          v.fail(c->bug_id + ": " + std::string(setup_label(s)) + " " +
                 std::string(to_string(a)));
        }
      }
    }
    std::size_t donors = 0;
    for (const auto* c : agg) {
      if (!c->has_tag(kDonorTag)) continue;
      ++donors;
      if (c->audit(Setup::kSlicedProgram) != PatchAudit::kNoPatch) {
        v.fail(c->bug_id + ": sliced program still found a patch");
      }
      if (!c->outcome(Setup::kReducedBoth).patch) {
        v.fail(c->bug_id + ": R(P,T_R,SL_R) found no patch");
      }
    }
    if (donors == 0) v.fail("no slice-deletes-donor fixture");
    v.detail = std::to_string(agg.size()) + " bugs x 3 reduced setups audited, " +
               std::to_string(donors) + " donor fixture(s) checked";
    report(7, "reliable setups", v);
  }

  // 8. Slices are window-minimal; tiny programs are checked exhaustively.
  {
    Check v;
    const auto t0 = Clock::now();
    std::size_t checked = 0;
    std::size_t brute_forced = 0;
    for (const auto& project : corpus) {
      if (project.program.indices().size() > 30) continue;
      check_minimality(project.name, project.program, project.suite.tests(), v, checked,
                       brute_forced);
    }
    for (const auto& bug : bugs) {
      if (bug.buggy_program.indices().size() > 30) continue;
      check_minimality(bug.id, bug.buggy_program, failing_tests(bug.suite), v, checked,
                       brute_forced);
    }
    for (const auto& sp : small_programs()) {
      const auto parsed = parse(sp.source);
      std::vector<TestCase> tests;
      for (std::size_t i = 0; i < sp.inputs.size(); ++i) {
        tests.push_back({"i" + std::to_string(i), sp.inputs[i], {}, {}});
      }
      check_minimality(sp.name, *parsed.program, tests, v, checked, brute_forced);
    }
    const double secs = seconds_since(t0);
    if (secs >= 300.0) v.fail("took " + std::to_string(secs) + " s");
    std::ostringstream d;
    d << checked << " slices re-deleted, " << brute_forced << " brute-forced, " << std::fixed
      << std::setprecision(1) << secs << " s";
    v.detail = d.str();
    report(8, "ORBS 1-minimality", v);
  }

  // 9. Suspicious lists match Ochiai recomputed from raw runs.
  {
    Check v;
    std::size_t lists = 0;
    for (const auto& bug : bugs) {
      const Program& p = bug.buggy_program;
      const TestSuite full = bug.suite.with_verdicts(p);
      if (!same_list(localize(p, full), oracle_list(p, full.tests(), nullptr))) {
        v.fail(bug.id + ": SL differs");
      }
      const SliceResult s = orbs_slice(p, {{}, failing_tests(full), kDefaultWindow});
      auto [reduced, report_] = reduce_suite(p, full, s);
      if (!same_list(localize(p, reduced, &s, SuiteProvenance::kReducedSuite),
                     oracle_list(p, reduced.tests(), &s.slice))) {
        v.fail(bug.id + ": SL_R differs");
      }
      lists += 2;
    }
    v.detail = std::to_string(lists) + " lists over " + std::to_string(bugs.size()) + " bugs";
    report(9, "Ochiai oracle equivalence", v);
  }

  // 10. Two bench runs with the same rng agree once times are stripped.
  {
    Check v;
    const fs::path tmp = fs::temp_directory_path() / "slicemend_acceptance";
    fs::remove_all(tmp);
    std::ostringstream sink;
    const std::string rng = std::to_string(kRng);
    const std::string seeds = std::to_string(kSeeds);
    for (const char* run : {"a", "b"}) {
      const int code = cli::run_cli({"bench", "--corpus", corpus_dir.string(), "--seeds", seeds,
                                     "--rng", rng, "--out", (tmp / run).string()},
                                    sink, sink);
      if (code != 0) v.fail(std::string("bench run ") + run + " exited " + std::to_string(code));
    }
    std::string why;
    if (v.pass && !same_normalized_reports(tmp / "a", tmp / "b", why)) v.fail(why + " differs");
    v.detail = "tables 1-4 and summary compared after removing rt_ms fields";
    fs::remove_all(tmp);
    report(10, "determinism", v);
  }

  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " failing")
            << '\n';
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace slicemend

int main() { return slicemend::run_acceptance(); }
