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


#ifndef SLICEMEND_BENCH_HPP_
#define SLICEMEND_BENCH_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slicemend/fault_localization.hpp"
#include "slicemend/orbs.hpp"
#include "slicemend/project.hpp"
#include "slicemend/repair.hpp"
#include "slicemend/suite_reducer.hpp"

namespace slicemend {

/// Templates a seeded bug may come from. Each one can undo its own edits,
/// which keeps every seeded bug repairable by the catalog.
inline constexpr std::array<TemplateId, 5> kSeedTemplates = {
    TemplateId::kOpRelSwap, TemplateId::kOpArithSwap, TemplateId::kConstShift,
    TemplateId::kVarReplace, TemplateId::kCondNegate};

inline constexpr int kSeedAttempts = 500;

enum class SeedScope { kAnyLine, kFeatureCode };

struct SeedMutation {
  TemplateId template_id = TemplateId::kOpRelSwap;
  Donor donor;
};

struct BugInstance {
  std::string id;
  std::string fixture;
  Program correct_program;
  Program buggy_program;
  int ground_truth_line = 0;
  std::optional<SeedMutation> seed_mutation;  // absent for curated bugs
  std::string description;                    // the mutation, as a patch description
  TestSuite suite;  // verdicts on buggy_program
  std::vector<std::string> tags;
};

/// Mutates one statement of `correct` so that at least one test fails, with
/// every draw taken from an mt19937_64 seeded by `rng_seed`. A mutant is
/// rejected when no catalog candidate on the mutated line restores the
/// original text, when a test faults or overruns `step_budget` on it, or
/// when deleting the mutated statement (with its block) leaves every failing
/// test's output unchanged. Throws
/// UnseedableError after kSeedAttempts rejected draws, InputError when a
/// test already fails on `correct`.
/// Under kFeatureCode only statements executed by at most half of the tests
/// are mutated, which keeps the bug inside one feature's code.
BugInstance seed_bug(const Program& correct, const TestSuite& suite, std::uint64_t rng_seed,
                     std::int64_t step_budget = kDefaultStepBudget,
                     SeedScope scope = SeedScope::kAnyLine);

struct BenchConfig {
  int window = kDefaultWindow;
  std::int64_t step_budget = kDefaultStepBudget;
  RepairBudget budget;
  int jobs = 1;
  // SL_R keeps only lines the slice retains. Without it the reduced list can
  // only push the fault down: dropped tests never reach slice effect lines,
  // so they only ever lowered the scores of lines outside the slice.
  bool filter_sl_by_slice = true;
};

enum class PatchAudit { kIdenticalToBaseline, kDifferentButValid, kInvalidOnFullSuite, kNoPatch };

std::string_view to_string(PatchAudit audit);

/// Transplants `patch` onto the original program and runs the full suite.
/// A patch whose location is gone from the original audits as invalid.
PatchAudit audit_setup(const PatchCandidate& patch, const Program& original_program,
                       const TestSuite& full_suite, const std::optional<PatchCandidate>& baseline,
                       std::int64_t step_budget = kDefaultStepBudget);

struct SetupComparison {
  std::string bug_id;
  std::string fixture;
  std::vector<std::string> tags;
  int ground_truth_line = 0;
  std::string description;

  std::size_t program_size = 0;
  std::size_t slice_size = 0;
  bool fault_in_slice = false;

  std::size_t suite_size = 0;
  std::size_t failing_count = 0;
  std::size_t reduced_suite_size = 0;
  std::size_t reduced_failing_count = 0;

  std::size_t fl_size_full = 0;
  std::size_t fl_size_reduced = 0;
  std::optional<std::size_t> fl_rank_full;
  std::optional<std::size_t> fl_rank_reduced;
  // Lines ranked above the fault in SL_R appear in the same order above it
  // in SL.
  bool prefix_preserved = false;

  std::array<RepairOutcome, 5> outcomes;  // indexed like kAllSetups
  std::array<PatchAudit, 5> audits{};

  const RepairOutcome& outcome(Setup s) const { return outcomes[static_cast<std::size_t>(s)]; }
  PatchAudit audit(Setup s) const { return audits[static_cast<std::size_t>(s)]; }
  bool has_tag(std::string_view tag) const;
  double reduction_rate() const;
};

/// Program reduction, suite reduction, both suspicious lists and the five
/// repair setups for one bug, each produced patch audited against (P, T).
SetupComparison run_all_setups(const BugInstance& bug, const BenchConfig& config);

/// Bugs excluded from corpus aggregates carry this tag.
inline constexpr std::string_view kKnownNegativeTag = "known-negative";
inline constexpr std::string_view kDeadFeatureTag = "dead-feature";

/// Every fixture directory under `corpus` (sorted by name).
std::vector<Project> load_corpus(const std::filesystem::path& corpus,
                                 std::int64_t step_budget = kDefaultStepBudget);

/// Curated fixtures yield their one bug; others get `seeds` seeded bugs with
/// per-bug seeds derived from `rng`, the fixture name and the bug number.
/// Dead-feature fixtures are seeded in feature code. Unseedable draws are
/// skipped.
std::vector<BugInstance> corpus_bugs(const std::vector<Project>& corpus, int seeds,
                                     std::uint64_t rng, std::int64_t step_budget);

/// Runs every bug; bugs are processed in parallel up to config.jobs.
std::vector<SetupComparison> run_bench(const std::vector<BugInstance>& bugs,
                                       const BenchConfig& config);

struct ReportFiles {
  std::string table1;  // suite sizes
  std::string table2;  // slice and FL sizes, fault ranks
  std::string table3;  // NPC per setup, audits
  std::string table4;  // validations and RT per setup
  nlohmann::json summary;
};

/// Rendered reports. Columns and keys holding wall-clock times start with
/// "rt_ms" so normalize_report can strip them.
ReportFiles emit_report(const std::vector<SetupComparison>& comparisons,
                        const nlohmann::json& config_echo = nlohmann::json::object());
void write_report(const ReportFiles& files, const std::filesystem::path& dir);

/// Drops wall-clock fields: CSV columns and JSON keys starting with "rt_ms".
std::string normalize_csv(const std::string& csv);
nlohmann::json normalize_json(const nlohmann::json& j);

double median(std::vector<double> values);

}  // namespace slicemend

#endif  // SLICEMEND_BENCH_HPP_
