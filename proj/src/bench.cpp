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


#include "slicemend/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "slicemend/errors.hpp"
#include "slicemend/parallel.hpp"

namespace slicemend {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool restores(const Program& buggy, int location, const std::string& correct_text) {
  for (auto id : kSeedTemplates) {
    if (!is_applicable(id, *buggy.line(location))) continue;
    for (const auto& c :
         generate_candidates(buggy, location, id, search_donor_code(buggy, location, id))) {
      const SourceLine* l = c.patched.line(location);
      if (c.edit.before.empty() && c.edit.after.empty() && l != nullptr &&
          l->text == correct_text) {
        return true;
      }
    }
  }
  return false;
}

// The line itself, or for a block header every line up to its closing brace.
std::set<int> statement_span(const Program& program, int line) {
  const auto& lines = program.lines();
  auto it = std::find_if(lines.begin(), lines.end(),
                         [&](const SourceLine& l) { return l.index == line; });
  std::set<int> span{line};
  if (it->kind != LineKind::kIfOpen && it->kind != LineKind::kWhileOpen) return span;
  int depth = 1;
  for (++it; it != lines.end() && depth > 0; ++it) {
    span.insert(it->index);
    if (it->kind == LineKind::kIfOpen || it->kind == LineKind::kWhileOpen) ++depth;
    if (it->kind == LineKind::kBlockClose) --depth;
  }
  return span;
}

// True when removing the mutated statement changes what some failing test
// prints. Otherwise the bug acts as missing code on every failing run.
bool is_commission(const Program& buggy, int line, const TestSuite& suite,
                   std::int64_t step_budget) {
  const ParseOutcome removed = buggy.without(statement_span(buggy, line));
  if (!removed) return true;
  for (const auto& t : suite.tests()) {
    const TestRun with = run_test(buggy, t, step_budget);
    if (with.verdict != Verdict::kFail) continue;
    const ExecutionResult without = run(*removed.program, t.inputs, step_budget);
    if (without.status != with.result.status || without.printed != with.result.printed) {
      return true;
    }
  }
  return false;
}

// Lines strictly above `line` in `list`, in rank order.
std::vector<int> prefix_above(const SuspiciousList& list, int line) {
  std::vector<int> out;
  for (const auto& e : list.entries) {
    if (e.line == line) return out;
    out.push_back(e.line);
  }
  return out;
}

bool is_subsequence(const std::vector<int>& small, const std::vector<int>& big) {
  std::size_t j = 0;
  for (int x : big) {
    if (j < small.size() && small[j] == x) ++j;
  }
  return j == small.size();
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

double rounded(double v) { return std::round(v * 1e6) / 1e6; }

std::string opt(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::string flag_column(std::string_view prefix, Setup s) {
  std::string f(setup_flag(s));
  std::replace(f.begin(), f.end(), '-', '_');
  return std::string(prefix) + f;
}

}  // namespace

std::string_view to_string(PatchAudit audit) {
  switch (audit) {
    case PatchAudit::kIdenticalToBaseline:
      return "identical-to-baseline";
    case PatchAudit::kDifferentButValid:
      return "different-but-valid";
    case PatchAudit::kInvalidOnFullSuite:
      return "invalid-on-full-suite";
    case PatchAudit::kNoPatch:
      return "no-patch";
  }
  return "?";
}

BugInstance seed_bug(const Program& correct, const TestSuite& suite, std::uint64_t rng_seed,
                     std::int64_t step_budget, SeedScope scope) {
  std::map<int, std::size_t> executed_by;
  for (const auto& t : suite.tests()) {
    const TestRun r = run_test(correct, t, step_budget);
    if (r.verdict == Verdict::kFail) {
      throw InputError("test '" + t.name + "' already fails on the correct program");
    }
    for (int l : r.result.covered_lines) ++executed_by[l];
  }
  std::vector<int> lines;
  for (int l : correct.statement_lines()) {
    if (scope == SeedScope::kFeatureCode && 2 * executed_by[l] > suite.size()) continue;
    lines.push_back(l);
  }
  if (lines.empty()) throw UnseedableError("no statement eligible for mutation");
  std::mt19937_64 rng(rng_seed);

  for (int attempt = 0; attempt < kSeedAttempts; ++attempt) {
    const int loc = lines[rng() % lines.size()];
    std::vector<TemplateId> usable;
    for (auto id : kSeedTemplates) {
      if (is_applicable(id, *correct.line(loc))) usable.push_back(id);
    }
    if (usable.empty()) continue;
    const TemplateId id = usable[rng() % usable.size()];
    const auto donors = search_donor_code(correct, loc, id);
    auto candidates = generate_candidates(correct, loc, id, donors);
    if (candidates.empty()) continue;
    const std::size_t pick = rng() % candidates.size();
    PatchCandidate& mutant = candidates[pick];

    bool fails = false;
    bool crashes = false;
    for (const auto& t : suite.tests()) {
      auto r = run_test(mutant.patched, t, step_budget);
      if (r.result.status != ExecStatus::kOk) {
        crashes = true;
        break;
      }
      fails = fails || r.verdict == Verdict::kFail;
    }
    if (crashes || !fails) continue;
    if (!restores(mutant.patched, loc, correct.line(loc)->text)) continue;
    if (!is_commission(mutant.patched, loc, suite, step_budget)) continue;

    BugInstance bug;
    bug.correct_program = correct;
    bug.buggy_program = mutant.patched;
    bug.ground_truth_line = loc;
    bug.description = mutant.description;
    // The donor behind the chosen candidate: candidates skip no-ops and
    // repeats, so recover it by matching the edit.
    for (const auto& d : donors) {
      auto one = generate_candidates(correct, loc, id, {d});
      if (!one.empty() && one.front().edit == mutant.edit) {
        bug.seed_mutation = SeedMutation{id, d};
        break;
      }
    }
    bug.suite = suite.with_verdicts(bug.buggy_program, step_budget);
    return bug;
  }
  throw UnseedableError("no failing single-edit mutant within " + std::to_string(kSeedAttempts) +
                        " draws");
}

PatchAudit audit_setup(const PatchCandidate& patch, const Program& original_program,
                       const TestSuite& full_suite, const std::optional<PatchCandidate>& baseline,
                       std::int64_t step_budget) {
  if (baseline && baseline->edit == patch.edit) return PatchAudit::kIdenticalToBaseline;
  ParseOutcome transplanted;
  try {
    transplanted = apply_edit(original_program, patch.edit);
  } catch (const InapplicablePatchError&) {
    return PatchAudit::kInvalidOnFullSuite;
  }
  if (!transplanted) return PatchAudit::kInvalidOnFullSuite;
  for (const auto& t : full_suite.tests()) {
    if (run_test(*transplanted.program, t, step_budget).verdict == Verdict::kFail) {
      return PatchAudit::kInvalidOnFullSuite;
    }
  }
  return PatchAudit::kDifferentButValid;
}

bool SetupComparison::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

double SetupComparison::reduction_rate() const {
  return suite_size == 0 ? 1.0
                         : static_cast<double>(reduced_suite_size) / static_cast<double>(suite_size);
}

SetupComparison run_all_setups(const BugInstance& bug, const BenchConfig& config) {
  const Program& p = bug.buggy_program;
  const TestSuite full = bug.suite.with_verdicts(p, config.step_budget);
  const ExecOptions exec{config.step_budget, 1};

  SetupComparison cmp;
  cmp.bug_id = bug.id;
  cmp.fixture = bug.fixture;
  cmp.tags = bug.tags;
  cmp.ground_truth_line = bug.ground_truth_line;
  cmp.description = bug.description;
  cmp.program_size = p.indices().size();
  cmp.suite_size = full.size();
  cmp.failing_count = full.failing().size();

  // Program reduction: output-mode slice over the failing tests.
  std::vector<TestCase> failing;
  for (const auto& t : full.tests()) {
    if (t.verdict_on_original == Verdict::kFail) failing.push_back(t);
  }
  SlicingCriterion criterion{{ObservationTarget::Mode::kOutput, "", 0}, failing, config.window};
  const SliceResult slice = orbs_slice(p, criterion, {config.step_budget});
  cmp.slice_size = slice.slice_size();
  cmp.fault_in_slice = slice.slice.contains(bug.ground_truth_line);

  // Suite reduction.
  auto [reduced, report] = reduce_suite(p, full, slice, exec);
  cmp.reduced_suite_size = reduced.size();
  cmp.reduced_failing_count = report.kept_failing;

  // Suspicious lists.
  const SuspiciousList sl = localize(p, full, nullptr, SuiteProvenance::kFullSuite, exec);
  const SuspiciousList sl_r = localize(p, reduced, config.filter_sl_by_slice ? &slice : nullptr,
                                       SuiteProvenance::kReducedSuite, exec);
  cmp.fl_size_full = sl.size();
  cmp.fl_size_reduced = sl_r.size();
  cmp.fl_rank_full = sl.rank_of(bug.ground_truth_line);
  cmp.fl_rank_reduced = sl_r.rank_of(bug.ground_truth_line);
  cmp.prefix_preserved = cmp.fl_rank_full && cmp.fl_rank_reduced &&
                         is_subsequence(prefix_above(sl_r, bug.ground_truth_line),
                                        prefix_above(sl, bug.ground_truth_line));

  // Repair under the five setups.
  for (std::size_t i = 0; i < kAllSetups.size(); ++i) {
    const Setup s = kAllSetups[i];
    const Program& target = s == Setup::kSlicedProgram ? slice.slice : p;
    const TestSuite& suite = uses_reduced_suite(s) ? reduced : full;
    const SuspiciousList& list = uses_reduced_list(s) ? sl_r : sl;
    RepairOutcome out;
    try {
      out = repair(target, suite, list, config.budget, config.step_budget);
    } catch (const NoFailingTestsError&) {
      // The sliced program can lose the failure altogether.
    }
    out.setup_label = std::string(setup_label(s));
    cmp.outcomes[i] = std::move(out);
  }
  const auto& baseline = cmp.outcomes[static_cast<std::size_t>(Setup::kFull)].patch;
  for (std::size_t i = 0; i < kAllSetups.size(); ++i) {
    const auto& patch = cmp.outcomes[i].patch;
    cmp.audits[i] = patch ? audit_setup(*patch, p, full, baseline, config.step_budget)
                          : PatchAudit::kNoPatch;
  }
  return cmp;
}

std::vector<Project> load_corpus(const fs::path& corpus, std::int64_t step_budget) {
  if (!fs::is_directory(corpus)) throw InputError(corpus.string() + ": not a directory");
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<Project> out;
  for (const auto& d : dirs) out.push_back(load_project(d, step_budget));
  return out;
}

std::vector<BugInstance> corpus_bugs(const std::vector<Project>& corpus, int seeds,
                                     std::uint64_t rng, std::int64_t step_budget) {
  std::vector<BugInstance> bugs;
  for (const auto& project : corpus) {
    if (project.bug) {
      BugInstance bug;
      bug.id = project.name + "#curated";
      bug.fixture = project.name;
      bug.tags = project.tags;
      bug.correct_program = project.program;
      bug.buggy_program = read_program(project.bug->program);
      bug.ground_truth_line = project.bug->fault_line;
      bug.description = "curated";
      bug.suite = project.suite.with_verdicts(bug.buggy_program, step_budget);
      if (bug.suite.failing().empty()) {
        throw InputError(project.name + ": curated bug fails no test");
      }
      bugs.push_back(std::move(bug));
      continue;
    }
    for (int k = 0; k < seeds; ++k) {
      const std::uint64_t seed =
          splitmix64(rng ^ splitmix64(fnv1a(project.name) + static_cast<std::uint64_t>(k)));
      try {
        const SeedScope scope =
            project.has_tag(kDeadFeatureTag) ? SeedScope::kFeatureCode : SeedScope::kAnyLine;
        BugInstance bug = seed_bug(project.program, project.suite, seed, step_budget, scope);
        bug.id = project.name + "#" + std::to_string(k);
        bug.fixture = project.name;
        bug.tags = project.tags;
        bugs.push_back(std::move(bug));
      } catch (const UnseedableError&) {
      }
    }
  }
  return bugs;
}

std::vector<SetupComparison> run_bench(const std::vector<BugInstance>& bugs,
                                       const BenchConfig& config) {
  std::vector<SetupComparison> out(bugs.size());
  parallel_for(bugs.size(), config.jobs,
               [&](std::size_t i) { out[i] = run_all_setups(bugs[i], config); });
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

ReportFiles emit_report(const std::vector<SetupComparison>& comparisons, const json& config_echo) {
  ReportFiles files;
  std::ostringstream t1;
  std::ostringstream t2;
  std::ostringstream t3;
  std::ostringstream t4;
  t1 << "bug,fixture,tags,original_tests,original_failing,reduced_tests,reduced_failing,"
        "reduction_rate\n";
  t2 << "bug,program_lines,slice_lines,fault_line,fault_in_slice,fl_size_full,fl_size_reduced,"
        "fault_rank_full,fault_rank_reduced,prefix_preserved,mutation\n";
  t3 << "bug,original_npc,reduced_npc,reduction_value";
  t4 << "bug";
  for (auto s : kAllSetups) t3 << ',' << flag_column("npc_", s);
  for (auto s : kAllSetups) t3 << ',' << flag_column("audit_", s);
  t3 << '\n';
  for (auto s : kAllSetups) t4 << ',' << flag_column("validations_", s);
  t4 << ",validations_reduction";
  for (auto s : kAllSetups) t4 << ',' << flag_column("rt_ms_", s);
  t4 << ",rt_ms_reduction\n";

  const auto full = static_cast<std::size_t>(Setup::kFull);
  const auto reduced_suite = static_cast<std::size_t>(Setup::kReducedSuite);
  const auto reduced_sl = static_cast<std::size_t>(Setup::kReducedSl);

  for (const auto& c : comparisons) {
    t1 << c.bug_id << ',' << c.fixture << ',' << join(c.tags, ';') << ',' << c.suite_size << ','
       << c.failing_count << ',' << c.reduced_suite_size << ',' << c.reduced_failing_count << ','
       << fixed(c.reduction_rate()) << '\n';
    t2 << c.bug_id << ',' << c.program_size << ',' << c.slice_size << ',' << c.ground_truth_line
       << ',' << (c.fault_in_slice ? 1 : 0) << ',' << c.fl_size_full << ',' << c.fl_size_reduced
       << ',' << opt(c.fl_rank_full) << ',' << opt(c.fl_rank_reduced) << ','
       << (c.prefix_preserved ? 1 : 0) << ',' << c.description << '\n';
    const auto npc_full = static_cast<long long>(c.outcomes[full].npc);
    const auto npc_reduced = static_cast<long long>(c.outcomes[reduced_sl].npc);
    t3 << c.bug_id << ',' << npc_full << ',' << npc_reduced << ',' << npc_full - npc_reduced;
    for (const auto& o : c.outcomes) t3 << ',' << o.npc;
    for (auto a : c.audits) t3 << ',' << to_string(a);
    t3 << '\n';
    t4 << c.bug_id;
    for (const auto& o : c.outcomes) t4 << ',' << o.validations_run;
    t4 << ','
       << static_cast<long long>(c.outcomes[full].validations_run) -
              static_cast<long long>(c.outcomes[reduced_suite].validations_run);
    for (const auto& o : c.outcomes) t4 << ',' << o.repair_time_ms;
    t4 << ',' << c.outcomes[full].repair_time_ms - c.outcomes[reduced_suite].repair_time_ms << '\n';
  }
  files.table1 = t1.str();
  files.table2 = t2.str();
  files.table3 = t3.str();
  files.table4 = t4.str();

  // Aggregates over the corpus proper.
  json excluded = json::array();
  std::vector<const SetupComparison*> agg;
  for (const auto& c : comparisons) {
    if (c.has_tag(kKnownNegativeTag)) {
      excluded.push_back(c.bug_id);
    } else {
      agg.push_back(&c);
    }
  }
  std::size_t failing_preserved = 0;
  std::size_t original_tests = 0;
  std::size_t reduced_tests = 0;
  std::vector<double> rates;
  std::size_t in_slice = 0;
  std::size_t in_sl_r = 0;
  std::vector<double> ranks_full;
  std::vector<double> ranks_reduced;
  std::vector<double> deltas;
  std::size_t improved = 0;
  std::size_t regressed = 0;
  std::size_t npc_full_total = 0;
  std::size_t npc_reduced_total = 0;
  std::size_t npc_improved = 0;
  std::size_t val_full = 0;
  std::size_t val_reduced = 0;
  std::size_t val_strict = 0;
  std::int64_t rt_full = 0;
  std::int64_t rt_reduced = 0;
  for (const auto* c : agg) {
    failing_preserved += c->reduced_failing_count == c->failing_count ? 1 : 0;
    original_tests += c->suite_size;
    reduced_tests += c->reduced_suite_size;
    rates.push_back(c->reduction_rate());
    in_slice += c->fault_in_slice ? 1 : 0;
    in_sl_r += c->fl_rank_reduced ? 1 : 0;
    // An unranked fault sits just past the end of its list.
    const double rf = static_cast<double>(c->fl_rank_full.value_or(c->fl_size_full + 1));
    const double rr = static_cast<double>(c->fl_rank_reduced.value_or(c->fl_size_reduced + 1));
    ranks_full.push_back(rf);
    ranks_reduced.push_back(rr);
    deltas.push_back(rf - rr);
    improved += rr < rf ? 1 : 0;
    regressed += rr > rf ? 1 : 0;
    npc_full_total += c->outcomes[full].npc;
    npc_reduced_total += c->outcomes[reduced_sl].npc;
    npc_improved += c->outcomes[reduced_sl].npc < c->outcomes[full].npc ? 1 : 0;
    val_full += c->outcomes[full].validations_run;
    val_reduced += c->outcomes[reduced_suite].validations_run;
    val_strict +=
        c->outcomes[reduced_suite].validations_run < c->outcomes[full].validations_run ? 1 : 0;
    rt_full += c->outcomes[full].repair_time_ms;
    rt_reduced += c->outcomes[reduced_suite].repair_time_ms;
  }

  json setups = json::object();
  for (std::size_t i = 0; i < kAllSetups.size(); ++i) {
    std::map<std::string, std::size_t> audits;
    for (auto a : {PatchAudit::kIdenticalToBaseline, PatchAudit::kDifferentButValid,
                   PatchAudit::kInvalidOnFullSuite, PatchAudit::kNoPatch}) {
      audits[std::string(to_string(a))] = 0;
    }
    std::size_t npc = 0;
    std::size_t validations = 0;
    std::int64_t rt = 0;
    for (const auto* c : agg) {
      ++audits[std::string(to_string(c->audits[i]))];
      npc += c->outcomes[i].npc;
      validations += c->outcomes[i].validations_run;
      rt += c->outcomes[i].repair_time_ms;
    }
    setups[std::string(setup_label(kAllSetups[i]))] = {
        {"audits", audits}, {"total_npc", npc}, {"total_validations", validations},
        {"rt_ms_total", rt}};
  }

  files.summary = {
      {"config", config_echo},
      {"bugs", comparisons.size()},
      {"aggregated_bugs", agg.size()},
      {"excluded", excluded},
      {"test_reduction",
       {{"failing_preserved", failing_preserved},
        {"original_tests", original_tests},
        {"reduced_tests", reduced_tests},
        {"mean_reduction_rate",
         rounded(rates.empty() ? 0.0 : [&] {
           double s = 0;
           for (double r : rates) s += r;
           return s / static_cast<double>(rates.size());
         }())},
        {"median_reduction_rate", rounded(median(rates))}}},
      {"fault_localization",
       {{"fault_in_slice", in_slice},
        {"fault_in_reduced_list", in_sl_r},
        {"median_rank_full", rounded(median(ranks_full))},
        {"median_rank_reduced", rounded(median(ranks_reduced))},
        {"median_rank_delta", rounded(median(deltas))},
        {"rank_improved", improved},
        {"rank_regressed", regressed}}},
      {"npc",
       {{"total_original", npc_full_total},
        {"total_reduced", npc_reduced_total},
        {"reduction", static_cast<long long>(npc_full_total) -
                          static_cast<long long>(npc_reduced_total)},
        {"bugs_improved", npc_improved}}},
      {"validation_cost",
       {{"total_original", val_full},
        {"total_reduced", val_reduced},
        {"reduction",
         static_cast<long long>(val_full) - static_cast<long long>(val_reduced)},
        {"bugs_strictly_cheaper", val_strict},
        {"rt_ms_total_original", rt_full},
        {"rt_ms_total_reduced", rt_reduced}}},
      {"setups", setups},
  };
  return files;
}

void write_report(const ReportFiles& files, const fs::path& dir) {
  write_text(dir / "table1.csv", files.table1);
  write_text(dir / "table2.csv", files.table2);
  write_text(dir / "table3.csv", files.table3);
  write_text(dir / "table4.csv", files.table4);
  write_json(dir / "summary.json", files.summary);
}

std::string normalize_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<bool> keep;
  std::string out;
  bool header = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (header) {
      for (const auto& c : cells) keep.push_back(c.rfind("rt_ms", 0) != 0);
      header = false;
    }
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i >= keep.size() || keep[i]) kept.push_back(cells[i]);
    }
    out += join(kept, ',') + '\n';
  }
  return out;
}

json normalize_json(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) {
      if (k.rfind("rt_ms", 0) == 0) continue;
      out[k] = normalize_json(v);
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(normalize_json(v));
    return out;
  }
  return j;
}

}  // namespace slicemend
