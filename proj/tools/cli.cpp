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


#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "slicemend/bench.hpp"
#include "slicemend/errors.hpp"
#include "slicemend/fault_localization.hpp"
#include "slicemend/orbs.hpp"
#include "slicemend/project.hpp"
#include "slicemend/repair.hpp"
#include "slicemend/suite_reducer.hpp"

namespace slicemend::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Failure carrying its exit code and a short machine-readable kind.
struct Exit {
  int code;
  std::string kind;
  std::string message;
};

struct PipelineConfig {
  int window = kDefaultWindow;
  std::int64_t step_budget = kDefaultStepBudget;
  std::int64_t candidate_budget = 50000;
  std::int64_t time_budget_ms = 600000;
  std::string criterion = "output";
  ObservationTarget target;
  bool slice_all_tests = false;
  bool filter_sl_by_slice = false;
  Setup setup = Setup::kFull;
  int jobs = 1;
};

// Values given on the command line; unset ones fall back to the manifest and
// then to the defaults.
struct Flags {
  std::optional<int> window;
  std::optional<std::int64_t> candidate_budget;
  std::optional<std::int64_t> time_budget_ms;
  std::string criterion = "output";
  std::string slice_inputs = "failing";
  bool filter_sl_by_slice = false;
  std::string setup;
  int jobs = 1;
};

ObservationTarget parse_criterion(const std::string& text) {
  if (text == "output") return {};
  const auto at = text.find('@');
  if (text.rfind("var:", 0) != 0 || at == std::string::npos || at == 4) {
    throw Exit{kInputError, "input-error",
               "criterion must be 'output' or 'var:<name>@<line>', got '" + text + "'"};
  }
  ObservationTarget t;
  t.mode = ObservationTarget::Mode::kVariable;
  t.variable = text.substr(4, at - 4);
  try {
    std::size_t used = 0;
    t.line = std::stoi(text.substr(at + 1), &used);
    if (used != text.size() - at - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw Exit{kInputError, "input-error", "bad criterion line in '" + text + "'"};
  }
  return t;
}

std::optional<std::int64_t> env_step_budget() {
  const char* raw = std::getenv(kStepBudgetEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(raw, &used);
    if (used != std::string(raw).size() || v <= 0) throw std::invalid_argument("bad");
    return v;
  } catch (const std::exception&) {
    throw Exit{kInputError, "input-error",
               std::string(kStepBudgetEnv) + " must be a positive integer, got '" + raw + "'"};
  }
}

// Step budget precedence: default < manifest < environment.
std::int64_t step_budget_for(const std::optional<std::int64_t>& manifest) {
  if (auto env = env_step_budget()) return *env;
  return manifest.value_or(kDefaultStepBudget);
}

PipelineConfig resolve(const Flags& f, const ManifestConfig& m) {
  PipelineConfig c;
  c.window = f.window.value_or(m.window.value_or(kDefaultWindow));
  c.step_budget = step_budget_for(m.step_budget);
  c.candidate_budget = f.candidate_budget.value_or(m.candidate_budget.value_or(50000));
  c.time_budget_ms = f.time_budget_ms.value_or(m.time_budget_ms.value_or(600000));
  c.criterion = f.criterion;
  c.target = parse_criterion(f.criterion);
  c.slice_all_tests = f.slice_inputs == "all";
  c.filter_sl_by_slice = f.filter_sl_by_slice;
  if (!f.setup.empty()) c.setup = *setup_from_flag(f.setup);
  c.jobs = f.jobs;
  if (c.window < 1 || c.candidate_budget < 1 || c.time_budget_ms < 1 || c.jobs < 1) {
    throw Exit{kInputError, "input-error", "window, budgets and jobs must be positive"};
  }
  return c;
}

json echo(const PipelineConfig& c) {
  return {{"window", c.window},
          {"step_budget", c.step_budget},
          {"candidate_budget", c.candidate_budget},
          {"time_budget_ms", c.time_budget_ms},
          {"criterion", c.criterion},
          {"slice_inputs", c.slice_all_tests ? "all" : "failing"},
          {"filter_sl_by_slice", c.filter_sl_by_slice},
          {"setup", setup_flag(c.setup)},
          {"jobs", c.jobs}};
}

ExecOptions exec(const PipelineConfig& c) { return {c.step_budget, c.jobs}; }

Project load(const std::string& path) {
  // Verdicts need the effective budget, which may come from the manifest.
  Project first = load_project(path);
  if (!env_step_budget()) return first;
  return load_project(path, step_budget_for(first.config.step_budget));
}

// ---------------------------------------------------------------------------
// Pipeline stages shared by the single-stage commands and run-pipeline.

SliceResult slice_stage(const Project& p, const PipelineConfig& c) {
  std::vector<TestCase> inputs;
  for (const auto& t : p.suite.tests()) {
    if (c.slice_all_tests || t.verdict_on_original == Verdict::kFail) inputs.push_back(t);
  }
  if (inputs.empty()) throw NoFailingTestsError();
  return orbs_slice(p.program, {c.target, inputs, c.window}, {c.step_budget});
}

// The slice with deleted lines blanked, so line numbers stay put.
std::string slice_text(const Program& original, const SliceResult& s) {
  std::string out;
  for (const auto& l : original.lines()) {
    if (s.deleted_lines.count(l.index) == 0) out += l.text;
    out += '\n';
  }
  return out;
}

json slice_report(const SliceResult& s, const PipelineConfig& c) {
  return {{"config", echo(c)},
          {"deleted_lines", s.deleted_lines},
          {"oracle_calls", s.oracle_calls},
          {"parse_rejections", s.parse_rejections},
          {"cache_hits", s.cache_hits},
          {"accepted_deletions", s.accepted_deletions},
          {"slice_size", s.slice_size()},
          {"original_size", s.original_size}};
}

// Rebuilds the parts of a slice result the later stages use.
SliceResult slice_from_report(const Project& p, const json& report) {
  SliceResult s;
  try {
    s.deleted_lines = report.at("deleted_lines").get<std::set<int>>();
    s.original_size = report.at("original_size").get<std::size_t>();
  } catch (const json::exception& e) {
    throw Exit{kInputError, "input-error", std::string("slice report: ") + e.what()};
  }
  auto rest = p.program.without(s.deleted_lines);
  if (!rest) {
    throw Exit{kInputError, "mismatched-slice", "slice report does not fit the project program"};
  }
  s.slice = std::move(*rest.program);
  return s;
}

json reduction_json(const ReductionReport& r, const PipelineConfig& c) {
  return {{"config", echo(c)},
          {"kept", r.kept},
          {"dropped", r.dropped},
          {"kept_failing", r.kept_failing},
          {"kept_passing", r.kept_passing},
          {"reduction_rate", reduction_rate(r)},
          {"original_size", r.original_size}};
}

json suspicious_json(const SuspiciousList& sl) {
  json out = json::array();
  for (const auto& e : sl.entries) out.push_back({{"line", e.line}, {"score", e.score}});
  return out;
}

SuspiciousList suspicious_from_json(const json& j, const std::string& origin) {
  SuspiciousList sl;
  try {
    for (const auto& e : j) sl.entries.push_back({e.at("line").get<int>(), e.at("score").get<double>()});
  } catch (const json::exception& e) {
    throw Exit{kInputError, "input-error", origin + ": " + e.what()};
  }
  return sl;
}

struct RepairResult {
  RepairOutcome outcome;
  std::optional<bool> valid_on_full_suite;
};

RepairResult repair_stage(const Project& p, const Program& target, const TestSuite& suite,
                          const SuspiciousList& sl, const PipelineConfig& c) {
  RepairBudget budget;
  budget.max_candidates = static_cast<std::size_t>(c.candidate_budget);
  budget.max_time = std::chrono::milliseconds(c.time_budget_ms);
  RepairResult r;
  r.outcome = repair(target, suite, sl, budget, c.step_budget);
  r.outcome.setup_label = std::string(setup_label(c.setup));
  if (r.outcome.patch) {
    r.valid_on_full_suite = audit_setup(*r.outcome.patch, p.program, p.suite, std::nullopt,
                                        c.step_budget) != PatchAudit::kInvalidOnFullSuite;
  }
  return r;
}

json outcome_json(const RepairResult& r, const PipelineConfig& c) {
  const auto& o = r.outcome;
  json j = {{"config", echo(c)},
            {"patched", o.patch.has_value()},
            {"patch", nullptr},
            {"npc", o.npc},
            {"rt_ms", o.repair_time_ms},
            {"validations", o.validations_run},
            {"setup", o.setup_label},
            {"stop", to_string(o.stop)}};
  if (o.patch) {
    j["patch"] = {{"line", o.patch->location},
                  {"template", to_string(o.patch->template_id)},
                  {"description", o.patch->description}};
    j["valid_on_full_suite"] = *r.valid_on_full_suite;
  }
  return j;
}

int repair_exit(const RepairResult& r) {
  if (!r.outcome.patch) return kNoPatch;
  return *r.valid_on_full_suite ? kOk : kPatchInvalidOnFullSuite;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--window", f.window, "maximum deletion window")->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", f.jobs, "threads for test execution")->check(CLI::PositiveNumber);
}

void add_slicing(CLI::App* cmd, Flags& f) {
  cmd->add_option("--criterion", f.criterion, "output | var:<name>@<line>");
  cmd->add_option("--slice-inputs", f.slice_inputs, "tests used as slicing inputs")
      ->check(CLI::IsMember({"failing", "all"}));
}

void add_repair(CLI::App* cmd, Flags& f) {
  cmd->add_option("--candidate-budget", f.candidate_budget)->check(CLI::PositiveNumber);
  cmd->add_option("--time-budget-ms", f.time_budget_ms)->check(CLI::PositiveNumber);
  cmd->add_option("--setup", f.setup, "full | reduced-suite | reduced-sl | reduced-both | sliced-program")
      ->check(CLI::IsMember({"full", "reduced-suite", "reduced-sl", "reduced-both",
                             "sliced-program"}));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Slice-reduced template repair for MiniLang programs", "slicemend"};
  app.require_subcommand(1);
  Flags f;
  std::string project;
  std::string out_path;
  std::string report_path;
  std::string suite_path;
  std::string slice_report_path;
  std::string suspicious_path;
  std::string program_path;
  std::string corpus;
  std::string inputs_text;
  int seeds = 1;
  std::uint64_t rng = 1;

  auto* slice = app.add_subcommand("slice", "ORBS slice of the project program");
  slice->add_option("--project", project)->required();
  slice->add_option("--out", out_path, "slice with deleted lines blanked")->required();
  slice->add_option("--report", report_path)->required();
  add_common(slice, f);
  add_slicing(slice, f);

  auto* localize_cmd = app.add_subcommand("localize", "Ochiai suspicious list");
  localize_cmd->add_option("--project", project)->required();
  localize_cmd->add_option("--suite", suite_path, "reduced suite to localize with");
  localize_cmd->add_option("--slice-report", slice_report_path, "drop lines the slice deleted");
  localize_cmd->add_option("--out", out_path)->required();
  add_common(localize_cmd, f);

  auto* reduce = app.add_subcommand("reduce-tests", "drop tests irrelevant to the slice");
  reduce->add_option("--project", project)->required();
  reduce->add_option("--slice-report", slice_report_path)->required();
  reduce->add_option("--out", out_path)->required();
  reduce->add_option("--report", report_path)->required();
  add_common(reduce, f);

  auto* repair_cmd = app.add_subcommand("repair", "template repair along a suspicious list");
  repair_cmd->add_option("--project", project)->required();
  repair_cmd->add_option("--suspicious", suspicious_path)->required();
  repair_cmd->add_option("--suite", suite_path, "validate with this suite");
  repair_cmd->add_option("--program", program_path, "repair this (sliced) program");
  repair_cmd->add_option("--out", out_path)->required();
  add_common(repair_cmd, f);
  add_repair(repair_cmd, f);

  auto* bench = app.add_subcommand("bench", "seed bugs over a corpus and compare setups");
  bench->add_option("--corpus", corpus)->required();
  bench->add_option("--seeds", seeds, "seeded bugs per fixture")->check(CLI::NonNegativeNumber);
  bench->add_option("--rng", rng);
  bench->add_option("--out", out_path)->required();
  add_common(bench, f);
  add_repair(bench, f);

  auto* pipeline = app.add_subcommand("run-pipeline", "slice, reduce, localize and repair");
  pipeline->add_option("--project", project)->required();
  pipeline->add_option("--out", out_path, "artifact directory")->required();
  pipeline->add_flag("--filter-sl-by-slice", f.filter_sl_by_slice);
  add_common(pipeline, f);
  add_slicing(pipeline, f);
  add_repair(pipeline, f);

  auto* run_cmd = app.add_subcommand("run", "run the project program on its tests or on inputs");
  run_cmd->add_option("--project", project)->required();
  run_cmd->add_option("--inputs", inputs_text, "JSON object of inputs");

  auto* label = app.add_subcommand("label", "fill expected outputs from the project program");
  label->add_option("--project", project)->required();
  label->add_option("--out", out_path)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << json{{"error", {{"kind", "usage"}, {"message", e.what()}}}, {"exit", kInputError}}.dump()
        << '\n';
    return kInputError;
  }

  auto fail = [&](int code, std::string_view kind, const std::string& message) {
    err << json{{"error", {{"kind", kind}, {"message", message}}}, {"exit", code}}.dump() << '\n';
    return code;
  };

  try {
    if (*slice) {
      auto p = load(project);
      auto c = resolve(f, p.config);
      auto s = slice_stage(p, c);
      write_text(out_path, slice_text(p.program, s));
      write_json(report_path, slice_report(s, c));
      return kOk;
    }
    if (*localize_cmd) {
      auto p = load(project);
      auto c = resolve(f, p.config);
      TestSuite suite = suite_path.empty() ? p.suite : read_tests(suite_path);
      std::optional<SliceResult> s;
      if (!slice_report_path.empty()) s = slice_from_report(p, read_json(slice_report_path));
      auto sl = localize(p.program, suite, s ? &*s : nullptr,
                         suite_path.empty() ? SuiteProvenance::kFullSuite
                                            : SuiteProvenance::kReducedSuite,
                         exec(c));
      write_json(out_path, suspicious_json(sl));
      return kOk;
    }
    if (*reduce) {
      auto p = load(project);
      auto c = resolve(f, p.config);
      auto s = slice_from_report(p, read_json(slice_report_path));
      auto [reduced, report] = reduce_suite(p.program, p.suite, s, exec(c));
      write_json(out_path, tests_to_json(reduced, true));
      write_json(report_path, reduction_json(report, c));
      return kOk;
    }
    if (*repair_cmd) {
      auto p = load(project);
      if (f.setup.empty()) {
        f.setup = !program_path.empty() ? "sliced-program"
                  : !suite_path.empty() ? "reduced-suite"
                                        : "full";
      }
      auto c = resolve(f, p.config);
      TestSuite suite = suite_path.empty() ? p.suite : read_tests(suite_path);
      std::optional<Program> sliced;
      if (!program_path.empty()) sliced = read_program(program_path);
      auto sl = suspicious_from_json(read_json(suspicious_path), suspicious_path);
      auto r = repair_stage(p, sliced ? *sliced : p.program, suite, sl, c);
      write_json(out_path, outcome_json(r, c));
      return repair_exit(r);
    }
    if (*bench) {
      auto c = resolve(f, {});
      BenchConfig bc;
      bc.window = c.window;
      bc.step_budget = c.step_budget;
      bc.budget.max_candidates = static_cast<std::size_t>(c.candidate_budget);
      bc.budget.max_time = std::chrono::milliseconds(c.time_budget_ms);
      bc.jobs = c.jobs;
      auto fixtures = load_corpus(corpus, c.step_budget);
      auto bugs = corpus_bugs(fixtures, seeds, rng, c.step_budget);
      auto comparisons = run_bench(bugs, bc);
      json cfg = {{"corpus_fixtures", fixtures.size()},
                  {"seeds", seeds},
                  {"rng", rng},
                  {"window", bc.window},
                  {"step_budget", bc.step_budget},
                  {"candidate_budget", bc.budget.max_candidates},
                  {"time_budget_ms", c.time_budget_ms},
                  {"filter_sl_by_slice", bc.filter_sl_by_slice}};
      write_report(emit_report(comparisons, cfg), out_path);
      out << "bench: " << bugs.size() << " bugs from " << fixtures.size() << " fixtures -> "
          << out_path << '\n';
      return kOk;
    }
    if (*pipeline) {
      auto p = load(project);
      auto c = resolve(f, p.config);
      const fs::path dir = out_path;
      auto s = slice_stage(p, c);
      write_text(dir / "slice.mini", slice_text(p.program, s));
      write_json(dir / "slice-report.json", slice_report(s, c));
      auto [reduced, report] = reduce_suite(p.program, p.suite, s, exec(c));
      write_json(dir / "reduced-tests.json", tests_to_json(reduced, true));
      write_json(dir / "reduction-report.json", reduction_json(report, c));
      const bool reduced_list = uses_reduced_list(c.setup);
      auto sl = localize(p.program, reduced_list ? reduced : p.suite,
                         reduced_list && c.filter_sl_by_slice ? &s : nullptr,
                         reduced_list ? SuiteProvenance::kReducedSuite
                                      : SuiteProvenance::kFullSuite,
                         exec(c));
      write_json(dir / "suspicious.json", suspicious_json(sl));
      auto r = repair_stage(p, c.setup == Setup::kSlicedProgram ? s.slice : p.program,
                            uses_reduced_suite(c.setup) ? reduced : p.suite, sl, c);
      write_json(dir / "outcome.json", outcome_json(r, c));
      return repair_exit(r);
    }
    if (*run_cmd) {
      auto p = load(project);
      const auto budget = step_budget_for(p.config.step_budget);
      if (!inputs_text.empty()) {
        Bindings in;
        try {
          in = json::parse(inputs_text).get<Bindings>();
        } catch (const json::exception& e) {
          return fail(kInputError, "input-error", std::string("--inputs: ") + e.what());
        }
        auto r = run(p.program, in, budget);
        for (const auto& line : r.printed) out << line << '\n';
        if (r.status != ExecStatus::kOk) out << "# " << to_string(r.status) << ' ' << r.fault << '\n';
        return kOk;
      }
      for (const auto& t : p.suite.tests()) {
        auto r = run_test(p.program, t, budget);
        out << t.name << ' ' << to_string(r.verdict) << '\n';
      }
      return kOk;
    }
    if (*label) {
      auto p = load(project);
      const auto budget = step_budget_for(p.config.step_budget);
      std::vector<TestCase> tests = p.suite.tests();
      for (auto& t : tests) {
        auto r = run(p.program, t.inputs, budget);
        if (r.status != ExecStatus::kOk) {
          return fail(kInputError, "input-error",
                      "test '" + t.name + "' ends in " + std::string(to_string(r.status)));
        }
        t.expected_output = r.printed;
      }
      write_json(out_path, tests_to_json(TestSuite(std::move(tests)), false));
      return kOk;
    }
  } catch (const Exit& e) {
    return fail(e.code, e.kind, e.message);
  } catch (const NoFailingTestsError& e) {
    return fail(kNoFailingTests, "no-failing-tests", e.what());
  } catch (const MismatchedSliceError& e) {
    return fail(kInputError, "mismatched-slice", e.what());
  } catch (const UnknownLineError& e) {
    return fail(kInputError, "unknown-line", e.what());
  } catch (const InvalidCriterionError& e) {
    return fail(kInputError, "invalid-criterion", e.what());
  } catch (const Error& e) {
    return fail(kInputError, "input-error", e.what());
  } catch (const fs::filesystem_error& e) {
    return fail(kInputError, "input-error", e.what());
  }
  return kUsage;
}

}  // namespace slicemend::cli
