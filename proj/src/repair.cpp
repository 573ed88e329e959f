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


#include "slicemend/repair.hpp"

#include <algorithm>

#include "slicemend/errors.hpp"

namespace slicemend {

std::vector<const TestCase*> validation_order(const TestSuite& suite) {
  std::vector<const TestCase*> failing;
  std::vector<const TestCase*> rest;
  for (const auto& t : suite.tests()) {
    (t.verdict_on_original == Verdict::kFail ? failing : rest).push_back(&t);
  }
  auto by_name = [](const TestCase* a, const TestCase* b) { return a->name < b->name; };
  std::sort(failing.begin(), failing.end(), by_name);
  std::sort(rest.begin(), rest.end(), by_name);
  failing.insert(failing.end(), rest.begin(), rest.end());
  return failing;
}

ValidationResult validate(const PatchCandidate& candidate, const TestSuite& suite,
                          std::int64_t step_budget) {
  ValidationResult r;
  for (const TestCase* t : validation_order(suite)) {
    ++r.executions;
    if (run_test(candidate.patched, *t, step_budget).verdict == Verdict::kFail) {
      r.first_failure = t->name;
      return r;
    }
  }
  r.plausible = true;
  return r;
}

std::string_view setup_label(Setup setup) {
  switch (setup) {
    case Setup::kFull:
      return "R(P,T,SL)";
    case Setup::kReducedSuite:
      return "R(P,T_R,SL)";
    case Setup::kReducedSl:
      return "R(P,T,SL_R)";
    case Setup::kReducedBoth:
      return "R(P,T_R,SL_R)";
    case Setup::kSlicedProgram:
      return "R(P_S,T_R,SL_R)";
  }
  return "?";
}

std::string_view setup_flag(Setup setup) {
  switch (setup) {
    case Setup::kFull:
      return "full";
    case Setup::kReducedSuite:
      return "reduced-suite";
    case Setup::kReducedSl:
      return "reduced-sl";
    case Setup::kReducedBoth:
      return "reduced-both";
    case Setup::kSlicedProgram:
      return "sliced-program";
  }
  return "?";
}

std::optional<Setup> setup_from_flag(std::string_view flag) {
  for (auto s : kAllSetups) {
    if (setup_flag(s) == flag) return s;
  }
  return std::nullopt;
}

bool uses_reduced_suite(Setup setup) {
  return setup == Setup::kReducedSuite || setup == Setup::kReducedBoth ||
         setup == Setup::kSlicedProgram;
}

bool uses_reduced_list(Setup setup) {
  return setup == Setup::kReducedSl || setup == Setup::kReducedBoth ||
         setup == Setup::kSlicedProgram;
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kPlausiblePatch:
      return "plausible-patch";
    case StopReason::kSearchExhausted:
      return "search-exhausted";
    case StopReason::kCandidateBudget:
      return "candidate-budget";
    case StopReason::kTimeBudget:
      return "time-budget";
  }
  return "?";
}

RepairOutcome repair(const Program& program, const TestSuite& suite, const SuspiciousList& sl,
                     const RepairBudget& budget, std::int64_t step_budget) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  RepairOutcome out;
  auto finish = [&](StopReason why) {
    out.stop = why;
    out.repair_time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
    return out;
  };

  const TestSuite judged = suite.with_verdicts(program, step_budget);
  if (judged.failing().empty()) throw NoFailingTestsError();

  for (const auto& entry : sl.entries) {
    const SourceLine* line = program.line(entry.line);
    if (line == nullptr) continue;
    for (TemplateId id : kTemplateOrder) {
      if (!is_applicable(id, *line)) continue;
      auto donors = search_donor_code(program, entry.line, id);
      for (auto& candidate : generate_candidates(program, entry.line, id, donors)) {
        if (out.npc >= budget.max_candidates) return finish(StopReason::kCandidateBudget);
        if (Clock::now() - start > budget.max_time) return finish(StopReason::kTimeBudget);
        ++out.npc;
        auto verdict = validate(candidate, judged, step_budget);
        out.validations_run += verdict.executions;
        if (verdict.plausible) {
          out.patch = std::move(candidate);
          return finish(StopReason::kPlausiblePatch);
        }
      }
    }
  }
  return finish(StopReason::kSearchExhausted);
}

}  // namespace slicemend
