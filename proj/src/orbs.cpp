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


#include "slicemend/orbs.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "compiled.hpp"
#include "slicemend/errors.hpp"

namespace slicemend {
namespace {

bool variable_mode(const SlicingCriterion& c) {
  return c.target.mode == ObservationTarget::Mode::kVariable;
}

// Adds the criterion's instrumentation to a plain line sequence.
std::optional<Program> instrumented(const std::vector<SourceLine>& lines,
                                    const SlicingCriterion& c) {
  if (!variable_mode(c)) {
    auto out = assemble({}, lines, /*mirror_prints=*/true);
    if (!out) return std::nullopt;
    return std::move(out.program);
  }
  std::vector<SourceLine> with_probe;
  with_probe.reserve(lines.size() + 1);
  for (const auto& l : lines) {
    if (l.index == c.target.line) {
      with_probe.push_back({kSyntheticLine, "observe " + c.target.variable, LineKind::kObserve});
    }
    with_probe.push_back(l);
  }
  auto out = assemble({}, std::move(with_probe));
  if (!out) return std::nullopt;
  return std::move(out.program);
}

std::string describe(const Observation& o) {
  std::ostringstream s;
  s << to_string(o.status) << " [";
  for (std::size_t i = 0; i < o.trajectory.entries.size(); ++i) {
    const auto& e = o.trajectory.entries[i];
    if (i != 0) s << ", ";
    s << e.line << ':' << e.variable << '=';
    if (e.value) {
      s << *e.value;
    } else {
      s << "<unbound>";
    }
  }
  s << ']';
  return s.str();
}

// Runs the candidate against every input and compares with `expected`,
// stopping at the first divergence.
SliceVerification reproduces(const Program& candidate, const SlicingCriterion& c,
                             const Baseline& expected, const SliceOptions& opts,
                             bool reject_overrun) {
  for (const auto& test : c.inputs) {
    auto r = run(candidate, test.inputs, opts.step_budget);
    Observation got{r.status, std::move(r.observations)};
    auto it = expected.find(test.name);
    if (it == expected.end()) return {false, test.name, "no baseline for input"};
    if (reject_overrun && got.status == ExecStatus::kStepBudgetExceeded) {
      return {false, test.name, "candidate " + std::string(to_string(got.status))};
    }
    if (!(got == it->second)) {
      return {false, test.name,
              "expected " + describe(it->second) + ", observed " + describe(got)};
    }
  }
  return {};
}

}  // namespace

void check_criterion(const Program& program, const SlicingCriterion& c) {
  if (c.inputs.empty()) throw InvalidCriterionError("criterion has no inputs");
  if (c.window < 1) throw InvalidCriterionError("window must be at least 1");
  if (!variable_mode(c)) return;
  const SourceLine* line = program.line(c.target.line);
  if (line == nullptr) throw UnknownLineError(c.target.line);
  if (!is_statement(line->kind)) {
    throw InvalidCriterionError("line " + std::to_string(c.target.line) +
                                " is not an executable statement");
  }
  const auto& slots = program.compiled().slot_of;
  if (slots.find(c.target.variable) == slots.end()) {
    throw InvalidCriterionError("variable '" + c.target.variable + "' does not occur");
  }
}

Baseline baseline(const Program& program, const SlicingCriterion& c, const SliceOptions& opts) {
  check_criterion(program, c);
  auto inst = instrumented(program.lines(), c);
  if (!inst) throw Error("baseline-parse-failure");
  Baseline out;
  for (const auto& test : c.inputs) {
    auto r = run(*inst, test.inputs, opts.step_budget);
    if (r.status == ExecStatus::kParseError) throw Error("baseline-parse-failure");
    out[test.name] = Observation{r.status, std::move(r.observations)};
  }
  return out;
}

SliceResult orbs_slice(const Program& program, const SlicingCriterion& c,
                       const SliceOptions& opts) {
  SliceResult result;
  result.baseline = baseline(program, c, opts);
  result.original_size = program.indices().size();

  const int pinned = variable_mode(c) ? c.target.line : kSyntheticLine;
  std::vector<SourceLine> current = program.lines();
  // Surviving-line sets already decided; the oracle is a pure function of it.
  std::map<std::vector<int>, bool> verdicts;

  auto try_candidate = [&](std::vector<SourceLine> lines) -> bool {
    std::vector<int> key;
    key.reserve(lines.size());
    for (const auto& l : lines) key.push_back(l.index);
    if (auto it = verdicts.find(key); it != verdicts.end()) {
      ++result.cache_hits;
      return it->second;
    }
    bool ok = false;
    if (auto inst = instrumented(lines, c)) {
      ++result.oracle_calls;
      ok = reproduces(*inst, c, result.baseline, opts, /*reject_overrun=*/true).ok;
    } else {
      ++result.parse_rejections;
    }
    verdicts.emplace(std::move(key), ok);
    return ok;
  };

  const auto window = static_cast<std::size_t>(c.window);
  bool changed = true;
  while (changed) {
    changed = false;
    std::size_t i = 0;
    while (i < current.size()) {
      bool accepted = false;
      for (std::size_t w = 1; w <= window && i + w <= current.size(); ++w) {
        if (current[i + w - 1].index == pinned) break;
        std::vector<SourceLine> candidate;
        candidate.reserve(current.size() - w);
        candidate.insert(candidate.end(), current.begin(), current.begin() + i);
        candidate.insert(candidate.end(), current.begin() + i + w, current.end());
        if (try_candidate(candidate)) {
          for (std::size_t k = i; k < i + w; ++k) result.deleted_lines.insert(current[k].index);
          current = std::move(candidate);
          ++result.accepted_deletions;
          accepted = changed = true;
          break;
        }
      }
      if (!accepted) ++i;
    }
  }

  auto slice = assemble(program.path(), std::move(current));
  result.slice = std::move(*slice.program);
  if (auto audit = verify_slice(result.slice, c, result.baseline, opts); !audit) {
    throw Error("slice failed its own audit on '" + audit.test + "': " + audit.detail);
  }
  return result;
}

SliceVerification verify_slice(const Program& slice, const SlicingCriterion& c,
                               const Baseline& expected, const SliceOptions& opts) {
  auto inst = instrumented(slice.lines(), c);
  if (!inst) return {false, "", "slice does not parse"};
  if (variable_mode(c) && !slice.contains(c.target.line)) {
    return {false, "", "criterion line was deleted"};
  }
  return reproduces(*inst, c, expected, opts, /*reject_overrun=*/false);
}

}  // namespace slicemend
