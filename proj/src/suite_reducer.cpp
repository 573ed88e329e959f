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


#include "slicemend/suite_reducer.hpp"

#include "slicemend/errors.hpp"
#include "slicemend/parallel.hpp"

namespace slicemend {

double reduction_rate(const ReductionReport& report) {
  if (report.original_size == 0) return 1.0;
  return static_cast<double>(report.kept.size()) / static_cast<double>(report.original_size);
}

std::set<int> relevance_lines(const SliceResult& slice) {
  std::set<int> out;
  for (const auto& l : slice.slice.lines()) {
    if (l.index != kSyntheticLine && is_effect_statement(l.kind)) out.insert(l.index);
  }
  return out;
}

std::pair<TestSuite, ReductionReport> reduce_suite(const Program& program, const TestSuite& suite,
                                                   const SliceResult& slice,
                                                   const ExecOptions& options) {
  if (slice.original_size != program.indices().size()) {
    throw MismatchedSliceError("slice was taken from a " + std::to_string(slice.original_size) +
                               "-line program, not this " +
                               std::to_string(program.indices().size()) + "-line one");
  }
  const auto relevant = relevance_lines(slice);
  const auto& tests = suite.tests();
  std::vector<TestRun> runs(tests.size());
  parallel_for(tests.size(), options.jobs, [&](std::size_t i) {
    runs[i] = run_test(program, tests[i], options.step_budget);
  });

  ReductionReport report;
  report.original_size = tests.size();
  std::set<std::string> keep;
  std::size_t failing = 0;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    bool keep_it = runs[i].verdict == Verdict::kFail;
    if (keep_it) {
      ++failing;
      ++report.kept_failing;
    } else {
      for (int line : runs[i].result.covered_lines) {
        if (relevant.count(line) != 0) {
          keep_it = true;
          ++report.kept_passing;
          break;
        }
      }
    }
    (keep_it ? report.kept : report.dropped).push_back(tests[i].name);
    if (keep_it) keep.insert(tests[i].name);
  }
  if (failing == 0) throw NoFailingTestsError();
  TestSuite reduced = suite.subset(keep);
  std::vector<TestCase> with_verdicts;
  for (std::size_t i = 0, k = 0; i < tests.size(); ++i) {
    if (keep.count(tests[i].name) == 0) continue;
    TestCase t = reduced.tests()[k++];
    t.verdict_on_original = runs[i].verdict;
    with_verdicts.push_back(std::move(t));
  }
  return {TestSuite(std::move(with_verdicts)), std::move(report)};
}

}  // namespace slicemend
