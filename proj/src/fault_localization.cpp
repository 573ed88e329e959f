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


#include "slicemend/fault_localization.hpp"

#include <algorithm>
#include <cmath>

#include "slicemend/errors.hpp"
#include "slicemend/parallel.hpp"

namespace slicemend {

std::size_t CoverageMatrix::failing_count() const {
  return static_cast<std::size_t>(std::count_if(
      tests.begin(), tests.end(), [](const auto& t) { return t.second == Verdict::kFail; }));
}

CoverageMatrix build_spectrum(const Program& program, const TestSuite& suite,
                              const ExecOptions& options) {
  const auto& tests = suite.tests();
  std::vector<TestRun> runs(tests.size());
  parallel_for(tests.size(), options.jobs, [&](std::size_t i) {
    runs[i] = run_test(program, tests[i], options.step_budget);
  });
  CoverageMatrix m;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    m.tests.emplace_back(tests[i].name, runs[i].verdict);
    for (int line : runs[i].result.covered_lines) m.rows[line].insert(tests[i].name);
  }
  return m;
}

double ochiai_score(std::size_t ef, std::size_t ep, std::size_t total_f) {
  if (total_f == 0 || ef > total_f) {
    throw InvalidCountsError("ochiai needs 1 <= total_f and e_f <= total_f (e_f=" +
                             std::to_string(ef) + ", total_f=" + std::to_string(total_f) + ")");
  }
  if (ef == 0) return 0.0;
  return static_cast<double>(ef) /
         std::sqrt(static_cast<double>(total_f) * static_cast<double>(ef + ep));
}

std::optional<std::size_t> SuspiciousList::rank_of(int line) const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].line == line) return i + 1;
  }
  return std::nullopt;
}

SuspiciousList rank_spectrum(const CoverageMatrix& m) {
  const std::size_t total_f = m.failing_count();
  if (total_f == 0) throw NoFailingTestsError();
  std::map<std::string, Verdict, std::less<>> verdict;
  for (const auto& [name, v] : m.tests) verdict.emplace(name, v);

  SuspiciousList out;
  for (const auto& [line, names] : m.rows) {
    std::size_t ef = 0;
    std::size_t ep = 0;
    for (const auto& n : names) {
      (verdict.at(n) == Verdict::kFail ? ef : ep) += 1;
    }
    double score = ochiai_score(ef, ep, total_f);
    if (score > 0.0) out.entries.push_back({line, score});
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const SuspiciousEntry& a, const SuspiciousEntry& b) {
                     if (a.score != b.score) return a.score > b.score;
                     return a.line < b.line;
                   });
  return out;
}

SuspiciousList filter_by_slice(const SuspiciousList& list, const SliceResult& slice) {
  SuspiciousList out = list;
  out.filtered_by_slice = true;
  std::erase_if(out.entries, [&](const SuspiciousEntry& e) {
    return slice.deleted_lines.count(e.line) != 0;
  });
  return out;
}

SuspiciousList localize(const Program& program, const TestSuite& suite,
                        const SliceResult* slice_filter, SuiteProvenance provenance,
                        const ExecOptions& options) {
  auto list = rank_spectrum(build_spectrum(program, suite, options));
  list.provenance = provenance;
  if (slice_filter != nullptr) list = filter_by_slice(list, *slice_filter);
  return list;
}

}  // namespace slicemend
