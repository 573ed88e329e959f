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


#ifndef SLICEMEND_FAULT_LOCALIZATION_HPP_
#define SLICEMEND_FAULT_LOCALIZATION_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slicemend/minilang.hpp"
#include "slicemend/orbs.hpp"

namespace slicemend {

struct ExecOptions {
  std::int64_t step_budget = kDefaultStepBudget;
  int jobs = 1;
};

/// Per-test line coverage of one program, with the verdict each test got on
/// that same program.
struct CoverageMatrix {
  std::vector<std::pair<std::string, Verdict>> tests;
  std::map<int, std::set<std::string>> rows;

  std::size_t failing_count() const;
};

CoverageMatrix build_spectrum(const Program& program, const TestSuite& suite,
                              const ExecOptions& options = {});

/// Ochiai suspiciousness e_f / sqrt(total_f * (e_f + e_p)), 0 when e_f = 0.
/// Throws InvalidCountsError unless total_f >= 1 and e_f <= total_f.
double ochiai_score(std::size_t failed_covering, std::size_t passed_covering,
                    std::size_t total_failed);

enum class SuiteProvenance { kFullSuite, kReducedSuite };

struct SuspiciousEntry {
  int line = 0;
  double score = 0.0;

  friend bool operator==(const SuspiciousEntry&, const SuspiciousEntry&) = default;
};

/// Lines ranked by descending score, ties by ascending line; zero scores are
/// never listed.
struct SuspiciousList {
  std::vector<SuspiciousEntry> entries;
  SuiteProvenance provenance = SuiteProvenance::kFullSuite;
  bool filtered_by_slice = false;

  /// 1-based rank of `line`, or nullopt when it is not listed.
  std::optional<std::size_t> rank_of(int line) const;
  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

SuspiciousList rank_spectrum(const CoverageMatrix& matrix);

/// Throws NoFailingTestsError when no test fails on `program`.
SuspiciousList localize(const Program& program, const TestSuite& suite,
                        const SliceResult* slice_filter = nullptr,
                        SuiteProvenance provenance = SuiteProvenance::kFullSuite,
                        const ExecOptions& options = {});

/// Drops every line deleted by the slice, keeping the order of the rest.
SuspiciousList filter_by_slice(const SuspiciousList& list, const SliceResult& slice);

}  // namespace slicemend

#endif  // SLICEMEND_FAULT_LOCALIZATION_HPP_
