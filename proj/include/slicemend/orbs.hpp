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


#ifndef SLICEMEND_ORBS_HPP_
#define SLICEMEND_ORBS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "slicemend/minilang.hpp"

namespace slicemend {

// Observation-based slicing. A slice is grown down from the whole program by
// deleting windows of 1..window consecutive lines; a deletion sticks only if
// the candidate still parses and reproduces, for every input, the recorded
// observations of the criterion together with the run's status.

inline constexpr int kDefaultWindow = 3;

struct SlicingCriterion {
  ObservationTarget target;
  std::vector<TestCase> inputs;
  int window = kDefaultWindow;
};

struct SliceOptions {
  std::int64_t step_budget = kDefaultStepBudget;
};

struct Observation {
  ExecStatus status = ExecStatus::kOk;
  Trajectory trajectory;

  friend bool operator==(const Observation&, const Observation&) = default;
};

/// Test name -> observed behaviour of the instrumented program.
using Baseline = std::map<std::string, Observation>;

struct SliceResult {
  Program slice;
  std::set<int> deleted_lines;
  std::size_t oracle_calls = 0;       // candidates compiled and executed
  std::size_t parse_rejections = 0;   // candidates rejected without running
  std::size_t cache_hits = 0;
  std::size_t accepted_deletions = 0;
  std::size_t original_size = 0;
  Baseline baseline;

  std::size_t slice_size() const { return slice.indices().size(); }
};

/// Throws InvalidCriterionError when the criterion does not fit the program
/// (empty inputs, window < 1, unknown or non-statement line, unknown variable).
void check_criterion(const Program& program, const SlicingCriterion& criterion);

/// Runs every input of the criterion on the instrumented program. Throws
/// InvalidCriterionError or Error("baseline-parse-failure").
Baseline baseline(const Program& program, const SlicingCriterion& criterion,
                  const SliceOptions& options = {});

SliceResult orbs_slice(const Program& program, const SlicingCriterion& criterion,
                       const SliceOptions& options = {});

struct SliceVerification {
  bool ok = true;
  std::string test;    // first diverging input, when !ok
  std::string detail;

  explicit operator bool() const { return ok; }
};

SliceVerification verify_slice(const Program& slice, const SlicingCriterion& criterion,
                               const Baseline& expected, const SliceOptions& options = {});

}  // namespace slicemend

#endif  // SLICEMEND_ORBS_HPP_
