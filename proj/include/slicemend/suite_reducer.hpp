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


#ifndef SLICEMEND_SUITE_REDUCER_HPP_
#define SLICEMEND_SUITE_REDUCER_HPP_

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "slicemend/fault_localization.hpp"
#include "slicemend/minilang.hpp"
#include "slicemend/orbs.hpp"

namespace slicemend {

struct ReductionReport {
  std::vector<std::string> kept;
  std::vector<std::string> dropped;
  std::size_t kept_failing = 0;
  std::size_t kept_passing = 0;
  std::size_t original_size = 0;
};

/// |kept| / |original|; 1.0 for an empty suite.
double reduction_rate(const ReductionReport& report);

/// Slice lines a passing test has to execute to count as exercising the
/// slice: surviving assignments and prints. Control headers are left out
/// because every test evaluates the top-level ones on its way through.
std::set<int> relevance_lines(const SliceResult& slice);

/// Keeps every failing test, and each passing test whose coverage on
/// `program` reaches a relevance line of the slice. Throws
/// MismatchedSliceError or NoFailingTestsError.
std::pair<TestSuite, ReductionReport> reduce_suite(const Program& program, const TestSuite& suite,
                                                   const SliceResult& slice,
                                                   const ExecOptions& options = {});

}  // namespace slicemend

#endif  // SLICEMEND_SUITE_REDUCER_HPP_
