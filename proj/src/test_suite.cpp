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


#include <set>

#include "slicemend/errors.hpp"
#include "slicemend/minilang.hpp"

namespace slicemend {

TestSuite::TestSuite(std::vector<TestCase> tests) : tests_(std::move(tests)) {
  std::set<std::string_view> seen;
  for (const auto& t : tests_) {
    if (!seen.insert(t.name).second) throw InputError("duplicate test name '" + t.name + "'");
  }
}

const TestCase* TestSuite::find(std::string_view name) const {
  for (const auto& t : tests_) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::vector<std::string> TestSuite::names() const {
  std::vector<std::string> out;
  out.reserve(tests_.size());
  for (const auto& t : tests_) out.push_back(t.name);
  return out;
}

TestSuite TestSuite::with_verdicts(const Program& program, std::int64_t step_budget) const {
  TestSuite out = *this;
  for (auto& t : out.tests_) t.verdict_on_original = run_test(program, t, step_budget).verdict;
  return out;
}

std::vector<std::string> TestSuite::failing() const {
  std::vector<std::string> out;
  for (const auto& t : tests_) {
    if (!t.verdict_on_original) throw Error("verdicts not computed for '" + t.name + "'");
    if (*t.verdict_on_original == Verdict::kFail) out.push_back(t.name);
  }
  return out;
}

std::vector<std::string> TestSuite::passing() const {
  std::vector<std::string> out;
  for (const auto& t : tests_) {
    if (!t.verdict_on_original) throw Error("verdicts not computed for '" + t.name + "'");
    if (*t.verdict_on_original == Verdict::kPass) out.push_back(t.name);
  }
  return out;
}

TestSuite TestSuite::subset(const std::set<std::string>& names) const {
  TestSuite out;
  for (const auto& t : tests_) {
    if (names.count(t.name) != 0) out.tests_.push_back(t);
  }
  return out;
}

}  // namespace slicemend
