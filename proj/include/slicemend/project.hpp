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


#ifndef SLICEMEND_PROJECT_HPP_
#define SLICEMEND_PROJECT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slicemend/minilang.hpp"

namespace slicemend {

// Manifest layout:
//   {"program": "program.mini", "tests": "tests.json",
//    "step_budget": 100000, "window": 3, "candidate_budget": 50000,
//    "time_budget_ms": 600000,
//    "tags": ["dead-feature"],
//    "bug": {"program": "buggy.mini", "fault_line": 12}}
// Paths are relative to the manifest. Only "program" and "tests" are required.

struct ManifestConfig {
  std::optional<std::int64_t> step_budget;
  std::optional<int> window;
  std::optional<std::int64_t> candidate_budget;
  std::optional<std::int64_t> time_budget_ms;
};

struct CuratedBug {
  std::filesystem::path program;
  int fault_line = 0;
};

struct Project {
  std::filesystem::path manifest;
  std::string name;  // manifest's directory name
  Program program;
  TestSuite suite;   // verdicts recomputed on `program` when loaded
  ManifestConfig config;
  std::vector<std::string> tags;
  std::optional<CuratedBug> bug;

  bool has_tag(std::string_view tag) const;
};

/// Reads and parses a MiniLang file; parse errors become InputError with
/// `path:line: message`.
Program read_program(const std::filesystem::path& path);

/// Test file: a JSON array of {"name", "inputs", "expected_output"} objects,
/// optionally with "verdict". Duplicate names are an InputError.
TestSuite read_tests(const std::filesystem::path& path);
TestSuite tests_from_json(const nlohmann::json& j, const std::string& origin);
nlohmann::json tests_to_json(const TestSuite& suite, bool with_verdicts);

/// Loads program and suite from a manifest file, or from a directory holding
/// either `manifest.json` or a bare `program.mini` + `tests.json` pair.
/// `step_budget` (when set) is used to recompute verdicts; otherwise the
/// manifest's budget or the default.
Project load_project(const std::filesystem::path& path,
                     std::optional<std::int64_t> step_budget = std::nullopt);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace slicemend

#endif  // SLICEMEND_PROJECT_HPP_
