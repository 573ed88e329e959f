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


#include "slicemend/project.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "slicemend/errors.hpp"

namespace slicemend {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path.string() + ": cannot write");
  out << text;
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

Program read_program(const fs::path& path) {
  auto parsed = parse(read_text(path), path.string());
  if (!parsed) {
    throw InputError(path.string() + ":" + std::to_string(parsed.error.line) + ": " +
                     parsed.error.message);
  }
  return std::move(*parsed.program);
}

TestSuite tests_from_json(const json& j, const std::string& origin) {
  if (!j.is_array()) throw InputError(origin + ": expected a JSON array of tests");
  std::vector<TestCase> tests;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& t = j[i];
    const std::string where = origin + ": test #" + std::to_string(i);
    try {
      TestCase tc;
      tc.name = t.at("name").get<std::string>();
      if (!seen.insert(tc.name).second) {
        throw InputError(origin + ": duplicate test name '" + tc.name + "'");
      }
      if (t.contains("inputs")) {
        for (const auto& [k, v] : t.at("inputs").items()) tc.inputs[k] = v.get<std::int64_t>();
      }
      for (const auto& line : t.at("expected_output")) {
        tc.expected_output.push_back(line.is_string() ? line.get<std::string>() : line.dump());
      }
      if (t.contains("verdict")) {
        auto v = t.at("verdict").get<std::string>();
        if (v != "pass" && v != "fail") throw InputError(where + ": bad verdict '" + v + "'");
        tc.verdict_on_original = v == "pass" ? Verdict::kPass : Verdict::kFail;
      }
      tests.push_back(std::move(tc));
    } catch (const json::exception& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  return TestSuite(std::move(tests));
}

TestSuite read_tests(const fs::path& path) { return tests_from_json(read_json(path), path.string()); }

json tests_to_json(const TestSuite& suite, bool with_verdicts) {
  json out = json::array();
  for (const auto& t : suite.tests()) {
    json j;
    j["name"] = t.name;
    j["inputs"] = t.inputs;
    j["expected_output"] = t.expected_output;
    if (with_verdicts && t.verdict_on_original) j["verdict"] = to_string(*t.verdict_on_original);
    out.push_back(std::move(j));
  }
  return out;
}

bool Project::has_tag(std::string_view tag) const {
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

namespace {

template <typename T>
std::optional<T> positive(const json& cfg, const char* key, const fs::path& manifest) {
  if (!cfg.contains(key)) return std::nullopt;
  T v{};
  try {
    v = cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(manifest.string() + ": " + key + " must be an integer");
  }
  if (v <= 0) throw InputError(manifest.string() + ": " + key + " must be positive");
  return v;
}

}  // namespace

Project load_project(const fs::path& path, std::optional<std::int64_t> step_budget) {
  Project p;
  json m;
  fs::path dir;
  if (fs::is_directory(path)) {
    dir = path;
    if (fs::exists(path / "manifest.json")) {
      p.manifest = path / "manifest.json";
      m = read_json(p.manifest);
    } else {
      p.manifest = path;
      m = {{"program", "program.mini"}, {"tests", "tests.json"}};
    }
  } else {
    p.manifest = path;
    dir = path.parent_path();
    m = read_json(path);
  }
  auto abs = fs::absolute(dir).lexically_normal();
  p.name = abs.has_filename() ? abs.filename().string() : abs.parent_path().filename().string();

  try {
    if (!m.is_object()) throw InputError(p.manifest.string() + ": manifest must be an object");
    p.program = read_program(dir / m.at("program").get<std::string>());
    p.suite = read_tests(dir / m.at("tests").get<std::string>());
    p.config.step_budget = positive<std::int64_t>(m, "step_budget", p.manifest);
    p.config.window = positive<int>(m, "window", p.manifest);
    p.config.candidate_budget = positive<std::int64_t>(m, "candidate_budget", p.manifest);
    p.config.time_budget_ms = positive<std::int64_t>(m, "time_budget_ms", p.manifest);
    if (m.contains("tags")) p.tags = m.at("tags").get<std::vector<std::string>>();
    if (m.contains("bug")) {
      const json& b = m.at("bug");
      p.bug = CuratedBug{dir / b.at("program").get<std::string>(), b.at("fault_line").get<int>()};
    }
  } catch (const json::exception& e) {
    throw InputError(p.manifest.string() + ": " + e.what());
  }
  p.suite = p.suite.with_verdicts(p.program,
                                  step_budget.value_or(p.config.step_budget.value_or(
                                      kDefaultStepBudget)));
  return p;
}

}  // namespace slicemend
