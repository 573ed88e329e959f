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


#ifndef SLICEMEND_MINILANG_HPP_
#define SLICEMEND_MINILANG_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace slicemend {

// MiniLang is a line-oriented imperative language: one statement per line,
// blocks opened and closed on their own lines, 64-bit signed integers only.
//
//   x = <expr>        if <expr> {       } else {       }
//   while <expr> {    print <expr>      observe <ident>
//   # comment         (blank)
//
// `observe` is reserved for instrumentation and is never written by users.

enum class LineKind {
  kAssign,
  kIfOpen,
  kElse,
  kBlockClose,
  kWhileOpen,
  kPrint,
  kObserve,
  kComment,
  kBlank,
};

std::string_view to_string(LineKind kind);

/// Statements that the interpreter executes and records in coverage.
bool is_statement(LineKind kind);

/// Statements that compute or emit values (as opposed to control headers).
bool is_effect_statement(LineKind kind);

/// Lines synthesized by instrumentation or patching carry this index.
inline constexpr int kSyntheticLine = 0;

struct SourceLine {
  int index = kSyntheticLine;
  std::string text;
  LineKind kind = LineKind::kBlank;

  friend bool operator==(const SourceLine&, const SourceLine&) = default;
};

struct ParseError {
  int line = 0;
  std::string message;
};

struct CompiledProgram;
struct ParseOutcome;

/// A well-formed MiniLang program. Lines keep their original 1-based indices
/// when a program is derived by deletion, so slices, coverage and suspicious
/// lists all share one coordinate system.
class Program {
 public:
  Program();

  const std::string& path() const { return path_; }
  const std::vector<SourceLine>& lines() const { return lines_; }
  std::size_t size() const { return lines_.size(); }

  /// Line with the given original index, or nullptr.
  const SourceLine* line(int index) const;
  bool contains(int index) const { return line(index) != nullptr; }

  /// Original indices of all non-synthetic lines, in program order.
  std::vector<int> indices() const;
  std::vector<int> statement_lines() const;

  /// Output-mode instrumentation: every print is mirrored into the trajectory.
  bool mirrors_prints() const { return mirror_prints_; }

  std::string text() const;

  /// Drops the given original indices; the result may fail to parse.
  ParseOutcome without(const std::set<int>& indices) const;

  const CompiledProgram& compiled() const { return *compiled_; }

 private:
  friend ParseOutcome assemble(std::string path, std::vector<SourceLine> lines,
                               bool mirror_prints);

  std::string path_;
  std::vector<SourceLine> lines_;
  std::shared_ptr<const CompiledProgram> compiled_;
  bool mirror_prints_ = false;
};

struct ParseOutcome {
  std::optional<Program> program;
  ParseError error;

  explicit operator bool() const { return program.has_value(); }
};

/// Splits `source` into lines numbered from 1 and checks it parses.
ParseOutcome parse(std::string_view source, std::string path = {});

/// Validates an arbitrary sequence of (indexed) lines. Kinds are re-derived
/// from the text.
ParseOutcome assemble(std::string path, std::vector<SourceLine> lines,
                      bool mirror_prints = false);

/// Classifies a single line, or returns a diagnostic if it matches no form.
std::optional<LineKind> classify_line(std::string_view text,
                                      std::string* diagnostic = nullptr);

using Bindings = std::map<std::string, std::int64_t>;

inline constexpr std::int64_t kDefaultStepBudget = 100000;

struct TrajectoryEntry {
  int line = 0;
  std::string variable;
  std::optional<std::int64_t> value;  // nullopt: variable was unbound

  friend bool operator==(const TrajectoryEntry&, const TrajectoryEntry&) = default;
};

/// Name recorded for print statements mirrored in output mode.
inline constexpr std::string_view kPrintObservation = "print";

struct Trajectory {
  std::vector<TrajectoryEntry> entries;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

enum class ExecStatus { kOk, kRuntimeFault, kStepBudgetExceeded, kParseError };

std::string_view to_string(ExecStatus status);

struct ExecutionResult {
  ExecStatus status = ExecStatus::kOk;
  std::vector<std::string> printed;
  Trajectory observations;
  std::vector<int> covered_lines;  // sorted, unique original indices
  std::int64_t steps = 0;
  std::string fault;  // diagnostic for runtime faults

  friend bool operator==(const ExecutionResult&, const ExecutionResult&) = default;
};

ExecutionResult run(const Program& program, const Bindings& inputs,
                    std::int64_t step_budget = kDefaultStepBudget);

/// Assembles and runs in one step; unparsable lines give kParseError.
ExecutionResult run_lines(const std::vector<SourceLine>& lines, const Bindings& inputs,
                          std::int64_t step_budget = kDefaultStepBudget,
                          bool mirror_prints = false);

enum class Verdict { kPass, kFail };

std::string_view to_string(Verdict verdict);

struct TestCase {
  std::string name;
  Bindings inputs;
  std::vector<std::string> expected_output;
  std::optional<Verdict> verdict_on_original;
};

struct TestRun {
  Verdict verdict = Verdict::kFail;
  ExecutionResult result;
};

TestRun run_test(const Program& program, const TestCase& test,
                 std::int64_t step_budget = kDefaultStepBudget);

/// Ordered collection of uniquely named tests.
class TestSuite {
 public:
  TestSuite() = default;
  explicit TestSuite(std::vector<TestCase> tests);

  const std::vector<TestCase>& tests() const { return tests_; }
  std::size_t size() const { return tests_.size(); }
  bool empty() const { return tests_.empty(); }

  const TestCase* find(std::string_view name) const;
  std::vector<std::string> names() const;

  /// Copy with every verdict recomputed against `program`.
  TestSuite with_verdicts(const Program& program,
                          std::int64_t step_budget = kDefaultStepBudget) const;

  /// Names by recorded verdict; requires verdicts to be present.
  std::vector<std::string> failing() const;
  std::vector<std::string> passing() const;

  /// Tests whose name is in `names`, in suite order.
  TestSuite subset(const std::set<std::string>& names) const;

 private:
  std::vector<TestCase> tests_;
};

struct ObservationTarget {
  enum class Mode { kOutput, kVariable };

  Mode mode = Mode::kOutput;
  std::string variable;
  int line = 0;
};

/// Inserts `observe v` right before the target line (variable mode) or marks
/// the program to mirror prints (output mode). Throws UnknownLineError.
Program instrument(const Program& program, const ObservationTarget& target);

}  // namespace slicemend

#endif  // SLICEMEND_MINILANG_HPP_
