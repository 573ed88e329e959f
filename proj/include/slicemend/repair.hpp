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


#ifndef SLICEMEND_REPAIR_HPP_
#define SLICEMEND_REPAIR_HPP_

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicemend/fault_localization.hpp"
#include "slicemend/minilang.hpp"

namespace slicemend {

// ---------------------------------------------------------------------------
// Fix templates
// ---------------------------------------------------------------------------

enum class TemplateId {
  kOpRelSwap,
  kOpArithSwap,
  kConstShift,
  kVarReplace,
  kGuardInsert,
  kCondNegate,
  kStmtDelete,
};

/// Order in which the repair loop tries templates at every location.
inline constexpr std::array<TemplateId, 7> kTemplateOrder = {
    TemplateId::kOpRelSwap,   TemplateId::kOpArithSwap, TemplateId::kConstShift,
    TemplateId::kVarReplace,  TemplateId::kGuardInsert, TemplateId::kCondNegate,
    TemplateId::kStmtDelete,
};

std::string_view to_string(TemplateId id);
std::optional<TemplateId> template_from_string(std::string_view name);

bool is_applicable(TemplateId id, const SourceLine& line);

/// Mutation material for one template at one line. `point` numbers the
/// mutation site within the line (operator, literal or identifier occurrence
/// in textual order); templates with a single site use point 0.
struct Donor {
  std::size_t point = 0;
  std::string value;

  friend bool operator==(const Donor&, const Donor&) = default;
};

/// Donors drawn from the program itself. Empty when the template does not
/// apply. Throws UnknownLineError for a missing location.
std::vector<Donor> search_donor_code(const Program& program, int location, TemplateId id);

/// A single-location edit: the located line is replaced (or removed when
/// `replacement` is empty) and optional lines are inserted around it.
struct Edit {
  int location = 0;
  std::vector<std::string> before;
  std::optional<std::string> replacement;
  std::vector<std::string> after;

  friend bool operator==(const Edit&, const Edit&) = default;
};

/// Throws InapplicablePatchError when the location is not in `program`.
ParseOutcome apply_edit(const Program& program, const Edit& edit);

struct PatchCandidate {
  int location = 0;
  TemplateId template_id = TemplateId::kStmtDelete;
  std::string description;
  Edit edit;
  Program patched;
};

/// One candidate per donor, deduplicated by resulting text and never equal to
/// the input. Throws InapplicableTemplateError.
std::vector<PatchCandidate> generate_candidates(const Program& program, int location,
                                                TemplateId id, const std::vector<Donor>& donors);

// ---------------------------------------------------------------------------
// Validation and search
// ---------------------------------------------------------------------------

struct ValidationResult {
  bool plausible = false;
  std::string first_failure;  // name of the rejecting test
  std::size_t executions = 0;
};

/// Order used for validation: tests recorded as failing first, then the rest,
/// each group by ascending name.
std::vector<const TestCase*> validation_order(const TestSuite& suite);

ValidationResult validate(const PatchCandidate& candidate, const TestSuite& suite,
                          std::int64_t step_budget = kDefaultStepBudget);

enum class Setup {
  kFull,           // R(P, T, SL)
  kReducedSuite,   // R(P, T_R, SL)
  kReducedSl,      // R(P, T, SL_R)
  kReducedBoth,    // R(P, T_R, SL_R)
  kSlicedProgram,  // R(P_S, T_R, SL_R)
};

inline constexpr std::array<Setup, 5> kAllSetups = {
    Setup::kFull, Setup::kReducedSuite, Setup::kReducedSl, Setup::kReducedBoth,
    Setup::kSlicedProgram};

/// "R(P,T_R,SL)" style label.
std::string_view setup_label(Setup setup);
/// Command-line spelling: full, reduced-suite, reduced-sl, reduced-both, sliced-program.
std::string_view setup_flag(Setup setup);
std::optional<Setup> setup_from_flag(std::string_view flag);
bool uses_reduced_suite(Setup setup);
bool uses_reduced_list(Setup setup);

struct RepairBudget {
  std::size_t max_candidates = 50000;
  std::chrono::milliseconds max_time{600000};
};

enum class StopReason { kPlausiblePatch, kSearchExhausted, kCandidateBudget, kTimeBudget };

std::string_view to_string(StopReason reason);

struct RepairOutcome {
  std::optional<PatchCandidate> patch;
  std::size_t npc = 0;
  std::int64_t repair_time_ms = 0;
  std::size_t validations_run = 0;
  std::string setup_label;
  StopReason stop = StopReason::kSearchExhausted;
};

/// Walks the suspicious list, the template catalog and the donors in order,
/// validating each candidate against `suite` and returning the first
/// plausible one. Locations absent from `program` are skipped. Throws
/// NoFailingTestsError.
RepairOutcome repair(const Program& program, const TestSuite& suite, const SuspiciousList& sl,
                     const RepairBudget& budget = {},
                     std::int64_t step_budget = kDefaultStepBudget);

}  // namespace slicemend

#endif  // SLICEMEND_REPAIR_HPP_
