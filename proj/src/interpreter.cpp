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


#include <algorithm>
#include <limits>
#include <string>

#include "compiled.hpp"
#include "slicemend/minilang.hpp"

namespace slicemend {
namespace {

class Machine {
 public:
  Machine(const CompiledProgram& prog, std::int64_t budget, bool mirror, ExecutionResult* out)
      : prog_(prog),
        env_(prog.symbols.size()),
        covered_(static_cast<std::size_t>(prog.max_line) + 1, 0),
        budget_(budget),
        mirror_(mirror),
        out_(out) {}

  void bind(const Bindings& inputs) {
    for (const auto& [name, value] : inputs) {
      auto it = prog_.slot_of.find(name);
      if (it != prog_.slot_of.end()) env_[it->second] = value;
    }
  }

  void execute() {
    exec_block(prog_.body);
    for (std::size_t i = 1; i < covered_.size(); ++i) {
      if (covered_[i] != 0) out_->covered_lines.push_back(static_cast<int>(i));
    }
  }

 private:
  bool fault(std::string why) {
    out_->status = ExecStatus::kRuntimeFault;
    out_->fault = std::move(why);
    return false;
  }

  bool step(int line) {
    if (out_->steps >= budget_) {
      out_->status = ExecStatus::kStepBudgetExceeded;
      return false;
    }
    ++out_->steps;
    if (line != kSyntheticLine) covered_[static_cast<std::size_t>(line)] = 1;
    return true;
  }

  bool eval(int idx, std::int64_t* v) {
    const Expr& e = prog_.exprs[static_cast<std::size_t>(idx)];
    std::int64_t a = 0;
    std::int64_t b = 0;
    switch (e.op) {
      case Expr::Op::kConst:
        *v = e.value;
        return true;
      case Expr::Op::kVar: {
        const auto& slot = env_[static_cast<std::size_t>(e.slot)];
        if (!slot) return fault("unbound variable '" + prog_.symbols[e.slot] + "'");
        *v = *slot;
        return true;
      }
      case Expr::Op::kNeg:
        if (!eval(e.lhs, &a)) return false;
        if (a == std::numeric_limits<std::int64_t>::min()) return fault("overflow");
        *v = -a;
        return true;
      case Expr::Op::kNot:
        if (!eval(e.lhs, &a)) return false;
        *v = a == 0 ? 1 : 0;
        return true;
      case Expr::Op::kAnd:
        if (!eval(e.lhs, &a)) return false;
        if (a == 0) {
          *v = 0;
          return true;
        }
        if (!eval(e.rhs, &b)) return false;
        *v = b != 0 ? 1 : 0;
        return true;
      case Expr::Op::kOr:
        if (!eval(e.lhs, &a)) return false;
        if (a != 0) {
          *v = 1;
          return true;
        }
        if (!eval(e.rhs, &b)) return false;
        *v = b != 0 ? 1 : 0;
        return true;
      default:
        break;
    }
    if (!eval(e.lhs, &a) || !eval(e.rhs, &b)) return false;
    switch (e.op) {
      case Expr::Op::kAdd:
        if (__builtin_add_overflow(a, b, v)) return fault("overflow");
        return true;
      case Expr::Op::kSub:
        if (__builtin_sub_overflow(a, b, v)) return fault("overflow");
        return true;
      case Expr::Op::kMul:
        if (__builtin_mul_overflow(a, b, v)) return fault("overflow");
        return true;
      case Expr::Op::kDiv:
      case Expr::Op::kMod:
        if (b == 0) return fault("division by zero");
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return fault("overflow");
        *v = e.op == Expr::Op::kDiv ? a / b : a % b;
        return true;
      case Expr::Op::kLt:
        *v = a < b;
        return true;
      case Expr::Op::kLe:
        *v = a <= b;
        return true;
      case Expr::Op::kGt:
        *v = a > b;
        return true;
      case Expr::Op::kGe:
        *v = a >= b;
        return true;
      case Expr::Op::kEq:
        *v = a == b;
        return true;
      case Expr::Op::kNe:
        *v = a != b;
        return true;
      default:
        return fault("bad expression");
    }
  }

  bool exec_block(const std::vector<Stmt>& block) {
    for (const auto& s : block) {
      if (!exec(s)) return false;
    }
    return true;
  }

  bool exec(const Stmt& s) {
    std::int64_t v = 0;
    switch (s.kind) {
      case Stmt::Kind::kAssign:
        if (!step(s.line) || !eval(s.expr, &v)) return false;
        env_[static_cast<std::size_t>(s.slot)] = v;
        return true;
      case Stmt::Kind::kPrint:
        if (!step(s.line) || !eval(s.expr, &v)) return false;
        out_->printed.push_back(std::to_string(v));
        if (mirror_) {
          out_->observations.entries.push_back(
              {s.line, std::string(kPrintObservation), v});
        }
        return true;
      case Stmt::Kind::kObserve:
        if (!step(s.line)) return false;
        out_->observations.entries.push_back(
            {s.anchor, prog_.symbols[s.slot], env_[static_cast<std::size_t>(s.slot)]});
        return true;
      case Stmt::Kind::kIf:
        if (!step(s.line) || !eval(s.expr, &v)) return false;
        return exec_block(v != 0 ? s.body : s.orelse);
      case Stmt::Kind::kWhile:
        while (true) {
          if (!step(s.line) || !eval(s.expr, &v)) return false;
          if (v == 0) return true;
          if (!exec_block(s.body)) return false;
        }
    }
    return false;
  }

  const CompiledProgram& prog_;
  std::vector<std::optional<std::int64_t>> env_;
  std::vector<char> covered_;
  std::int64_t budget_;
  bool mirror_;
  ExecutionResult* out_;
};

}  // namespace

std::string_view to_string(ExecStatus status) {
  switch (status) {
    case ExecStatus::kOk:
      return "ok";
    case ExecStatus::kRuntimeFault:
      return "runtime-fault";
    case ExecStatus::kStepBudgetExceeded:
      return "step-budget-exceeded";
    case ExecStatus::kParseError:
      return "parse-error";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::kPass ? "pass" : "fail";
}

ExecutionResult run(const Program& program, const Bindings& inputs, std::int64_t step_budget) {
  ExecutionResult out;
  Machine m(program.compiled(), step_budget, program.mirrors_prints(), &out);
  m.bind(inputs);
  m.execute();
  return out;
}

ExecutionResult run_lines(const std::vector<SourceLine>& lines, const Bindings& inputs,
                          std::int64_t step_budget, bool mirror_prints) {
  auto parsed = assemble({}, lines, mirror_prints);
  if (!parsed) {
    ExecutionResult out;
    out.status = ExecStatus::kParseError;
    return out;
  }
  return run(*parsed.program, inputs, step_budget);
}

TestRun run_test(const Program& program, const TestCase& test, std::int64_t step_budget) {
  TestRun r;
  r.result = run(program, test.inputs, step_budget);
  r.verdict = r.result.status == ExecStatus::kOk && r.result.printed == test.expected_output
                  ? Verdict::kPass
                  : Verdict::kFail;
  return r;
}

}  // namespace slicemend
