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


#ifndef SLICEMEND_SRC_COMPILED_HPP_
#define SLICEMEND_SRC_COMPILED_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace slicemend {

// Flattened expression tree; children are indices into CompiledProgram::exprs.
struct Expr {
  enum class Op : std::uint8_t {
    kConst,
    kVar,
    kNeg,
    kNot,
    kAdd,
    kSub,
    kMul,
    kDiv,
    kMod,
    kLt,
    kLe,
    kGt,
    kGe,
    kEq,
    kNe,
    kAnd,
    kOr,
  };

  Op op = Op::kConst;
  std::int64_t value = 0;
  int slot = -1;
  int lhs = -1;
  int rhs = -1;
};

struct Stmt {
  enum class Kind { kAssign, kIf, kWhile, kPrint, kObserve };

  Kind kind = Kind::kAssign;
  int line = 0;
  int slot = -1;
  int expr = -1;
  int anchor = 0;  // observe: original index of the line being observed
  std::vector<Stmt> body;
  std::vector<Stmt> orelse;
};

struct CompiledProgram {
  std::vector<Expr> exprs;
  std::vector<Stmt> body;
  std::vector<std::string> symbols;
  std::map<std::string, int, std::less<>> slot_of;
  int max_line = 0;
};

}  // namespace slicemend

#endif  // SLICEMEND_SRC_COMPILED_HPP_
