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
#include <charconv>
#include <limits>
#include <string>
#include <utility>

#include "compiled.hpp"
#include "slicemend/errors.hpp"
#include "slicemend/lexer.hpp"
#include "slicemend/minilang.hpp"

namespace slicemend {
namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class ExprParser {
 public:
  ExprParser(const std::vector<Token>& toks, std::size_t begin, std::size_t end,
             CompiledProgram* out)
      : toks_(toks), pos_(begin), end_(end), out_(out) {}

  // Returns the root expression index, or -1 with `error` set.
  int parse_all(std::string* error) {
    int root = parse_or();
    if (root >= 0 && pos_ != end_) fail("unexpected token '" + toks_[pos_].text + "'");
    if (!error_.empty()) {
      *error = error_;
      return -1;
    }
    return root;
  }

 private:
  bool at_op(std::string_view op) const {
    return pos_ < end_ && toks_[pos_].kind == TokenKind::kOperator && toks_[pos_].text == op;
  }

  int fail(std::string msg) {
    if (error_.empty()) error_ = std::move(msg);
    return -1;
  }

  int add(Expr e) {
    if (out_ == nullptr) return 0;
    out_->exprs.push_back(e);
    return static_cast<int>(out_->exprs.size() - 1);
  }

  int binary(Expr::Op op, int lhs, int rhs) {
    if (lhs < 0 || rhs < 0) return -1;
    Expr e;
    e.op = op;
    e.lhs = lhs;
    e.rhs = rhs;
    return add(e);
  }

  int parse_or() {
    int lhs = parse_and();
    while (lhs >= 0 && at_op("||")) {
      ++pos_;
      lhs = binary(Expr::Op::kOr, lhs, parse_and());
    }
    return lhs;
  }

  int parse_and() {
    int lhs = parse_eq();
    while (lhs >= 0 && at_op("&&")) {
      ++pos_;
      lhs = binary(Expr::Op::kAnd, lhs, parse_eq());
    }
    return lhs;
  }

  int parse_eq() {
    int lhs = parse_rel();
    while (lhs >= 0 && (at_op("==") || at_op("!="))) {
      auto op = toks_[pos_++].text == "==" ? Expr::Op::kEq : Expr::Op::kNe;
      lhs = binary(op, lhs, parse_rel());
    }
    return lhs;
  }

  int parse_rel() {
    int lhs = parse_add();
    while (lhs >= 0 && (at_op("<") || at_op("<=") || at_op(">") || at_op(">="))) {
      const std::string& t = toks_[pos_++].text;
      Expr::Op op = t == "<"    ? Expr::Op::kLt
                    : t == "<=" ? Expr::Op::kLe
                    : t == ">"  ? Expr::Op::kGt
                                : Expr::Op::kGe;
      lhs = binary(op, lhs, parse_add());
    }
    return lhs;
  }

  int parse_add() {
    int lhs = parse_mul();
    while (lhs >= 0 && (at_op("+") || at_op("-"))) {
      auto op = toks_[pos_++].text == "+" ? Expr::Op::kAdd : Expr::Op::kSub;
      lhs = binary(op, lhs, parse_mul());
    }
    return lhs;
  }

  int parse_mul() {
    int lhs = parse_unary();
    while (lhs >= 0 && (at_op("*") || at_op("/") || at_op("%"))) {
      const std::string& t = toks_[pos_++].text;
      Expr::Op op = t == "*" ? Expr::Op::kMul : t == "/" ? Expr::Op::kDiv : Expr::Op::kMod;
      lhs = binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  int parse_unary() {
    if (at_op("-") || at_op("!")) {
      auto op = toks_[pos_++].text == "-" ? Expr::Op::kNeg : Expr::Op::kNot;
      int operand = parse_unary();
      if (operand < 0) return -1;
      Expr e;
      e.op = op;
      e.lhs = operand;
      return add(e);
    }
    return parse_primary();
  }

  int parse_primary() {
    if (pos_ >= end_) return fail("expression ends unexpectedly");
    const Token& t = toks_[pos_];
    switch (t.kind) {
      case TokenKind::kInt: {
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc{}) return fail("integer literal out of range: " + t.text);
        ++pos_;
        Expr e;
        e.op = Expr::Op::kConst;
        e.value = v;
        return add(e);
      }
      case TokenKind::kIdent: {
        ++pos_;
        Expr e;
        e.op = Expr::Op::kVar;
        if (out_ != nullptr) {
          auto it = out_->slot_of.find(t.text);
          if (it == out_->slot_of.end()) {
            out_->symbols.push_back(t.text);
            it = out_->slot_of.emplace(t.text, static_cast<int>(out_->symbols.size() - 1)).first;
          }
          e.slot = it->second;
        }
        return add(e);
      }
      case TokenKind::kLParen: {
        ++pos_;
        int inner = parse_or();
        if (inner < 0) return -1;
        if (pos_ >= end_ || toks_[pos_].kind != TokenKind::kRParen) return fail("missing ')'");
        ++pos_;
        return inner;
      }
      default:
        return fail("unexpected token '" + t.text + "'");
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_;
  std::size_t end_;
  CompiledProgram* out_;
  std::string error_;
};

int intern(CompiledProgram& prog, const std::string& name) {
  auto it = prog.slot_of.find(name);
  if (it != prog.slot_of.end()) return it->second;
  prog.symbols.push_back(name);
  int slot = static_cast<int>(prog.symbols.size() - 1);
  prog.slot_of.emplace(name, slot);
  return slot;
}

// Shape of one line: its kind plus, where relevant, the token range of the
// expression and the assigned/observed identifier.
struct LineShape {
  LineKind kind = LineKind::kBlank;
  std::vector<Token> tokens;
  std::size_t expr_begin = 0;
  std::size_t expr_end = 0;
  std::string name;
};

bool shape_line(std::string_view text, LineShape* shape, std::string* diag,
                CompiledProgram* prog, int* expr_root) {
  auto body = trim(text);
  if (body.empty()) {
    shape->kind = LineKind::kBlank;
    return true;
  }
  if (body.front() == '#') {
    shape->kind = LineKind::kComment;
    return true;
  }
  auto lex = tokenize(text);
  if (lex.error) {
    *diag = lex.error->message;
    return false;
  }
  auto& t = lex.tokens;
  const std::size_t n = t.size();
  auto expr_ok = [&](std::size_t b, std::size_t e) {
    if (b >= e) {
      *diag = "missing expression";
      return false;
    }
    ExprParser p(t, b, e, prog);
    int root = p.parse_all(diag);
    if (root < 0) return false;
    if (expr_root != nullptr) *expr_root = root;
    shape->expr_begin = b;
    shape->expr_end = e;
    return true;
  };

  bool ok = false;
  if (t[0].kind == TokenKind::kRBrace) {
    if (n == 1) {
      shape->kind = LineKind::kBlockClose;
      ok = true;
    } else if (n == 3 && t[1].is(TokenKind::kKeyword, "else") && t[2].kind == TokenKind::kLBrace) {
      shape->kind = LineKind::kElse;
      ok = true;
    } else {
      *diag = "malformed block close";
    }
  } else if (t[0].is(TokenKind::kKeyword, "if") || t[0].is(TokenKind::kKeyword, "while")) {
    shape->kind = t[0].text == "if" ? LineKind::kIfOpen : LineKind::kWhileOpen;
    if (t[n - 1].kind != TokenKind::kLBrace) {
      *diag = "block header must end with '{'";
    } else {
      ok = expr_ok(1, n - 1);
    }
  } else if (t[0].is(TokenKind::kKeyword, "print")) {
    shape->kind = LineKind::kPrint;
    ok = expr_ok(1, n);
  } else if (t[0].is(TokenKind::kKeyword, "observe")) {
    shape->kind = LineKind::kObserve;
    if (n == 2 && t[1].kind == TokenKind::kIdent) {
      shape->name = t[1].text;
      ok = true;
    } else {
      *diag = "observe takes a single identifier";
    }
  } else if (t[0].kind == TokenKind::kIdent && n >= 2 && t[1].is(TokenKind::kOperator, "=")) {
    shape->kind = LineKind::kAssign;
    shape->name = t[0].text;
    ok = expr_ok(2, n);
  } else {
    *diag = "unrecognized statement";
  }
  shape->tokens = std::move(lex.tokens);
  return ok;
}

std::shared_ptr<const CompiledProgram> empty_compiled() {
  static const auto kEmpty = std::make_shared<const CompiledProgram>();
  return kEmpty;
}

}  // namespace

std::string_view to_string(LineKind kind) {
  switch (kind) {
    case LineKind::kAssign:
      return "assign";
    case LineKind::kIfOpen:
      return "if-open";
    case LineKind::kElse:
      return "else";
    case LineKind::kBlockClose:
      return "block-close";
    case LineKind::kWhileOpen:
      return "while-open";
    case LineKind::kPrint:
      return "print";
    case LineKind::kObserve:
      return "observe";
    case LineKind::kComment:
      return "comment";
    case LineKind::kBlank:
      return "blank";
  }
  return "?";
}

bool is_statement(LineKind kind) {
  return kind == LineKind::kAssign || kind == LineKind::kIfOpen ||
         kind == LineKind::kWhileOpen || kind == LineKind::kPrint;
}

bool is_effect_statement(LineKind kind) {
  return kind == LineKind::kAssign || kind == LineKind::kPrint;
}

std::optional<LineKind> classify_line(std::string_view text, std::string* diagnostic) {
  LineShape shape;
  std::string diag;
  if (!shape_line(text, &shape, &diag, nullptr, nullptr)) {
    if (diagnostic != nullptr) *diagnostic = diag;
    return std::nullopt;
  }
  return shape.kind;
}

Program::Program() : compiled_(empty_compiled()) {}

const SourceLine* Program::line(int index) const {
  if (index == kSyntheticLine) return nullptr;
  // Indices are increasing for non-synthetic lines.
  for (const auto& l : lines_) {
    if (l.index == index) return &l;
  }
  return nullptr;
}

std::vector<int> Program::indices() const {
  std::vector<int> out;
  for (const auto& l : lines_) {
    if (l.index != kSyntheticLine) out.push_back(l.index);
  }
  return out;
}

std::vector<int> Program::statement_lines() const {
  std::vector<int> out;
  for (const auto& l : lines_) {
    if (l.index != kSyntheticLine && is_statement(l.kind)) out.push_back(l.index);
  }
  return out;
}

std::string Program::text() const {
  std::string out;
  for (const auto& l : lines_) {
    out += l.text;
    out += '\n';
  }
  return out;
}

ParseOutcome Program::without(const std::set<int>& indices) const {
  std::vector<SourceLine> kept;
  kept.reserve(lines_.size());
  for (const auto& l : lines_) {
    if (l.index == kSyntheticLine || indices.count(l.index) == 0) kept.push_back(l);
  }
  return assemble(path_, std::move(kept), mirror_prints_);
}

ParseOutcome assemble(std::string path, std::vector<SourceLine> lines, bool mirror_prints) {
  auto prog = std::make_shared<CompiledProgram>();
  ParseOutcome outcome;

  struct Open {
    std::vector<Stmt>* block;
    Stmt* owner;  // nullptr at top level
    int line;
    bool in_else;
  };
  std::vector<Open> stack{{&prog->body, nullptr, 0, false}};

  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto& src = lines[i];
    LineShape shape;
    std::string diag;
    int root = -1;
    if (!shape_line(src.text, &shape, &diag, prog.get(), &root)) {
      outcome.error = {src.index, diag};
      return outcome;
    }
    src.kind = shape.kind;
    prog->max_line = std::max(prog->max_line, src.index);
    auto& top = stack.back();
    switch (shape.kind) {
      case LineKind::kBlank:
      case LineKind::kComment:
        break;
      case LineKind::kAssign:
      case LineKind::kPrint: {
        Stmt s;
        s.kind = shape.kind == LineKind::kAssign ? Stmt::Kind::kAssign : Stmt::Kind::kPrint;
        s.line = src.index;
        s.expr = root;
        if (shape.kind == LineKind::kAssign) s.slot = intern(*prog, shape.name);
        top.block->push_back(std::move(s));
        break;
      }
      case LineKind::kObserve: {
        Stmt s;
        s.kind = Stmt::Kind::kObserve;
        s.line = src.index;
        s.slot = intern(*prog, shape.name);
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
          if (lines[j].index != kSyntheticLine) {
            s.anchor = lines[j].index;
            break;
          }
        }
        top.block->push_back(std::move(s));
        break;
      }
      case LineKind::kIfOpen:
      case LineKind::kWhileOpen: {
        Stmt s;
        s.kind = shape.kind == LineKind::kIfOpen ? Stmt::Kind::kIf : Stmt::Kind::kWhile;
        s.line = src.index;
        s.expr = root;
        top.block->push_back(std::move(s));
        Stmt* owner = &top.block->back();
        stack.push_back({&owner->body, owner, src.index, false});
        break;
      }
      case LineKind::kElse: {
        if (stack.size() == 1 || top.owner->kind != Stmt::Kind::kIf || top.in_else) {
          outcome.error = {src.index, "'else' without matching 'if'"};
          return outcome;
        }
        top.block = &top.owner->orelse;
        top.in_else = true;
        break;
      }
      case LineKind::kBlockClose: {
        if (stack.size() == 1) {
          outcome.error = {src.index, "unbalanced '}'"};
          return outcome;
        }
        stack.pop_back();
        break;
      }
    }
  }
  if (stack.size() > 1) {
    outcome.error = {stack.back().line, "unbalanced block: missing '}'"};
    return outcome;
  }

  Program p;
  p.path_ = std::move(path);
  p.lines_ = std::move(lines);
  p.compiled_ = std::move(prog);
  p.mirror_prints_ = mirror_prints;
  outcome.program = std::move(p);
  return outcome;
}

ParseOutcome parse(std::string_view source, std::string path) {
  std::vector<SourceLine> lines;
  int index = 1;
  std::size_t start = 0;
  while (start < source.size()) {
    auto nl = source.find('\n', start);
    auto piece = source.substr(start, nl == std::string_view::npos ? std::string_view::npos
                                                                    : nl - start);
    if (!piece.empty() && piece.back() == '\r') piece.remove_suffix(1);
    lines.push_back({index++, std::string(piece), LineKind::kBlank});
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return assemble(std::move(path), std::move(lines));
}

Program instrument(const Program& program, const ObservationTarget& target) {
  if (target.mode == ObservationTarget::Mode::kOutput) {
    auto out = assemble(program.path(), program.lines(), /*mirror_prints=*/true);
    return std::move(*out.program);
  }
  if (!program.contains(target.line)) throw UnknownLineError(target.line);
  std::vector<SourceLine> lines;
  lines.reserve(program.size() + 1);
  for (const auto& l : program.lines()) {
    if (l.index == target.line) {
      lines.push_back({kSyntheticLine, "observe " + target.variable, LineKind::kObserve});
    }
    lines.push_back(l);
  }
  auto out = assemble(program.path(), std::move(lines), program.mirrors_prints());
  if (!out) throw InvalidCriterionError("cannot observe '" + target.variable + "'");
  return std::move(*out.program);
}

}  // namespace slicemend
