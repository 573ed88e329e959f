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
#include <set>
#include <stdexcept>

#include "slicemend/errors.hpp"
#include "slicemend/lexer.hpp"
#include "slicemend/repair.hpp"

namespace slicemend {
namespace {

constexpr std::array<std::string_view, 6> kRelationalOps = {"<", "<=", ">", ">=", "==", "!="};
constexpr std::array<std::string_view, 5> kArithmeticOps = {"+", "-", "*", "/", "%"};

struct ExprRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Token range of the expression carried by a statement line.
ExprRange expression_range(LineKind kind, const std::vector<Token>& toks) {
  switch (kind) {
    case LineKind::kAssign:
      return {2, toks.size()};
    case LineKind::kIfOpen:
    case LineKind::kWhileOpen:
      return {1, toks.size() - 1};
    case LineKind::kPrint:
      return {1, toks.size()};
    default:
      return {0, 0};
  }
}

struct LineView {
  const SourceLine* line;
  std::vector<Token> tokens;
  ExprRange expr;
};

LineView view(const SourceLine& line) {
  LineView v{&line, {}, {}};
  if (!is_statement(line.kind)) return v;
  v.tokens = tokenize(line.text).tokens;
  v.expr = expression_range(line.kind, v.tokens);
  return v;
}

// Token positions a template mutates, in textual order.
std::vector<std::size_t> mutation_points(TemplateId id, const LineView& v) {
  std::vector<std::size_t> out;
  for (std::size_t i = v.expr.begin; i < v.expr.end; ++i) {
    const Token& t = v.tokens[i];
    switch (id) {
      case TemplateId::kOpRelSwap:
        if (t.kind == TokenKind::kOperator && is_relational_operator(t.text)) out.push_back(i);
        break;
      case TemplateId::kOpArithSwap:
        if (t.kind == TokenKind::kOperator && is_arithmetic_operator(t.text) &&
            is_binary_position(v.tokens, i)) {
          out.push_back(i);
        }
        break;
      case TemplateId::kConstShift:
        if (t.kind == TokenKind::kInt) out.push_back(i);
        break;
      case TemplateId::kVarReplace:
        if (t.kind == TokenKind::kIdent) out.push_back(i);
        break;
      default:
        break;
    }
  }
  return out;
}

std::string splice(const std::string& text, const Token& tok, std::string_view with) {
  std::string out = text;
  out.replace(tok.offset, tok.length, with);
  return out;
}

std::string_view indentation(const std::string& text) {
  auto n = text.find_first_not_of(" \t");
  return std::string_view(text).substr(0, n == std::string::npos ? text.size() : n);
}

std::string trimmed(const std::string& text) {
  auto b = text.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  auto e = text.find_last_not_of(" \t\r");
  return text.substr(b, e - b + 1);
}

// Identifiers of the whole program in order of first appearance.
std::vector<std::string> identifier_pool(const Program& program) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& l : program.lines()) {
    if (!is_statement(l.kind)) continue;
    for (const auto& t : tokenize(l.text).tokens) {
      if (t.kind == TokenKind::kIdent && seen.insert(t.text).second) out.push_back(t.text);
    }
  }
  return out;
}

const SourceLine& locate(const Program& program, int location) {
  const SourceLine* line = program.line(location);
  if (line == nullptr) throw UnknownLineError(location);
  return *line;
}

std::string expression_text(const LineView& v) {
  const Token& first = v.tokens[v.expr.begin];
  const Token& last = v.tokens[v.expr.end - 1];
  return v.line->text.substr(first.offset, last.offset + last.length - first.offset);
}

// `!( ... )` where the parentheses enclose the whole expression.
bool is_wrapped_negation(const LineView& v) {
  const auto b = v.expr.begin;
  const auto e = v.expr.end;
  if (e - b < 4) return false;
  if (!v.tokens[b].is(TokenKind::kOperator, "!") || v.tokens[b + 1].kind != TokenKind::kLParen ||
      v.tokens[e - 1].kind != TokenKind::kRParen) {
    return false;
  }
  int depth = 0;
  for (std::size_t i = b + 1; i < e; ++i) {
    if (v.tokens[i].kind == TokenKind::kLParen) ++depth;
    if (v.tokens[i].kind == TokenKind::kRParen && --depth == 0) return i == e - 1;
  }
  return false;
}

Edit make_edit(const LineView& v, TemplateId id, const Donor& donor) {
  const std::string& text = v.line->text;
  Edit edit;
  edit.location = v.line->index;
  switch (id) {
    case TemplateId::kOpRelSwap:
    case TemplateId::kOpArithSwap:
    case TemplateId::kConstShift:
    case TemplateId::kVarReplace: {
      auto points = mutation_points(id, v);
      if (donor.point >= points.size()) throw std::out_of_range("donor point out of range");
      edit.replacement = splice(text, v.tokens[points[donor.point]], donor.value);
      break;
    }
    case TemplateId::kGuardInsert: {
      std::string pad(indentation(text));
      edit.before = {pad + "if " + donor.value + " != 0 {"};
      edit.replacement = text;
      edit.after = {pad + "}"};
      break;
    }
    case TemplateId::kCondNegate: {
      const Token& first = v.tokens[v.expr.begin];
      const Token& last = v.tokens[v.expr.end - 1];
      std::string inner;
      if (is_wrapped_negation(v)) {
        const Token& open = v.tokens[v.expr.begin + 1];
        inner = text.substr(open.offset + 1, last.offset - open.offset - 1);
        inner = trimmed(inner);
      } else {
        inner = "!(" + expression_text(v) + ")";
      }
      edit.replacement = text.substr(0, first.offset) + inner +
                         text.substr(last.offset + last.length);
      break;
    }
    case TemplateId::kStmtDelete:
      break;
  }
  return edit;
}

std::string describe(TemplateId id, const SourceLine& line, const Edit& edit) {
  std::string head = std::string(to_string(id)) + "@" + std::to_string(line.index) + ": ";
  if (!edit.replacement) return head + "remove `" + trimmed(line.text) + "`";
  if (!edit.before.empty()) {
    return head + "wrap `" + trimmed(line.text) + "` in `" + trimmed(edit.before.front()) + "`";
  }
  return head + "`" + trimmed(line.text) + "` -> `" + trimmed(*edit.replacement) + "`";
}

}  // namespace

std::string_view to_string(TemplateId id) {
  switch (id) {
    case TemplateId::kOpRelSwap:
      return "OpRelSwap";
    case TemplateId::kOpArithSwap:
      return "OpArithSwap";
    case TemplateId::kConstShift:
      return "ConstShift";
    case TemplateId::kVarReplace:
      return "VarReplace";
    case TemplateId::kGuardInsert:
      return "GuardInsert";
    case TemplateId::kCondNegate:
      return "CondNegate";
    case TemplateId::kStmtDelete:
      return "StmtDelete";
  }
  return "?";
}

std::optional<TemplateId> template_from_string(std::string_view name) {
  for (auto id : kTemplateOrder) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

bool is_applicable(TemplateId id, const SourceLine& line) {
  if (!is_statement(line.kind)) return false;
  switch (id) {
    case TemplateId::kOpRelSwap:
    case TemplateId::kOpArithSwap:
    case TemplateId::kConstShift:
    case TemplateId::kVarReplace:
      return !mutation_points(id, view(line)).empty();
    case TemplateId::kGuardInsert:
      return is_effect_statement(line.kind) &&
             !mutation_points(TemplateId::kVarReplace, view(line)).empty();
    case TemplateId::kCondNegate:
      return line.kind == LineKind::kIfOpen || line.kind == LineKind::kWhileOpen;
    case TemplateId::kStmtDelete:
      return is_effect_statement(line.kind);
  }
  return false;
}

std::vector<Donor> search_donor_code(const Program& program, int location, TemplateId id) {
  const SourceLine& line = locate(program, location);
  std::vector<Donor> out;
  if (!is_applicable(id, line)) return out;
  const LineView v = view(line);
  const auto points = mutation_points(id, v);

  switch (id) {
    case TemplateId::kOpRelSwap:
    case TemplateId::kOpArithSwap:
      for (std::size_t p = 0; p < points.size(); ++p) {
        const std::string& current = v.tokens[points[p]].text;
        auto push_all = [&](const auto& ops) {
          for (auto op : ops) {
            if (op != current) out.push_back({p, std::string(op)});
          }
        };
        if (id == TemplateId::kOpRelSwap) {
          push_all(kRelationalOps);
        } else {
          push_all(kArithmeticOps);
        }
      }
      break;
    case TemplateId::kConstShift:
      for (std::size_t p = 0; p < points.size(); ++p) {
        std::int64_t c = 0;
        try {
          c = std::stoll(v.tokens[points[p]].text);
        } catch (const std::out_of_range&) {
          continue;
        }
        std::vector<std::int64_t> values;
        if (c != std::numeric_limits<std::int64_t>::min()) values.push_back(c - 1);
        if (c != std::numeric_limits<std::int64_t>::max()) values.push_back(c + 1);
        values.push_back(0);
        values.push_back(1);
        std::set<std::int64_t> seen{c};
        for (auto value : values) {
          if (seen.insert(value).second) out.push_back({p, std::to_string(value)});
        }
      }
      break;
    case TemplateId::kVarReplace: {
      const auto pool = identifier_pool(program);
      for (std::size_t p = 0; p < points.size(); ++p) {
        const std::string& current = v.tokens[points[p]].text;
        for (const auto& name : pool) {
          if (name != current) out.push_back({p, name});
        }
      }
      break;
    }
    case TemplateId::kGuardInsert: {
      std::vector<std::string> divisors;
      std::vector<std::string> others;
      for (std::size_t i = v.expr.begin; i < v.expr.end; ++i) {
        const Token& t = v.tokens[i];
        if (t.kind != TokenKind::kIdent) continue;
        bool divisor = i > v.expr.begin &&
                       (v.tokens[i - 1].is(TokenKind::kOperator, "/") ||
                        v.tokens[i - 1].is(TokenKind::kOperator, "%"));
        (divisor ? divisors : others).push_back(t.text);
      }
      std::set<std::string> seen;
      for (const auto* group : {&divisors, &others}) {
        for (const auto& name : *group) {
          if (seen.insert(name).second) out.push_back({0, name});
        }
      }
      break;
    }
    case TemplateId::kCondNegate:
    case TemplateId::kStmtDelete:
      out.push_back({0, ""});
      break;
  }
  return out;
}

ParseOutcome apply_edit(const Program& program, const Edit& edit) {
  if (!program.contains(edit.location)) {
    throw InapplicablePatchError("line " + std::to_string(edit.location) +
                                 " is not present in the target program");
  }
  std::vector<SourceLine> lines;
  lines.reserve(program.size() + edit.before.size() + edit.after.size());
  for (const auto& l : program.lines()) {
    if (l.index != edit.location) {
      lines.push_back(l);
      continue;
    }
    for (const auto& b : edit.before) lines.push_back({kSyntheticLine, b, LineKind::kBlank});
    if (edit.replacement) lines.push_back({l.index, *edit.replacement, l.kind});
    for (const auto& a : edit.after) lines.push_back({kSyntheticLine, a, LineKind::kBlank});
  }
  return assemble(program.path(), std::move(lines), program.mirrors_prints());
}

std::vector<PatchCandidate> generate_candidates(const Program& program, int location,
                                                TemplateId id, const std::vector<Donor>& donors) {
  const SourceLine& line = locate(program, location);
  if (!is_applicable(id, line)) {
    throw InapplicableTemplateError(std::string(to_string(id)) + " does not apply to line " +
                                    std::to_string(location));
  }
  const LineView v = view(line);
  std::vector<PatchCandidate> out;
  std::vector<Edit> seen;
  for (const auto& donor : donors) {
    Edit edit = make_edit(v, id, donor);
    if (edit.before.empty() && edit.after.empty() && edit.replacement == line.text) continue;
    if (std::find(seen.begin(), seen.end(), edit) != seen.end()) continue;
    auto patched = apply_edit(program, edit);
    if (!patched) {
      throw std::logic_error(std::string(to_string(id)) + " produced an unparsable line " +
                             std::to_string(location) + ": " + patched.error.message);
    }
    seen.push_back(edit);
    out.push_back({location, id, describe(id, line, edit), edit, std::move(*patched.program)});
  }
  return out;
}

}  // namespace slicemend
