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


#include "slicemend/lexer.hpp"

#include <array>
#include <cctype>

namespace slicemend {
namespace {

constexpr std::array<std::string_view, 5> kKeywords = {"if", "else", "while", "print",
                                                       "observe"};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto kw : kKeywords) {
    if (kw == word) return true;
  }
  return false;
}

bool is_relational_operator(std::string_view op) {
  return op == "<" || op == "<=" || op == ">" || op == ">=" || op == "==" || op == "!=";
}

bool is_arithmetic_operator(std::string_view op) {
  return op == "+" || op == "-" || op == "*" || op == "/" || op == "%";
}

bool is_binary_position(const std::vector<Token>& tokens, std::size_t pos) {
  if (pos == 0) return false;
  const Token& prev = tokens[pos - 1];
  return prev.kind == TokenKind::kInt || prev.kind == TokenKind::kIdent ||
         prev.kind == TokenKind::kRParen;
}

LexResult tokenize(std::string_view line) {
  LexResult out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i])) != 0) ++i;
      if (i < line.size() && is_ident_char(line[i])) {
        out.error = LexError{start, "malformed number"};
        return out;
      }
      out.tokens.push_back({TokenKind::kInt, std::string(line.substr(start, i - start)), start,
                            i - start});
      continue;
    }
    if (is_ident_start(c)) {
      while (i < line.size() && is_ident_char(line[i])) ++i;
      std::string word(line.substr(start, i - start));
      TokenKind kind = is_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdent;
      out.tokens.push_back({kind, std::move(word), start, i - start});
      continue;
    }
    auto two = line.substr(i, 2);
    if (two == "==" || two == "!=" || two == "<=" || two == ">=" || two == "&&" ||
        two == "||") {
      out.tokens.push_back({TokenKind::kOperator, std::string(two), start, 2});
      i += 2;
      continue;
    }
    switch (c) {
      case '+':
      case '-':
      case '*':
      case '/':
      case '%':
      case '<':
      case '>':
      case '!':
      case '=':
        out.tokens.push_back({TokenKind::kOperator, std::string(1, c), start, 1});
        break;
      case '(':
        out.tokens.push_back({TokenKind::kLParen, "(", start, 1});
        break;
      case ')':
        out.tokens.push_back({TokenKind::kRParen, ")", start, 1});
        break;
      case '{':
        out.tokens.push_back({TokenKind::kLBrace, "{", start, 1});
        break;
      case '}':
        out.tokens.push_back({TokenKind::kRBrace, "}", start, 1});
        break;
      default:
        out.error = LexError{start, std::string("unexpected character '") + c + "'"};
        return out;
    }
    ++i;
  }
  return out;
}

}  // namespace slicemend
