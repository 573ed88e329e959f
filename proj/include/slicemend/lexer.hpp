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


#ifndef SLICEMEND_LEXER_HPP_
#define SLICEMEND_LEXER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slicemend {

enum class TokenKind {
  kInt,
  kIdent,
  kKeyword,
  kOperator,
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
};

/// One lexical token of a MiniLang line. `offset`/`length` locate the token
/// in the line text so that mutations can splice replacements in place and
/// keep the surrounding formatting intact.
struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset = 0;
  std::size_t length = 0;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
};

struct LexError {
  std::size_t offset = 0;
  std::string message;
};

struct LexResult {
  std::vector<Token> tokens;
  std::optional<LexError> error;
};

LexResult tokenize(std::string_view line);

bool is_keyword(std::string_view word);
bool is_relational_operator(std::string_view op);
bool is_arithmetic_operator(std::string_view op);

/// True when the operator token at `pos` is used as a binary operator, i.e.
/// it follows an operand (literal, identifier or closing parenthesis).
bool is_binary_position(const std::vector<Token>& tokens, std::size_t pos);

}  // namespace slicemend

#endif  // SLICEMEND_LEXER_HPP_
