// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace loglift::java {

enum class TokenKind { Identifier, StringLiteral, TextBlock, CharLiteral, Number, Punct };

struct Token {
  TokenKind kind;
  std::size_t offset;  // byte offset into the source
  std::size_t length;
  int line;    // 1-based
  int column;  // 1-based, in bytes

  std::size_t end() const noexcept { return offset + length; }
};

/// Splits Java source into tokens. Comments and whitespace are dropped.
/// Throws Error(UnparsableFile) on unterminated literals or comments.
std::vector<Token> tokenize(std::string_view source);

/// Contents of a string or text-block literal without the delimiters.
std::string_view literal_body(std::string_view source, const Token& token);

}  // namespace loglift::java
