// SPDX-License-Identifier: Apache-2.0

#include "loglift/java_lexer.hpp"

#include <array>
#include <cctype>
#include <string>

#include "loglift/error.hpp"

namespace loglift::java {
namespace {

bool is_ident_start(unsigned char c) { return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80; }
bool is_ident_part(unsigned char c) { return is_ident_start(c) || std::isdigit(c); }

// Multi-character operators the structure parser cares about; everything else is
// emitted one character at a time so that `>>` in generics closes two brackets.
constexpr std::array<std::string_view, 11> kMultiPunct = {
    "...", "->", "::", "==", "!=", "<=", "&&", "||", "++", "--", ">="};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      const unsigned char c = static_cast<unsigned char>(src_[pos_]);
      if (c == '\n') {
        advance();
        continue;
      }
      if (std::isspace(c)) {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      const std::size_t start = pos_;
      const int line = line_;
      const int col = col_;
      TokenKind kind;
      if (is_ident_start(c)) {
        while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(src_[pos_]))) advance();
        kind = TokenKind::Identifier;
      } else if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        lex_number();
        kind = TokenKind::Number;
      } else if (c == '"') {
        if (peek(1) == '"' && peek(2) == '"') {
          lex_text_block();
          kind = TokenKind::TextBlock;
        } else {
          lex_quoted('"');
          kind = TokenKind::StringLiteral;
        }
      } else if (c == '\'') {
        lex_quoted('\'');
        kind = TokenKind::CharLiteral;
      } else {
        std::size_t len = 1;
        for (auto op : kMultiPunct) {
          if (src_.substr(pos_, op.size()) == op) {
            len = op.size();
            break;
          }
        }
        for (std::size_t i = 0; i < len; ++i) advance();
        kind = TokenKind::Punct;
      }
      out.push_back(Token{kind, start, pos_ - start, line, col});
    }
    return out;
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::UnparsableFile, what + " at line " + std::to_string(line_));
  }

  void skip_block_comment() {
    advance();
    advance();
    while (pos_ + 1 < src_.size() && !(src_[pos_] == '*' && src_[pos_ + 1] == '/')) advance();
    if (pos_ + 1 >= src_.size()) fail("unterminated block comment");
    advance();
    advance();
  }

  void lex_number() {
    const std::size_t start = pos_;
    const bool hex = peek(0) == '0' && (peek(1) == 'x' || peek(1) == 'X');
    while (pos_ < src_.size()) {
      const unsigned char c = static_cast<unsigned char>(src_[pos_]);
      const char prev = pos_ > start ? src_[pos_ - 1] : '\0';
      const bool exponent_sign =
          (c == '+' || c == '-') &&
          (hex ? (prev == 'p' || prev == 'P') : (prev == 'e' || prev == 'E'));
      if (std::isalnum(c) || c == '_' || c == '.' || exponent_sign) {
        advance();
      } else {
        break;
      }
    }
  }

  void lex_quoted(char quote) {
    advance();
    while (pos_ < src_.size() && src_[pos_] != quote) {
      if (src_[pos_] == '\n') fail("unterminated literal");
      if (src_[pos_] == '\\') advance();
      if (pos_ < src_.size()) advance();
    }
    if (pos_ >= src_.size()) fail("unterminated literal");
    advance();
  }

  void lex_text_block() {
    advance();
    advance();
    advance();
    while (pos_ + 2 < src_.size() &&
           !(src_[pos_] == '"' && src_[pos_ + 1] == '"' && src_[pos_ + 2] == '"')) {
      if (src_[pos_] == '\\') advance();
      advance();
    }
    if (pos_ + 2 >= src_.size()) fail("unterminated text block");
    advance();
    advance();
    advance();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string_view literal_body(std::string_view source, const Token& token) {
  const auto text = source.substr(token.offset, token.length);
  if (token.kind == TokenKind::TextBlock && text.size() >= 6) return text.substr(3, text.size() - 6);
  if ((token.kind == TokenKind::StringLiteral || token.kind == TokenKind::CharLiteral) &&
      text.size() >= 2) {
    return text.substr(1, text.size() - 2);
  }
  return text;
}

}  // namespace loglift::java
