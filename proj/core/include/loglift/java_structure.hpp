// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loglift/java_lexer.hpp"

namespace loglift::java {

/// A method or constructor declaration with a body.
struct MethodDecl {
  std::string declaring_type;  // nested types joined with '.', e.g. Outer.Inner
  std::string name;
  std::vector<std::string> parameter_types;  // erased simple names, e.g. List, int[], String...
  std::string signature;                     // Outer.Inner#name(List,int[])

  std::size_t header_token = 0;  // first token after annotations
  std::size_t body_open = 0;     // token index of '{'
  std::size_t body_close = 0;    // token index of '}'
  int start_line = 0;
  int end_line = 0;
  std::size_t start_offset = 0;
  std::size_t end_offset = 0;
};

struct TypeDecl {
  std::string name;                     // qualified within the file
  std::vector<std::string> supertypes;  // simple names from extends/implements
  int line = 0;
};

using TokenRange = std::pair<std::size_t, std::size_t>;  // inclusive token indices

/// Syntactic position of one simple statement inside a method body.
struct StatementInfo {
  TokenRange range;
  bool in_catch = false;
  bool first_in_branch = false;
  std::optional<TokenRange> guard_condition;  // innermost enclosing if condition
};

/// A tokenized Java compilation unit with its declarations located.
class JavaFile {
 public:
  /// Throws Error(UnparsableFile) when the source cannot be indexed.
  static JavaFile parse(std::string source);

  const std::string& source() const noexcept { return source_; }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  std::string_view text(std::size_t token) const;
  std::string_view text(const Token& token) const;

  const std::vector<MethodDecl>& methods() const noexcept { return methods_; }
  const std::vector<TypeDecl>& types() const noexcept { return types_; }
  const std::vector<StatementInfo>& statements() const noexcept { return statements_; }

  /// Index of the bracket matching the one at `token`, for ( [ {.
  std::size_t matching(std::size_t token) const;

  /// Innermost method whose body strictly contains `token`.
  const MethodDecl* enclosing_method(std::size_t token) const;
  /// Smallest simple statement containing `token`.
  const StatementInfo* statement_at(std::size_t token) const;

 private:
  JavaFile() = default;

  std::string source_;
  std::vector<Token> tokens_;
  std::vector<std::size_t> match_;
  std::vector<MethodDecl> methods_;
  std::vector<TypeDecl> types_;
  std::vector<StatementInfo> statements_;

  friend class StructureParser;
};

/// Multiset Dice coefficient over the lexical tokens of two method bodies.
double body_similarity(const JavaFile& a, const MethodDecl& ma, const JavaFile& b,
                       const MethodDecl& mb);

/// Token texts strictly inside the method's braces.
std::vector<std::string> body_tokens(const JavaFile& file, const MethodDecl& method);

/// Dice coefficient 2|A∩B|/(|A|+|B|) over token multisets. Two empty bodies are identical.
double dice_similarity(std::vector<std::string> a, std::vector<std::string> b);

}  // namespace loglift::java
