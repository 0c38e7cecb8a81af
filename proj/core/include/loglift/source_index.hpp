// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loglift/java_structure.hpp"
#include "loglift/levels.hpp"
#include "loglift/method_identity.hpp"

namespace loglift {

enum class ApiFlavor { Convenience, LevelArgument, Unanalyzable };

std::string_view to_string(ApiFlavor flavor) noexcept;

struct SourceLocation {
  std::string file_path;
  int line = 0;
  int column = 0;
  std::size_t offset = 0;
  std::size_t length = 0;

  auto operator<=>(const SourceLocation&) const = default;
};

/// A detected logging call. The location covers the level token for
/// LevelArgument calls and the method-name token otherwise.
struct LoggingStatement {
  SourceLocation location;
  std::string token_text;  // verbatim source text at `location`
  ApiFlavor flavor = ApiFlavor::Unanalyzable;
  std::optional<std::string> level;
  std::string message_literals;
  MethodIdentity enclosing_method;
  bool in_catch = false;
  bool first_in_branch = false;
  bool level_guarded = false;

  bool analyzable() const noexcept { return flavor != ApiFlavor::Unanalyzable; }
};

struct IndexedMethod {
  MethodIdentity id;
  std::string declaring_type;
  std::string name;
  std::vector<std::string> parameter_types;
  int start_line = 0;
  int end_line = 0;
};

struct IndexedType {
  std::string file_path;
  std::string name;  // qualified within the file, e.g. Outer.Inner
  std::vector<std::string> supertypes;
};

struct SourceIndex {
  std::vector<IndexedMethod> methods;
  std::vector<IndexedType> types;
  std::vector<LoggingStatement> statements;  // sorted by file, then offset
  std::size_t failures = 0;                  // Unanalyzable statements
  std::vector<std::string> unparsable_files;
  std::size_t calls_outside_methods = 0;

  std::size_t total_statements() const noexcept { return statements.size(); }
  std::size_t analyzable() const noexcept { return statements.size() - failures; }
  /// (total - failures)/total; 1 for an empty index.
  double analyzed_fraction() const noexcept;
};

struct ContextFlags {
  bool in_catch = false;
  bool first_in_branch = false;
  bool level_guarded = false;

  bool operator==(const ContextFlags&) const = default;
};

struct IndexOptions {
  /// Prepended to paths relative to the indexed root, so identities match
  /// repository-relative paths when a project lives in a subdirectory.
  std::string path_prefix;
};

/// Indexes every `.java` file below `root` (hidden directories skipped).
SourceIndex index_tree(const std::filesystem::path& root, const LevelScheme& scheme,
                       const IndexOptions& options = {});

/// Indexes one file's contents and appends to `index`. Throws UnparsableFile.
void index_source(SourceIndex& index, const std::string& file_path, std::string source,
                  const LevelScheme& scheme);

/// Flags for the simple statement containing token `call_token` of `file`.
ContextFlags compute_context_flags(const java::JavaFile& file, std::size_t call_token,
                                   const LevelScheme& scheme);

/// True iff any (lowercase) keyword occurs case-insensitively in the message literals.
bool message_keywords_present(const LoggingStatement& stmt,
                              const std::vector<std::string>& keywords);

/// Repository-relative `.java` paths below `root`, sorted.
std::vector<std::string> list_java_files(const std::filesystem::path& root);

/// True if the name is treated as a logger receiver regardless of declared type.
bool is_conventional_logger_name(std::string_view name) noexcept;

}  // namespace loglift
