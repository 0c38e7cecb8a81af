// SPDX-License-Identifier: Apache-2.0

#include "loglift/source_index.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "loglift/error.hpp"

namespace fs = std::filesystem;

namespace loglift {

namespace {

using java::JavaFile;
using java::TokenKind;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

class FileIndexer {
 public:
  FileIndexer(const JavaFile& file, const std::string& path, const LevelScheme& scheme)
      : file_(file), path_(path), scheme_(scheme) {}

  void run(SourceIndex& index) {
    for (const auto& m : file_.methods()) {
      index.methods.push_back(IndexedMethod{MethodIdentity{path_, m.signature}, m.declaring_type,
                                            m.name, m.parameter_types, m.start_line,
                                            m.end_line});
    }
    for (const auto& t : file_.types()) {
      index.types.push_back(IndexedType{path_, t.name, t.supertypes});
    }
    collect_logger_names();
    const auto& toks = file_.tokens();
    std::size_t skip_until = 0;
    for (std::size_t i = 0; i + 3 < toks.size(); ++i) {
      if (i < skip_until) continue;
      if (!is_call_on_logger(i)) continue;
      const std::size_t open = i + 3;
      const std::size_t close = file_.matching(open);
      const auto* method = file_.enclosing_method(i);
      if (!method) {
        ++index.calls_outside_methods;
        skip_until = close;
        continue;
      }
      auto stmt = build_statement(i, open, close, *method);
      if (!stmt) continue;
      if (!stmt->analyzable()) ++index.failures;
      index.statements.push_back(std::move(*stmt));
      skip_until = close;
    }
  }

 private:
  std::string_view t(std::size_t i) const { return file_.text(i); }
  bool ident(std::size_t i) const {
    return i < file_.tokens().size() && file_.tokens()[i].kind == TokenKind::Identifier;
  }
  bool punct(std::size_t i, std::string_view s) const {
    return i < file_.tokens().size() && file_.tokens()[i].kind == TokenKind::Punct && t(i) == s;
  }

  void collect_logger_names() {
    const auto& toks = file_.tokens();
    for (std::size_t i = 0; i + 2 < toks.size(); ++i) {
      if (!ident(i) || !ends_with(t(i), "Logger") || !ident(i + 1)) continue;
      if (punct(i + 2, "=") || punct(i + 2, ";") || punct(i + 2, ",") || punct(i + 2, ")")) {
        logger_names_.insert(std::string(t(i + 1)));
      }
    }
  }

  bool is_call_on_logger(std::size_t i) const {
    if (!ident(i) || !punct(i + 1, ".") || !ident(i + 2) || !punct(i + 3, "(")) return false;
    const auto receiver = t(i);
    return is_conventional_logger_name(receiver) || logger_names_.count(std::string(receiver));
  }

  std::vector<java::TokenRange> split_arguments(std::size_t open, std::size_t close) const {
    std::vector<java::TokenRange> args;
    if (close == open + 1) return args;
    std::size_t begin = open + 1;
    for (std::size_t k = open + 1; k < close; ++k) {
      if (punct(k, "(") || punct(k, "[") || punct(k, "{")) {
        k = file_.matching(k);
        continue;
      }
      if (punct(k, ",")) {
        args.push_back({begin, k - 1});
        begin = k + 1;
      }
    }
    args.push_back({begin, close - 1});
    return args;
  }

  std::string literals_in(java::TokenRange range) const {
    std::string out;
    const auto& toks = file_.tokens();
    for (std::size_t k = range.first; k <= range.second && k < toks.size(); ++k) {
      if (toks[k].kind == TokenKind::StringLiteral || toks[k].kind == TokenKind::TextBlock) {
        out += java::literal_body(file_.source(), toks[k]);
      }
    }
    return out;
  }

  // Level token of the first argument of a generic log call, if recognizable.
  std::optional<std::pair<std::size_t, std::string>> level_argument(java::TokenRange arg) const {
    const auto [first, last] = arg;
    if (last < first) return std::nullopt;
    const auto& toks = file_.tokens();
    if (ident(last) && scheme_.contains(t(last))) {
      const bool bare = first == last;
      const bool qualified = last >= first + 2 && punct(last - 1, ".") && t(last - 2) == "Level";
      if (bare || qualified) return std::pair{last, std::string(t(last))};
      return std::nullopt;
    }
    auto quoted = [&](std::size_t k) -> std::optional<std::pair<std::size_t, std::string>> {
      if (toks[k].kind != TokenKind::StringLiteral) return std::nullopt;
      const std::string body(java::literal_body(file_.source(), toks[k]));
      if (!scheme_.contains(body)) return std::nullopt;
      return std::pair{k, body};
    };
    if (first == last) return quoted(first);
    // Level.parse("INFO")
    if (last == first + 5 && t(first) == "Level" && punct(first + 1, ".") &&
        t(first + 2) == "parse" && punct(first + 3, "(") && punct(last, ")")) {
      return quoted(first + 4);
    }
    return std::nullopt;
  }

  std::optional<LoggingStatement> build_statement(std::size_t receiver, std::size_t open,
                                                  std::size_t close,
                                                  const java::MethodDecl& method) const {
    const std::size_t name_tok = receiver + 2;
    const auto name = t(name_tok);
    const auto args = split_arguments(open, close);

    LoggingStatement stmt;
    stmt.enclosing_method = MethodIdentity{path_, method.signature};
    std::size_t span_tok = name_tok;
    std::optional<java::TokenRange> message;

    std::optional<std::string> convenience;
    for (const auto& level : scheme_.levels()) {
      if (scheme_.convenience_name(level) == name) convenience = level;
    }
    const auto generic = scheme_.generic_log_method();
    if (convenience) {
      stmt.flavor = ApiFlavor::Convenience;
      stmt.level = *convenience;
      if (!args.empty()) message = args[0];
    } else if (generic && name == *generic) {
      if (args.empty()) return std::nullopt;
      if (auto lvl = level_argument(args[0])) {
        stmt.flavor = ApiFlavor::LevelArgument;
        stmt.level = lvl->second;
        span_tok = lvl->first;
      } else {
        stmt.flavor = ApiFlavor::Unanalyzable;
      }
      if (args.size() > 1) message = args[1];
    } else {
      return std::nullopt;
    }

    const auto& tok = file_.tokens()[span_tok];
    stmt.location = SourceLocation{path_, tok.line, tok.column, tok.offset, tok.length};
    stmt.token_text = std::string(t(span_tok));
    if (message) stmt.message_literals = literals_in(*message);

    const auto flags = compute_context_flags(file_, receiver, scheme_);
    stmt.in_catch = flags.in_catch;
    stmt.first_in_branch = flags.first_in_branch;
    stmt.level_guarded = flags.level_guarded;
    return stmt;
  }

  const JavaFile& file_;
  const std::string& path_;
  const LevelScheme& scheme_;
  std::set<std::string> logger_names_;
};

bool condition_mentions_level(const JavaFile& file, java::TokenRange cond,
                              const LevelScheme& scheme) {
  std::set<std::string> enabled_checks;
  for (const auto& level : scheme.levels()) {
    auto lower = to_lower(level);
    lower[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(lower[0])));
    enabled_checks.insert("is" + lower + "Enabled");
  }
  const auto& toks = file.tokens();
  for (std::size_t k = cond.first; k <= cond.second && k < toks.size(); ++k) {
    if (toks[k].kind != TokenKind::Identifier) continue;
    const auto word = file.text(k);
    if (word == "isLoggable" || scheme.contains(word) || enabled_checks.count(std::string(word))) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(ApiFlavor flavor) noexcept {
  switch (flavor) {
    case ApiFlavor::Convenience: return "CONVENIENCE";
    case ApiFlavor::LevelArgument: return "LEVEL_ARGUMENT";
    case ApiFlavor::Unanalyzable: return "UNANALYZABLE";
  }
  return "UNANALYZABLE";
}

double SourceIndex::analyzed_fraction() const noexcept {
  if (statements.empty()) return 1.0;
  return static_cast<double>(statements.size() - failures) / static_cast<double>(statements.size());
}

bool is_conventional_logger_name(std::string_view name) noexcept {
  return name == "log" || name == "logger" || name == "LOG" || name == "LOGGER";
}

ContextFlags compute_context_flags(const JavaFile& file, std::size_t call_token,
                                   const LevelScheme& scheme) {
  ContextFlags flags;
  const auto* info = file.statement_at(call_token);
  if (!info) return flags;
  flags.in_catch = info->in_catch;
  flags.first_in_branch = info->first_in_branch;
  if (info->guard_condition) {
    flags.level_guarded = condition_mentions_level(file, *info->guard_condition, scheme);
  }
  return flags;
}

bool message_keywords_present(const LoggingStatement& stmt,
                              const std::vector<std::string>& keywords) {
  const auto haystack = to_lower(stmt.message_literals);
  return std::any_of(keywords.begin(), keywords.end(), [&](const std::string& kw) {
    return !kw.empty() && haystack.find(to_lower(kw)) != std::string::npos;
  });
}

void index_source(SourceIndex& index, const std::string& file_path, std::string source,
                  const LevelScheme& scheme) {
  const auto file = JavaFile::parse(std::move(source));
  FileIndexer(file, file_path, scheme).run(index);
}

std::vector<std::string> list_java_files(const fs::path& root) {
  std::vector<std::string> out;
  if (!fs::is_directory(root)) return out;
  for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator();
       ++it) {
    const auto name = it->path().filename().string();
    if (it->is_directory() && !name.empty() && name[0] == '.') {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file() && it->path().extension() == ".java") {
      out.push_back(fs::relative(it->path(), root).generic_string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SourceIndex index_tree(const fs::path& root, const LevelScheme& scheme,
                       const IndexOptions& options) {
  SourceIndex index;
  for (const auto& rel : list_java_files(root)) {
    const std::string path = options.path_prefix + rel;
    try {
      index_source(index, path, read_file(root / rel), scheme);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnparsableFile) throw;
      index.unparsable_files.push_back(path);
    }
  }
  return index;
}

}  // namespace loglift
