// SPDX-License-Identifier: Apache-2.0

#include "loglift/rewriter.hpp"

#include <unistd.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "loglift/error.hpp"
#include "loglift/unified_diff.hpp"

namespace fs = std::filesystem;

namespace loglift {

std::string replacement_text(const LoggingStatement& stmt, const std::string& proposed,
                             const LevelScheme& scheme) {
  if (stmt.flavor == ApiFlavor::Convenience) return scheme.convenience_name(proposed);
  if (!stmt.token_text.empty() && stmt.token_text.front() == '"') return "\"" + proposed + "\"";
  return proposed;
}

namespace {

bool span_matches(const std::string& source, const SourceLocation& loc, const std::string& token) {
  return loc.offset <= source.size() && loc.length <= source.size() - loc.offset &&
         source.compare(loc.offset, loc.length, token) == 0;
}

std::string found_at(const std::string& source, const SourceLocation& loc) {
  if (loc.offset > source.size()) return {};
  return source.substr(loc.offset, std::min(loc.length, source.size() - loc.offset));
}

}  // namespace

FileRewrite rewrite_file(const std::string& file_path, const std::string& source,
                         const std::vector<Suggestion>& suggestions, const LevelScheme& scheme) {
  FileRewrite out;
  out.file_path = file_path;
  out.original = source;

  std::vector<const Suggestion*> ordered;
  for (const auto& s : suggestions) ordered.push_back(&s);
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return a->statement.location.offset < b->statement.location.offset;
  });

  std::string patched;
  std::size_t cursor = 0;
  for (const auto* s : ordered) {
    const auto& loc = s->statement.location;
    if (loc.offset < cursor || !span_matches(source, loc, s->statement.token_text)) {
      out.stale.push_back(StaleSuggestion{*s, found_at(source, loc)});
      continue;
    }
    patched.append(source, cursor, loc.offset - cursor);
    patched += replacement_text(s->statement, s->proposed_level, scheme);
    cursor = loc.offset + loc.length;
    out.applied.push_back(*s);
  }
  patched.append(source, cursor, std::string::npos);
  out.patched = std::move(patched);
  return out;
}

std::string rewrite_source(const std::string& source, const std::vector<Suggestion>& suggestions,
                           const LevelScheme& scheme) {
  auto r = rewrite_file({}, source, suggestions, scheme);
  if (!r.stale.empty()) {
    const auto& s = r.stale.front();
    throw Error(ErrorKind::StaleSpan, "line " + std::to_string(s.suggestion.statement.location.line) +
                                          ": expected '" + s.suggestion.statement.token_text +
                                          "', found '" + s.found + "'");
  }
  return r.patched;
}

std::size_t RewritePlan::stale_count() const {
  std::size_t n = 0;
  for (const auto& f : files) n += f.stale.size();
  return n;
}

std::size_t RewritePlan::applied_count() const {
  std::size_t n = 0;
  for (const auto& f : files) n += f.applied.size();
  return n;
}

std::string RewritePlan::patch() const {
  std::string out;
  for (const auto& f : files) out += unified_diff(f.file_path, f.original, f.patched);
  return out;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".loglift-tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
  }
  std::error_code ec;
  auto perms = fs::status(path, ec).permissions();
  if (!ec) fs::permissions(tmp, perms, ec);
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot replace " + path.string());
  }
}

RewritePlan plan_rewrites(const fs::path& root, const std::vector<Suggestion>& suggestions,
                          const LevelScheme& scheme) {
  std::map<std::string, std::vector<Suggestion>> by_file;
  for (const auto& s : suggestions) by_file[s.statement.location.file_path].push_back(s);
  RewritePlan plan;
  for (const auto& [path, list] : by_file)
    plan.files.push_back(rewrite_file(path, read_text_file(root / path), list, scheme));
  return plan;
}

void apply_plan(const fs::path& root, const RewritePlan& plan) {
  for (const auto& f : plan.files)
    if (f.changed()) write_file_atomic(root / f.file_path, f.patched);
}

}  // namespace loglift
