// SPDX-License-Identifier: Apache-2.0

#include "loglift/java_structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "loglift/error.hpp"

namespace loglift::java {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

bool is_type_keyword(std::string_view t) {
  return t == "class" || t == "interface" || t == "enum" || t == "record";
}

bool is_modifier(std::string_view t) {
  return t == "public" || t == "protected" || t == "private" || t == "static" ||
         t == "final" || t == "abstract" || t == "strictfp" || t == "sealed" ||
         t == "non-sealed" || t == "native" || t == "synchronized" || t == "transient" ||
         t == "volatile" || t == "default";
}

}  // namespace

class StructureParser {
 public:
  explicit StructureParser(JavaFile& file) : f_(file) {}

  void run() {
    match_brackets();
    scan_members(kNone, f_.tokens_.size(), "", false, Mode::Declarations, {});
    std::sort(f_.methods_.begin(), f_.methods_.end(),
              [](const MethodDecl& a, const MethodDecl& b) { return a.body_open < b.body_open; });
    std::sort(f_.statements_.begin(), f_.statements_.end(),
              [](const StatementInfo& a, const StatementInfo& b) {
                return a.range.first != b.range.first ? a.range.first < b.range.first
                                                      : a.range.second > b.range.second;
              });
  }

 private:
  enum class Mode { Declarations, StatementsOnly };

  struct Ctx {
    bool in_catch = false;
    std::optional<TokenRange> guard;
  };

  std::string_view t(std::size_t i) const {
    return i < f_.tokens_.size() ? f_.text(i) : std::string_view{};
  }
  bool is(std::size_t i, std::string_view s) const {
    if (i >= f_.tokens_.size()) return false;
    const auto kind = f_.tokens_[i].kind;
    return (kind == TokenKind::Punct || kind == TokenKind::Identifier) && t(i) == s;
  }
  bool is_ident(std::size_t i) const {
    return i < f_.tokens_.size() && f_.tokens_[i].kind == TokenKind::Identifier;
  }
  std::size_t m(std::size_t i) const { return f_.match_[i]; }

  [[noreturn]] void fail(std::size_t i, const std::string& what) const {
    const int line = i < f_.tokens_.size() ? f_.tokens_[i].line : 0;
    throw Error(ErrorKind::UnparsableFile, what + " at line " + std::to_string(line));
  }

  void match_brackets() {
    const auto& toks = f_.tokens_;
    f_.match_.assign(toks.size(), kNone);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (toks[i].kind != TokenKind::Punct) continue;
      const auto s = t(i);
      if (s == "(" || s == "[" || s == "{") {
        stack.push_back(i);
      } else if (s == ")" || s == "]" || s == "}") {
        if (stack.empty()) fail(i, "unbalanced '" + std::string(s) + "'");
        const auto open = stack.back();
        stack.pop_back();
        const auto o = t(open);
        if ((s == ")" && o != "(") || (s == "]" && o != "[") || (s == "}" && o != "{")) {
          fail(i, "mismatched '" + std::string(s) + "'");
        }
        f_.match_[open] = i;
        f_.match_[i] = open;
      }
    }
    if (!stack.empty()) fail(stack.back(), "unclosed '" + std::string(t(stack.back())) + "'");
  }

  // Drops annotations from a member header; keeps `@interface`.
  std::vector<std::size_t> strip_annotations(std::size_t begin, std::size_t end) const {
    std::vector<std::size_t> out;
    for (std::size_t i = begin; i < end;) {
      if (is(i, "@") && !is(i + 1, "interface")) {
        ++i;
        while (i < end && is_ident(i)) {
          ++i;
          if (i < end && is(i, ".") && is_ident(i + 1)) {
            ++i;
          } else {
            break;
          }
        }
        if (i < end && is(i, "(")) i = m(i) + 1;
        continue;
      }
      out.push_back(i);
      if (is(i, "(") || is(i, "[")) {
        for (std::size_t k = i + 1; k <= m(i); ++k) out.push_back(k);
        i = m(i) + 1;
        continue;
      }
      ++i;
    }
    return out;
  }

  std::size_t find_type_keyword(const std::vector<std::size_t>& hdr) const {
    for (std::size_t k = 0; k < hdr.size(); ++k) {
      const auto i = hdr[k];
      if (!is_ident(i) || !is_type_keyword(t(i))) continue;
      if (k > 0 && (is(hdr[k - 1], ".") || is(hdr[k - 1], "("))) continue;
      if (k + 1 >= hdr.size() || !is_ident(hdr[k + 1])) continue;
      if (t(i) == "record" && !(k + 2 < hdr.size() && (is(hdr[k + 2], "(") || is(hdr[k + 2], "<")))) {
        continue;
      }
      return k;
    }
    return kNone;
  }

  std::vector<std::string> parse_supertypes(const std::vector<std::size_t>& hdr,
                                            std::size_t kw) const {
    std::vector<std::string> out;
    bool collecting = false;
    std::string candidate;
    int angle = 0;
    auto flush = [&] {
      if (collecting && !candidate.empty()) out.push_back(candidate);
      candidate.clear();
    };
    for (std::size_t k = kw + 2; k < hdr.size(); ++k) {
      const auto i = hdr[k];
      if (is(i, "<")) {
        ++angle;
        continue;
      }
      if (is(i, ">")) {
        --angle;
        continue;
      }
      if (angle > 0) continue;
      if (is(i, "(")) {
        // record components were included token by token; skip to the close
        while (k < hdr.size() && hdr[k] != m(i)) ++k;
        continue;
      }
      const auto s = t(i);
      if (s == "extends" || s == "implements") {
        flush();
        collecting = true;
        continue;
      }
      if (s == "permits") {
        flush();
        collecting = false;
        continue;
      }
      if (s == ",") {
        flush();
        continue;
      }
      if (is_ident(i)) candidate = std::string(s);
    }
    flush();
    return out;
  }

  std::string erase_type(const std::vector<std::size_t>& toks) const {
    // Qualified, possibly generic type tokens -> simple erased name with dims.
    std::string base;
    std::string suffix;
    int angle = 0;
    for (auto i : toks) {
      if (is(i, "<")) {
        ++angle;
        continue;
      }
      if (is(i, ">")) {
        --angle;
        continue;
      }
      if (angle > 0) continue;
      if (is(i, "[")) {
        suffix += "[]";
      } else if (is(i, "...")) {
        suffix += "...";
      } else if (is_ident(i)) {
        base = std::string(t(i));
      }
    }
    return base + suffix;
  }

  std::vector<std::string> parse_parameters(std::size_t open) const {
    std::vector<std::string> out;
    const std::size_t close = m(open);
    std::vector<std::vector<std::size_t>> params(1);
    int angle = 0;
    for (std::size_t i = open + 1; i < close; ++i) {
      if (is(i, "<")) ++angle;
      if (is(i, ">")) --angle;
      if ((is(i, "(") || is(i, "[")) && m(i) != kNone) {
        for (std::size_t k = i; k <= m(i); ++k) params.back().push_back(k);
        i = m(i);
        continue;
      }
      if (angle == 0 && is(i, ",")) {
        params.emplace_back();
        continue;
      }
      params.back().push_back(i);
    }
    for (const auto& raw : params) {
      if (raw.empty()) continue;
      std::vector<std::size_t> p;
      for (std::size_t k = 0; k < raw.size(); ++k) {
        const auto i = raw[k];
        if (is(i, "@")) {
          // annotation: @Name(.Name)* optionally followed by (...)
          ++k;
          while (k + 2 < raw.size() && is(raw[k + 1], ".") && is_ident(raw[k + 2])) k += 2;
          if (k + 1 < raw.size() && is(raw[k + 1], "(")) {
            const auto close_paren = m(raw[k + 1]);
            while (k < raw.size() && raw[k] != close_paren) ++k;
          }
          continue;
        }
        if (t(i) == "final") continue;
        p.push_back(i);
      }
      // trailing dims after the name: `int a[]`
      std::size_t dims_after = 0;
      while (p.size() >= 2 && is(p.back(), "]") && is(p[p.size() - 2], "[")) {
        p.resize(p.size() - 2);
        ++dims_after;
      }
      if (p.empty()) continue;
      if (is_ident(p.back()) && t(p.back()) == "this") continue;  // receiver parameter
      if (p.size() >= 2 && is_ident(p.back())) p.pop_back();
      std::string type = erase_type(p);
      for (std::size_t d = 0; d < dims_after; ++d) type += "[]";
      out.push_back(type);
    }
    return out;
  }

  void add_method(const std::vector<std::size_t>& hdr, std::size_t paren_pos, std::size_t open,
                  const std::string& type_name) {
    // paren_pos == kNone: compact record constructor, named by the last header token
    const auto name_tok = paren_pos == kNone ? hdr.back() : hdr[paren_pos - 1];
    MethodDecl decl;
    decl.declaring_type = type_name;
    decl.name = std::string(t(name_tok));
    if (paren_pos != kNone) decl.parameter_types = parse_parameters(hdr[paren_pos]);
    decl.signature = type_name + "#" + decl.name + "(";
    for (std::size_t i = 0; i < decl.parameter_types.size(); ++i) {
      if (i) decl.signature += ",";
      decl.signature += decl.parameter_types[i];
    }
    decl.signature += ")";
    decl.header_token = hdr.front();
    decl.body_open = open;
    decl.body_close = m(open);
    const auto& toks = f_.tokens_;
    decl.start_line = toks[decl.header_token].line;
    decl.end_line = toks[decl.body_close].line;
    decl.start_offset = toks[decl.header_token].offset;
    decl.end_offset = toks[decl.body_close].end();
    f_.methods_.push_back(std::move(decl));
  }

  // Walks the members of a type body (or the compilation unit when open == kNone).
  void scan_members(std::size_t open, std::size_t close, const std::string& type_name,
                    bool is_enum, Mode mode, const Ctx& ctx) {
    std::size_t i = open == kNone ? 0 : open + 1;
    if (is_enum) {
      while (i < close) {
        if (is(i, ";")) {
          ++i;
          break;
        }
        if (is(i, "{")) {
          // constant-specific class body
          scan_members(i, m(i), type_name, false, Mode::StatementsOnly, ctx);
        }
        if (is(i, "(") || is(i, "[") || is(i, "{")) {
          i = m(i) + 1;
          continue;
        }
        ++i;
      }
    }
    while (i < close) {
      const std::size_t start = i;
      bool has_assign = false;
      std::size_t j = i;
      while (j < close) {
        if (is(j, "(") || is(j, "[")) {
          j = m(j) + 1;
          continue;
        }
        if (is(j, "=")) has_assign = true;
        if (is(j, ";") || is(j, "{") || is(j, "}")) break;
        ++j;
      }
      if (j >= close) break;
      if (is(j, ";") || is(j, "}")) {
        i = j + 1;
        continue;
      }
      if (has_assign) {
        // field initializer containing braces (array init, anonymous class, lambda)
        std::size_t k = j;
        while (k < close && !is(k, ";")) {
          if (is(k, "{") && mode == Mode::StatementsOnly) scan_expression(k, m(k), ctx);
          if (is(k, "(") || is(k, "[") || is(k, "{")) {
            k = m(k) + 1;
            continue;
          }
          ++k;
        }
        i = k + 1;
        continue;
      }
      const auto hdr = strip_annotations(start, j);
      const std::size_t body_close = m(j);
      if (const auto kw = find_type_keyword(hdr); kw != kNone) {
        const std::string name(t(hdr[kw + 1]));
        const std::string qualified = type_name.empty() ? name : type_name + "." + name;
        if (mode == Mode::Declarations) {
          f_.types_.push_back(TypeDecl{qualified, parse_supertypes(hdr, kw),
                                       f_.tokens_[hdr[kw]].line});
        }
        scan_members(j, body_close, qualified, t(hdr[kw]) == "enum", mode, ctx);
        i = body_close + 1;
        continue;
      }
      std::size_t paren_pos = kNone;
      for (std::size_t k = 0; k < hdr.size(); ++k) {
        if (is(hdr[k], "(")) {
          paren_pos = k;
          break;
        }
      }
      if (paren_pos != kNone && paren_pos > 0 && is_ident(hdr[paren_pos - 1]) &&
          !is_modifier(t(hdr[paren_pos - 1]))) {
        if (mode == Mode::Declarations) add_method(hdr, paren_pos, j, type_name);
      } else if (paren_pos == kNone && !hdr.empty() && is_ident(hdr.back()) &&
                 t(hdr.back()) == type_name.substr(type_name.rfind('.') + 1)) {
        if (mode == Mode::Declarations) add_method(hdr, kNone, j, type_name);
      }
      // method body, initializer block or compact record constructor
      parse_block(j, ctx, false);
      i = body_close + 1;
    }
  }

  // Statements between a '{' and its '}'.
  void parse_block(std::size_t open, const Ctx& ctx, bool branch_first) {
    const std::size_t close = m(open);
    std::size_t i = open + 1;
    bool first = true;
    while (i < close) {
      i = parse_statement(i, close, ctx, first && branch_first);
      first = false;
    }
  }

  bool starts_local_type(std::size_t i, std::size_t limit, std::size_t& open) const {
    std::size_t k = i;
    while (k < limit) {
      if (is(k, "@") && is_ident(k + 1)) {
        k += 2;
        while (k + 1 < limit && is(k, ".") && is_ident(k + 1)) k += 2;
        if (k < limit && is(k, "(")) k = m(k) + 1;
        continue;
      }
      if (is_ident(k) && (t(k) == "final" || t(k) == "abstract" || t(k) == "static" ||
                          t(k) == "strictfp" || t(k) == "sealed")) {
        ++k;
        continue;
      }
      break;
    }
    if (!is_ident(k) || !is_type_keyword(t(k)) || !is_ident(k + 1)) return false;
    if (t(k) == "record" && !(is(k + 2, "(") || is(k + 2, "<"))) return false;
    std::size_t j = k;
    while (j < limit && !is(j, "{")) {
      if (is(j, "(") || is(j, "[")) {
        j = m(j) + 1;
        continue;
      }
      if (is(j, ";")) return false;
      ++j;
    }
    if (j >= limit) return false;
    open = j;
    return true;
  }

  std::size_t parse_statement(std::size_t i, std::size_t limit, const Ctx& ctx,
                              bool branch_first) {
    if (i >= limit) return limit;
    if (is(i, "{")) {
      parse_block(i, ctx, branch_first);
      return m(i) + 1;
    }
    if (is(i, ";")) return i + 1;
    const auto word = is_ident(i) ? t(i) : std::string_view{};
    if (word == "if" && is(i + 1, "(")) {
      Ctx inner = ctx;
      inner.guard = TokenRange{i + 2, m(i + 1) - 1};
      auto j = parse_statement(m(i + 1) + 1, limit, inner, true);
      if (j < limit && is(j, "else")) j = parse_statement(j + 1, limit, inner, true);
      return j;
    }
    if (word == "try") {
      std::size_t j = i + 1;
      if (is(j, "(")) {
        scan_expression(j, m(j), ctx);
        j = m(j) + 1;
      }
      if (!is(j, "{")) fail(j, "expected block after try");
      parse_block(j, ctx, false);
      j = m(j) + 1;
      while (j < limit && is(j, "catch") && is(j + 1, "(")) {
        const auto block = m(j + 1) + 1;
        if (!is(block, "{")) fail(block, "expected catch block");
        Ctx catch_ctx = ctx;
        catch_ctx.in_catch = true;
        parse_block(block, catch_ctx, false);
        j = m(block) + 1;
      }
      if (j < limit && is(j, "finally") && is(j + 1, "{")) {
        parse_block(j + 1, ctx, false);
        j = m(j + 1) + 1;
      }
      return j;
    }
    if ((word == "for" || word == "while") && is(i + 1, "(")) {
      scan_expression(i + 1, m(i + 1), ctx);
      return parse_statement(m(i + 1) + 1, limit, ctx, false);
    }
    if (word == "do") {
      auto j = parse_statement(i + 1, limit, ctx, false);
      if (is(j, "while") && is(j + 1, "(")) {
        j = m(j + 1) + 1;
        if (is(j, ";")) ++j;
      }
      return j;
    }
    if (word == "switch" && is(i + 1, "(") && is(m(i + 1) + 1, "{")) {
      const auto end = parse_switch(i, ctx);
      return is(end, ";") ? end + 1 : end;
    }
    if (word == "synchronized" && is(i + 1, "(") && is(m(i + 1) + 1, "{")) {
      parse_block(m(i + 1) + 1, ctx, false);
      return m(m(i + 1) + 1) + 1;
    }
    if (!word.empty() && is(i + 1, ":") && word != "default" && word != "case") {
      return parse_statement(i + 2, limit, ctx, branch_first);
    }
    if (std::size_t open = 0; starts_local_type(i, limit, open)) {
      scan_members(open, m(open), "", false, Mode::StatementsOnly, ctx);
      return m(open) + 1;
    }
    // simple statement: up to the ';' at bracket depth zero
    std::size_t j = i;
    while (j < limit && !is(j, ";")) {
      if (is(j, "{") || is(j, "(") || is(j, "[")) {
        scan_expression(j, m(j), ctx);
        j = m(j) + 1;
        continue;
      }
      if (is(j, "switch") && is(j + 1, "(") && is(m(j + 1) + 1, "{")) {
        j = parse_switch(j, ctx);
        continue;
      }
      ++j;
    }
    const std::size_t last = std::min(j, limit - 1);
    f_.statements_.push_back(StatementInfo{{i, last}, ctx.in_catch, branch_first, ctx.guard});
    return j + 1;
  }

  // Looks for statement bodies (lambdas, anonymous classes, switch expressions)
  // nested in the bracketed expression open..close.
  void scan_expression(std::size_t open, std::size_t close, const Ctx& ctx) {
    if (is(open, "{")) {
      if (open > 0 && is(open - 1, "->")) {
        parse_block(open, ctx, false);
        return;
      }
      if (open > 0 && is(open - 1, ")")) {
        scan_members(open, close, "", false, Mode::StatementsOnly, ctx);
        return;
      }
    }
    for (std::size_t k = open + 1; k < close;) {
      if (is(k, "switch") && is(k + 1, "(") && is(m(k + 1) + 1, "{")) {
        k = parse_switch(k, ctx);
        continue;
      }
      if (is(k, "{") || is(k, "(") || is(k, "[")) {
        scan_expression(k, m(k), ctx);
        k = m(k) + 1;
        continue;
      }
      ++k;
    }
  }

  bool is_case_label(std::size_t k) const {
    return is(k, "case") || (is(k, "default") && (is(k + 1, ":") || is(k + 1, "->")));
  }

  // Returns the index just past the switch body.
  std::size_t parse_switch(std::size_t i, const Ctx& ctx) {
    scan_expression(i + 1, m(i + 1), ctx);
    const auto open = m(i + 1) + 1;
    const auto close = m(open);
    std::size_t k = open + 1;
    while (k < close) {
      if (!is_case_label(k)) {
        k = parse_statement(k, close, ctx, false);
        continue;
      }
      std::size_t j = k + 1;
      while (j < close && !is(j, ":") && !is(j, "->")) {
        if (is(j, "(") || is(j, "[") || is(j, "{")) {
          j = m(j) + 1;
          continue;
        }
        ++j;
      }
      if (j >= close) break;
      if (is(j, "->")) {
        k = parse_statement(j + 1, close, ctx, true);
        continue;
      }
      k = j + 1;
      bool first = true;
      while (k < close && !is_case_label(k)) {
        k = parse_statement(k, close, ctx, first);
        first = false;
      }
    }
    return close + 1;
  }

  JavaFile& f_;
};

JavaFile JavaFile::parse(std::string source) {
  JavaFile file;
  file.source_ = std::move(source);
  file.tokens_ = tokenize(file.source_);
  StructureParser(file).run();
  return file;
}

std::string_view JavaFile::text(std::size_t token) const { return text(tokens_.at(token)); }

std::string_view JavaFile::text(const Token& token) const {
  return std::string_view(source_).substr(token.offset, token.length);
}

std::size_t JavaFile::matching(std::size_t token) const { return match_.at(token); }

const MethodDecl* JavaFile::enclosing_method(std::size_t token) const {
  const MethodDecl* best = nullptr;
  for (const auto& method : methods_) {
    if (method.body_open < token && token < method.body_close) {
      if (!best || method.body_open > best->body_open) best = &method;
    }
  }
  return best;
}

const StatementInfo* JavaFile::statement_at(std::size_t token) const {
  const StatementInfo* best = nullptr;
  for (const auto& stmt : statements_) {
    if (stmt.range.first > token) break;
    if (token <= stmt.range.second) {
      if (!best || stmt.range.second - stmt.range.first < best->range.second - best->range.first) {
        best = &stmt;
      }
    }
  }
  return best;
}

std::vector<std::string> body_tokens(const JavaFile& file, const MethodDecl& method) {
  std::vector<std::string> out;
  out.reserve(method.body_close - method.body_open);
  for (std::size_t i = method.body_open + 1; i < method.body_close; ++i) {
    out.emplace_back(file.text(i));
  }
  return out;
}

double dice_similarity(std::vector<std::string> a, std::vector<std::string> b) {
  if (a.empty() && b.empty()) return 1.0;
  std::map<std::string, long> counts;
  for (auto& s : a) ++counts[s];
  long common = 0;
  for (auto& s : b) {
    auto it = counts.find(s);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  return 2.0 * static_cast<double>(common) / static_cast<double>(a.size() + b.size());
}

double body_similarity(const JavaFile& a, const MethodDecl& ma, const JavaFile& b,
                       const MethodDecl& mb) {
  return dice_similarity(body_tokens(a, ma), body_tokens(b, mb));
}

}  // namespace loglift::java
