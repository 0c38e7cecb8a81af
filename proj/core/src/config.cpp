// SPDX-License-Identifier: Apache-2.0

#include "loglift/config.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "loglift/error.hpp"

namespace fs = std::filesystem;

namespace loglift {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorKind::InvalidConfig,
              std::string(key) + " = '" + std::string(value) + "': " + std::string(why));
}

bool parse_bool(std::string_view key, std::string_view v) {
  auto s = to_lower(v);
  if (s == "true" || s == "on" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "off" || s == "no" || s == "0") return false;
  bad(key, v, "expected true or false");
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
    bad(key, v, "expected a number");
  return out;
}

std::optional<std::size_t> parse_count(std::string_view key, std::string_view v) {
  if (to_lower(v) == "unlimited") return std::nullopt;
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || out == 0)
    bad(key, v, "expected a positive integer or 'unlimited'");
  return out;
}

std::vector<std::string> parse_list(std::string_view v, bool lower) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    auto comma = v.find(',', start);
    auto item = trim(v.substr(start, comma == std::string_view::npos ? v.npos : comma - start));
    if (!item.empty()) out.emplace_back(lower ? to_lower(item) : std::string(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : "") + items[i];
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_count(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : std::string("unlimited");
}

const char* format_bool(bool b) { return b ? "true" : "false"; }

}  // namespace

void Config::set(std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  auto& h = heuristics;
  if (key == "framework") {
    framework = parse_framework(value);
  } else if (key == "doi.edit_scaling") {
    doi.edit_scaling = parse_double(key, value);
  } else if (key == "doi.decay_rate") {
    doi.decay_rate = parse_double(key, value);
  } else if (key == "ws") {
    h.ws_enabled = parse_bool(key, value);
  } else if (key == "ws.categories") {
    if (to_lower(value) == "default")
      h.ws_categories.reset();
    else
      h.ws_categories = parse_list(to_upper(value), false);
  } else if (key == "ctch") {
    h.ctch = parse_bool(key, value);
  } else if (key == "ifs") {
    h.ifs = parse_bool(key, value);
  } else if (key == "keyl") {
    h.keyl = parse_bool(key, value);
  } else if (key == "cnds") {
    h.cnds = parse_bool(key, value);
  } else if (key == "keyr") {
    h.keyr = parse_bool(key, value);
  } else if (key == "inh") {
    h.inh = parse_bool(key, value);
  } else if (key == "tdist") {
    h.tdist = parse_count(key, value);
  } else if (key == "keyl.keywords") {
    h.keyl_keywords = parse_list(value, true);
  } else if (key == "keyr.keywords") {
    h.keyr_keywords = parse_list(value, true);
  } else if (key == "max_commits") {
    max_commits = parse_count(key, value);
  } else if (key == "bug_pattern") {
    if (value.empty()) bad(key, value, "pattern is empty");
    bug_pattern = std::string(value);
  } else if (key == "bug_focus.scope") {
    bug_focus_scope = parse_bug_focus_scope(value);
  } else if (key == "cache_dir") {
    if (value.empty())
      cache_dir.reset();
    else
      cache_dir = fs::path(std::string(value));
  } else if (key == "rename.threshold") {
    rename_threshold = parse_double(key, value);
  } else if (key == "partition.population") {
    if (value == "feature-methods")
      h.population = PartitionPopulation::FeatureMethods;
    else if (value == "all-methods")
      h.population = PartitionPopulation::AllMethods;
    else
      bad(key, value, "expected feature-methods or all-methods");
  } else {
    throw Error(ErrorKind::InvalidConfig, "unknown key '" + std::string(key) + "'");
  }
}

std::string Config::serialize() const {
  const auto& h = heuristics;
  std::ostringstream out;
  out << "framework = " << to_string(framework) << "\n";
  out << "doi.edit_scaling = " << format_double(doi.edit_scaling) << "\n";
  out << "doi.decay_rate = " << format_double(doi.decay_rate) << "\n";
  out << "ws = " << format_bool(h.ws_enabled) << "\n";
  out << "ws.categories = " << (h.ws_categories ? join(*h.ws_categories) : "default") << "\n";
  out << "ctch = " << format_bool(h.ctch) << "\n";
  out << "ifs = " << format_bool(h.ifs) << "\n";
  out << "keyl = " << format_bool(h.keyl) << "\n";
  out << "cnds = " << format_bool(h.cnds) << "\n";
  out << "keyr = " << format_bool(h.keyr) << "\n";
  out << "inh = " << format_bool(h.inh) << "\n";
  out << "tdist = " << format_count(h.tdist) << "\n";
  out << "keyl.keywords = " << join(h.keyl_keywords) << "\n";
  out << "keyr.keywords = " << join(h.keyr_keywords) << "\n";
  out << "max_commits = " << format_count(max_commits) << "\n";
  out << "bug_pattern = " << bug_pattern << "\n";
  out << "bug_focus.scope = " << to_string(bug_focus_scope) << "\n";
  out << "cache_dir = " << (cache_dir ? cache_dir->string() : "") << "\n";
  out << "rename.threshold = " << format_double(rename_threshold) << "\n";
  out << "partition.population = "
      << (h.population == PartitionPopulation::AllMethods ? "all-methods" : "feature-methods")
      << "\n";
  return out.str();
}

void Config::validate() const {
  doi.validate();
  heuristics.validate(scheme());
  if (!(rename_threshold > 0 && rename_threshold <= 1))
    throw Error(ErrorKind::InvalidConfig, "rename.threshold must be in (0, 1]");
  if (bug_pattern.empty()) throw Error(ErrorKind::InvalidConfig, "bug_pattern is empty");
  is_bug_fix_message("", bug_pattern);  // compiles the pattern
}

Config parse_config(std::string_view text, Config base) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? text.npos : nl - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto eq = body.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorKind::InvalidConfig,
                  "line " + std::to_string(line_no) + ": expected key = value");
    try {
      base.set(trim(body.substr(0, eq)), body.substr(eq + 1));
    } catch (const Error& e) {
      std::string msg = e.what();
      msg.erase(0, msg.find(": ") + 2);  // drop the kind prefix
      throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(line_no) + ": " + msg);
    }
  }
  return base;
}

std::optional<fs::path> find_config_file(const fs::path& project_dir, const fs::path& repo_root) {
  for (const auto& dir : {project_dir, repo_root}) {
    if (dir.empty()) continue;
    auto p = dir / std::string(kConfigFileName);
    std::error_code ec;
    if (fs::is_regular_file(p, ec)) return p;
  }
  return std::nullopt;
}

}  // namespace loglift
