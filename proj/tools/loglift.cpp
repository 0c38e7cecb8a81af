// SPDX-License-Identifier: Apache-2.0
//
// loglift: rejuvenate Java log levels from git history.

#include <unistd.h>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loglift/error.hpp"
#include "loglift/pipeline.hpp"

namespace fs = std::filesystem;
using namespace loglift;

namespace {

constexpr int kClean = 0;
constexpr int kError = 1;
constexpr int kSuggestions = 2;

struct Options {
  std::vector<std::string> paths;
  ConfigOverrides overrides;
  std::string report;
  std::string out;
  bool apply = false;
  bool interactive = false;
};

// Flags are recorded in command-line order so later ones win, like config lines.
void add_config_flags(CLI::App* cmd, Options& o) {
  auto flag = [&](const std::string& name, const std::string& key, const std::string& value,
                  const std::string& help) {
    cmd->add_flag_callback(name, [&o, key, value] { o.overrides.emplace_back(key, value); }, help);
  };
  auto option = [&](const std::string& name, const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        name, [&o, key](const std::string& v) { o.overrides.emplace_back(key, v); }, help);
  };
  flag("--ws", "ws", "true", "Treat category levels as untouchable (default)");
  flag("--no-ws", "ws", "false", "Disable the WS heuristic");
  option("--ws-categories", "ws.categories", "Comma-separated category levels");
  flag("--no-ctch", "ctch", "false", "Allow lowering inside catch blocks");
  flag("--no-ifs", "ifs", "false", "Allow lowering first statements of branches");
  flag("--no-keyl", "keyl", "false", "Ignore KEYL keywords");
  flag("--no-cnds", "cnds", "false", "Allow changing level-guarded statements");
  flag("--no-keyr", "keyr", "false", "Allow raising to critical levels without keywords");
  flag("--no-inh", "inh", "false", "Ignore overriding-method consistency");
  option("--tdist", "tdist", "Maximum transformation distance");
  option("--keyl-keywords", "keyl.keywords", "Comma-separated KEYL keywords");
  option("--keyr-keywords", "keyr.keywords", "Comma-separated KEYR keywords");
  option("--max-commits", "max_commits", "Analyze at most N recent commits");
  option("--framework", "framework", "jul or slf4j");
  option("--cache-dir", "cache_dir", "Directory for the history cache");
  option("--bug-pattern", "bug_pattern", "Regular expression for bug-fix commit messages");
  cmd->add_option_function<std::vector<std::string>>(
         "--set",
         [&o](const std::vector<std::string>& items) {
           for (const auto& kv : items) {
             auto eq = kv.find('=');
             if (eq == std::string::npos)
               throw CLI::ValidationError("--set", "expected KEY=VALUE, got '" + kv + "'");
             o.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
           }
         },
         "Any config key, as KEY=VALUE")
      ->take_all();
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
}

void report_stale(const RewritePlan& plan) {
  for (const auto& f : plan.files)
    for (const auto& s : f.stale)
      std::cerr << "loglift: skipped stale suggestion at " << f.file_path << ":"
                << s.suggestion.statement.location.line << " (expected '"
                << s.suggestion.statement.token_text << "', found '" << s.found << "')\n";
}

std::vector<fs::path> as_paths(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

// Runs every project, prints per-project failures, and returns the successful runs.
std::vector<ProjectRun> run_projects(const Options& o, bool& failed) {
  Session session(&std::cerr);
  auto outcomes = analyze_projects(session, as_paths(o.paths), o.overrides);
  std::vector<ProjectRun> runs;
  for (auto& oc : outcomes) {
    if (!oc.run) {
      std::cerr << "loglift: " << oc.project.string() << ": " << oc.error << "\n";
      failed = true;
      continue;
    }
    runs.push_back(std::move(*oc.run));
  }
  return runs;
}

void write_report(const Options& o, const std::vector<ProjectRun>& runs) {
  if (o.report.empty()) return;
  std::vector<RunReport> reports;
  for (const auto& r : runs) reports.push_back(r.report);
  write_output(o.report, render_json(reports));
}

int cmd_analyze(const Options& o) {
  bool failed = false;
  auto runs = run_projects(o, failed);
  write_report(o, runs);
  std::string patch;
  std::size_t suggestions = 0;
  for (const auto& r : runs) {
    auto list = r.leveling.suggestions();
    suggestions += list.size();
    auto plan = plan_rewrites(r.repo_root, list, r.config.scheme());
    report_stale(plan);
    patch += plan.patch();
    if (o.apply) apply_plan(r.repo_root, plan);
  }
  if (!o.out.empty())
    write_output(o.out, patch);
  else
    std::cout << patch;
  if (failed) return kError;
  if (o.apply) return kClean;
  return suggestions > 0 ? kSuggestions : kClean;
}

int cmd_apply(const Options& o) {
  bool failed = false;
  auto runs = run_projects(o, failed);
  write_report(o, runs);
  std::string patch;
  for (const auto& r : runs) {
    auto plan = apply_suggestions(r.repo_root, r.leveling.suggestions(), r.config.scheme());
    report_stale(plan);
    patch += plan.patch();
    std::cerr << "loglift: " << r.project_dir.string() << ": applied " << plan.applied_count()
              << " change(s)\n";
  }
  if (!o.out.empty()) write_output(o.out, patch);
  return failed ? kError : kClean;
}

int cmd_review(const Options& o) {
  bool failed = false;
  auto runs = run_projects(o, failed);
  write_report(o, runs);
  if (failed) return kError;
  const bool tty = o.interactive || ::isatty(STDIN_FILENO);
  std::size_t suggestions = 0;
  for (const auto& r : runs) {
    auto list = r.leveling.suggestions();
    suggestions += list.size();
    if (list.empty()) continue;
    if (!tty) {
      std::cout << plan_rewrites(r.repo_root, list, r.config.scheme()).patch();
      continue;
    }
    auto review = review_suggestions(r.repo_root, list, r.config.scheme(), std::cin, std::cout);
    if (review.cancelled) {
      std::cout << "review cancelled; no files modified\n";
      return kClean;
    }
    auto plan = apply_suggestions(r.repo_root, review.accepted, r.config.scheme());
    report_stale(plan);
    std::cout << "applied " << plan.applied_count() << " of " << list.size() << " change(s)\n";
  }
  if (!tty && suggestions > 0) return kSuggestions;
  return kClean;
}

int cmd_stats(const Options& o) {
  bool failed = false;
  auto runs = run_projects(o, failed);
  write_report(o, runs);
  for (const auto& r : runs) std::cout << render_text(r.report);
  return failed ? kError : kClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rejuvenate Java log levels using the git history of the surrounding code"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "loglift 0.1.0");

  Options o;
  auto* analyze = app.add_subcommand("analyze", "Suggest level changes and print them as a patch");
  auto* review = app.add_subcommand("review", "Accept or reject suggestions file by file");
  auto* apply = app.add_subcommand("apply", "Rewrite every suggested level in place");
  auto* stats = app.add_subcommand("stats", "Print report metrics");
  for (auto* cmd : {analyze, review, apply, stats}) {
    cmd->add_option("paths", o.paths, "Project directories inside git repositories")
        ->required()
        ->expected(1, -1);
    add_config_flags(cmd, o);
    cmd->add_option("--report", o.report, "Write the JSON report to this file");
    cmd->add_option("--out", o.out, "Write the patch to this file instead of stdout");
  }
  analyze->add_flag("--apply", o.apply, "Also rewrite the files in place");
  review->add_flag("--interactive", o.interactive)->group("");  // prompt even without a tty

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kClean : kError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(o);
    if (review->parsed()) return cmd_review(o);
    if (apply->parsed()) return cmd_apply(o);
    if (stats->parsed()) return cmd_stats(o);
  } catch (const std::exception& e) {
    std::cerr << "loglift: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
