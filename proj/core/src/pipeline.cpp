// SPDX-License-Identifier: Apache-2.0

#include "loglift/pipeline.hpp"

#include <cctype>
#include <istream>
#include <ostream>

#include "loglift/error.hpp"
#include "loglift/git.hpp"
#include "loglift/unified_diff.hpp"

namespace fs = std::filesystem;

namespace loglift {

Config resolve_config(const fs::path& project_dir, const fs::path& repo_root,
                      const ConfigOverrides& overrides) {
  Config config;
  if (auto file = find_config_file(project_dir, repo_root)) {
    try {
      config = parse_config(read_text_file(*file));
    } catch (const Error& e) {
      std::string msg = e.what();
      msg.erase(0, msg.find(": ") + 2);
      throw Error(ErrorKind::InvalidConfig, file->string() + ": " + msg);
    }
  }
  for (const auto& [key, value] : overrides) config.set(key, value);
  config.validate();
  return config;
}

std::vector<ChangeEvent> restrict_events(const std::vector<ChangeEvent>& events,
                                         const std::set<MethodIdentity>& methods) {
  std::vector<ChangeEvent> out;
  for (const auto& e : events) {
    if (!methods.count(e.method)) continue;
    out.push_back(e);
    out.back().seq = out.size() - 1;
  }
  return out;
}

ProjectRun Session::analyze(const fs::path& project, const ConfigOverrides& overrides) {
  std::error_code ec;
  if (!fs::is_directory(project, ec))
    throw Error(ErrorKind::NotARepository, project.string() + " is not a directory");
  ProjectRun run;
  run.project_dir = fs::canonical(project);
  auto repo = git::Repository::open(run.project_dir);
  run.repo_root = fs::canonical(repo.root());
  auto rel = run.project_dir.lexically_relative(run.repo_root).generic_string();
  if (!rel.empty() && rel != ".") run.path_prefix = rel + "/";

  run.config = resolve_config(run.project_dir, run.repo_root, overrides);
  const auto scheme = run.config.scheme();
  run.index = index_tree(run.project_dir, scheme, IndexOptions{run.path_prefix});

  MineOptions mopts;
  mopts.max_commits = run.config.max_commits;
  mopts.rename_threshold = run.config.rename_threshold;
  mopts.cache_dir = run.config.cache_dir;
  MemoKey key{run.repo_root.string(), repo.head(),
              run.config.cache_dir ? run.config.cache_dir->string() : std::string(),
              run.config.max_commits, run.config.rename_threshold};
  auto memo = memo_.find(key);
  if (memo == memo_.end()) {
    MineResult mined = mine(run.repo_root, mopts);
    ++mined_count_;
    if (log_ && mined.diagnostics.cache_hit)
      *log_ << "loglift: cache hit for " << run.repo_root.string() << " at " << key.head << "\n";
    memo = memo_.emplace(key, std::move(mined)).first;
  } else {
    run.reused_history = true;
    if (log_)
      *log_ << "loglift: cache hit for " << run.repo_root.string()
            << " (already mined in this run)\n";
  }

  std::set<MethodIdentity> methods;
  for (const auto& m : run.index.methods) methods.insert(m.id);
  run.mined = memo->second;
  run.mined.events = restrict_events(memo->second.events, methods);

  run.model = process_events(run.mined.events, run.config.doi);
  run.leveling = assess(run.index, run.model, scheme, run.config.heuristics, run.config.doi);
  run.report = build_report(ReportInputs{run.project_dir.string(), scheme, run.config.heuristics,
                                         run.mined, run.index, run.leveling,
                                         run.config.bug_pattern, run.config.bug_focus_scope});
  return run;
}

std::vector<ProjectOutcome> analyze_projects(Session& session, const std::vector<fs::path>& projects,
                                             const ConfigOverrides& overrides) {
  if (projects.empty()) throw Error(ErrorKind::Usage, "no projects given");
  std::vector<ProjectOutcome> out;
  for (const auto& p : projects) {
    ProjectOutcome o;
    o.project = p;
    try {
      o.run = session.analyze(p, overrides);
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    out.push_back(std::move(o));
  }
  return out;
}

namespace {

enum class Answer { Yes, No, Each, All, Quit };

std::optional<Answer> ask(std::istream& in, std::ostream& out, const std::string& prompt,
                          bool allow_each) {
  for (;;) {
    out << prompt << (allow_each ? " [y,n,s,a,q] " : " [y,n,a,q] ") << std::flush;
    std::string line;
    if (!std::getline(in, line)) return std::nullopt;
    auto a = line.empty() ? ' ' : static_cast<char>(std::tolower(static_cast<unsigned char>(line[0])));
    switch (a) {
      case 'y': return Answer::Yes;
      case 'n': return Answer::No;
      case 'a': return Answer::All;
      case 'q': return Answer::Quit;
      case 's':
        if (allow_each) return Answer::Each;
        break;
      default: break;
    }
    out << "y: accept, n: reject, " << (allow_each ? "s: decide per statement, " : "")
        << "a: accept this and all remaining, q: quit without changes\n";
  }
}

}  // namespace

ReviewResult review_suggestions(const fs::path& repo_root, const std::vector<Suggestion>& suggestions,
                                const LevelScheme& scheme, std::istream& in, std::ostream& out) {
  ReviewResult result;
  std::map<std::string, std::vector<Suggestion>> by_file;
  for (const auto& s : suggestions) by_file[s.statement.location.file_path].push_back(s);

  bool accept_rest = false;
  for (const auto& [path, list] : by_file) {
    if (accept_rest) {
      result.accepted.insert(result.accepted.end(), list.begin(), list.end());
      continue;
    }
    auto source = read_text_file(repo_root / path);
    auto rewrite = rewrite_file(path, source, list, scheme);
    out << unified_diff(path, rewrite.original, rewrite.patched);
    auto answer = ask(in, out, "Apply " + std::to_string(list.size()) + " change(s) to " + path + "?",
                      list.size() > 1);
    if (!answer || *answer == Answer::Quit) {
      result.accepted.clear();
      result.cancelled = true;
      return result;
    }
    switch (*answer) {
      case Answer::All:
        accept_rest = true;
        [[fallthrough]];
      case Answer::Yes:
        result.accepted.insert(result.accepted.end(), list.begin(), list.end());
        break;
      case Answer::No: break;
      case Answer::Each:
        for (const auto& s : list) {
          auto single = rewrite_file(path, source, {s}, scheme);
          out << unified_diff(path, single.original, single.patched);
          auto a = ask(in, out, "Apply this change?", false);
          if (!a || *a == Answer::Quit) {
            result.accepted.clear();
            result.cancelled = true;
            return result;
          }
          if (*a == Answer::Yes || *a == Answer::All) result.accepted.push_back(s);
        }
        break;
      case Answer::Quit: break;
    }
  }
  return result;
}

RewritePlan apply_suggestions(const fs::path& repo_root, const std::vector<Suggestion>& suggestions,
                              const LevelScheme& scheme) {
  auto plan = plan_rewrites(repo_root, suggestions, scheme);
  apply_plan(repo_root, plan);
  return plan;
}

}  // namespace loglift
