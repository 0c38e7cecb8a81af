// SPDX-License-Identifier: Apache-2.0

#include "loglift/repo_miner.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "loglift/error.hpp"
#include "loglift/git.hpp"
#include "loglift/java_structure.hpp"
#include "loglift/source_index.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace loglift {

namespace {

bool is_java_path(const std::string& p) {
  return p.size() > 5 && p.compare(p.size() - 5, 5, ".java") == 0;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<java::JavaFile> parse_blob(git::BlobReader& blobs, const std::string& spec,
                                         std::size_t& unparsable) {
  auto text = blobs.read(spec);
  if (!text) return std::nullopt;
  try {
    return java::JavaFile::parse(std::move(*text));
  } catch (const Error&) {
    ++unparsable;
    return std::nullopt;
  }
}

bool overlaps(int lo, int hi, const java::MethodDecl& m) {
  return lo <= m.end_line && hi >= m.start_line;
}

struct Side {
  std::string path;
  std::optional<java::JavaFile> file;
};

struct FilePair {
  git::FileDiff diff;
  Side old_side;
  Side new_side;
};

struct CommitAnalysis {
  std::vector<MethodChange> changes;
  std::vector<std::pair<MethodIdentity, MethodIdentity>> renames;
};

struct MethodRef {
  const java::JavaFile* file;
  const java::MethodDecl* decl;
  MethodIdentity id;
};

/// Unique mutual best matches above `threshold` between deleted and added methods.
void match_by_body(const std::vector<MethodRef>& deleted, const std::vector<MethodRef>& added,
                   double threshold,
                   std::vector<std::pair<MethodIdentity, MethodIdentity>>& out) {
  if (deleted.empty() || added.empty()) return;
  std::vector<std::vector<std::string>> dt, at;
  for (const auto& d : deleted) dt.push_back(java::body_tokens(*d.file, *d.decl));
  for (const auto& a : added) at.push_back(java::body_tokens(*a.file, *a.decl));
  const std::size_t nd = deleted.size(), na = added.size();
  std::vector<double> sim(nd * na);
  for (std::size_t i = 0; i < nd; ++i)
    for (std::size_t j = 0; j < na; ++j) sim[i * na + j] = java::dice_similarity(dt[i], at[j]);

  // Best partner index, or npos when the maximum is shared.
  constexpr auto npos = static_cast<std::size_t>(-1);
  std::vector<std::size_t> best_d(nd, npos), best_a(na, npos);
  for (std::size_t i = 0; i < nd; ++i) {
    double top = -1;
    for (std::size_t j = 0; j < na; ++j) {
      double v = sim[i * na + j];
      if (v > top) {
        top = v;
        best_d[i] = j;
      } else if (v == top) {
        best_d[i] = npos;
      }
    }
  }
  for (std::size_t j = 0; j < na; ++j) {
    double top = -1;
    for (std::size_t i = 0; i < nd; ++i) {
      double v = sim[i * na + j];
      if (v > top) {
        top = v;
        best_a[j] = i;
      } else if (v == top) {
        best_a[j] = npos;
      }
    }
  }
  for (std::size_t i = 0; i < nd; ++i) {
    std::size_t j = best_d[i];
    if (j == npos || best_a[j] != i) continue;
    if (sim[i * na + j] >= threshold) out.emplace_back(deleted[i].id, added[j].id);
  }
}

CommitAnalysis analyze_commit(const git::Repository& repo, git::BlobReader& blobs,
                              const CommitRecord& commit, double threshold,
                              std::size_t& unparsable) {
  std::string diff_text =
      repo.run({"diff-tree", "-r", "-M", "-U0", "--no-color", "--no-ext-diff", "--no-textconv",
                "--root", "--no-commit-id", "-p", commit.id});
  auto diffs = git::parse_unified_diff(diff_text);
  const bool has_parent = commit.parent_count > 0;

  std::vector<FilePair> pairs;
  for (auto& d : diffs) {
    if (!is_java_path(d.old_path) && !is_java_path(d.new_path)) continue;
    FilePair fp;
    fp.diff = d;
    if (d.status != git::FileStatus::Added && has_parent && is_java_path(d.old_path)) {
      fp.old_side.path = d.old_path;
      fp.old_side.file = parse_blob(blobs, commit.id + "^:" + d.old_path, unparsable);
    }
    if (d.status != git::FileStatus::Deleted && is_java_path(d.new_path)) {
      fp.new_side.path = d.new_path;
      fp.new_side.file = parse_blob(blobs, commit.id + ":" + d.new_path, unparsable);
    }
    pairs.push_back(std::move(fp));
  }

  CommitAnalysis out;
  std::set<MethodChange> changes;
  std::map<MethodIdentity, MethodRef> old_ids, new_ids;

  for (const auto& fp : pairs) {
    std::map<std::string, const java::MethodDecl*> old_m, new_m;
    if (fp.old_side.file)
      for (const auto& m : fp.old_side.file->methods()) old_m.emplace(m.signature, &m);
    if (fp.new_side.file)
      for (const auto& m : fp.new_side.file->methods()) new_m.emplace(m.signature, &m);
    for (const auto& [sig, m] : old_m)
      old_ids.emplace(MethodIdentity{fp.old_side.path, sig},
                      MethodRef{&*fp.old_side.file, m, {fp.old_side.path, sig}});
    for (const auto& [sig, m] : new_m)
      new_ids.emplace(MethodIdentity{fp.new_side.path, sig},
                      MethodRef{&*fp.new_side.file, m, {fp.new_side.path, sig}});

    std::set<std::string> touched;
    const bool whole_old = fp.diff.status == git::FileStatus::Deleted;
    const bool whole_new = fp.diff.status == git::FileStatus::Added || !has_parent;
    for (const auto& [sig, m] : old_m) {
      if (whole_old) {
        touched.insert(sig);
        continue;
      }
      for (const auto& h : fp.diff.hunks)
        if (h.old_count > 0 && overlaps(h.old_start, h.old_start + h.old_count - 1, *m)) {
          touched.insert(sig);
          break;
        }
    }
    for (const auto& [sig, m] : new_m) {
      if (whole_new) {
        touched.insert(sig);
        continue;
      }
      for (const auto& h : fp.diff.hunks)
        if (h.new_count > 0 && overlaps(h.new_start, h.new_start + h.new_count - 1, *m)) {
          touched.insert(sig);
          break;
        }
    }
    for (const auto& sig : touched) {
      MethodChange c;
      if (old_m.count(sig)) c.old_method = MethodIdentity{fp.old_side.path, sig};
      if (new_m.count(sig)) c.new_method = MethodIdentity{fp.new_side.path, sig};
      changes.insert(std::move(c));
    }
  }

  std::vector<MethodRef> deleted, added;
  for (const auto& [id, ref] : old_ids)
    if (!new_ids.count(id)) deleted.push_back(ref);
  for (const auto& [id, ref] : new_ids)
    if (!old_ids.count(id)) added.push_back(ref);

  // Same name and parameters across a file rename.
  std::set<MethodIdentity> used_d, used_a;
  for (const auto& fp : pairs) {
    if (fp.diff.status != git::FileStatus::Renamed) continue;
    for (const auto& d : deleted) {
      if (d.id.file_path != fp.old_side.path || used_d.count(d.id)) continue;
      for (const auto& a : added) {
        if (a.id.file_path != fp.new_side.path || used_a.count(a.id)) continue;
        if (a.decl->name == d.decl->name && a.decl->parameter_types == d.decl->parameter_types &&
            a.decl->declaring_type.substr(a.decl->declaring_type.rfind('.') + 1) ==
                d.decl->declaring_type.substr(d.decl->declaring_type.rfind('.') + 1)) {
          out.renames.emplace_back(d.id, a.id);
          used_d.insert(d.id);
          used_a.insert(a.id);
          break;
        }
      }
    }
  }
  // Anything left over in a renamed file may still carry its old class name.
  for (const auto& fp : pairs) {
    if (fp.diff.status != git::FileStatus::Renamed) continue;
    for (const auto& d : deleted) {
      if (d.id.file_path != fp.old_side.path || used_d.count(d.id)) continue;
      const MethodRef* only = nullptr;
      int hits = 0;
      for (const auto& a : added) {
        if (a.id.file_path != fp.new_side.path || used_a.count(a.id)) continue;
        if (a.decl->name == d.decl->name && a.decl->parameter_types == d.decl->parameter_types) {
          only = &a;
          ++hits;
        }
      }
      if (hits == 1) {
        out.renames.emplace_back(d.id, only->id);
        used_d.insert(d.id);
        used_a.insert(only->id);
      }
    }
  }

  std::vector<MethodRef> rest_d, rest_a;
  for (const auto& d : deleted)
    if (!used_d.count(d.id)) rest_d.push_back(d);
  for (const auto& a : added)
    if (!used_a.count(a.id)) rest_a.push_back(a);
  match_by_body(rest_d, rest_a, threshold, out.renames);

  out.changes.assign(changes.begin(), changes.end());
  return out;
}

void analyze_history(const git::Repository& repo, const std::vector<CommitRecord>& commits,
                     double threshold, std::vector<std::vector<MethodChange>>& changes,
                     RenameMap& renames, std::size_t& unparsable) {
  git::BlobReader blobs(repo);
  changes.clear();
  changes.reserve(commits.size());
  for (std::size_t k = 0; k < commits.size(); ++k) {
    auto analysis = analyze_commit(repo, blobs, commits[k], threshold, unparsable);
    changes.push_back(std::move(analysis.changes));
    for (auto& [from, to] : analysis.renames) renames.add(k, from, to);
  }
}

// ---- cache serialization ----

json identity_json(const MethodIdentity& id) { return json::array({id.file_path, id.signature}); }

MethodIdentity identity_from(const json& j) {
  return MethodIdentity{j.at(0).get<std::string>(), j.at(1).get<std::string>()};
}

json cache_to_json(const ChangeCache& c) {
  json j;
  j["format_version"] = c.format_version;
  j["repo_root"] = c.repo_root;
  j["head"] = c.head;
  j["max_commits"] = c.max_commits ? json(*c.max_commits) : json(nullptr);
  j["rename_threshold"] = c.rename_threshold;
  j["merge_commits_skipped"] = c.merge_commits_skipped;
  j["unparsable_files"] = c.unparsable_files;
  json commits = json::array();
  for (std::size_t k = 0; k < c.commits.size(); ++k) {
    const auto& cr = c.commits[k];
    json changes = json::array();
    if (k < c.changes.size()) {
      for (const auto& ch : c.changes[k]) {
        changes.push_back({ch.old_method ? identity_json(*ch.old_method) : json(nullptr),
                           ch.new_method ? identity_json(*ch.new_method) : json(nullptr),
                           ch.changed});
      }
    }
    commits.push_back({{"id", cr.id},
                       {"timestamp", cr.timestamp},
                       {"parents", cr.parent_count},
                       {"message", cr.message},
                       {"changes", std::move(changes)}});
  }
  j["commits"] = std::move(commits);
  json renames = json::array();
  for (const auto& r : c.renames.records())
    renames.push_back({r.commit_index, identity_json(r.from), identity_json(r.to)});
  j["renames"] = std::move(renames);
  return j;
}

ChangeCache cache_from_json(const json& j) {
  ChangeCache c;
  c.format_version = j.at("format_version").get<int>();
  c.repo_root = j.at("repo_root").get<std::string>();
  c.head = j.at("head").get<std::string>();
  if (!j.at("max_commits").is_null()) c.max_commits = j.at("max_commits").get<std::size_t>();
  c.rename_threshold = j.at("rename_threshold").get<double>();
  c.merge_commits_skipped = j.at("merge_commits_skipped").get<std::size_t>();
  c.unparsable_files = j.at("unparsable_files").get<std::size_t>();
  for (const auto& cj : j.at("commits")) {
    CommitRecord cr;
    cr.id = cj.at("id").get<std::string>();
    cr.timestamp = cj.at("timestamp").get<std::int64_t>();
    cr.parent_count = cj.at("parents").get<std::size_t>();
    cr.message = cj.at("message").get<std::string>();
    std::vector<MethodChange> changes;
    for (const auto& ch : cj.at("changes")) {
      MethodChange mc;
      if (!ch.at(0).is_null()) mc.old_method = identity_from(ch.at(0));
      if (!ch.at(1).is_null()) mc.new_method = identity_from(ch.at(1));
      mc.changed = ch.at(2).get<bool>();
      changes.push_back(std::move(mc));
    }
    c.commits.push_back(std::move(cr));
    c.changes.push_back(std::move(changes));
  }
  for (const auto& r : j.at("renames"))
    c.renames.add(r.at(0).get<std::size_t>(), identity_from(r.at(1)), identity_from(r.at(2)));
  return c;
}

/// Advisory exclusive lock held for the lifetime of the object.
class DirLock {
 public:
  explicit DirLock(const fs::path& file) {
    fd_ = ::open(file.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ >= 0) ::flock(fd_, LOCK_EX);
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace

std::vector<CommitRecord> enumerate_commits(const fs::path& repo_path,
                                            std::optional<std::size_t> max_commits,
                                            std::size_t* merges_skipped) {
  auto repo = git::Repository::open(repo_path);
  repo.head();  // EmptyRepository on unborn HEAD
  std::string out =
      repo.run({"log", "--first-parent", "--format=%H%x1f%P%x1f%ct%x1f%B%x1e", "HEAD"});
  std::vector<CommitRecord> commits;
  std::size_t merges = 0;
  for (const auto& rec : split(out, '\x1e')) {
    std::string r = trim(rec);
    if (r.empty()) continue;
    auto fields = split(r, '\x1f');
    if (fields.size() < 4) throw Error(ErrorKind::GitFailure, "unexpected log record");
    CommitRecord c;
    c.id = trim(fields[0]);
    std::istringstream parents(fields[1]);
    std::string p;
    while (parents >> p) ++c.parent_count;
    c.timestamp = std::stoll(fields[2]);
    c.message = trim(fields[3]);
    if (c.parent_count > 1) {
      ++merges;
      continue;
    }
    commits.push_back(std::move(c));
  }
  std::reverse(commits.begin(), commits.end());
  if (max_commits && commits.size() > *max_commits)
    commits.erase(commits.begin(), commits.end() - static_cast<std::ptrdiff_t>(*max_commits));
  if (merges_skipped) *merges_skipped = merges;
  return commits;
}

std::vector<MethodChange> extract_method_changes(const CommitRecord& commit,
                                                 const fs::path& repo_path) {
  auto repo = git::Repository::open(repo_path);
  git::BlobReader blobs(repo);
  std::size_t unparsable = 0;
  return analyze_commit(repo, blobs, commit, 0.75, unparsable).changes;
}

RenameMap build_rename_map(const std::vector<CommitRecord>& commits, const fs::path& repo_path,
                           double threshold) {
  auto repo = git::Repository::open(repo_path);
  std::vector<std::vector<MethodChange>> changes;
  RenameMap renames;
  std::size_t unparsable = 0;
  analyze_history(repo, commits, threshold, changes, renames, unparsable);
  return renames;
}

std::vector<ChangeEvent> replay_changes(const std::vector<CommitRecord>& commits,
                                        const std::vector<std::vector<MethodChange>>& changes,
                                        const RenameMap& renames,
                                        const std::set<MethodIdentity>& current_methods,
                                        std::size_t* dropped) {
  std::vector<ChangeEvent> events;
  std::size_t seq = 0, lost = 0;
  for (std::size_t k = 0; k < commits.size() && k < changes.size(); ++k) {
    std::set<MethodIdentity> touched;
    for (const auto& c : changes[k]) {
      // Post-images already reflect renames made by this commit.
      MethodIdentity id = c.new_method ? renames.resolve_from(*c.new_method, k + 1).identity
                                       : renames.resolve_from(*c.old_method, k).identity;
      if (current_methods.count(id))
        touched.insert(std::move(id));
      else
        ++lost;
    }
    for (const auto& id : touched)
      events.push_back(ChangeEvent{commits[k].id, seq++, id, EventKind::Edit});
  }
  if (dropped) *dropped = lost;
  return events;
}

std::set<MethodIdentity> current_method_identities(const fs::path& repo_root) {
  std::set<MethodIdentity> ids;
  for (const auto& rel : list_java_files(repo_root)) {
    std::ifstream in(repo_root / rel, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      auto file = java::JavaFile::parse(ss.str());
      for (const auto& m : file.methods()) ids.insert(MethodIdentity{rel, m.signature});
    } catch (const Error&) {
    }
  }
  return ids;
}

fs::path default_cache_dir(const fs::path& repo_path) {
  return git::Repository::open(repo_path).common_dir() / "loglift";
}

fs::path cache_file_path(const fs::path& cache_dir, std::optional<std::size_t> max_commits) {
  std::string name = "changes-v" + std::to_string(ChangeCache::kFormatVersion) + "-" +
                     (max_commits ? std::to_string(*max_commits) : std::string("all")) + ".json";
  return cache_dir / name;
}

void write_change_cache(const fs::path& file, const ChangeCache& cache) {
  std::error_code ec;
  fs::create_directories(file.parent_path(), ec);
  fs::path tmp = file;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
    out << cache_to_json(cache).dump();
    if (!out) throw Error(ErrorKind::Io, "cannot write " + tmp.string());
  }
  fs::rename(tmp, file, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::Io, "cannot replace " + file.string());
  }
}

std::optional<ChangeCache> read_change_cache(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    return cache_from_json(j);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

MineResult mine(const fs::path& repo_path, const MineOptions& options) {
  auto repo = git::Repository::open(repo_path);
  return mine(repo_path, options, current_method_identities(repo.root()));
}

MineResult mine(const fs::path& repo_path, const MineOptions& options,
                const std::set<MethodIdentity>& current_methods) {
  if (options.max_commits && *options.max_commits == 0)
    throw Error(ErrorKind::InvalidConfig, "max_commits must be positive");
  auto repo = git::Repository::open(repo_path);
  MineResult result;
  result.repo_root = repo.root().string();
  result.head = repo.head();

  fs::path dir = options.cache_dir ? *options.cache_dir : repo.common_dir() / "loglift";
  fs::path file = cache_file_path(dir, options.max_commits);

  std::optional<ChangeCache> cache;
  std::optional<DirLock> lock;
  if (options.use_cache) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    lock.emplace(dir / "lock");
    cache = read_change_cache(file);
    if (cache && !(cache->format_version == ChangeCache::kFormatVersion &&
                   cache->repo_root == result.repo_root && cache->head == result.head &&
                   cache->max_commits == options.max_commits &&
                   cache->rename_threshold == options.rename_threshold &&
                   cache->changes.size() == cache->commits.size()))
      cache.reset();
  }

  if (cache) {
    result.diagnostics.cache_hit = true;
  } else {
    cache.emplace();
    cache->repo_root = result.repo_root;
    cache->head = result.head;
    cache->max_commits = options.max_commits;
    cache->rename_threshold = options.rename_threshold;
    cache->commits =
        enumerate_commits(repo.root(), options.max_commits, &cache->merge_commits_skipped);
    analyze_history(repo, cache->commits, options.rename_threshold, cache->changes,
                    cache->renames, cache->unparsable_files);
    if (options.use_cache) {
      try {
        write_change_cache(file, *cache);
      } catch (const Error&) {
        // An unwritable cache only costs time on the next run.
      }
    }
  }

  result.commits = std::move(cache->commits);
  result.changes = std::move(cache->changes);
  result.renames = std::move(cache->renames);
  result.diagnostics.commits_analyzed = result.commits.size();
  result.diagnostics.merge_commits_skipped = cache->merge_commits_skipped;
  result.diagnostics.unparsable_files = cache->unparsable_files;
  result.diagnostics.renames = result.renames.size();
  for (const auto& c : result.changes) result.diagnostics.raw_changes += c.size();
  result.events = replay_changes(result.commits, result.changes, result.renames, current_methods,
                                 &result.diagnostics.events_dropped);
  return result;
}

}  // namespace loglift
