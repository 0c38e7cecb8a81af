// SPDX-License-Identifier: Apache-2.0

#include "loglift/git.hpp"

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <csignal>
#include <cstring>
#include <map>
#include <mutex>

#include "loglift/error.hpp"

extern char** environ;

namespace fs = std::filesystem;

namespace loglift::git {

namespace {

void ignore_sigpipe() {
  static std::once_flag once;
  std::call_once(once, [] { std::signal(SIGPIPE, SIG_IGN); });
}

struct Pipe {
  int fd[2] = {-1, -1};
  Pipe() {
    if (::pipe2(fd, O_CLOEXEC) != 0) throw Error(ErrorKind::Io, "pipe failed");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fd[0] >= 0) ::close(fd[0]);
    fd[0] = -1;
  }
  void close_write() {
    if (fd[1] >= 0) ::close(fd[1]);
    fd[1] = -1;
  }
  int release_read() { return std::exchange(fd[0], -1); }
  int release_write() { return std::exchange(fd[1], -1); }
};

std::vector<std::string> build_environment(
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::map<std::string, std::string> vars;
  for (char** e = environ; e && *e; ++e) {
    std::string_view entry(*e);
    const auto eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    vars[std::string(entry.substr(0, eq))] = std::string(entry.substr(eq + 1));
  }
  for (const auto& [k, v] : overrides) vars[k] = v;
  std::vector<std::string> out;
  out.reserve(vars.size());
  for (const auto& [k, v] : vars) out.push_back(k + "=" + v);
  return out;
}

// Forks and execs argv with the given stdio descriptors (-1 leaves it closed
// to /dev/null). Returns the child pid.
int spawn(const std::vector<std::string>& argv, const fs::path& cwd,
          const std::vector<std::string>& envstrings, int in_fd, int out_fd, int err_fd) {
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);
  std::vector<char*> envp;
  for (const auto& e : envstrings) envp.push_back(const_cast<char*>(e.c_str()));
  envp.push_back(nullptr);
  const std::string dir = cwd.string();

  const pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorKind::Io, std::string("fork failed: ") + std::strerror(errno));
  if (pid == 0) {
    const int devnull = ::open("/dev/null", O_RDWR);
    ::dup2(in_fd >= 0 ? in_fd : devnull, 0);
    ::dup2(out_fd >= 0 ? out_fd : devnull, 1);
    ::dup2(err_fd >= 0 ? err_fd : devnull, 2);
    if (!dir.empty() && ::chdir(dir.c_str()) != 0) ::_exit(127);
    ::execvpe(args[0], args.data(), envp.data());
    ::_exit(127);
  }
  return pid;
}

int wait_child(int pid) {
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) return -1;
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string trim_newline(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

}  // namespace

ProcessResult run_process(const std::vector<std::string>& argv, const fs::path& cwd,
                          const std::vector<std::pair<std::string, std::string>>& env,
                          std::string_view input) {
  ignore_sigpipe();
  Pipe in;
  Pipe out;
  Pipe err;
  const int pid = spawn(argv, cwd, build_environment(env), in.fd[0], out.fd[1], err.fd[1]);
  in.close_read();
  out.close_write();
  err.close_write();

  ProcessResult result;
  std::size_t written = 0;
  if (input.empty()) in.close_write();
  char buf[65536];
  while (out.fd[0] >= 0 || err.fd[0] >= 0) {
    std::vector<pollfd> fds;
    if (in.fd[1] >= 0) fds.push_back({in.fd[1], POLLOUT, 0});
    if (out.fd[0] >= 0) fds.push_back({out.fd[0], POLLIN, 0});
    if (err.fd[0] >= 0) fds.push_back({err.fd[0], POLLIN, 0});
    if (::poll(fds.data(), fds.size(), -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (const auto& p : fds) {
      if (p.revents == 0) continue;
      if (p.fd == in.fd[1]) {
        const auto n = ::write(p.fd, input.data() + written, input.size() - written);
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 || written == input.size()) in.close_write();
        continue;
      }
      const auto n = ::read(p.fd, buf, sizeof buf);
      if (n > 0) {
        (p.fd == out.fd[0] ? result.out : result.err).append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || (errno != EINTR && errno != EAGAIN)) {
        if (p.fd == out.fd[0]) {
          out.close_read();
        } else {
          err.close_read();
        }
      }
    }
  }
  in.close_write();
  result.exit_code = wait_child(pid);
  return result;
}

Repository Repository::open(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    throw Error(ErrorKind::NotARepository, path.string() + " is not a directory");
  }
  const auto abs = fs::absolute(path);
  auto res = run_process({"git", "rev-parse", "--show-toplevel", "--git-common-dir"}, abs);
  if (res.exit_code != 0) {
    throw Error(ErrorKind::NotARepository, "no git repository at " + path.string());
  }
  const auto nl = res.out.find('\n');
  if (nl == std::string::npos) {
    throw Error(ErrorKind::NotARepository, "no work tree at " + path.string());
  }
  Repository repo;
  repo.root_ = fs::path(res.out.substr(0, nl)).lexically_normal();
  fs::path common = trim_newline(res.out.substr(nl + 1));
  if (common.is_relative()) common = abs / common;
  repo.common_dir_ = fs::weakly_canonical(common);
  return repo;
}

std::string Repository::head() const {
  auto res = run_process({"git", "rev-parse", "--verify", "-q", "HEAD^{commit}"}, root_);
  if (res.exit_code != 0) {
    throw Error(ErrorKind::EmptyRepository, "repository " + root_.string() + " has no commits");
  }
  return trim_newline(res.out);
}

std::string Repository::run(const std::vector<std::string>& args) const {
  std::vector<std::string> argv{"git", "-c", "core.quotePath=false"};
  argv.insert(argv.end(), args.begin(), args.end());
  auto res = run_process(argv, root_);
  if (res.exit_code != 0) {
    std::string cmd;
    for (const auto& a : args) cmd += " " + a;
    throw Error(ErrorKind::GitFailure, "git" + cmd + ": " + trim_newline(res.err));
  }
  return std::move(res.out);
}

BlobReader::BlobReader(const Repository& repo) {
  ignore_sigpipe();
  Pipe in;
  Pipe out;
  pid_ = spawn({"git", "cat-file", "--batch"}, repo.root(), build_environment({}), in.fd[0],
               out.fd[1], -1);
  in.close_read();
  out.close_write();
  to_child_ = in.release_write();
  from_child_ = out.release_read();
}

BlobReader::~BlobReader() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) wait_child(pid_);
}

bool BlobReader::fill() {
  char buf[65536];
  for (;;) {
    const auto n = ::read(from_child_, buf, sizeof buf);
    if (n > 0) {
      buffer_.append(buf, static_cast<std::size_t>(n));
      return true;
    }
    if (n == 0) return false;
    if (errno != EINTR) return false;
  }
}

std::string BlobReader::read_line() {
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    if (!fill()) throw Error(ErrorKind::GitFailure, "cat-file terminated unexpectedly");
  }
}

std::string BlobReader::read_exact(std::size_t n) {
  while (buffer_.size() < n) {
    if (!fill()) throw Error(ErrorKind::GitFailure, "cat-file terminated unexpectedly");
  }
  std::string out = buffer_.substr(0, n);
  buffer_.erase(0, n);
  return out;
}

std::optional<std::string> BlobReader::read(const std::string& spec) {
  const std::string request = spec + "\n";
  std::size_t written = 0;
  while (written < request.size()) {
    const auto n = ::write(to_child_, request.data() + written, request.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorKind::GitFailure, "cat-file write failed");
    }
    written += static_cast<std::size_t>(n);
  }
  const auto header = read_line();
  // "<sha> <type> <size>" or "<spec> missing"
  const auto last_space = header.rfind(' ');
  if (last_space == std::string::npos || header.ends_with(" missing") ||
      header.ends_with(" ambiguous")) {
    return std::nullopt;
  }
  const auto size = std::stoull(header.substr(last_space + 1));
  auto body = read_exact(size);
  read_exact(1);  // trailing LF
  return body;
}

namespace {

std::string unquote_path(std::string_view p) {
  while (!p.empty() && (p.back() == '\t' || p.back() == '\r')) p.remove_suffix(1);
  if (p.size() < 2 || p.front() != '"' || p.back() != '"') return std::string(p);
  std::string out;
  for (std::size_t i = 1; i + 1 < p.size(); ++i) {
    if (p[i] != '\\' || i + 2 >= p.size()) {
      out += p[i];
      continue;
    }
    const char c = p[++i];
    switch (c) {
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      default:
        if (c >= '0' && c <= '7' && i + 2 < p.size()) {
          out += static_cast<char>(std::stoi(std::string(p.substr(i, 3)), nullptr, 8));
          i += 2;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string strip_prefix(const std::string& path) {
  if (path.size() > 2 && (path.rfind("a/", 0) == 0 || path.rfind("b/", 0) == 0)) {
    return path.substr(2);
  }
  return path;
}

void parse_range(std::string_view text, int& start, int& count) {
  const auto comma = text.find(',');
  start = std::stoi(std::string(text.substr(0, comma)));
  count = comma == std::string_view::npos ? 1 : std::stoi(std::string(text.substr(comma + 1)));
}

}  // namespace

std::vector<FileDiff> parse_unified_diff(std::string_view text) {
  std::vector<FileDiff> files;
  int old_left = 0;
  int new_left = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;

    if (old_left > 0 || new_left > 0) {
      if (line.starts_with("-")) {
        --old_left;
        continue;
      }
      if (line.starts_with("+")) {
        --new_left;
        continue;
      }
      if (line.starts_with(" ")) {
        --old_left;
        --new_left;
        continue;
      }
      if (line.starts_with("\\")) continue;
      old_left = new_left = 0;
    }
    if (line.starts_with("\\")) continue;

    if (line.starts_with("diff --git ")) {
      files.emplace_back();
      // Fallback paths for diffs without ---/+++ lines (empty files, mode changes).
      const auto rest = line.substr(11);
      if (const auto sep = rest.find(" b/"); rest.starts_with("a/") && sep != std::string_view::npos) {
        files.back().old_path = std::string(rest.substr(2, sep - 2));
        files.back().new_path = std::string(rest.substr(sep + 3));
      }
      continue;
    }
    if (files.empty()) continue;
    auto& f = files.back();
    if (line.starts_with("new file mode")) {
      f.status = FileStatus::Added;
    } else if (line.starts_with("deleted file mode")) {
      f.status = FileStatus::Deleted;
    } else if (line.starts_with("rename from ")) {
      f.status = FileStatus::Renamed;
      f.old_path = unquote_path(line.substr(12));
    } else if (line.starts_with("rename to ")) {
      f.status = FileStatus::Renamed;
      f.new_path = unquote_path(line.substr(10));
    } else if (line.starts_with("--- ")) {
      const auto p = unquote_path(line.substr(4));
      if (p != "/dev/null") f.old_path = strip_prefix(p);
    } else if (line.starts_with("+++ ")) {
      const auto p = unquote_path(line.substr(4));
      if (p != "/dev/null") f.new_path = strip_prefix(p);
    } else if (line.starts_with("@@ -")) {
      const auto plus = line.find(" +", 4);
      const auto end = line.find(" @@", plus);
      if (plus == std::string_view::npos || end == std::string_view::npos) continue;
      Hunk h;
      parse_range(line.substr(4, plus - 4), h.old_start, h.old_count);
      parse_range(line.substr(plus + 2, end - plus - 2), h.new_start, h.new_count);
      old_left = h.old_count;
      new_left = h.new_count;
      f.hunks.push_back(h);
    }
  }
  for (auto& f : files) {
    if (f.status == FileStatus::Added) f.old_path.clear();
    if (f.status == FileStatus::Deleted) f.new_path.clear();
    if (f.status == FileStatus::Modified && f.old_path.empty()) f.old_path = f.new_path;
    if (f.status == FileStatus::Modified && f.new_path.empty()) f.new_path = f.old_path;
  }
  return files;
}

}  // namespace loglift::git
