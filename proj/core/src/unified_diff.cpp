// SPDX-License-Identifier: Apache-2.0

#include "loglift/unified_diff.hpp"

#include <algorithm>
#include <vector>

namespace loglift {

namespace {

enum class Op { Equal, Delete, Insert };

struct Edit {
  Op op;
  std::size_t a;  // line index in before (Equal, Delete)
  std::size_t b;  // line index in after (Equal, Insert)
};

// Lines keep their terminator so a missing final newline counts as a difference.
std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start + 1));
    start = nl + 1;
  }
  return lines;
}

// Myers' greedy shortest edit script over a[a0, a1) and b[b0, b1).
void myers(const std::vector<std::string_view>& a, std::size_t a0, std::size_t a1,
           const std::vector<std::string_view>& b, std::size_t b0, std::size_t b1,
           std::vector<Edit>& out) {
  const long n = static_cast<long>(a1 - a0);
  const long m = static_cast<long>(b1 - b0);
  const long max = n + m;
  const long off = max + 1;
  std::vector<long> v(static_cast<std::size_t>(2 * max + 3), 0);
  std::vector<std::vector<long>> trace;
  long final_d = 0;
  for (long d = 0; d <= max; ++d) {
    trace.push_back(v);
    bool done = false;
    for (long k = -d; k <= d; k += 2) {
      long x;
      if (k == -d || (k != d && v[off + k - 1] < v[off + k + 1]))
        x = v[off + k + 1];
      else
        x = v[off + k - 1] + 1;
      long y = x - k;
      while (x < n && y < m && a[a0 + x] == b[b0 + y]) ++x, ++y;
      v[off + k] = x;
      if (x >= n && y >= m) {
        done = true;
        break;
      }
    }
    if (done) {
      final_d = d;
      break;
    }
  }

  std::vector<Edit> rev;
  long x = n, y = m;
  for (long d = final_d; d > 0; --d) {
    const auto& pv = trace[static_cast<std::size_t>(d)];
    const long k = x - y;
    long pk;
    if (k == -d || (k != d && pv[off + k - 1] < pv[off + k + 1]))
      pk = k + 1;
    else
      pk = k - 1;
    const long px = pv[off + pk];
    const long py = px - pk;
    while (x > px && y > py) {
      --x, --y;
      rev.push_back({Op::Equal, a0 + x, b0 + y});
    }
    if (x == px) {
      --y;
      rev.push_back({Op::Insert, a0 + x, b0 + y});
    } else {
      --x;
      rev.push_back({Op::Delete, a0 + x, b0 + y});
    }
  }
  while (x > 0 && y > 0) {
    --x, --y;
    rev.push_back({Op::Equal, a0 + x, b0 + y});
  }
  out.insert(out.end(), rev.rbegin(), rev.rend());
}

std::vector<Edit> diff_lines(const std::vector<std::string_view>& a,
                             const std::vector<std::string_view>& b) {
  std::size_t pre = 0;
  while (pre < a.size() && pre < b.size() && a[pre] == b[pre]) ++pre;
  std::size_t suf = 0;
  while (suf < a.size() - pre && suf < b.size() - pre &&
         a[a.size() - 1 - suf] == b[b.size() - 1 - suf])
    ++suf;
  std::vector<Edit> edits;
  for (std::size_t i = 0; i < pre; ++i) edits.push_back({Op::Equal, i, i});
  myers(a, pre, a.size() - suf, b, pre, b.size() - suf, edits);
  for (std::size_t i = suf; i > 0; --i)
    edits.push_back({Op::Equal, a.size() - i, b.size() - i});
  return edits;
}

std::string range(std::size_t start, std::size_t count) {
  // 1-based start; an empty range names the line before it.
  std::size_t shown = count == 0 ? start : start + 1;
  if (count == 1) return std::to_string(shown);
  return std::to_string(shown) + "," + std::to_string(count);
}

void put_line(std::string& out, char tag, std::string_view line) {
  out += tag;
  out.append(line);
  if (line.empty() || line.back() != '\n') out += "\n\\ No newline at end of file\n";
}

}  // namespace

std::string unified_diff(const std::string& path, std::string_view before, std::string_view after,
                         int context) {
  if (before == after) return {};
  const auto a = split_lines(before);
  const auto b = split_lines(after);
  const auto edits = diff_lines(a, b);
  const auto ctx = static_cast<std::size_t>(std::max(context, 0));

  std::string out = "--- a/" + path + "\n+++ b/" + path + "\n";
  std::size_t i = 0;
  while (i < edits.size()) {
    if (edits[i].op == Op::Equal) {
      ++i;
      continue;
    }
    // Extend the hunk while the next change is within 2*ctx equal lines.
    std::size_t first = i >= ctx ? i - ctx : 0;
    std::size_t last = i;  // last change index
    std::size_t j = i;
    while (j < edits.size()) {
      if (edits[j].op != Op::Equal) {
        last = j;
        ++j;
        continue;
      }
      std::size_t run = j;
      while (run < edits.size() && edits[run].op == Op::Equal) ++run;
      if (run < edits.size() && run - j <= 2 * ctx) {
        j = run;
        continue;
      }
      break;
    }
    std::size_t end = std::min(edits.size(), last + 1 + ctx);
    // Leading context consists only of Equal edits.
    while (first < i && edits[first].op != Op::Equal) ++first;

    std::size_t a_start = 0, b_start = 0, a_count = 0, b_count = 0;
    bool a_set = false, b_set = false;
    for (std::size_t k = first; k < end; ++k) {
      const auto& e = edits[k];
      if (e.op != Op::Insert) {
        if (!a_set) a_start = e.a, a_set = true;
        ++a_count;
      }
      if (e.op != Op::Delete) {
        if (!b_set) b_start = e.b, b_set = true;
        ++b_count;
      }
    }
    if (!a_set) a_start = edits[first].a;
    if (!b_set) b_start = edits[first].b;
    out += "@@ -" + range(a_start, a_count) + " +" + range(b_start, b_count) + " @@\n";
    for (std::size_t k = first; k < end; ++k) {
      const auto& e = edits[k];
      switch (e.op) {
        case Op::Equal: put_line(out, ' ', a[e.a]); break;
        case Op::Delete: put_line(out, '-', a[e.a]); break;
        case Op::Insert: put_line(out, '+', b[e.b]); break;
      }
    }
    i = end;
  }
  return out;
}

std::string emit_patch(const std::map<std::string, std::string>& originals,
                       const std::map<std::string, std::string>& patched) {
  std::string out;
  for (const auto& [path, before] : originals) {
    auto it = patched.find(path);
    if (it == patched.end()) continue;
    out += unified_diff(path, before, it->second);
  }
  return out;
}

}  // namespace loglift
