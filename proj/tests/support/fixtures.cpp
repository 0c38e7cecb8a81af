// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "loglift/git.hpp"

namespace fs = std::filesystem;

namespace loglift::testing {

TempDir::TempDir() {
  static std::mt19937_64 rng{std::random_device{}()};
  const auto base = fs::temp_directory_path();
  for (;;) {
    auto candidate = base / ("loglift-test-" + std::to_string(rng()));
    std::error_code ec;
    if (fs::create_directory(candidate, ec)) {
      path_ = fs::canonical(candidate);
      return;
    }
  }
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GitRepo::GitRepo(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
  git({"init", "-q"});
}

std::string GitRepo::git(const std::vector<std::string>& args) const {
  std::vector<std::string> argv{"git",
                                "-c", "user.name=Fixture",
                                "-c", "user.email=fixture@example.com",
                                "-c", "init.defaultBranch=main",
                                "-c", "commit.gpgsign=false",
                                "-c", "core.hooksPath=/dev/null"};
  argv.insert(argv.end(), args.begin(), args.end());
  const std::string date = std::to_string(clock_) + " +0000";
  auto r = git::run_process(argv, root_,
                            {{"GIT_AUTHOR_DATE", date},
                             {"GIT_COMMITTER_DATE", date},
                             {"GIT_CONFIG_NOSYSTEM", "1"},
                             {"GIT_CONFIG_GLOBAL", "/dev/null"}});
  if (r.exit_code != 0) throw std::runtime_error("git failed: " + r.err);
  return r.out;
}

void GitRepo::write(const std::string& rel, const std::string& content) const {
  write_file(root_ / rel, content);
}

std::string GitRepo::read(const std::string& rel) const { return read_file(root_ / rel); }

void GitRepo::remove(const std::string& rel) const { fs::remove(root_ / rel); }

std::string GitRepo::commit(const std::string& message) {
  clock_ += 60;
  git({"add", "-A"});
  git({"commit", "-q", "--allow-empty", "-m", message});
  auto head = git({"rev-parse", "HEAD"});
  while (!head.empty() && (head.back() == '\n' || head.back() == '\r')) head.pop_back();
  return head;
}

// ---- hot/cold ----

std::string hot_cold_source(int hot_counter, int filler_counter, const std::string& hot_call,
                            const std::string& cold_call) {
  std::ostringstream s;
  s << "package demo;\n"
    << "\n"
    << "import java.util.logging.Level;\n"
    << "import java.util.logging.Logger;\n"
    << "\n"
    << "public class Service {\n"
    << "  private static final Logger LOGGER = Logger.getLogger(\"demo\");\n"
    << "\n"
    << "  void hot() {\n"
    << "    int counter = " << hot_counter << ";\n"
    << "    " << hot_call << "\n"
    << "  }\n"
    << "\n"
    << "  void cold() {\n"
    << "    " << cold_call << "\n"
    << "  }\n"
    << "\n"
    << "  int filler() {\n"
    << "    return " << filler_counter << ";\n"
    << "  }\n"
    << "}\n";
  return s.str();
}

void build_hot_cold_history(GitRepo& repo) {
  int hot = 0, filler = 0;
  repo.write("src/demo/Service.java", hot_cold_source(hot, filler));
  repo.commit("Add service");
  for (int i = 0; i < 9; ++i) {
    repo.write("src/demo/Service.java", hot_cold_source(hot, ++filler));
    repo.commit("Tune filler " + std::to_string(filler));
  }
  for (int i = 0; i < 10; ++i) {
    repo.write("src/demo/Service.java", hot_cold_source(++hot, filler));
    repo.commit("Rework hot path " + std::to_string(hot));
  }
}

// ---- flip fixtures ----

namespace {

constexpr const char* kMarker = "// <-";

int marker_line(const std::string& source) {
  auto pos = source.find(kMarker);
  if (pos == std::string::npos) throw std::logic_error("fixture without target marker");
  int line = 1;
  for (std::size_t i = 0; i < pos; ++i)
    if (source[i] == '\n') ++line;
  return line;
}

// hot() gets six edits so that, with decay off, lo = 0 and hi = 6 and each
// extra edit moves a method one band up over the seven JUL levels.
std::string flip_class(const std::string& name, const std::string& extends,
                       const std::string& members) {
  std::string s = "import java.util.logging.Level;\nimport java.util.logging.Logger;\n\n";
  s += "class " + name + (extends.empty() ? "" : " extends " + extends) + " {\n";
  s += "  static final Logger logger = Logger.getLogger(\"flip\");\n";
  s += "  boolean ready;\n";
  s += "  int count;\n";
  s += "\n";
  s += "  void hot() {\n";
  s += "    logger.severe(\"steady\");\n";
  s += "  }\n";
  s += "\n";
  s += members;
  s += "}\n";
  return s;
}

FlipFixture make(Heuristic h, const std::string& name, std::string source,
                 std::map<std::string, std::size_t> edits) {
  FlipFixture f;
  f.heuristic = h;
  f.file_path = "flip/" + name + ".java";
  f.source = std::move(source);
  f.edits = std::move(edits);
  f.target_line = marker_line(f.source);
  return f;
}

}  // namespace

std::vector<FlipFixture> flip_fixtures() {
  std::vector<FlipFixture> out;

  out.push_back(make(Heuristic::WS, "FlipWs",
                     flip_class("FlipWs", "",
                                "  void cold() {\n"
                                "    logger.fine(\"control\");\n"
                                "    logger.config(\"settings loaded\"); // <-\n"
                                "  }\n"),
                     {{"FlipWs#hot()", 6}}));

  out.push_back(make(Heuristic::CTCH, "FlipCtch",
                     flip_class("FlipCtch", "",
                                "  void cold() {\n"
                                "    logger.fine(\"control\");\n"
                                "    try {\n"
                                "      count++;\n"
                                "    } catch (RuntimeException e) {\n"
                                "      count--;\n"
                                "      logger.fine(\"retry later\"); // <-\n"
                                "    }\n"
                                "  }\n"),
                     {{"FlipCtch#hot()", 6}}));

  out.push_back(make(Heuristic::IFS, "FlipIfs",
                     flip_class("FlipIfs", "",
                                "  void cold() {\n"
                                "    logger.fine(\"control\");\n"
                                "    if (ready) {\n"
                                "      logger.fine(\"ready now\"); // <-\n"
                                "    }\n"
                                "  }\n"),
                     {{"FlipIfs#hot()", 6}}));

  out.push_back(make(Heuristic::KEYL, "FlipKeyl",
                     flip_class("FlipKeyl", "",
                                "  void cold() {\n"
                                "    logger.fine(\"control\");\n"
                                "    logger.fine(\"connection failed\"); // <-\n"
                                "  }\n"),
                     {{"FlipKeyl#hot()", 6}}));

  out.push_back(make(Heuristic::CNDS, "FlipCnds",
                     flip_class("FlipCnds", "",
                                "  void cold() {\n"
                                "    logger.fine(\"control\");\n"
                                "    if (logger.isLoggable(Level.FINE)) {\n"
                                "      count++;\n"
                                "      logger.fine(\"details\"); // <-\n"
                                "    }\n"
                                "  }\n"),
                     {{"FlipCnds#hot()", 6}}));

  // warm() sits in the WARNING band: both statements are raised from INFO,
  // only the control carries a KEYR keyword. idle() anchors the range at 0.
  out.push_back(make(Heuristic::KEYR, "FlipKeyr",
                     flip_class("FlipKeyr", "",
                                "  void idle() {\n"
                                "    logger.finest(\"idle\");\n"
                                "  }\n"
                                "\n"
                                "  void warm() {\n"
                                "    logger.info(\"shutting down\");\n"
                                "    logger.info(\"retrying soon\"); // <-\n"
                                "  }\n"),
                     {{"FlipKeyr#hot()", 6}, {"FlipKeyr#warm()", 5}}));

  // Base#run() goes to FINEST, Child#run() to FINER: the override disagrees.
  {
    std::string src = flip_class("FlipInh", "",
                                 "  void run() {\n"
                                 "    logger.fine(\"base step\");\n"
                                 "  }\n");
    src +=
        "\n"
        "class FlipInhChild extends FlipInh {\n"
        "  void run() {\n"
        "    logger.fine(\"child step\"); // <-\n"
        "  }\n"
        "}\n";
    out.push_back(make(Heuristic::INH, "FlipInh", std::move(src),
                       {{"FlipInh#hot()", 6}, {"FlipInhChild#run()", 1}}));
  }

  out.push_back(make(Heuristic::TDIST, "FlipTdist",
                     flip_class("FlipTdist", "",
                                "  void cold() {\n"
                                "    logger.fine(\"control\");\n"
                                "    logger.info(\"heartbeat\"); // <-\n"
                                "  }\n"),
                     {{"FlipTdist#hot()", 6}}));
  return out;
}

SourceIndex index_fixture(const FlipFixture& fixture, const LevelScheme& scheme) {
  SourceIndex index;
  index_source(index, fixture.file_path, fixture.source, scheme);
  return index;
}

std::vector<ChangeEvent> fixture_events(const FlipFixture& fixture) {
  std::vector<ChangeEvent> events;
  for (const auto& [sig, n] : fixture.edits)
    for (std::size_t i = 0; i < n; ++i)
      events.push_back(ChangeEvent{"c" + std::to_string(events.size()), events.size(),
                                   MethodIdentity{fixture.file_path, sig}, EventKind::Edit});
  return events;
}

DoiConfig flip_doi() { return DoiConfig{1.0, 0.0}; }

HeuristicConfig all_heuristics_off() {
  HeuristicConfig c;
  c.ws_enabled = false;
  c.ctch = c.ifs = c.keyl = c.cnds = c.keyr = c.inh = false;
  c.tdist.reset();
  return c;
}

HeuristicConfig only(Heuristic h) {
  auto c = all_heuristics_off();
  switch (h) {
    case Heuristic::WS: c.ws_enabled = true; break;
    case Heuristic::CTCH: c.ctch = true; break;
    case Heuristic::IFS: c.ifs = true; break;
    case Heuristic::KEYL: c.keyl = true; break;
    case Heuristic::CNDS: c.cnds = true; break;
    case Heuristic::KEYR: c.keyr = true; break;
    case Heuristic::INH: c.inh = true; break;
    case Heuristic::TDIST: c.tdist = kFlipTdist; break;
  }
  return c;
}

// ---- extraction corpus ----

namespace {

struct StatementTemplate {
  std::string code;  // one line, no indentation
  ApiFlavor flavor;
  std::optional<std::string> level;
  std::string literals;
};

struct ContextTemplate {
  std::vector<std::string> before;  // lines before the statement
  std::vector<std::string> after;
  bool in_catch, first_in_branch, level_guarded;
};

std::vector<ContextTemplate> contexts() {
  return {
      {{"int k = 0;"}, {}, false, false, false},
      {{"try {", "  k();", "} catch (IllegalStateException e) {", "  int k = 1;"}, {"}"}, true,
       false, false},
      {{"if (ready) {"}, {"}"}, false, true, false},
      {{"if (ready) {", "  k();", "} else {"}, {"}"}, false, true, false},
      {{"if (LOG.isLoggable(Level.FINE) && ready) {", "  k();"}, {"}"}, false, false, true},
      {{"switch (mode) {", "  case 1:"}, {"    break;", "}"}, false, true, false},
      {{"try {", "  k();", "} catch (RuntimeException e) {", "  if (ready)"}, {"}"}, true, true,
       false},
  };
}

std::vector<StatementTemplate> jul_statements() {
  using A = ApiFlavor;
  return {
      {"LOG.info(\"Temperature has risen above 50 degrees.\");", A::Convenience, "INFO",
       "Temperature has risen above 50 degrees."},
      {"LOG.log(Level.FINER, DiagnosisMessages::systemHealthStatus);", A::LevelArgument, "FINER",
       ""},
      {"LOG.log(INFO, \"{0} main build action completed\", name);", A::LevelArgument, "INFO",
       "{0} main build action completed"},
      {"logger.severe(\"disk \" + name + \" failed\");", A::Convenience, "SEVERE", "disk  failed"},
      {"LOG.log(lvl, \"variable level\");", A::Unanalyzable, std::nullopt, "variable level"},
      {"LOG.log(Level.parse(\"WARNING\"), \"parsed level\");", A::LevelArgument, "WARNING",
       "parsed level"},
      {"auditLogger.fine(\"audit \" + name);", A::Convenience, "FINE", "audit "},
      {"LOG.log(levelFor(name), \"computed level\");", A::Unanalyzable, std::nullopt,
       "computed level"},
      {"LOGGER.config(\"Could not retrieve upstream node\");", A::Convenience, "CONFIG",
       "Could not retrieve upstream node"},
      {"LOG.log(Level.FINEST, \"trace\", e0);", A::LevelArgument, "FINEST", "trace"},
      {"log.log(\"WARNING\", \"quoted level\");", A::LevelArgument, "WARNING", "quoted level"},
  };
}

std::vector<StatementTemplate> slf4j_statements() {
  using A = ApiFlavor;
  return {
      {"log.debug(\"value {}\", name);", A::Convenience, "DEBUG", "value {}"},
      {"LOG.warn(\"queue almost full\");", A::Convenience, "WARN", "queue almost full"},
      {"logger.trace(\"enter\");", A::Convenience, "TRACE", "enter"},
      {"LOG.error(\"shutting down\", e0);", A::Convenience, "ERROR", "shutting down"},
      {"requestLogger.info(\"request \" + name);", A::Convenience, "INFO", "request "},
  };
}

Corpus make_corpus(Framework fw, const std::vector<StatementTemplate>& statements,
                   std::size_t context_limit) {
  Corpus corpus;
  corpus.framework = fw;
  const bool jul = fw == Framework::Jul;
  const auto ctxs = contexts();
  std::size_t file_no = 0;
  for (const auto& st : statements) {
    const std::string cls = std::string(jul ? "Jul" : "Slf") + "Case" + std::to_string(file_no++);
    const std::string path = std::string(jul ? "jul/" : "slf4j/") + cls + ".java";
    std::vector<std::string> lines;
    if (jul) {
      lines = {"import java.util.logging.Level;", "import java.util.logging.Logger;",
               "import static java.util.logging.Level.INFO;", ""};
    } else {
      lines = {"import org.slf4j.Logger;", "import org.slf4j.LoggerFactory;", ""};
    }
    lines.push_back("class " + cls + " {");
    if (jul) {
      lines.push_back("  private static final Logger LOG = Logger.getLogger(\"c\");");
      lines.push_back("  private static final Logger LOGGER = LOG;");
      lines.push_back("  private final Logger logger = LOG;");
      lines.push_back("  private final Logger log = LOG;");
      lines.push_back("  private final Logger auditLogger = Logger.getLogger(\"audit\");");
    } else {
      lines.push_back("  private static final Logger LOG = LoggerFactory.getLogger(\"c\");");
      lines.push_back("  private final Logger log = LOG;");
      lines.push_back("  private final Logger logger = LOG;");
      lines.push_back("  private final Logger requestLogger = LOG;");
    }
    lines.push_back("  boolean ready;");
    lines.push_back("  int mode;");
    lines.push_back("  String name = \"n\";");
    lines.push_back("  Exception e0 = null;");
    lines.push_back("  java.util.List<String> out = new java.util.ArrayList<>();");
    lines.push_back("");
    for (std::size_t c = 0; c < std::min(context_limit, ctxs.size()); ++c) {
      const auto& ctx = ctxs[c];
      lines.push_back("  void case" + std::to_string(c) + "(Object lvl) {");
      // Look-alikes that must not be detected.
      lines.push_back("    out.add(\"info\");");
      lines.push_back("    System.out.println(\"warning\");");
      std::string indent = "    ";
      for (const auto& b : ctx.before) lines.push_back(indent + b);
      std::string inner = indent;
      if (!ctx.before.empty()) inner += "  ";
      if (ctx.before.size() >= 2 && ctx.before.back().rfind("  case", 0) == 0) inner += "  ";
      if (!ctx.before.empty() && ctx.before.back().rfind("  if (ready)", 0) == 0) inner += "  ";
      lines.push_back(inner + st.code);
      LabeledStatement label;
      label.file_path = path;
      label.line = static_cast<int>(lines.size());
      label.flavor = st.flavor;
      label.level = st.level;
      label.message_literals = st.literals;
      label.in_catch = ctx.in_catch;
      label.first_in_branch = ctx.first_in_branch;
      label.level_guarded = ctx.level_guarded;
      corpus.manifest.push_back(label);
      if (st.flavor == ApiFlavor::Unanalyzable) ++corpus.variable_cases;
      for (const auto& a : ctx.after) lines.push_back(indent + a);
      lines.push_back("  }");
      lines.push_back("");
    }
    lines.push_back("  void k() {}");
    lines.push_back("  Level levelFor(String s) { return Level.INFO; }");
    lines.push_back("}");
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    corpus.files[path] = text;
  }
  return corpus;
}

}  // namespace

std::vector<Corpus> extraction_corpora() {
  return {make_corpus(Framework::Jul, jul_statements(), 7),
          make_corpus(Framework::Slf4j, slf4j_statements(), 7)};
}

// ---- bug focus ----

namespace {

std::string billing_source(int charge, int refund, int audit, int report) {
  std::ostringstream s;
  s << "import java.util.logging.Logger;\n"
    << "\n"
    << "class Billing {\n"
    << "  static final Logger LOGGER = Logger.getLogger(\"billing\");\n"
    << "\n"
    << "  void audit() {\n"
    << "    int v = " << audit << ";\n"
    << "    LOGGER.finer(\"audit entry\");\n"
    << "  }\n"
    << "\n"
    << "  void charge() {\n"
    << "    int v = " << charge << ";\n"
    << "    LOGGER.fine(\"charging card\");\n"
    << "  }\n"
    << "\n"
    << "  void refund() {\n"
    << "    int v = " << refund << ";\n"
    << "    LOGGER.fine(\"refund issued\");\n"
    << "  }\n"
    << "\n"
    << "  void report() {\n"
    << "    int v = " << report << ";\n"
    << "    LOGGER.finest(\"report row\");\n"
    << "  }\n"
    << "}\n";
  return s.str();
}

}  // namespace

void build_bug_history(GitRepo& repo) {
  int charge = 0, refund = 0, audit = 0, report = 0;
  auto step = [&](const std::string& message) {
    repo.write("Billing.java", billing_source(charge, refund, audit, report));
    repo.commit(message);
  };
  step("Add billing");
  ++charge, step("Fix rounding bug in charge");
  ++report, step("Tweak report layout");
  ++report, step("Tweak report columns");
  ++refund, step("Fixed refund overflow");
  ++report, step("Report totals");
  ++report, step("Report footer");
  ++audit, step("Audit trail");
  ++charge, step("Charge retries");
  ++charge, step("Charge limits");
}

}  // namespace loglift::testing
