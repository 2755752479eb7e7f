#include "cocoon/conformance.hpp"

#include <fnmatch.h>
#include <sys/wait.h>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "cocoon/lattice.hpp"
#include "cocoon/transform/transformer.hpp"

#ifndef COCOON_CXX
#define COCOON_CXX "c++"
#endif
#ifndef COCOON_INCLUDE_DIR
#define COCOON_INCLUDE_DIR "include"
#endif

namespace cocoon::conformance {

namespace {

constexpr const char* kSuffix = ".cocoon.cpp";

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string first_line_with(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.find(needle) != std::string::npos) return line;
  return "";
}

std::string first_diff(const std::string& got, const std::string& want) {
  std::istringstream g(got), w(want);
  std::string lg, lw;
  for (int n = 1;; ++n) {
    bool hg = static_cast<bool>(std::getline(g, lg));
    bool hw = static_cast<bool>(std::getline(w, lw));
    if (!hg && !hw) return "transcripts differ in trailing whitespace";
    if (!hg || !hw || lg != lw)
      return "transcript line " + std::to_string(n) + ": got '" + (hg ? lg : "<eof>") + "', expected '" +
             (hw ? lw : "<eof>") + "'";
  }
}

}  // namespace

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw HarnessError("cannot read " + p.string());
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw HarnessError("cannot write " + p.string());
}

int run_command(const std::string& cmd, std::string* output) {
  FILE* pipe = ::popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) throw HarnessError("cannot start: " + cmd);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = ::pclose(pipe);
  if (output) *output = std::move(out);
  if (status == -1) throw HarnessError("cannot wait for: " + cmd);
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

CompileExpectation parse_expectation(const fs::path& program) {
  CompileExpectation e;
  e.program_path = program;
  std::string file = program.filename().string();
  if (file.size() <= std::string(kSuffix).size() || !file.ends_with(kSuffix))
    throw HarnessError(program.string() + ": corpus programs are named NAME" + kSuffix);
  e.name = file.substr(0, file.size() - std::string(kSuffix).size());

  std::istringstream in(read_file(program));
  std::string line;
  bool have_expect = false;
  while (std::getline(in, line)) {
    if (!line.starts_with("//")) break;
    std::string body = trim(line.substr(2));
    auto colon = body.find(':');
    std::string key = colon == std::string::npos ? "" : body.substr(0, colon);
    std::string val = colon == std::string::npos ? "" : trim(body.substr(colon + 1));
    if (key == "expect") {
      have_expect = true;
      if (val == "accept") {
        e.accept = true;
      } else if (val.starts_with("reject ") && trim(val.substr(7)).starts_with("E-")) {
        e.accept = false;
        e.category = trim(val.substr(7));
      } else {
        throw HarnessError(program.string() + ": bad expectation '" + val + "'");
      }
    } else if (key == "policies") {
      e.policies = val;
    } else if (key == "args") {
      e.args = val;
    } else {
      e.notes += (e.notes.empty() ? "" : " ") + body;
    }
  }
  if (!have_expect) throw HarnessError(program.string() + ": missing '// expect:' header");
  fs::path transcript = program.parent_path() / (e.name + ".expected");
  if (e.accept && fs::exists(transcript)) e.expected_output = read_file(transcript);
  return e;
}

std::vector<CompileExpectation> load_corpus(const fs::path& dir, const std::string& filter) {
  if (!fs::is_directory(dir)) throw HarnessError(dir.string() + ": not a directory");
  std::vector<CompileExpectation> out;
  for (const auto& ent : fs::directory_iterator(dir)) {
    std::string file = ent.path().filename().string();
    if (!ent.is_regular_file() || !file.ends_with(kSuffix)) continue;
    std::string name = file.substr(0, file.size() - std::string(kSuffix).size());
    if (!filter.empty() && ::fnmatch(filter.c_str(), name.c_str(), 0) != 0) continue;
    out.push_back(parse_expectation(ent.path()));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

Toolchain default_toolchain() {
  Toolchain tc;
  tc.cxx = COCOON_CXX;
  tc.include_dir = COCOON_INCLUDE_DIR;
  tc.work_dir = fs::temp_directory_path() / "cocoon-conformance";
  return tc;
}

std::string first_category(const std::string& compiler_output) {
  static const std::regex code(R"(\bE-[A-Z]+(-[A-Z]+)*)");
  std::istringstream in(compiler_output);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("error") == std::string::npos) continue;
    std::smatch m;
    if (std::regex_search(line, m, code)) return m.str();
  }
  return "E-COMPILE";
}

Outcome run_entry(const CompileExpectation& e, const Toolchain& tc) {
  Outcome o;
  o.name = e.name;
  o.expected = e.expected_verdict();
  try {
    fs::path dir = tc.work_dir / e.name;
    fs::create_directories(dir);
    auto family = lattice::generate_lattice(lattice::split_policy_list(e.policies));
    write_file(dir / "cocoon_labels.hpp", lattice::emit_header(family));

    transform::TransformOptions opts;
    opts.filename = e.program_path.string();
    auto tr = transform::transform_source(read_file(e.program_path), opts);
    if (!tr.ok()) {
      o.verdict = "reject " + tr.diagnostics.front().code;
      o.detail = transform::format_diagnostic(e.program_path.filename().string(), tr.diagnostics.front());
    } else {
      fs::path cpp = dir / (e.name + ".cpp");
      fs::path exe = dir / e.name;
      write_file(cpp, tr.output);
      std::string cmd = tc.cxx + " " + tc.flags + " -I" + quote(tc.include_dir) + " -I" + quote(dir.string()) + " " +
                        quote(cpp.string());
      cmd += e.accept ? " -o " + quote(exe.string()) : " -fsyntax-only";
      std::string out;
      int rc = run_command(cmd, &out);
      if (rc == 127) throw HarnessError("compiler not found: " + tc.cxx);
      if (rc != 0) {
        o.verdict = "reject " + first_category(out);
        o.detail = first_line_with(out, "error");
      } else {
        o.verdict = "accept";
        if (e.accept) {
          std::string run = "timeout " + std::to_string(tc.run_timeout_s) + " " + quote(exe.string()) + " " + e.args;
          FILE* pipe = ::popen((run + " 2>/dev/null").c_str(), "r");
          if (!pipe) throw HarnessError("cannot run " + exe.string());
          std::string got;
          char buf[4096];
          std::size_t n;
          while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) got.append(buf, n);
          int st = ::pclose(pipe);
          int code = WIFEXITED(st) ? WEXITSTATUS(st) : 128 + WTERMSIG(st);
          if (code != 0) {
            o.verdict = "accept, exit " + std::to_string(code);
            o.detail = "program exited with status " + std::to_string(code);
          } else if (e.expected_output && got != *e.expected_output) {
            o.verdict = "accept, transcript mismatch";
            o.detail = first_diff(got, *e.expected_output);
          }
        }
      }
    }
    o.pass = o.verdict == o.expected;
  } catch (const std::exception& ex) {
    o.verdict = "error";
    o.harness_error = true;
    o.pass = false;
    o.detail = ex.what();
  }
  return o;
}

bool Report::all_pass() const {
  return std::all_of(outcomes.begin(), outcomes.end(), [](const Outcome& o) { return o.pass; });
}

bool Report::any_harness_error() const {
  return std::any_of(outcomes.begin(), outcomes.end(), [](const Outcome& o) { return o.harness_error; });
}

std::string Report::text() const {
  std::ostringstream s;
  std::size_t passed = 0;
  for (const auto& o : outcomes) {
    passed += o.pass;
    s << (o.pass ? "PASS " : "FAIL ") << o.name << ": " << o.verdict;
    if (!o.pass) s << " (expected " << o.expected << ")";
    s << "\n";
    if (!o.pass && !o.detail.empty()) s << "     " << o.detail << "\n";
  }
  s << passed << "/" << outcomes.size() << " expectations met\n";
  return s.str();
}

std::string Report::summary() const {
  std::ostringstream s;
  for (const auto& o : outcomes)
    s << o.name << '\t' << o.verdict << '\t' << o.expected << '\t' << (o.pass ? "pass" : "fail") << '\n';
  return s.str();
}

Report run_corpus(const fs::path& dir, const Toolchain& tc, const std::string& filter, unsigned jobs) {
  auto entries = load_corpus(dir, filter);
  Report r;
  r.outcomes.resize(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < entries.size();) r.outcomes[i] = run_entry(entries[i], tc);
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < std::max(1u, jobs); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return r;
}

}  // namespace cocoon::conformance
