#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cocoon::conformance {

namespace fs = std::filesystem;

// I/O or toolchain trouble, as opposed to a verdict mismatch.
class HarnessError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One corpus entry. Header comments of NAME.cocoon.cpp:
//   // expect: accept | reject E-CODE
//   // policies: a,b        (optional, default a,b)
//   // args: ...            (optional, command line for accepted programs)
// An accepted entry's transcript lives in NAME.expected next to it.
struct CompileExpectation {
  std::string name;
  fs::path program_path;
  bool accept = true;
  std::string category;  // for rejections
  std::optional<std::string> expected_output;
  std::string policies = "a,b";
  std::string args;
  std::string notes;

  std::string expected_verdict() const { return accept ? "accept" : "reject " + category; }
};

CompileExpectation parse_expectation(const fs::path& program);
// Entries sorted by name; filter is a shell glob on the name ("" = all).
std::vector<CompileExpectation> load_corpus(const fs::path& dir, const std::string& filter = "");

struct Toolchain {
  std::string cxx;          // compiler driver
  std::string include_dir;  // directory holding cocoon/*.hpp
  std::string flags = "-std=c++20 -O1";
  fs::path work_dir;        // per-entry scratch directories go here
  int run_timeout_s = 60;
};

// Compiler, headers and flags this harness was built with.
Toolchain default_toolchain();

struct Outcome {
  std::string name;
  std::string verdict;  // "accept", "reject E-CODE", "error"
  std::string expected;
  bool pass = false;
  bool harness_error = false;
  std::string detail;  // first diagnostic, transcript diff or harness error
};

// Category of the first categorized error in compiler output, or
// "E-COMPILE" when the failure carries no category.
std::string first_category(const std::string& compiler_output);

// Transforms, compiles and (for accepts) runs one entry.
Outcome run_entry(const CompileExpectation& e, const Toolchain& tc);

struct Report {
  std::vector<Outcome> outcomes;  // sorted by name

  bool all_pass() const;
  bool any_harness_error() const;
  std::string text() const;
  // One line per entry: name<TAB>verdict<TAB>expected<TAB>pass|fail
  std::string summary() const;
};

Report run_corpus(const fs::path& dir, const Toolchain& tc, const std::string& filter = "", unsigned jobs = 1);

// Runs a shell command; returns the exit status and fills *output with
// combined stdout and stderr.
int run_command(const std::string& cmd, std::string* output);

std::string read_file(const fs::path& p);
void write_file(const fs::path& p, const std::string& text);

}  // namespace cocoon::conformance
