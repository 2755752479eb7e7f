// conformance: compiles every corpus program and checks its expected verdict.
#include <CLI11.hpp>

#include <iostream>

#include "cocoon/conformance.hpp"

int main(int argc, char** argv) {
  namespace cf = cocoon::conformance;
  CLI::App app{"conformance: check corpus programs against their expected verdicts"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run the corpus");
  std::string corpus, filter, summary = "conformance-summary.tsv";
  unsigned jobs = 1;
  cf::Toolchain tc = cf::default_toolchain();
  std::string work;
  run->add_option("--corpus", corpus, "corpus directory")->required();
  run->add_option("--filter", filter, "shell glob on entry names");
  run->add_option("--jobs,-j", jobs, "parallel entries")->check(CLI::Range(1u, 256u));
  run->add_option("--summary", summary, "machine-readable summary file");
  run->add_option("--cxx", tc.cxx, "compiler driver")->capture_default_str();
  run->add_option("--include", tc.include_dir, "directory containing cocoon/ headers")->capture_default_str();
  run->add_option("--work", work, "scratch directory");
  CLI11_PARSE(app, argc, argv);
  if (!work.empty()) tc.work_dir = work;

  try {
    cf::Report r = cf::run_corpus(corpus, tc, filter, jobs);
    std::cout << r.text();
    cf::write_file(summary, r.summary());
    if (r.any_harness_error()) return 2;
    return r.all_pass() ? 0 : 1;
  } catch (const cf::HarnessError& e) {
    std::cerr << "conformance: " << e.what() << "\n";
    return 2;
  }
}
