// demo: the calendar and Battleship programs plus the benchmark harness.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cocoon/conformance.hpp"
#include "demos/battleship.hpp"
#include "demos/battleship_plain.hpp"
#include "demos/battleship_secure.hpp"
#include "demos/bench.hpp"
#include "demos/calendar.hpp"

namespace {

std::string week_line(const calendar::Week& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i]) s += std::string(s.empty() ? "" : " ") + calendar::kDays[i];
  return s.empty() ? "(none)" : s;
}

int run_calendar(std::uint64_t seed) {
  auto alice = calendar::random_week(seed);
  auto bob = calendar::random_week(seed + 1);
  std::cout << "Alice is free: " << week_line(alice) << "\n";
  std::cout << "Bob is free:   " << week_line(bob) << "\n";
  int n = calendar::calendar_overlap(calendar::make_calendar<lat::Label_A>(alice),
                                     calendar::make_calendar<lat::Label_B>(bob));
  std::cout << "Overlapping days: " << n << "\n";
  return 0;
}

int run_battleship(const std::string& script, bool plain, const battleship::SessionOptions& base) {
  battleship::SessionOptions opts = base;
  if (script.empty()) {
    // Interactive: prompts go to stdout, the transcript is echoed live.
    opts.echo = &std::cout;
    battleship::TerminalSource src(std::cin, std::cout);
    if (plain)
      battleship::plain::session(opts, src);
    else
      battleship::secure::session(opts, src);
    return 0;
  }
  std::string text;
  if (script == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    text = buf.str();
  } else {
    std::ifstream in(script);
    if (!in) {
      std::cerr << "demo: cannot read " << script << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  battleship::ScriptSource src(text);
  auto t = plain ? battleship::plain::session(opts, src) : battleship::secure::session(opts, src);
  std::cout << t.text();
  return 0;
}

int run_bench(const std::vector<std::string>& names, const std::string& mode_arg, int reps, int scale,
              const std::string& out_path, bool skip_build) {
  std::vector<bench::Mode> modes;
  if (mode_arg == "both") {
    modes = {bench::Mode::plain, bench::Mode::secret};
  } else {
    modes = {bench::parse_mode(mode_arg)};
  }
  std::vector<const bench::Kernel*> ks;
  if (names.empty()) {
    for (const auto& k : bench::kernels()) ks.push_back(&k);
  } else {
    for (const auto& n : names) {
      auto k = bench::find_kernel(n);
      if (!k) {
        std::cerr << "demo: unknown kernel '" << n << "' (nbody, sieve, strscan)\n";
        return 2;
      }
      ks.push_back(k);
    }
  }
  auto cfg = bench::default_build_config();
  std::vector<bench::ReportRow> fresh;
  for (auto k : ks) {
    const int s = scale > 0 ? scale : k->default_scale;
    for (auto m : modes) {
      std::vector<double> samples;
      bench::time_once(*k, m, s);
      for (int i = 0; i < reps; ++i) samples.push_back(bench::time_once(*k, m, s));
      auto st = bench::summarize(samples);
      bench::ReportRow row{k->name, std::string(bench::mode_name(m)), st.mean, st.ci95, 0, 0};
      if (!skip_build) {
        auto cost = bench::measure_build(*k, m, cfg);
        row.compile_s = cost.compile_s;
        row.size_bytes = cost.size_bytes;
      }
      std::cerr << k->name << " " << row.mode << ": " << st.mean << " s ± " << st.ci95
                << (st.noisy() ? " (noisy)" : "") << "\n";
      fresh.push_back(row);
    }
  }
  auto rows = bench::merge_rows(out_path.empty() ? std::vector<bench::ReportRow>{} : bench::read_report(out_path),
                                fresh);
  auto text = bench::format_report(rows);
  if (out_path.empty())
    std::cout << text;
  else
    cocoon::conformance::write_file(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"demo: calendar, Battleship and benchmarks"};
  app.require_subcommand(1);

  std::uint64_t cal_seed = 1;
  auto cal = app.add_subcommand("calendar", "overlap of two random weekly calendars");
  cal->add_option("--seed", cal_seed, "seed for Alice's week; Bob uses seed+1");

  std::string script;
  bool plain = false;
  battleship::SessionOptions bs_opts;
  auto bs = app.add_subcommand("battleship", "two-player Battleship (interactive without --script)");
  bs->add_option("--script", script, "guess script, '-' for stdin; lines are 'a ROW COL' or 'b ROW COL'");
  bs->add_option("--seed-a", bs_opts.seed_a, "board seed for player A");
  bs->add_option("--seed-b", bs_opts.seed_b, "board seed for player B");
  bs->add_flag("--plain", plain, "run the unlabeled version");

  std::vector<std::string> kernels;
  std::string mode = "both";
  int reps = 10;
  int scale = 0;
  std::string out;
  bool skip_build = false;
  auto bn = app.add_subcommand("bench", "run time, compile time and size per kernel and mode");
  bn->add_option("--kernel", kernels, "nbody, sieve or strscan (repeatable; all when omitted)");
  bn->add_option("--mode", mode, "plain, secret or both")->check(CLI::IsMember({"plain", "secret", "both"}));
  bn->add_option("--reps", reps, "timed repetitions")->check(CLI::PositiveNumber);
  bn->add_option("--scale", scale, "problem size (kernel default when omitted)");
  bn->add_option("--out", out, "report file; rows for other kernels and modes are kept");
  bn->add_flag("--no-build", skip_build, "skip compile-time and size measurement");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*cal) return run_calendar(cal_seed);
    if (*bs) return run_battleship(script, plain, bs_opts);
    return run_bench(kernels, mode, reps, scale, out, skip_build);
  } catch (const std::exception& e) {
    std::cerr << "demo: " << e.what() << "\n";
    return 2;
  }
}
