#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

double nbody_plain(int steps);
double nbody_secret(int steps);
double sieve_plain(int n);
double sieve_secret(int n);
double strscan_plain(int n);
double strscan_secret(int n);

namespace bench {

namespace fs = std::filesystem;

enum class Mode { plain, secret };
std::string_view mode_name(Mode m);
Mode parse_mode(std::string_view s);  // throws std::invalid_argument

struct Kernel {
  std::string name;
  double (*plain)(int);
  double (*secret)(int);
  int default_scale;
  fs::path plain_source;   // standalone, main under COCOON_BENCH_MAIN
  fs::path secret_source;  // untransformed .cocoon.cpp
};

const std::vector<Kernel>& kernels();
const Kernel* find_kernel(std::string_view name);

struct Stats {
  std::size_t n = 0;
  double mean = 0;
  double ci95 = 0;  // half-width, Student t
  bool noisy() const { return mean > 0 && ci95 / mean > 0.05; }
  bool overlaps(const Stats& o) const;
};

Stats summarize(const std::vector<double>& samples);

// Wall-clock seconds for one call; the kernel's result goes to *result.
double time_once(const Kernel& k, Mode m, int scale, double* result = nullptr);

struct RuntimePair {
  Stats plain;
  Stats secret;
  double plain_result = 0;
  double secret_result = 0;
};

// Alternates the two modes (order flipped every repetition) after one
// untimed warmup each.
RuntimePair interleaved(const Kernel& k, int reps, int scale);

struct BuildConfig {
  std::string cxx;
  std::string flags = "-std=c++20 -O2";
  fs::path include_dir;  // cocoon/*.hpp
  fs::path gen_dir;      // cocoon_labels.hpp
  fs::path work_dir;
};

BuildConfig default_build_config();

struct BuildCost {
  double transform_s = 0;
  double compile_s = 0;  // best of the trials, transform included for secret
  std::uintmax_t size_bytes = 0;
};

// Builds the standalone program for one mode `trials` times.
BuildCost measure_build(const Kernel& k, Mode m, const BuildConfig& cfg, int trials = 3);

struct ReportRow {
  std::string kernel;
  std::string mode;
  double mean_s = 0;
  double ci95_s = 0;
  double compile_s = 0;
  std::uintmax_t size_bytes = 0;
};

// Rows keyed by (kernel, mode); a new row replaces an old one with the same key.
std::vector<ReportRow> merge_rows(std::vector<ReportRow> old_rows, const std::vector<ReportRow>& fresh);
std::vector<ReportRow> read_report(const fs::path& p);  // missing file -> empty
std::string format_report(const std::vector<ReportRow>& rows);

}  // namespace bench
