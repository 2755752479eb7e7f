#include "demos/bench.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cocoon/conformance.hpp"
#include "cocoon/transform/transformer.hpp"

#ifndef COCOON_SOURCE_DIR
#define COCOON_SOURCE_DIR "."
#endif
#ifndef COCOON_GEN_DIR
#define COCOON_GEN_DIR "gen"
#endif
#ifndef COCOON_CXX
#define COCOON_CXX "c++"
#endif

namespace bench {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

const char* kCsvHeader = "kernel,mode,mean_s,ci95_s,compile_s,size_bytes";

}  // namespace

std::string_view mode_name(Mode m) { return m == Mode::plain ? "plain" : "secret"; }

Mode parse_mode(std::string_view s) {
  if (s == "plain") return Mode::plain;
  if (s == "secret") return Mode::secret;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "' (plain or secret)");
}

const std::vector<Kernel>& kernels() {
  static const std::vector<Kernel> all = [] {
    const fs::path src = fs::path(COCOON_SOURCE_DIR) / "src" / "demos" / "bench";
    return std::vector<Kernel>{
        {"nbody", nbody_plain, nbody_secret, 500000, src / "nbody_plain.cpp", src / "nbody.cocoon.cpp"},
        {"sieve", sieve_plain, sieve_secret, 5000000, src / "sieve_plain.cpp", src / "sieve.cocoon.cpp"},
        {"strscan", strscan_plain, strscan_secret, 8000000, src / "strscan_plain.cpp", src / "strscan.cocoon.cpp"},
    };
  }();
  return all;
}

const Kernel* find_kernel(std::string_view name) {
  for (const auto& k : kernels())
    if (k.name == name) return &k;
  return nullptr;
}

bool Stats::overlaps(const Stats& o) const {
  return mean - ci95 <= o.mean + o.ci95 && o.mean - o.ci95 <= mean + ci95;
}

Stats summarize(const std::vector<double>& samples) {
  Stats s;
  s.n = samples.size();
  if (s.n == 0) return s;
  s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(s.n);
  if (s.n < 2) return s;
  double ss = 0;
  for (double x : samples) ss += (x - s.mean) * (x - s.mean);
  const double sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  boost::math::students_t dist(static_cast<double>(s.n - 1));
  s.ci95 = boost::math::quantile(boost::math::complement(dist, 0.025)) * sd / std::sqrt(static_cast<double>(s.n));
  return s;
}

double time_once(const Kernel& k, Mode m, int scale, double* result) {
  auto fn = m == Mode::plain ? k.plain : k.secret;
  auto t0 = Clock::now();
  volatile double r = fn(scale);
  double dt = seconds_since(t0);
  if (result) *result = r;
  return dt;
}

RuntimePair interleaved(const Kernel& k, int reps, int scale) {
  RuntimePair out;
  time_once(k, Mode::plain, scale, &out.plain_result);
  time_once(k, Mode::secret, scale, &out.secret_result);
  std::vector<double> p, s;
  for (int i = 0; i < reps; ++i) {
    if (i % 2 == 0) {
      p.push_back(time_once(k, Mode::plain, scale));
      s.push_back(time_once(k, Mode::secret, scale));
    } else {
      s.push_back(time_once(k, Mode::secret, scale));
      p.push_back(time_once(k, Mode::plain, scale));
    }
  }
  out.plain = summarize(p);
  out.secret = summarize(s);
  return out;
}

BuildConfig default_build_config() {
  BuildConfig c;
  c.cxx = COCOON_CXX;
  c.include_dir = fs::path(COCOON_SOURCE_DIR) / "include";
  c.gen_dir = COCOON_GEN_DIR;
  c.work_dir = fs::temp_directory_path() / "cocoon-bench";
  return c;
}

BuildCost measure_build(const Kernel& k, Mode m, const BuildConfig& cfg, int trials) {
  namespace cf = cocoon::conformance;
  fs::create_directories(cfg.work_dir);
  const std::string stem = k.name + "_" + std::string(mode_name(m));
  const fs::path exe = cfg.work_dir / stem;
  BuildCost cost;
  cost.compile_s = std::numeric_limits<double>::infinity();
  double best_transform = std::numeric_limits<double>::infinity();
  for (int t = 0; t < std::max(trials, 1); ++t) {
    fs::path src = k.plain_source;
    double transform_s = 0;
    if (m == Mode::secret) {
      auto t0 = Clock::now();
      cocoon::transform::TransformOptions opts;
      opts.filename = k.secret_source.string();
      auto r = cocoon::transform::transform_source(cf::read_file(k.secret_source), opts);
      if (!r.ok())
        throw cf::HarnessError(cocoon::transform::format_diagnostic(opts.filename, r.diagnostics.front()));
      src = cfg.work_dir / (stem + ".cpp");
      cf::write_file(src, r.output);
      transform_s = seconds_since(t0);
    }
    const std::string cmd = cfg.cxx + " " + cfg.flags + " -DCOCOON_BENCH_MAIN -I" + quote(cfg.include_dir) + " -I" +
                            quote(cfg.gen_dir) + " " + quote(src) + " -o " + quote(exe);
    std::string log;
    auto t0 = Clock::now();
    int rc = cf::run_command(cmd, &log);
    double compile_s = seconds_since(t0);
    if (rc != 0) throw cf::HarnessError("building " + stem + " failed:\n" + log);
    if (transform_s + compile_s < cost.compile_s) {
      cost.compile_s = transform_s + compile_s;
    }
    best_transform = std::min(best_transform, transform_s);
  }
  cost.transform_s = best_transform;
  cost.size_bytes = fs::file_size(exe);
  return cost;
}

std::vector<ReportRow> merge_rows(std::vector<ReportRow> old_rows, const std::vector<ReportRow>& fresh) {
  std::map<std::pair<std::string, std::string>, ReportRow> by_key;
  for (auto& r : old_rows) by_key[{r.kernel, r.mode}] = r;
  for (const auto& r : fresh) by_key[{r.kernel, r.mode}] = r;
  std::vector<ReportRow> out;
  for (auto& [key, r] : by_key) out.push_back(r);
  return out;
}

std::vector<ReportRow> read_report(const fs::path& p) {
  std::vector<ReportRow> rows;
  if (!fs::exists(p)) return rows;
  std::istringstream in(cocoon::conformance::read_file(p));
  std::string line;
  bool in_csv = false;
  while (std::getline(in, line)) {
    if (line == kCsvHeader) {
      in_csv = true;
      continue;
    }
    if (!in_csv || line.empty()) continue;
    std::istringstream f(line);
    ReportRow r;
    std::string mean, ci, comp, size;
    if (!std::getline(f, r.kernel, ',') || !std::getline(f, r.mode, ',') || !std::getline(f, mean, ',') ||
        !std::getline(f, ci, ',') || !std::getline(f, comp, ',') || !std::getline(f, size))
      throw std::runtime_error(p.string() + ": malformed report line '" + line + "'");
    r.mean_s = std::stod(mean);
    r.ci95_s = std::stod(ci);
    r.compile_s = std::stod(comp);
    r.size_bytes = std::stoull(size);
    rows.push_back(r);
  }
  return rows;
}

std::string format_report(const std::vector<ReportRow>& rows) {
  std::ostringstream o;
  o << "# Benchmark report\n\n";
  o << "| kernel | mode | run time (s) | compile (s) | size (bytes) |\n|---|---|---|---|---|\n";
  o << std::fixed;
  for (const auto& r : rows) {
    o << "| " << r.kernel << " | " << r.mode << " | " << std::setprecision(4) << r.mean_s << " ± " << r.ci95_s
      << (r.mean_s > 0 && r.ci95_s / r.mean_s > 0.05 ? " (noisy)" : "") << " | " << std::setprecision(3)
      << r.compile_s << " | " << r.size_bytes << " |\n";
  }
  std::map<std::string, std::pair<const ReportRow*, const ReportRow*>> pairs;
  for (const auto& r : rows) (r.mode == "plain" ? pairs[r.kernel].first : pairs[r.kernel].second) = &r;
  bool header = false;
  for (const auto& [name, pr] : pairs) {
    if (!pr.first || !pr.second || pr.first->compile_s <= 0) continue;
    if (!header) o << "\nCompile time, secret over plain:\n";
    header = true;
    o << "  " << name << ": " << std::setprecision(2) << pr.second->compile_s / pr.first->compile_s << "x\n";
  }
  o << "\n" << kCsvHeader << "\n";
  for (const auto& r : rows) {
    o << r.kernel << ',' << r.mode << ',' << std::setprecision(6) << r.mean_s << ',' << r.ci95_s << ','
      << std::setprecision(4) << r.compile_s << ',' << r.size_bytes << "\n";
  }
  return o.str();
}

}  // namespace bench
