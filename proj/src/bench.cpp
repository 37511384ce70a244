#include "dtwbench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <stdexcept>

#if defined(__GLIBC__)
#include <malloc.h>
#endif

#include "dtwbench/dtw.hpp"
#include "dtwbench/fastdtw.hpp"

namespace dtwbench {

namespace {

std::mutex g_bench_mutex;

volatile double g_sink = 0.0;

// Large scratch blocks would otherwise be mmap'ed and returned on every
// distance call, so measurements pick up page-fault noise instead of
// algorithm time. Pin them to the heap for the life of the process.
void stabilize_allocator() {
#if defined(__GLIBC__)
  static std::once_flag once;
  std::call_once(once, [] {
    mallopt(M_MMAP_THRESHOLD, 256 * 1024 * 1024);
    mallopt(M_TRIM_THRESHOLD, 256 * 1024 * 1024);
  });
#endif
}

using Clock = std::chrono::steady_clock;

double elapsed_ns(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::nano>(b - a).count();
}

TimingStats stats_from(std::vector<double>& samples, int warmup) {
  TimingStats s;
  s.reps = static_cast<int>(samples.size());
  s.warmup_reps = warmup;
  double sum = 0.0, min = samples[0];
  for (double v : samples) {
    sum += v;
    min = std::min(min, v);
  }
  s.mean_ns = sum / samples.size();
  s.min_ns = min;
  double var = 0.0;
  for (double v : samples) var += (v - s.mean_ns) * (v - s.mean_ns);
  s.std_ns = std::sqrt(var / samples.size());
  return s;
}

std::string hardware_note() {
  return "single-threaded, steady_clock, " + std::to_string(sizeof(void*) * 8) +
         "-bit build";
}

std::vector<TimeSeries> walk_set(int k, int n, std::uint64_t seed) {
  std::vector<TimeSeries> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i)
    out.push_back(random_walk(n, Seed{seed + static_cast<std::uint64_t>(i)}));
  return out;
}

// Times one sweep point: every unordered pair measured once, total wall time.
TimingStats time_all_pairs(const AlgoSpec& algo,
                           const std::vector<TimeSeries>& set) {
  double sink = 0.0;
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      sink += algo_distance(algo, set[i], set[j]);
  const auto t1 = Clock::now();
  g_sink = sink;
  TimingStats s;
  s.reps = 1;
  s.warmup_reps = 0;
  s.mean_ns = s.min_ns = elapsed_ns(t0, t1);
  s.std_ns = 0.0;
  return s;
}

int kind_order(AlgoKind k) { return static_cast<int>(k); }

}  // namespace

std::string algo_kind_name(AlgoKind kind) {
  switch (kind) {
    case AlgoKind::cdtw: return "cdtw";
    case AlgoKind::euclidean: return "euclidean";
    case AlgoKind::fastdtw: return "fastdtw";
    case AlgoKind::full_dtw: return "full_dtw";
  }
  throw std::logic_error("unknown algo kind");
}

AlgoSpec AlgoSpec::cdtw_spec(double fraction) {
  BandSpec check(fraction);  // validates the range
  return {AlgoKind::cdtw, check.fraction()};
}
AlgoSpec AlgoSpec::fastdtw_spec(int radius) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  return {AlgoKind::fastdtw, static_cast<double>(radius)};
}
AlgoSpec AlgoSpec::euclidean_spec() { return {AlgoKind::euclidean, 0.0}; }
AlgoSpec AlgoSpec::full_dtw_spec() { return {AlgoKind::full_dtw, 0.0}; }

double algo_distance(const AlgoSpec& algo, const TimeSeries& x,
                     const TimeSeries& y) {
  switch (algo.kind) {
    case AlgoKind::cdtw:
      return cdtw(x, y, BandSpec(algo.param), false).cost;
    case AlgoKind::euclidean:
      return euclidean_sq(x, y);
    case AlgoKind::fastdtw:
      return fastdtw(x, y, static_cast<int>(algo.param), false).cost;
    case AlgoKind::full_dtw:
      return full_dtw(x, y, false).cost;
  }
  throw std::logic_error("unknown algo kind");
}

TimingStats time_distance(const AlgoSpec& algo, const TimeSeries& x,
                          const TimeSeries& y, int reps, int warmup) {
  stabilize_allocator();
  if (reps < 1) throw std::invalid_argument("reps must be >= 1");
  if (warmup < 0) throw std::invalid_argument("warmup must be >= 0");
  std::lock_guard<std::mutex> lock(g_bench_mutex);

  double sink = 0.0;
  for (int i = 0; i < warmup; ++i) sink += algo_distance(algo, x, y);

  std::vector<double> samples(reps);
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    sink += algo_distance(algo, x, y);
    const auto t1 = Clock::now();
    samples[i] = elapsed_ns(t0, t1);
  }
  g_sink = sink;
  return stats_from(samples, warmup);
}

CaseReport run_case_a(const std::optional<Dataset>& dataset,
                      const CaseAConfig& config) {
  stabilize_allocator();
  if (config.k < 2) throw std::invalid_argument("case A needs k >= 2");
  std::lock_guard<std::mutex> lock(g_bench_mutex);

  std::vector<TimeSeries> set;
  int n = config.n;
  if (dataset) {
    if (!dataset->uniform_length)
      throw std::invalid_argument("case A dataset must have uniform length");
    for (const auto& item : dataset->items) set.push_back(item.series);
    n = static_cast<int>(*dataset->uniform_length);
  } else {
    set = walk_set(config.k, config.n, config.seed);
  }
  const int k = static_cast<int>(set.size());
  const std::int64_t comparisons = static_cast<std::int64_t>(k) * (k - 1) / 2;

  CaseReport report;
  report.case_id = "A";
  report.seed = config.seed;
  report.hardware_note = hardware_note();
  report.natural_warping = 0.04;  // the UWave best-w regime this case models

  for (int p = 0; p <= config.max_percent; ++p) {
    const AlgoSpec algo = AlgoSpec::cdtw_spec(p / 100.0);
    report.rows.push_back({algo, n, comparisons, time_all_pairs(algo, set)});
  }
  for (int r = 0; r <= config.max_percent; ++r) {
    const AlgoSpec algo = AlgoSpec::fastdtw_spec(r);
    report.rows.push_back({algo, n, comparisons, time_all_pairs(algo, set)});
  }
  return report;
}

CaseReport run_case_b(const CaseBConfig& config) {
  const TimeSeries x = random_walk(config.n, Seed{config.seed});
  const TimeSeries y = random_walk(config.n, Seed{config.seed + 1});

  CaseReport report;
  report.case_id = "B";
  report.seed = config.seed;
  report.hardware_note = hardware_note();
  report.natural_warping = 0.0083;

  for (const AlgoSpec& algo :
       {AlgoSpec::cdtw_spec(0.0083), AlgoSpec::fastdtw_spec(10),
        AlgoSpec::fastdtw_spec(40)}) {
    report.rows.push_back(
        {algo, config.n, 1,
         time_distance(algo, x, y, config.reps, config.warmup)});
  }
  return report;
}

CaseReport run_case_c(const CaseCConfig& config) {
  stabilize_allocator();
  if (config.k < 2) throw std::invalid_argument("case C needs k >= 2");
  std::lock_guard<std::mutex> lock(g_bench_mutex);

  const std::vector<TimeSeries> set =
      walk_set(config.k, config.n, config.seed);
  const std::int64_t comparisons =
      static_cast<std::int64_t>(config.k) * (config.k - 1) / 2;

  CaseReport report;
  report.case_id = "C";
  report.seed = config.seed;
  report.hardware_note = hardware_note();
  report.natural_warping = 0.40;

  for (int p = 0; p <= config.max_percent; ++p) {
    const AlgoSpec algo = AlgoSpec::cdtw_spec(p / 100.0);
    report.rows.push_back(
        {algo, config.n, comparisons, time_all_pairs(algo, set)});
  }
  for (int r = 0; r <= config.max_percent; ++r) {
    const AlgoSpec algo = AlgoSpec::fastdtw_spec(r);
    report.rows.push_back(
        {algo, config.n, comparisons, time_all_pairs(algo, set)});
  }
  return report;
}

CrossoverReport run_case_d(const CaseDConfig& config) {
  if (config.L_sweep.empty())
    throw std::invalid_argument("case D sweep must be non-empty");
  if (!std::is_sorted(config.L_sweep.begin(), config.L_sweep.end()))
    throw std::invalid_argument("case D sweep must be ascending");
  const int n_first =
      static_cast<int>(std::llround(config.L_sweep.front() * config.rate_hz));
  const int n_last =
      static_cast<int>(std::llround(config.L_sweep.back() * config.rate_hz));
  if (n_first > 100 || n_last < 2000)
    throw std::invalid_argument(
        "case D sweep must span N from <= 100 up to >= 2000");

  CrossoverReport report;
  report.seed = config.seed;
  report.reps = config.reps;
  report.hardware_note = hardware_note();

  const AlgoSpec cdtw100 = AlgoSpec::cdtw_spec(1.0);
  const AlgoSpec fast40 = AlgoSpec::fastdtw_spec(40);

  for (std::size_t i = 0; i < config.L_sweep.size(); ++i) {
    const double L = config.L_sweep[i];
    const auto [a, b] =
        fall_pair(L, config.rate_hz, Seed{config.seed + i});
    const TimingStats sc =
        time_distance(cdtw100, a, b, config.reps, config.warmup);
    const TimingStats sf =
        time_distance(fast40, a, b, config.reps, config.warmup);
    CrossoverPoint point;
    point.L_seconds = L;
    point.n = static_cast<int>(a.size());
    point.cdtw100_mean_ns = sc.mean_ns;
    point.fastdtw40_mean_ns = sf.mean_ns;
    report.sweep.push_back(point);
    if (!report.crossover_L && sf.mean_ns < sc.mean_ns)
      report.crossover_L = L;
  }
  return report;
}

CaseReport run_micro_128(int reps, std::uint64_t seed) {
  if (reps < 1000)
    throw std::invalid_argument("the microbenchmark needs reps >= 1000");
  const TimeSeries x = random_walk(128, Seed{seed});
  const TimeSeries y = random_walk(128, Seed{seed + 1});

  CaseReport report;
  report.case_id = "micro";
  report.seed = seed;
  report.hardware_note = hardware_note();
  report.natural_warping = 0.05;

  for (const AlgoSpec& algo :
       {AlgoSpec::cdtw_spec(0.05), AlgoSpec::fastdtw_spec(10)}) {
    report.rows.push_back({algo, 128, 1, time_distance(algo, x, y, reps)});
  }
  return report;
}

double extrapolated_years(double mean_ns, double comparisons) {
  constexpr double ns_per_year = 365.25 * 86400.0 * 1e9;
  return mean_ns * comparisons / ns_per_year;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

const char* kCsvHeader =
    "case_id,algo_kind,param,n,comparisons,reps,mean_ns,std_ns,min_ns";

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_row(std::string& out, const std::string& case_id,
                const CaseRow& row) {
  char buf[64];
  out += case_id;
  out += ',';
  out += algo_kind_name(row.algo.kind);
  out += ',';
  out += fmt_double(row.algo.param);
  std::snprintf(buf, sizeof buf, ",%d,%lld,%d", row.n,
                static_cast<long long>(row.comparisons), row.stats.reps);
  out += buf;
  out += ',';
  out += fmt_double(row.stats.mean_ns);
  out += ',';
  out += fmt_double(row.stats.std_ns);
  out += ',';
  out += fmt_double(row.stats.min_ns);
  out += '\n';
}

std::vector<CaseRow> sorted_rows(std::vector<CaseRow> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CaseRow& a, const CaseRow& b) {
                     if (a.algo.kind != b.algo.kind)
                       return kind_order(a.algo.kind) < kind_order(b.algo.kind);
                     if (a.algo.param != b.algo.param)
                       return a.algo.param < b.algo.param;
                     return a.n < b.n;
                   });
  return rows;
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace

std::string report_csv_string(const CaseReport& report) {
  if (report.rows.empty())
    throw std::invalid_argument("report has no rows");
  std::string out = kCsvHeader;
  out += '\n';
  for (const CaseRow& row : sorted_rows(report.rows))
    append_row(out, report.case_id, row);
  return out;
}

std::string report_csv_string(const CrossoverReport& report) {
  if (report.sweep.empty())
    throw std::invalid_argument("report has no rows");
  std::vector<CaseRow> rows;
  for (const CrossoverPoint& p : report.sweep) {
    TimingStats sc;
    sc.reps = report.reps;
    sc.mean_ns = p.cdtw100_mean_ns;
    TimingStats sf;
    sf.reps = report.reps;
    sf.mean_ns = p.fastdtw40_mean_ns;
    rows.push_back({AlgoSpec::cdtw_spec(1.0), p.n, 1, sc});
    rows.push_back({AlgoSpec::fastdtw_spec(40), p.n, 1, sf});
  }
  std::string out = kCsvHeader;
  out += '\n';
  for (const CaseRow& row : sorted_rows(rows)) append_row(out, "D", row);
  return out;
}

void write_report_csv(const CaseReport& report,
                      const std::filesystem::path& path) {
  write_text(report_csv_string(report), path);
}

void write_report_csv(const CrossoverReport& report,
                      const std::filesystem::path& path) {
  write_text(report_csv_string(report), path);
}

}  // namespace dtwbench
