#ifndef DTWBENCH_BENCH_HPP
#define DTWBENCH_BENCH_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dtwbench/datagen.hpp"
#include "dtwbench/types.hpp"

namespace dtwbench {

// ---------------------------------------------------------------------------
// Algorithm selection

enum class AlgoKind { cdtw, euclidean, fastdtw, full_dtw };

std::string algo_kind_name(AlgoKind kind);

// param is the band fraction for cdtw and the radius for fastdtw; unused
// otherwise.
struct AlgoSpec {
  AlgoKind kind = AlgoKind::full_dtw;
  double param = 0.0;

  static AlgoSpec cdtw_spec(double fraction);
  static AlgoSpec fastdtw_spec(int radius);
  static AlgoSpec euclidean_spec();
  static AlgoSpec full_dtw_spec();
};

// Cost-only distance under the given algorithm.
double algo_distance(const AlgoSpec& algo, const TimeSeries& x,
                     const TimeSeries& y);

// ---------------------------------------------------------------------------
// Reports

struct TimingStats {
  int reps = 0;
  int warmup_reps = 0;
  double mean_ns = 0.0;
  double std_ns = 0.0;
  double min_ns = 0.0;
};

struct CaseRow {
  AlgoSpec algo;
  int n = 0;
  std::int64_t comparisons = 0;
  TimingStats stats;
};

struct CaseReport {
  std::string case_id;  // "A", "B", "C", "D", "micro"
  std::vector<CaseRow> rows;
  std::uint64_t seed = 0;
  std::string hardware_note;
  double natural_warping = 0.0;  // descriptive W, fraction of N
};

struct CrossoverPoint {
  double L_seconds = 0.0;
  int n = 0;
  double cdtw100_mean_ns = 0.0;
  double fastdtw40_mean_ns = 0.0;
};

struct CrossoverReport {
  std::vector<CrossoverPoint> sweep;  // sorted by L ascending
  std::optional<double> crossover_L;  // smallest L where fastdtw wins
  std::uint64_t seed = 0;
  int reps = 0;
  std::string hardware_note;
};

// ---------------------------------------------------------------------------
// Measurement

// Runs the cost-only computation `warmup` times untimed, then `reps` times
// on the monotonic clock, consuming each result so the work cannot be
// optimized away. Single-threaded; a process-wide lock keeps concurrent
// benchmark calls from interleaving.
TimingStats time_distance(const AlgoSpec& algo, const TimeSeries& x,
                          const TimeSeries& y, int reps, int warmup = 10);

// ---------------------------------------------------------------------------
// The four cases plus the N=128 microbenchmark. Desk-scale defaults keep
// each case in the minutes range; the full-scale paper workloads are one
// config away.

struct CaseAConfig {
  int k = 100;              // 896 at full scale
  int n = 945;
  int max_percent = 20;     // sweeps w and r over 0..max_percent
  std::uint64_t seed = 42;
};

// All-pairs sweep at fixed length; each sweep point is timed once over the
// whole pair set (rows carry reps = 1 and mean == total wall time). Uses the
// dataset when given, otherwise seeded random walks.
CaseReport run_case_a(const std::optional<Dataset>& dataset,
                      const CaseAConfig& config);

struct CaseBConfig {
  int n = 24000;
  int reps = 100;           // 1000 at full scale
  int warmup = 10;
  std::uint64_t seed = 42;
};

// One long pair: cDTW at w = 0.83% vs FastDTW radius 10 and 40.
CaseReport run_case_b(const CaseBConfig& config);

struct CaseCConfig {
  int k = 50;               // 1000 at full scale
  int n = 450;
  int max_percent = 40;
  std::uint64_t seed = 42;
};

CaseReport run_case_c(const CaseCConfig& config);

struct CaseDConfig {
  std::vector<double> L_sweep = {1, 2, 4, 8, 16, 32, 50};
  double rate_hz = 100.0;
  int reps = 100;           // 1000 at full scale
  int warmup = 10;
  std::uint64_t seed = 42;
};

// Fall-pair crossover: times cDTW_100% against FastDTW_40 for each L and
// reports the smallest L where the approximation pulls ahead. The sweep must
// be ascending and span N from <= 100 up to >= 2000.
CrossoverReport run_case_d(const CaseDConfig& config);

// FastDTW_10 vs cDTW_5% at N = 128, plus the 10^12-comparison extrapolation.
CaseReport run_micro_128(int reps, std::uint64_t seed = 42);

// Projected wall-clock years for `comparisons` distance calls at mean_ns
// nanoseconds each (365.25-day years).
double extrapolated_years(double mean_ns, double comparisons);

// ---------------------------------------------------------------------------
// CSV output. Header is exactly
//   case_id,algo_kind,param,n,comparisons,reps,mean_ns,std_ns,min_ns
// with one row per report row, ordered by algo kind, then param, then n.
void write_report_csv(const CaseReport& report,
                      const std::filesystem::path& path);
void write_report_csv(const CrossoverReport& report,
                      const std::filesystem::path& path);

std::string report_csv_string(const CaseReport& report);
std::string report_csv_string(const CrossoverReport& report);

}  // namespace dtwbench

#endif  // DTWBENCH_BENCH_HPP
