#ifndef DTWBENCH_NN_HPP
#define DTWBENCH_NN_HPP

#include <cstdint>
#include <vector>

#include "dtwbench/types.hpp"

namespace dtwbench {

// (x - mean) / stddev with population stddev. A (near-)constant series maps
// to all zeros instead of blowing up.
TimeSeries znorm(const TimeSeries& x);

// Running min/max of a query over +/- window_cells, used by LB_Keogh.
struct Envelope {
  std::vector<double> upper;
  std::vector<double> lower;
  int window_cells = 0;
};

Envelope envelope(const TimeSeries& q, int window_cells);

// LB_Keogh lower bound: squared exceedance of the candidate outside the
// query envelope. Never exceeds the banded DTW cost at the same window.
double lb_keogh(const TimeSeries& candidate, const Envelope& env);

struct NnFlags {
  bool use_lb = false;
  bool use_ea = false;
  bool use_znorm = false;
};

struct NnResult {
  std::size_t index = 0;
  double cost = 0.0;
  std::uint64_t cells_evaluated = 0;  // DP cells relaxed across the scan
};

// 1-NN scan under banded DTW. Whatever acceleration flags are set, the
// result is identical to the naive full scan (ties go to the first
// occurrence). use_znorm normalizes query and candidates before comparing,
// which changes the metric space but not the equivalence guarantee among
// flag sets that share it.
NnResult nn_search(const TimeSeries& query,
                   const std::vector<TimeSeries>& candidates,
                   const BandSpec& band, const NnFlags& flags = {});

}  // namespace dtwbench

#endif  // DTWBENCH_NN_HPP
