#ifndef DTWBENCH_FASTDTW_HPP
#define DTWBENCH_FASTDTW_HPP

#include <utility>
#include <vector>

#include "dtwbench/types.hpp"

namespace dtwbench {

// Halves a series by averaging adjacent sample pairs. An odd-length series
// keeps its final raw sample so endpoints stay aligned across resolutions.
TimeSeries reduce_by_half(const TimeSeries& x);

// Piecewise aggregate approximation: non-overlapping window means, the final
// window may be short. paa(x, 2) == reduce_by_half(x); paa(x, 1) == x.
TimeSeries paa(const TimeSeries& x, int factor);

// Per-row column ranges bounding the DP region. Ranges are 1-based
// inclusive. A valid window has 1 <= jmin <= jmax <= cols on every row,
// jmin[i+1] <= jmax[i] + 1 (staircase-connected), and contains the corner
// cells (1,1) and (rows,cols).
struct SearchWindow {
  int rows = 0;
  int cols = 0;
  std::vector<std::pair<int, int>> ranges;

  void validate() const;  // throws InvalidWindowError
};

// Projects a coarse warping path onto the n x m fine grid (each coarse cell
// (i,j) maps to fine cells {2i-1,2i} x {2j-1,2j}, clipped), dilates the
// projected region by Chebyshev radius `radius`, and repairs the per-row
// ranges so the window invariants hold.
SearchWindow project_and_expand(const WarpPath& coarse_path, int n, int m,
                                int radius);

// DTW restricted to the window's cells; out-of-window cells are +inf.
DtwResult windowed_dtw(const TimeSeries& x, const TimeSeries& y,
                       const SearchWindow& window, bool want_path = false);

// The recursive FastDTW approximation with radius r: solve at half
// resolution, project the coarse path up, expand by r cells, refine with
// windowed DTW. Exact (falls back to full DTW) once min(N,M) <= r + 2.
// The returned cost is always >= full_dtw(x, y).cost.
DtwResult fastdtw(const TimeSeries& x, const TimeSeries& y, int radius,
                  bool want_path = false);

// Percentage error of an approximation against the exact value:
// 100 * (approx - exact) / exact. Zero exact with zero approx is 0%;
// zero exact with positive approx reports +infinity.
double approx_error_pct(double approx, double exact);

}  // namespace dtwbench

#endif  // DTWBENCH_FASTDTW_HPP
