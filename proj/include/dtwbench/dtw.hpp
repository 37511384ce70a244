#ifndef DTWBENCH_DTW_HPP
#define DTWBENCH_DTW_HPP

#include <cstdint>
#include <optional>

#include "dtwbench/types.hpp"

namespace dtwbench {

// Squared difference, the local cost of matching two samples.
inline double local_cost(double a, double b) {
  double d = a - b;
  return d * d;
}

// Unconstrained DTW over the full N x M matrix.
// D(i,j) = local_cost(x[i], y[j]) + min{D(i-1,j-1), D(i-1,j), D(i,j-1)},
// D(1,1) = local_cost(x[1], y[1]), out-of-range cells treated as +inf.
// Path ties are broken diagonal first, then vertical (i-1,j), then
// horizontal (i,j-1).
DtwResult full_dtw(const TimeSeries& x, const TimeSeries& y,
                   bool want_path = false);

// Sakoe-Chiba banded DTW: the recurrence restricted to |i-j| <= cells where
// cells = band_cells(band, N). Requires equal lengths unless the band
// fraction is 1 (unconstrained). Optionally reports the number of DP cells
// relaxed through `cells_evaluated`.
DtwResult cdtw(const TimeSeries& x, const TimeSeries& y, const BandSpec& band,
               bool want_path = false,
               std::uint64_t* cells_evaluated = nullptr);

// Banded DTW that gives up as soon as the result provably reaches
// `threshold`: after each DP row, if the minimum accumulated cost across the
// band is already >= threshold the call returns nullopt. A returned value is
// always the exact cdtw cost and always < threshold.
std::optional<double> cdtw_early_abandon(
    const TimeSeries& x, const TimeSeries& y, const BandSpec& band,
    double threshold, std::uint64_t* cells_evaluated = nullptr);

// Sum of pointwise squared differences; equals cdtw with band 0.
double euclidean_sq(const TimeSeries& x, const TimeSeries& y);

}  // namespace dtwbench

#endif  // DTWBENCH_DTW_HPP
