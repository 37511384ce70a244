#include "dtwbench/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#if defined(__AVX512F__)
#include <immintrin.h>
#endif

namespace dtwbench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One anti-diagonal of the banded recurrence:
//   dst[i] = min(p1[i-1], p1[i], p2[i-1]) + (x[i] - yb[i])^2, i in [lo, hi].
// Same IEEE operations either way, so both paths give identical bits.
inline void relax_diagonal(int lo, int hi, const double* __restrict p1,
                           const double* __restrict p2,
                           const double* __restrict xv,
                           const double* __restrict yb,
                           double* __restrict dst) {
#if defined(__AVX512F__)
  for (int i = lo; i <= hi; i += 8) {
    const unsigned lanes = static_cast<unsigned>(hi + 1 - i);
    const __mmask8 m =
        lanes >= 8 ? static_cast<__mmask8>(0xFF)
                   : static_cast<__mmask8>((1u << lanes) - 1u);
    const __m512d diag = _mm512_maskz_loadu_pd(m, p1 + i - 1);
    const __m512d vert = _mm512_maskz_loadu_pd(m, p1 + i);
    const __m512d prev2 = _mm512_maskz_loadu_pd(m, p2 + i - 1);
    const __m512d best = _mm512_min_pd(_mm512_min_pd(diag, vert), prev2);
    const __m512d xs = _mm512_maskz_loadu_pd(m, xv + i);
    const __m512d ys = _mm512_maskz_loadu_pd(m, yb + i);
    const __m512d diff = _mm512_sub_pd(xs, ys);
    const __m512d cost = _mm512_mul_pd(diff, diff);
    _mm512_mask_storeu_pd(dst + i, m, _mm512_add_pd(best, cost));
  }
#else
  for (int i = lo; i <= hi; ++i) {
    const double m = std::min(std::min(p1[i - 1], p1[i]), p2[i - 1]);
    const double diff = xv[i] - yb[i];
    dst[i] = m + diff * diff;
  }
#endif
}

enum Step : std::uint8_t { kStart = 0, kDiag = 1, kVert = 2, kHorz = 3 };

// Smallest of the three predecessors with deterministic tie-breaking:
// diagonal wins ties, then vertical, then horizontal.
inline double pick_pred(double diag, double vert, double horz, Step& step) {
  double best = diag;
  step = kDiag;
  if (vert < best) {
    best = vert;
    step = kVert;
  }
  if (horz < best) {
    best = horz;
    step = kHorz;
  }
  return best;
}

WarpPath backtrack(const std::vector<std::uint8_t>& steps, int n, int m) {
  WarpPath path;
  int i = n - 1, j = m - 1;
  while (true) {
    path.push_back({i + 1, j + 1});
    Step s = static_cast<Step>(steps[static_cast<std::size_t>(i) * m + j]);
    if (s == kStart) break;
    if (s == kDiag) {
      --i;
      --j;
    } else if (s == kVert) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

DtwResult full_dtw_with_path(const double* x, int n, const double* y, int m) {
  std::vector<std::uint8_t> steps(static_cast<std::size_t>(n) * m, kStart);
  std::vector<double> row_a(m), row_b(m);
  double* prev = row_a.data();
  double* cur = row_b.data();

  cur[0] = local_cost(x[0], y[0]);
  for (int j = 1; j < m; ++j) {
    cur[j] = cur[j - 1] + local_cost(x[0], y[j]);
    steps[j] = kHorz;
  }
  for (int i = 1; i < n; ++i) {
    std::swap(prev, cur);
    std::uint8_t* srow = steps.data() + static_cast<std::size_t>(i) * m;
    cur[0] = prev[0] + local_cost(x[i], y[0]);
    srow[0] = kVert;
    for (int j = 1; j < m; ++j) {
      Step s;
      double best = pick_pred(prev[j - 1], prev[j], cur[j - 1], s);
      cur[j] = best + local_cost(x[i], y[j]);
      srow[j] = s;
    }
  }
  DtwResult res;
  res.cost = cur[m - 1];
  res.path = backtrack(steps, n, m);
  return res;
}

double full_dtw_cost(const double* x, int n, const double* y, int m) {
  std::vector<double> row_a(m), row_b(m);
  double* prev = row_a.data();
  double* cur = row_b.data();

  cur[0] = local_cost(x[0], y[0]);
  for (int j = 1; j < m; ++j) cur[j] = cur[j - 1] + local_cost(x[0], y[j]);
  for (int i = 1; i < n; ++i) {
    std::swap(prev, cur);
    const double xi = x[i];
    cur[0] = prev[0] + local_cost(xi, y[0]);
    double left = cur[0];
    for (int j = 1; j < m; ++j) {
      double best = prev[j - 1];
      const double vert = prev[j];
      if (vert < best) best = vert;
      if (left < best) best = left;
      left = best + local_cost(xi, y[j]);
      cur[j] = left;
    }
  }
  return cur[m - 1];
}

// Cost-only banded DP evaluated along anti-diagonals. Cells of one
// anti-diagonal are independent, so the inner loop vectorizes instead of
// serializing on the left neighbor; each cell still computes exactly
// min(diag, vert, horz) + (x[i]-y[j])^2, so results match the row-order
// engines bit for bit.
double banded_cost_wavefront(const double* x, const double* y, int n, int c,
                             std::uint64_t* cells_evaluated) {
  // Scratch persists per thread; stale contents are harmless because the
  // edge guards below refresh every slot a diagonal can read before the
  // band has written it.
  thread_local std::vector<double> scratch;
  scratch.resize(3 * (n + 2) + n);
  double* dm2 = scratch.data() + 1;
  double* dm1 = scratch.data() + (n + 2) + 1;
  double* out = scratch.data() + 2 * (n + 2) + 1;
  double* yrev = scratch.data() + 3 * (n + 2);
  for (int j = 0; j < n; ++j) yrev[n - 1 - j] = y[j];

  // Total band size, counting the clipped corner triangles once.
  if (cells_evaluated)
    *cells_evaluated += static_cast<std::uint64_t>(n) * (2 * c + 1) -
                        static_cast<std::uint64_t>(c) * (c + 1);

  out[0] = local_cost(x[0], y[0]);
  if (n == 1) return out[0];

  int lo1 = 0, hi1 = 0;   // live range of the d-1 diagonal
  int lo2 = 0, hi2 = -1;  // live range of the d-2 diagonal
  for (int d = 1; d <= 2 * n - 2; ++d) {
    double* tmp = dm2;
    dm2 = dm1;
    dm1 = out;
    out = tmp;
    // Band cells on diagonal d: |2i - d| <= c, clipped to the matrix.
    const int lo = std::max({0, d - n + 1, (d - c + 1) / 2});
    const int hi = std::min({n - 1, d, (d + c) / 2});
    // Slots this diagonal reads that lie outside the source diagonals'
    // live ranges hold stale values and must read as +inf. Ranges move by
    // at most one slot per step, so a single write fixes each edge.
    if (lo - 1 < lo1) dm1[lo - 1] = kInf;
    if (hi > hi1) dm1[hi] = kInf;
    if (lo - 1 < lo2) dm2[lo - 1] = kInf;
    if (hi - 1 > hi2) dm2[hi - 1] = kInf;

    relax_diagonal(lo, hi, dm1, dm2, x, yrev + (n - 1 - d), out);
    lo2 = lo1;
    hi2 = hi1;
    lo1 = lo;
    hi1 = hi;
  }
  return out[n - 1];
}

// Banded DP over equal-length series, rolling rows of width 2c+3 (one
// sentinel slot each side). Slot for column j in row i is j - (i - c) + 1.
// Returns nullopt when every cell of some row reaches `threshold`.
std::optional<double> banded_cost(const double* x, const double* y, int n,
                                  int c, double threshold,
                                  std::uint64_t* cells_evaluated) {
  const int width = 2 * c + 3;
  std::vector<double> buf_a(width, kInf), buf_b(width, kInf);
  double* prev = buf_a.data();
  double* cur = buf_b.data();
  std::uint64_t cells = 0;

  {
    const int hi = std::min(n - 1, c);
    const int base = c + 1;  // slot = j + base for row 0
    cur[base] = local_cost(x[0], y[0]);
    for (int j = 1; j <= hi; ++j)
      cur[j + base] = cur[j - 1 + base] + local_cost(x[0], y[j]);
    cells += hi + 1;
    if (threshold < kInf) {
      double rowmin = kInf;
      for (int j = 0; j <= hi; ++j) rowmin = std::min(rowmin, cur[j + base]);
      if (rowmin >= threshold) {
        if (cells_evaluated) *cells_evaluated += cells;
        return std::nullopt;
      }
    }
  }

  for (int i = 1; i < n; ++i) {
    std::swap(prev, cur);
    const int lo = std::max(0, i - c);
    const int hi = std::min(n - 1, i + c);
    const int base = c - i + 1;  // slot = j + base
    // Freshen the slots this row reads that lie outside the previous
    // row's band (they hold values from two rows back).
    cur[lo + base - 1] = kInf;
    if (lo == 0) prev[base] = kInf;                        // D(i-1, -1)
    if (hi > std::min(n - 1, i - 1 + c)) prev[hi + base + 1] = kInf;
    double rowmin = kInf;
    const double xi = x[i];
    const double* pr = prev + base;
    double* cu = cur + base;
    for (int j = lo; j <= hi; ++j) {
      double best = pr[j];  // diagonal D(i-1, j-1)
      const double vert = pr[j + 1];
      if (vert < best) best = vert;
      const double horz = cu[j - 1];
      if (horz < best) best = horz;
      const double v = best + local_cost(xi, y[j]);
      cu[j] = v;
      if (v < rowmin) rowmin = v;
    }
    cells += hi - lo + 1;
    if (rowmin >= threshold) {
      if (cells_evaluated) *cells_evaluated += cells;
      return std::nullopt;
    }
  }

  if (cells_evaluated) *cells_evaluated += cells;
  const double cost = cur[c + 1];  // slot of (n-1, n-1)
  if (cost >= threshold) return std::nullopt;
  return cost;
}

DtwResult banded_with_path(const double* x, const double* y, int n, int c,
                           std::uint64_t* cells_evaluated) {
  const int width = 2 * c + 3;
  std::vector<double> buf_a(width, kInf), buf_b(width, kInf);
  double* prev = buf_a.data();
  double* cur = buf_b.data();

  std::vector<std::size_t> offsets(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - c);
    const int hi = std::min(n - 1, i + c);
    offsets[i + 1] = offsets[i] + static_cast<std::size_t>(hi - lo + 1);
  }
  std::vector<std::uint8_t> steps(offsets[n], kStart);

  {
    const int hi = std::min(n - 1, c);
    const int base = c + 1;
    cur[base] = local_cost(x[0], y[0]);
    for (int j = 1; j <= hi; ++j) {
      cur[j + base] = cur[j - 1 + base] + local_cost(x[0], y[j]);
      steps[j] = kHorz;
    }
  }
  for (int i = 1; i < n; ++i) {
    std::swap(prev, cur);
    const int lo = std::max(0, i - c);
    const int hi = std::min(n - 1, i + c);
    const int base = c - i + 1;
    cur[lo + base - 1] = kInf;
    if (lo == 0) prev[base] = kInf;
    if (hi > std::min(n - 1, i - 1 + c)) prev[hi + base + 1] = kInf;
    std::uint8_t* srow = steps.data() + offsets[i];
    for (int j = lo; j <= hi; ++j) {
      const int k = j + base;
      Step s;
      double best = pick_pred(prev[k], prev[k + 1], cur[k - 1], s);
      cur[k] = best + local_cost(x[i], y[j]);
      srow[j - lo] = s;
    }
  }
  if (cells_evaluated) *cells_evaluated += offsets[n];

  DtwResult res;
  res.cost = cur[c + 1];
  WarpPath path;
  int i = n - 1, j = n - 1;
  while (true) {
    path.push_back({i + 1, j + 1});
    const int lo = std::max(0, i - c);
    Step s = static_cast<Step>(steps[offsets[i] + (j - lo)]);
    if (s == kStart) break;
    if (s == kDiag) {
      --i;
      --j;
    } else if (s == kVert) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(path.begin(), path.end());
  res.path = std::move(path);
  return res;
}

}  // namespace

int band_cells(const BandSpec& band, int n) {
  if (n < 1) throw std::invalid_argument("series length must be >= 1");
  long long cells = std::llround(band.fraction() * n);
  if (cells < 0) cells = 0;
  if (cells > n - 1) cells = n - 1;
  return static_cast<int>(cells);
}

DtwResult full_dtw(const TimeSeries& x, const TimeSeries& y, bool want_path) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(y.size());
  if (want_path) return full_dtw_with_path(x.data(), n, y.data(), m);
  DtwResult res;
  res.cost = full_dtw_cost(x.data(), n, y.data(), m);
  return res;
}

DtwResult cdtw(const TimeSeries& x, const TimeSeries& y, const BandSpec& band,
               bool want_path, std::uint64_t* cells_evaluated) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(y.size());
  if (n != m) {
    if (band.fraction() < 1.0) throw UnequalLengthsError(x.size(), y.size());
    return full_dtw(x, y, want_path);
  }
  const int c = band_cells(band, n);
  if (want_path) return banded_with_path(x.data(), y.data(), n, c, cells_evaluated);
  DtwResult res;
  if (c <= 2) {
    // A band this narrow has fewer cells than the wavefront has diagonals;
    // the row-order engine wins. Both engines produce identical values.
    res.cost = *banded_cost(x.data(), y.data(), n, c, kInf, cells_evaluated);
  } else {
    res.cost = banded_cost_wavefront(x.data(), y.data(), n, c, cells_evaluated);
  }
  return res;
}

std::optional<double> cdtw_early_abandon(const TimeSeries& x,
                                         const TimeSeries& y,
                                         const BandSpec& band, double threshold,
                                         std::uint64_t* cells_evaluated) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(y.size());
  if (n != m) {
    if (band.fraction() < 1.0) throw UnequalLengthsError(x.size(), y.size());
    const double cost = full_dtw(x, y, false).cost;
    if (cost >= threshold) return std::nullopt;
    return cost;
  }
  const int c = band_cells(band, n);
  return banded_cost(x.data(), y.data(), n, c, threshold, cells_evaluated);
}

double euclidean_sq(const TimeSeries& x, const TimeSeries& y) {
  if (x.size() != y.size()) throw UnequalLengthsError(x.size(), y.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += local_cost(x[i], y[i]);
  return sum;
}

}  // namespace dtwbench
