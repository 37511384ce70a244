#include "dtwbench/fastdtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dtwbench/dtw.hpp"

namespace dtwbench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum Step : std::uint8_t { kStart = 0, kDiag = 1, kVert = 2, kHorz = 3 };

void check_path(const WarpPath& path, int rows, int cols) {
  if (path.empty()) throw InvalidPathError("path is empty");
  if (path.front().i != 1 || path.front().j != 1)
    throw InvalidPathError("path does not start at (1,1)");
  if (path.back().i != rows || path.back().j != cols)
    throw InvalidPathError("path does not end at (N,M)");
  for (std::size_t k = 1; k < path.size(); ++k) {
    const int di = path[k].i - path[k - 1].i;
    const int dj = path[k].j - path[k - 1].j;
    if (di < 0 || di > 1 || dj < 0 || dj > 1 || (di == 0 && dj == 0))
      throw InvalidPathError("step " + std::to_string(k) +
                             " is not a unit move");
  }
}

}  // namespace

TimeSeries reduce_by_half(const TimeSeries& x) {
  const std::size_t n = x.size();
  std::vector<double> out((n + 1) / 2);
  for (std::size_t k = 0; 2 * k + 1 < n; ++k)
    out[k] = 0.5 * (x[2 * k] + x[2 * k + 1]);
  if (n % 2 == 1) out.back() = x[n - 1];
  return TimeSeries(std::move(out));
}

TimeSeries paa(const TimeSeries& x, int factor) {
  if (factor < 1) throw std::invalid_argument("paa factor must be >= 1");
  const std::size_t n = x.size();
  const std::size_t f = static_cast<std::size_t>(factor);
  std::vector<double> out((n + f - 1) / f);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::size_t begin = k * f;
    const std::size_t end = std::min(begin + f, n);
    double sum = 0.0;
    for (std::size_t t = begin; t < end; ++t) sum += x[t];
    out[k] = sum / static_cast<double>(end - begin);
  }
  return TimeSeries(std::move(out));
}

void SearchWindow::validate() const {
  if (rows < 1 || cols < 1)
    throw InvalidWindowError("window must cover at least one cell");
  if (static_cast<int>(ranges.size()) != rows)
    throw InvalidWindowError("range count does not match row count");
  for (int i = 0; i < rows; ++i) {
    const auto [jmin, jmax] = ranges[i];
    if (jmin < 1 || jmin > jmax || jmax > cols)
      throw InvalidWindowError("row " + std::to_string(i + 1) +
                               " range out of bounds");
    if (i + 1 < rows && ranges[i + 1].first > jmax + 1)
      throw InvalidWindowError("rows " + std::to_string(i + 1) + " and " +
                               std::to_string(i + 2) + " are disconnected");
  }
  if (ranges.front().first != 1)
    throw InvalidWindowError("cell (1,1) is outside the window");
  if (ranges.back().second != cols)
    throw InvalidWindowError("cell (N,M) is outside the window");
}

SearchWindow project_and_expand(const WarpPath& coarse_path, int n, int m,
                                int radius) {
  if (n < 1 || m < 1) throw std::invalid_argument("grid must be non-empty");
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  const int cn = (n + 1) / 2;
  const int cm = (m + 1) / 2;
  check_path(coarse_path, cn, cm);

  constexpr int kUnset = std::numeric_limits<int>::max();
  std::vector<std::pair<int, int>> base(n, {kUnset, 0});
  for (const PathPoint& p : coarse_path) {
    const int col_lo = 2 * p.j - 1;
    const int col_hi = std::min(2 * p.j, m);
    for (int row : {2 * p.i - 1, 2 * p.i}) {
      if (row > n) continue;
      auto& r = base[row - 1];
      r.first = std::min(r.first, col_lo);
      r.second = std::max(r.second, col_hi);
    }
  }
  for (const auto& r : base) {
    if (r.first == kUnset) throw InvalidPathError("path skips a coarse row");
  }

  // The projected per-row ranges are monotone (the coarse path is a
  // staircase), so the Chebyshev dilation of row i is just the leftmost
  // jmin and rightmost jmax within i +/- radius, widened by radius.
  SearchWindow w;
  w.rows = n;
  w.cols = m;
  w.ranges.resize(n);
  for (int i = 0; i < n; ++i) {
    const int row_lo = std::max(0, i - radius);
    const int row_hi = std::min(n - 1, i + radius);
    int jmin = base[row_lo].first - radius;
    int jmax = base[row_hi].second + radius;
    w.ranges[i] = {std::max(1, jmin), std::min(m, jmax)};
  }

  // Repair: force the corners in and patch any staircase gap by extending
  // ranges downward, never shrinking them.
  w.ranges.front().first = 1;
  w.ranges.back().second = m;
  for (int i = 1; i < n; ++i) {
    if (w.ranges[i].first > w.ranges[i - 1].second + 1)
      w.ranges[i].first = w.ranges[i - 1].second + 1;
  }
  w.validate();
  return w;
}

DtwResult windowed_dtw(const TimeSeries& x, const TimeSeries& y,
                       const SearchWindow& window, bool want_path) {
  const int n = static_cast<int>(x.size());
  const int m = static_cast<int>(y.size());
  window.validate();
  if (window.rows != n || window.cols != m)
    throw InvalidWindowError("window shape does not match the series");

  // Rolling rows indexed by column + 1; slot 0 stays +inf as the
  // out-of-matrix border.
  std::vector<double> buf_a(m + 1, kInf), buf_b(m + 1, kInf);
  double* prev = buf_a.data();
  double* cur = buf_b.data();

  std::vector<std::size_t> offsets;
  std::vector<std::uint8_t> steps;
  if (want_path) {
    offsets.resize(n + 1, 0);
    for (int i = 0; i < n; ++i) {
      offsets[i + 1] = offsets[i] + static_cast<std::size_t>(
                                        window.ranges[i].second -
                                        window.ranges[i].first + 1);
    }
    steps.assign(offsets[n], kStart);
  }

  {
    const int hi = window.ranges[0].second - 1;  // 0-based
    cur[1] = local_cost(x[0], y[0]);
    for (int j = 1; j <= hi; ++j) {
      cur[j + 1] = cur[j] + local_cost(x[0], y[j]);
      if (want_path) steps[j] = kHorz;
    }
  }
  for (int i = 1; i < n; ++i) {
    std::swap(prev, cur);
    const int lo = window.ranges[i].first - 1;
    const int hi = window.ranges[i].second - 1;
    const int plo = window.ranges[i - 1].first - 1;
    const int phi = window.ranges[i - 1].second - 1;
    // Slots read from the previous row span columns [lo-1, hi]; those
    // outside [plo, phi] hold stale values and must read as +inf.
    for (int j = lo - 1; j < plo && j <= hi; ++j)
      if (j >= 0) prev[j + 1] = kInf;
    for (int j = std::max(phi + 1, lo - 1); j <= hi; ++j) prev[j + 1] = kInf;
    cur[lo] = kInf;  // horizontal read at column lo
    const double xi = x[i];
    // Branch-free relaxation: near-tied predecessors are the common case,
    // and data-dependent branches here would make the runtime depend on
    // the series' shape.
    if (want_path) {
      std::uint8_t* srow = steps.data() + offsets[i];
      for (int j = lo; j <= hi; ++j) {
        const double diag = prev[j];
        const double vert = prev[j + 1];
        const double horz = cur[j];
        const double best1 = std::min(diag, vert);
        std::uint8_t s = vert < diag ? std::uint8_t{kVert} : std::uint8_t{kDiag};
        s = horz < best1 ? std::uint8_t{kHorz} : s;
        cur[j + 1] = std::min(best1, horz) + local_cost(xi, y[j]);
        srow[j - lo] = s;
      }
    } else {
      for (int j = lo; j <= hi; ++j) {
        const double best =
            std::min(std::min(prev[j], prev[j + 1]), cur[j]);
        cur[j + 1] = best + local_cost(xi, y[j]);
      }
    }
  }

  DtwResult res;
  res.cost = cur[m];
  if (!std::isfinite(res.cost))
    throw InvalidWindowError("no monotone path reaches (N,M)");
  if (want_path) {
    WarpPath path;
    int i = n - 1, j = m - 1;
    while (true) {
      path.push_back({i + 1, j + 1});
      const int lo = window.ranges[i].first - 1;
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
  }
  return res;
}

DtwResult fastdtw(const TimeSeries& x, const TimeSeries& y, int radius,
                  bool want_path) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  const std::size_t min_len = std::min(x.size(), y.size());
  if (min_len <= static_cast<std::size_t>(radius) + 2)
    return full_dtw(x, y, want_path);

  // Iterative coarse-to-fine pyramid; depth is ceil(log2 N), so very long
  // series never stress the stack.
  std::vector<TimeSeries> xs{x}, ys{y};
  while (std::min(xs.back().size(), ys.back().size()) >
         static_cast<std::size_t>(radius) + 2) {
    xs.push_back(reduce_by_half(xs.back()));
    ys.push_back(reduce_by_half(ys.back()));
  }

  DtwResult res = full_dtw(xs.back(), ys.back(), true);
  for (int lvl = static_cast<int>(xs.size()) - 2; lvl >= 0; --lvl) {
    const int nl = static_cast<int>(xs[lvl].size());
    const int ml = static_cast<int>(ys[lvl].size());
    SearchWindow window = project_and_expand(*res.path, nl, ml, radius);
    const bool need_path = want_path || lvl > 0;
    res = windowed_dtw(xs[lvl], ys[lvl], window, need_path);
  }
  return res;
}

double approx_error_pct(double approx, double exact) {
  if (approx < 0.0 || exact < 0.0)
    throw NegativeInputError("error metric requires non-negative costs");
  if (exact == 0.0)
    return approx == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return 100.0 * (approx - exact) / exact;
}

}  // namespace dtwbench
