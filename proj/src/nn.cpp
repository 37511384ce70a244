#include "dtwbench/nn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "dtwbench/dtw.hpp"

namespace dtwbench {

TimeSeries znorm(const TimeSeries& x) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x.samples()) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x.samples()) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  const double sd = std::sqrt(var);
  std::vector<double> out(n, 0.0);
  if (sd >= 1e-12) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (x[i] - mean) / sd;
  }
  return TimeSeries(std::move(out));
}

Envelope envelope(const TimeSeries& q, int window_cells) {
  const int n = static_cast<int>(q.size());
  if (window_cells < 0 || window_cells > n - 1)
    throw std::invalid_argument("envelope window out of range [0, N-1]");
  Envelope env;
  env.window_cells = window_cells;
  env.upper.resize(n);
  env.lower.resize(n);

  // Monotonic deques over the sliding window [i-w, i+w].
  std::deque<int> maxq, minq;
  const int w = window_cells;
  int pushed = 0;
  for (int i = 0; i < n; ++i) {
    const int win_hi = std::min(i + w, n - 1);
    for (; pushed <= win_hi; ++pushed) {
      while (!maxq.empty() && q[maxq.back()] <= q[pushed]) maxq.pop_back();
      maxq.push_back(pushed);
      while (!minq.empty() && q[minq.back()] >= q[pushed]) minq.pop_back();
      minq.push_back(pushed);
    }
    while (maxq.front() < i - w) maxq.pop_front();
    while (minq.front() < i - w) minq.pop_front();
    env.upper[i] = q[maxq.front()];
    env.lower[i] = q[minq.front()];
  }
  return env;
}

double lb_keogh(const TimeSeries& candidate, const Envelope& env) {
  if (candidate.size() != env.upper.size())
    throw UnequalLengthsError(candidate.size(), env.upper.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < candidate.size(); ++i) {
    const double c = candidate[i];
    if (c > env.upper[i]) {
      const double d = c - env.upper[i];
      sum += d * d;
    } else if (c < env.lower[i]) {
      const double d = env.lower[i] - c;
      sum += d * d;
    }
  }
  return sum;
}

NnResult nn_search(const TimeSeries& query,
                   const std::vector<TimeSeries>& candidates,
                   const BandSpec& band, const NnFlags& flags) {
  if (candidates.empty()) throw EmptyCandidatesError();

  const TimeSeries q = flags.use_znorm ? znorm(query) : query;
  const int cells = band_cells(band, static_cast<int>(q.size()));

  Envelope env;
  if (flags.use_lb) env = envelope(q, cells);

  NnResult best;
  best.index = 0;
  best.cost = std::numeric_limits<double>::infinity();

  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    const TimeSeries c =
        flags.use_znorm ? znorm(candidates[idx]) : candidates[idx];
    if (flags.use_lb) {
      if (lb_keogh(c, env) >= best.cost) continue;
    }
    double cost;
    if (flags.use_ea) {
      auto r = cdtw_early_abandon(q, c, band, best.cost, &best.cells_evaluated);
      if (!r) continue;
      cost = *r;
    } else {
      cost = cdtw(q, c, band, false, &best.cells_evaluated).cost;
    }
    if (cost < best.cost) {
      best.cost = cost;
      best.index = idx;
    }
  }
  return best;
}

}  // namespace dtwbench
