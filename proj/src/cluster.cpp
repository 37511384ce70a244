#include "dtwbench/cluster.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "dtwbench/fastdtw.hpp"

namespace dtwbench {

DistanceMatrix distance_matrix(const std::vector<TimeSeries>& series,
                               const AlgoSpec& algo) {
  const int k = static_cast<int>(series.size());
  DistanceMatrix dm(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      dm.set(i, j, algo_distance(algo, series[i], series[j]));
  return dm;
}

Dendrogram single_linkage(const DistanceMatrix& dm,
                          std::vector<std::string> leaf_labels) {
  const int k = dm.size();
  if (!leaf_labels.empty() && static_cast<int>(leaf_labels.size()) != k)
    throw std::invalid_argument("label count does not match matrix size");

  struct Cluster {
    int id;
    std::vector<int> leaves;  // sorted ascending
  };
  std::vector<Cluster> active;
  for (int i = 0; i < k; ++i) active.push_back({i, {i}});

  Dendrogram out;
  out.leaf_labels = std::move(leaf_labels);
  int next_id = k;

  while (active.size() > 1) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        double d = std::numeric_limits<double>::infinity();
        for (int a : active[i].leaves)
          for (int b : active[j].leaves) d = std::min(d, dm.at(a, b));
        // Tie-break on the smallest leaf index of the pair, then the
        // smallest leaf on the other side.
        if (d < best) {
          best = d;
          bi = i;
          bj = j;
        } else if (d == best) {
          const int cur_min = std::min(active[i].leaves.front(),
                                       active[j].leaves.front());
          const int cur_max = std::max(active[i].leaves.front(),
                                       active[j].leaves.front());
          const int old_min = std::min(active[bi].leaves.front(),
                                       active[bj].leaves.front());
          const int old_max = std::max(active[bi].leaves.front(),
                                       active[bj].leaves.front());
          if (cur_min < old_min || (cur_min == old_min && cur_max < old_max)) {
            bi = i;
            bj = j;
          }
        }
      }
    }
    Cluster merged;
    merged.id = next_id++;
    merged.leaves = active[bi].leaves;
    merged.leaves.insert(merged.leaves.end(), active[bj].leaves.begin(),
                         active[bj].leaves.end());
    std::sort(merged.leaves.begin(), merged.leaves.end());
    // Canonical pair order: the side holding the smallest leaf comes first.
    int id_a = active[bi].id;
    int id_b = active[bj].id;
    if (active[bj].leaves.front() < active[bi].leaves.front())
      std::swap(id_a, id_b);
    out.merges.push_back({id_a, id_b, best});
    active.erase(active.begin() + bj);
    active.erase(active.begin() + bi);
    active.push_back(std::move(merged));
  }
  return out;
}

namespace {

std::string fmt_height(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct NewickBuilder {
  const Dendrogram& d;
  int k;

  double node_height(int id) const {
    return id < k ? 0.0 : d.merges[id - k].height;
  }

  std::string node_text(int id, double parent_height) const {
    std::string text;
    if (id < k) {
      text = d.leaf_labels.empty() ? "L" + std::to_string(id)
                                   : d.leaf_labels[id];
    } else {
      const Merge& m = d.merges[id - k];
      text = "(" + node_text(m.a, m.height) + "," +
             node_text(m.b, m.height) + ")";
    }
    return text + ":" + fmt_height(parent_height - node_height(id));
  }
};

}  // namespace

std::string to_newick(const Dendrogram& dendrogram) {
  if (dendrogram.merges.empty())
    throw std::invalid_argument("dendrogram has no merges");
  const int k = static_cast<int>(dendrogram.merges.size()) + 1;
  NewickBuilder b{dendrogram, k};
  const Merge& root = dendrogram.merges.back();
  return "(" + b.node_text(root.a, root.height) + "," +
         b.node_text(root.b, root.height) + ");";
}

Table2Result table2_experiment(int n, std::uint64_t seed,
                               const AdversarialConfig& config) {
  const auto [a, b] = adversarial_pair(n, config);
  const TimeSeries c = adversarial_reference(n, Seed{seed}, config);
  const std::vector<TimeSeries> series{a, b, c};
  std::vector<std::string> labels{"A", "B", "C"};

  Table2Result res{
      distance_matrix(series, AlgoSpec::full_dtw_spec()),
      distance_matrix(series, AlgoSpec::fastdtw_spec(20)),
      {},
      {},
      0.0,
  };
  res.full_tree = single_linkage(res.full_dm, labels);
  res.fast_tree = single_linkage(res.fast_dm, labels);
  res.ab_error_pct = approx_error_pct(res.fast_dm.at(0, 1), res.full_dm.at(0, 1));
  return res;
}

}  // namespace dtwbench
