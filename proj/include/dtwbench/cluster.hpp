#ifndef DTWBENCH_CLUSTER_HPP
#define DTWBENCH_CLUSTER_HPP

#include <string>
#include <vector>

#include "dtwbench/bench.hpp"
#include "dtwbench/datagen.hpp"
#include "dtwbench/types.hpp"

namespace dtwbench {

// Symmetric pairwise distances with a zero diagonal.
class DistanceMatrix {
public:
  explicit DistanceMatrix(int size)
      : size_(size), values_(static_cast<std::size_t>(size) * size, 0.0) {
    if (size < 2) throw std::invalid_argument("distance matrix needs k >= 2");
  }

  int size() const { return size_; }
  double at(int i, int j) const { return values_[index(i, j)]; }

  void set(int i, int j, double value) {
    if (value < 0.0) throw std::invalid_argument("distances are non-negative");
    values_[index(i, j)] = value;
    values_[index(j, i)] = value;
  }

private:
  std::size_t index(int i, int j) const {
    if (i < 0 || i >= size_ || j < 0 || j >= size_)
      throw std::out_of_range("distance matrix index");
    return static_cast<std::size_t>(i) * size_ + j;
  }

  int size_;
  std::vector<double> values_;
};

// Computes each unordered pair once under the given algorithm.
DistanceMatrix distance_matrix(const std::vector<TimeSeries>& series,
                               const AlgoSpec& algo);

// Agglomerative merge list, scipy-style ids: leaves are 0..k-1, the merge at
// position t creates cluster k+t. Heights are non-decreasing under single
// linkage.
struct Merge {
  int a = 0;
  int b = 0;
  double height = 0.0;
};

struct Dendrogram {
  std::vector<Merge> merges;
  std::vector<std::string> leaf_labels;
};

// Single-linkage clustering; ties go to the pair containing the smallest
// leaf index (then the smallest on the other side).
Dendrogram single_linkage(const DistanceMatrix& dm,
                          std::vector<std::string> leaf_labels);

// Newick text: leaves as "label:branch", internal nodes as
// "(left,right):branch", the root as "(left,right);". Branch length is the
// parent's merge height minus the child's (leaves sit at height 0).
std::string to_newick(const Dendrogram& dendrogram);

// The three-series clustering comparison: the adversarial pair plus a
// reference series, clustered under full DTW and under FastDTW with
// radius 20.
struct Table2Result {
  DistanceMatrix full_dm;
  DistanceMatrix fast_dm;
  Dendrogram full_tree;
  Dendrogram fast_tree;
  double ab_error_pct = 0.0;  // error of fastdtw on the (A,B) entry
};

Table2Result table2_experiment(int n = 1024, std::uint64_t seed = 42,
                               const AdversarialConfig& config = {});

}  // namespace dtwbench

#endif  // DTWBENCH_CLUSTER_HPP
