#pragma once

#include <vector>

#include "stabclust/metric.hpp"

namespace stabclust {

// Strictly binary agglomeration history. Leaves are 0..n-1; the merge at
// position t creates internal node n+t, so the root is n + merges.size() - 1
// (or leaf 0 when n == 1). Heights are recorded in merge order and need not
// be monotone.
struct MergeTree {
  int n = 0;
  struct Merge {
    int left = -1, right = -1;
    double height = 0.0;  // average linkage value at the merge
  };
  std::vector<Merge> merges;

  int root() const { return merges.empty() ? 0 : n + static_cast<int>(merges.size()) - 1; }
  std::vector<int> node_points(int id) const;  // leaves under id, ascending
};

// Classical average linkage: repeatedly merges the pair of clusters (A, B)
// minimizing d(A,B) / (|A|*|B|); ties go to the lexicographically smallest
// pair of minimum contained point indices.
MergeTree average_linkage_tree(const MetricInstance& inst);

struct PruningResult {
  Clustering clustering;
  Cost cost;
};

// Tree dynamic program: the best partition of the root's points into k
// clusters, each cluster a node of the tree, under the min-sum objective.
PruningResult best_k_pruning(const MergeTree& tree, const MetricInstance& inst,
                             int k);

}  // namespace stabclust
