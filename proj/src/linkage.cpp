#include "stabclust/linkage.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace stabclust {

std::vector<int> MergeTree::node_points(int id) const {
  if (id < n) return {id};
  const Merge& m = merges[id - n];
  std::vector<int> pts = node_points(m.left);
  std::vector<int> right = node_points(m.right);
  pts.insert(pts.end(), right.begin(), right.end());
  std::sort(pts.begin(), pts.end());
  return pts;
}

MergeTree average_linkage_tree(const MetricInstance& inst) {
  const int n = inst.n();
  MergeTree tree;
  tree.n = n;

  struct Node {
    int id;
    int size;
    int min_point;
  };
  std::vector<Node> active;
  active.reserve(n);
  for (int i = 0; i < n; ++i) active.push_back({i, 1, i});

  // Pairwise sums of point distances between active clusters; averages are
  // derived on demand so the Lance-Williams update is a plain addition.
  std::vector<std::vector<double>> sum(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum[i][j] = inst.d(i, j);

  while (active.size() > 1) {
    int best_a = 0, best_b = 1;
    double best_avg = std::numeric_limits<double>::infinity();
    std::pair<int, int> best_key{0, 0};
    for (size_t a = 0; a < active.size(); ++a) {
      for (size_t b = a + 1; b < active.size(); ++b) {
        const double avg =
            sum[a][b] / (static_cast<double>(active[a].size) * active[b].size);
        std::pair<int, int> key{
            std::min(active[a].min_point, active[b].min_point),
            std::max(active[a].min_point, active[b].min_point)};
        if (avg < best_avg || (avg == best_avg && key < best_key)) {
          best_avg = avg;
          best_key = key;
          best_a = static_cast<int>(a);
          best_b = static_cast<int>(b);
        }
      }
    }

    const Node left = active[best_a];
    const Node right = active[best_b];
    const int new_id = n + static_cast<int>(tree.merges.size());
    tree.merges.push_back(MergeTree::Merge{
        left.min_point <= right.min_point ? left.id : right.id,
        left.min_point <= right.min_point ? right.id : left.id, best_avg});

    // Fold cluster best_b into best_a, then drop the last row/column slot.
    const size_t last = active.size() - 1;
    for (size_t c = 0; c < active.size(); ++c) {
      if (static_cast<int>(c) == best_a || static_cast<int>(c) == best_b)
        continue;
      sum[best_a][c] += sum[best_b][c];
      sum[c][best_a] = sum[best_a][c];
    }
    active[best_a] =
        Node{new_id, left.size + right.size, std::min(left.min_point, right.min_point)};
    if (static_cast<size_t>(best_b) != last) {
      active[best_b] = active[last];
      for (size_t c = 0; c <= last; ++c) {
        sum[best_b][c] = sum[last][c];
        sum[c][best_b] = sum[c][last];
      }
      sum[best_b][best_b] = 0.0;
    }
    active.pop_back();
  }
  return tree;
}

PruningResult best_k_pruning(const MergeTree& tree, const MetricInstance& inst,
                             int k) {
  const int n = inst.n();
  if (tree.n != n) throw std::invalid_argument("tree does not match instance");
  if (k < 1 || k > n) throw std::invalid_argument("k must satisfy 1 <= k <= n");

  const int nodes = n + static_cast<int>(tree.merges.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<int> leaves(nodes, 1);
  std::vector<double> self_cost(nodes, 0.0);
  std::vector<std::vector<double>> dp(nodes);
  std::vector<std::vector<int>> choice(nodes);  // left part count at the argmin

  for (int id = 0; id < nodes; ++id) {
    if (id >= n) {
      const auto& m = tree.merges[id - n];
      leaves[id] = leaves[m.left] + leaves[m.right];
      const auto pts = tree.node_points(id);
      self_cost[id] = set_to_set_distance(inst, pts, pts);
    }
    const int cap = std::min(k, leaves[id]);
    dp[id].assign(cap + 1, inf);
    choice[id].assign(cap + 1, -1);
    dp[id][1] = self_cost[id];
    if (id >= n) {
      const auto& m = tree.merges[id - n];
      for (int j = 2; j <= cap; ++j) {
        for (int j1 = std::max(1, j - leaves[m.right]);
             j1 <= std::min(j - 1, leaves[m.left]); ++j1) {
          const double c = dp[m.left][j1] + dp[m.right][j - j1];
          if (c < dp[id][j]) {
            dp[id][j] = c;
            choice[id][j] = j1;
          }
        }
      }
    }
  }

  const int root = tree.root();
  std::vector<std::vector<int>> clusters;
  auto collect = [&](auto&& self, int id, int j) -> void {
    if (j == 1) {
      clusters.push_back(tree.node_points(id));
      return;
    }
    const auto& m = tree.merges[id - n];
    const int j1 = choice[id][j];
    self(self, m.left, j1);
    self(self, m.right, j - j1);
  };
  collect(collect, root, k);

  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  Clustering out;
  out.k = k;
  out.assignment.assign(n, -1);
  for (int i = 0; i < k; ++i)
    for (int p : clusters[i]) out.assignment[p] = i;
  return PruningResult{std::move(out), Cost{dp[root][k], Objective::MinSum}};
}

}  // namespace stabclust
