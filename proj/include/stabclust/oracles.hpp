#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "stabclust/metric.hpp"

namespace stabclust {

// Simple undirected graph on up to 64 vertices (bitmask adjacency). Edges are
// normalized to (min, max) and kept sorted; self-loops and duplicates are
// rejected.
class Graph {
public:
  Graph() = default;
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int n() const { return n_; }
  int m() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const;
  int degree(int v) const;
  int max_degree() const;
  uint64_t adjacency(int v) const { return adj_[v]; }
  uint64_t closed_neighborhood(int v) const { return adj_[v] | (1ULL << v); }
  bool connected() const;

private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<uint64_t> adj_;
};

struct EnumerationBudget {
  long long center_subsets = 2'000'000;
  long long partitions = 5'000'000;
  long long vertex_subsets = 2'000'000;
};

struct OptimumResult {
  Cost cost;
  Clustering clustering;       // lexicographically first optimum
  bool unique_partition = false;
  long long all_optimal_count = 0;  // distinct optimal partitions
  std::optional<Clustering> alternate;  // a second optimal partition, if any
};

// Enumerates all center subsets, assigning points to their nearest center
// (ties to the lowest center index). Uniqueness is judged on induced
// partitions; the returned centers are the lexicographically smallest optimal
// set.
OptimumResult brute_force_kmedian(const MetricInstance& inst, int k,
                                  const EnumerationBudget& budget = {});

// Enumerates all partitions into exactly k nonempty blocks via
// restricted-growth strings.
OptimumResult brute_force_minsum(const MetricInstance& inst, int k,
                                 const EnumerationBudget& budget = {});

struct DominatingSet {
  int size = 0;
  std::vector<int> vertices;
};

// Smallest dominating set of size <= max_size; lexicographically smallest
// witness among minimum-size sets. nullopt when none exists.
std::optional<DominatingSet> min_dominating_set(
    const Graph& g, int max_size, const EnumerationBudget& budget = {});

// True iff d_set dominates and every vertex outside it has exactly one
// neighbor inside it.
bool is_perfect_dominating(const Graph& g, const std::vector<int>& d_set);

std::optional<DominatingSet> min_perfect_dominating_set(
    const Graph& g, int max_size, const EnumerationBudget& budget = {});

struct PromiseCheck {
  bool holds = false;  // every dominating set of size <= bound is perfect
  std::optional<std::vector<int>> imperfect_witness;
};

PromiseCheck all_dominating_sets_perfect(const Graph& g, int max_size,
                                         const EnumerationBudget& budget = {});

struct TrianglePartition {
  bool feasible = false;
  std::vector<std::array<int, 3>> witness;  // triples, each inducing a triangle
  bool degree_warning = false;              // some vertex has degree > 4
};

// Exhaustively searches partitions of V into triangle-inducing triples;
// requires n divisible by 3.
TrianglePartition triangle_partition_decide(const Graph& g,
                                            const EnumerationBudget& budget = {});

// Saturating counters used for budget prechecks.
long long binomial_capped(int n, int k, long long cap);
long long stirling2_capped(int n, int k, long long cap);

}  // namespace stabclust
