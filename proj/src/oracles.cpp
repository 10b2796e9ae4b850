#include "stabclust/oracles.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <set>
#include <string>

namespace stabclust {

namespace {

constexpr long long kBudgetCeiling = 1'000'000'000'000'000LL;
constexpr long long kDistinctPartitionCap = 1'048'576;

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  if (n > 64) throw std::invalid_argument("graphs are limited to 64 vertices");
  adj_.assign(n, 0);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop");
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second)
      throw std::invalid_argument("duplicate edge");
    adj_[u] |= 1ULL << v;
    adj_[v] |= 1ULL << u;
  }
  edges_.assign(seen.begin(), seen.end());
}

bool Graph::has_edge(int u, int v) const {
  return u != v && (adj_[u] >> v) & 1ULL;
}

int Graph::degree(int v) const { return std::popcount(adj_[v]); }

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

bool Graph::connected() const {
  uint64_t reached = 1ULL;
  uint64_t frontier = 1ULL;
  while (frontier) {
    uint64_t next = 0;
    for (int v = 0; v < n_; ++v)
      if ((frontier >> v) & 1ULL) next |= adj_[v];
    frontier = next & ~reached;
    reached |= next;
  }
  const uint64_t full = (n_ == 64) ? ~0ULL : ((1ULL << n_) - 1);
  return reached == full;
}

long long binomial_capped(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  cap = std::min(cap, kBudgetCeiling);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    const long double est =
        static_cast<long double>(r) * (n - k + i) / static_cast<long double>(i);
    if (est > static_cast<long double>(cap)) return cap + 1;
    r = r * (n - k + i) / i;
  }
  return r;
}

long long stirling2_capped(int n, int k, long long cap) {
  if (k < 1 || k > n) return 0;
  cap = std::min(cap, kBudgetCeiling);
  std::vector<long long> prev(k + 1, 0), cur(k + 1, 0);
  prev[0] = 1;  // S(0,0)
  for (int i = 1; i <= n; ++i) {
    cur.assign(k + 1, 0);
    for (int j = 1; j <= std::min(i, k); ++j) {
      long long v = prev[j - 1];
      if (prev[j] > (cap - v) / j) {
        v = cap + 1;
      } else {
        v += static_cast<long long>(j) * prev[j];
      }
      cur[j] = std::min(v, cap + 1);
    }
    cur[0] = 0;
    std::swap(prev, cur);
  }
  return prev[k];
}

OptimumResult brute_force_kmedian(const MetricInstance& inst, int k,
                                  const EnumerationBudget& budget) {
  const int n = inst.n();
  if (k < 1 || k > n)
    throw std::invalid_argument("k must satisfy 1 <= k <= n");
  const long long total = binomial_capped(n, k, budget.center_subsets);
  if (total > budget.center_subsets)
    throw BudgetExceeded("center subset count exceeds budget of " +
                         std::to_string(budget.center_subsets));

  auto cost_of = [&](const std::vector<int>& centers, Clustering& out) {
    out = assign_to_nearest(inst, centers);
    double c = 0.0;
    for (int p = 0; p < n; ++p) c += inst.d(p, centers[out.assignment[p]]);
    return c;
  };

  std::vector<int> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = i;
  Clustering scratch;
  double best = std::numeric_limits<double>::infinity();
  do {
    best = std::min(best, cost_of(combo, scratch));
  } while (next_combination(combo, n));

  OptimumResult res;
  res.cost = Cost{best, Objective::KMedian};
  std::set<std::vector<int>> partitions;
  bool have_first = false;
  for (int i = 0; i < k; ++i) combo[i] = i;
  do {
    double c = cost_of(combo, scratch);
    if (c <= best + kCostTolerance) {
      auto key = canonical_labels(scratch.assignment);
      if (!have_first) {
        res.clustering = scratch;
        have_first = true;
      }
      if (partitions.insert(key).second &&
          static_cast<long long>(partitions.size()) > 1 && !res.alternate) {
        res.alternate = scratch;
      }
      if (static_cast<long long>(partitions.size()) > kDistinctPartitionCap)
        throw BudgetExceeded("distinct optimal partitions exceed tracking limit");
    }
  } while (next_combination(combo, n));

  res.all_optimal_count = static_cast<long long>(partitions.size());
  res.unique_partition = res.all_optimal_count == 1;
  return res;
}

namespace {

// Enumerates assignments of points to exactly k blocks in restricted-growth
// order, maintaining the min-sum cost incrementally. Calls visit(assignment,
// cost) for every complete partition.
template <typename Visit>
void enumerate_partitions(const MetricInstance& inst, int k, Visit&& visit) {
  const int n = inst.n();
  std::vector<int> a(n, -1);
  std::vector<std::vector<int>> members(k);
  a[0] = 0;
  members[0].push_back(0);

  auto rec = [&](auto&& self, int i, int blocks, double cost) -> void {
    if (i == n) {
      visit(a, cost);
      return;
    }
    const int remaining_after = n - i - 1;
    for (int b = 0; b < blocks; ++b) {
      if (remaining_after < k - blocks) break;  // cannot open enough new blocks
      double delta = 0.0;
      for (int q : members[b]) delta += 2.0 * inst.d(i, q);
      a[i] = b;
      members[b].push_back(i);
      self(self, i + 1, blocks, cost + delta);
      members[b].pop_back();
    }
    if (blocks < k && remaining_after >= k - blocks - 1) {
      a[i] = blocks;
      members[blocks].push_back(i);
      self(self, i + 1, blocks + 1, cost);
      members[blocks].pop_back();
    }
    a[i] = -1;
  };

  if (n == 1) {
    visit(a, 0.0);
    return;
  }
  rec(rec, 1, 1, 0.0);
}

}  // namespace

OptimumResult brute_force_minsum(const MetricInstance& inst, int k,
                                 const EnumerationBudget& budget) {
  const int n = inst.n();
  if (k < 1 || k > n)
    throw std::invalid_argument("k must satisfy 1 <= k <= n");
  const long long total = stirling2_capped(n, k, budget.partitions);
  if (total > budget.partitions)
    throw BudgetExceeded("partition count exceeds budget of " +
                         std::to_string(budget.partitions));

  double best = std::numeric_limits<double>::infinity();
  enumerate_partitions(inst, k, [&](const std::vector<int>&, double c) {
    best = std::min(best, c);
  });

  OptimumResult res;
  res.cost = Cost{best, Objective::MinSum};
  std::set<std::vector<int>> partitions;
  bool have_first = false;
  enumerate_partitions(inst, k, [&](const std::vector<int>& a, double c) {
    if (c > best + kCostTolerance) return;
    if (!have_first) {
      res.clustering = Clustering{a, k, std::nullopt};
      have_first = true;
    }
    if (partitions.insert(a).second && partitions.size() > 1 && !res.alternate)
      res.alternate = Clustering{a, k, std::nullopt};
    if (static_cast<long long>(partitions.size()) > kDistinctPartitionCap)
      throw BudgetExceeded("distinct optimal partitions exceed tracking limit");
  });

  res.all_optimal_count = static_cast<long long>(partitions.size());
  res.unique_partition = res.all_optimal_count == 1;
  return res;
}

namespace {

template <typename Accept>
std::optional<DominatingSet> scan_vertex_subsets(const Graph& g, int max_size,
                                                 const EnumerationBudget& budget,
                                                 Accept&& accept) {
  const int n = g.n();
  max_size = std::min(max_size, n);
  long long scanned = 0;
  for (int s = 1; s <= max_size; ++s) {
    std::vector<int> combo(s);
    for (int i = 0; i < s; ++i) combo[i] = i;
    do {
      if (++scanned > budget.vertex_subsets)
        throw BudgetExceeded("vertex subset scan exceeds budget of " +
                             std::to_string(budget.vertex_subsets));
      if (accept(combo)) return DominatingSet{s, combo};
    } while (next_combination(combo, n));
  }
  return std::nullopt;
}

uint64_t subset_mask(const std::vector<int>& vs) {
  uint64_t m = 0;
  for (int v : vs) m |= 1ULL << v;
  return m;
}

bool dominates(const Graph& g, uint64_t dmask) {
  uint64_t covered = dmask;
  for (int v = 0; v < g.n(); ++v)
    if ((dmask >> v) & 1ULL) covered |= g.adjacency(v);
  const uint64_t full = (g.n() == 64) ? ~0ULL : ((1ULL << g.n()) - 1);
  return covered == full;
}

bool perfect_given_dominating(const Graph& g, uint64_t dmask) {
  for (int v = 0; v < g.n(); ++v) {
    if ((dmask >> v) & 1ULL) continue;
    if (std::popcount(g.adjacency(v) & dmask) != 1) return false;
  }
  return true;
}

}  // namespace

std::optional<DominatingSet> min_dominating_set(const Graph& g, int max_size,
                                                const EnumerationBudget& budget) {
  if (max_size < 0) throw std::invalid_argument("max_size must be nonnegative");
  return scan_vertex_subsets(g, max_size, budget, [&](const std::vector<int>& c) {
    return dominates(g, subset_mask(c));
  });
}

bool is_perfect_dominating(const Graph& g, const std::vector<int>& d_set) {
  std::set<int> uniq;
  for (int v : d_set) {
    if (v < 0 || v >= g.n())
      throw std::invalid_argument("dominating set vertex out of range");
    if (!uniq.insert(v).second)
      throw std::invalid_argument("dominating set has duplicate vertex");
  }
  const uint64_t dmask = subset_mask(d_set);
  return dominates(g, dmask) && perfect_given_dominating(g, dmask);
}

std::optional<DominatingSet> min_perfect_dominating_set(
    const Graph& g, int max_size, const EnumerationBudget& budget) {
  return scan_vertex_subsets(g, max_size, budget, [&](const std::vector<int>& c) {
    const uint64_t m = subset_mask(c);
    return dominates(g, m) && perfect_given_dominating(g, m);
  });
}

PromiseCheck all_dominating_sets_perfect(const Graph& g, int max_size,
                                         const EnumerationBudget& budget) {
  PromiseCheck out;
  auto witness =
      scan_vertex_subsets(g, max_size, budget, [&](const std::vector<int>& c) {
        const uint64_t m = subset_mask(c);
        return dominates(g, m) && !perfect_given_dominating(g, m);
      });
  if (witness) {
    out.holds = false;
    out.imperfect_witness = witness->vertices;
  } else {
    out.holds = true;
  }
  return out;
}

TrianglePartition triangle_partition_decide(const Graph& g,
                                            const EnumerationBudget& budget) {
  const int n = g.n();
  if (n % 3 != 0)
    throw std::invalid_argument("vertex count must be divisible by 3");
  TrianglePartition out;
  out.degree_warning = g.max_degree() > 4;

  std::vector<std::array<int, 3>> chosen;
  uint64_t used = 0;
  long long nodes = 0;

  auto rec = [&](auto&& self) -> bool {
    if (++nodes > budget.partitions)
      throw BudgetExceeded("triangle partition search exceeds budget");
    int u = -1;
    for (int v = 0; v < n; ++v)
      if (!((used >> v) & 1ULL)) {
        u = v;
        break;
      }
    if (u < 0) return true;
    for (int a = u + 1; a < n; ++a) {
      if (((used >> a) & 1ULL) || !g.has_edge(u, a)) continue;
      for (int b = a + 1; b < n; ++b) {
        if (((used >> b) & 1ULL) || !g.has_edge(u, b) || !g.has_edge(a, b))
          continue;
        used |= (1ULL << u) | (1ULL << a) | (1ULL << b);
        chosen.push_back({u, a, b});
        if (self(self)) return true;
        chosen.pop_back();
        used &= ~((1ULL << u) | (1ULL << a) | (1ULL << b));
      }
    }
    return false;
  };

  if (rec(rec)) {
    out.feasible = true;
    out.witness = chosen;
  }
  return out;
}

}  // namespace stabclust
