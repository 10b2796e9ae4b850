#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabclust/oracles.hpp"
#include "testutil.hpp"

using namespace stabclust;

namespace {

Graph path4() { return Graph(4, {{0, 1}, {1, 2}, {2, 3}}); }

Graph star13() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}}); }

Graph two_triangles() {
  return Graph(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
}

}  // namespace

TEST_CASE("graph construction rejects malformed edges") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(3, {{0, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(Graph(0, {}), std::invalid_argument);
}

TEST_CASE("brute-force k-median matches hand-checked optima") {
  MetricInstance four = testutil::four_point_fixture();

  // All six center pairs by hand: {0,2},{0,3},{1,2},{1,3} induce the paired
  // partition at cost 0.2; {0,1} and {2,3} strand one side at cost 2.1.
  auto res = brute_force_kmedian(four, 2);
  CHECK(res.cost.value == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(res.clustering.assignment == std::vector<int>{0, 0, 1, 1});
  REQUIRE(res.clustering.centers.has_value());
  CHECK(*res.clustering.centers == std::vector<int>{0, 2});
  CHECK(res.unique_partition);
  CHECK(res.all_optimal_count == 1);

  auto all = brute_force_kmedian(four, 4);
  CHECK(all.cost.value == 0.0);

  // Star metric, k = 1: the hub center pays 3 * 1/2.
  MetricInstance star = graph_to_halves_metric(star13());
  auto hub = brute_force_kmedian(star, 1);
  CHECK(hub.cost.value == 1.5);
  CHECK(*hub.clustering.centers == std::vector<int>{0});
}

TEST_CASE("k-median never beats the oracle on supplied clusterings") {
  Rng rng(5);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = rng.uniform_int(4, 10);
    MetricInstance inst = testutil::random_unit_metric(n, rng);
    const int k = rng.uniform_int(1, 3);
    auto oracle = brute_force_kmedian(inst, k);
    for (int other = 0; other < 5; ++other) {
      std::vector<int> assignment(n);
      for (int i = 0; i < k; ++i) assignment[i] = i;
      for (int i = k; i < n; ++i) assignment[i] = rng.uniform_int(0, k - 1);
      Clustering c = testutil::clustering_of(assignment, k);
      c.centers = medoid_centers(inst, c);
      CHECK(oracle.cost.value <= kmedian_cost(inst, c).value + 1e-12);
    }
  }
}

TEST_CASE("center enumeration agrees with medoid-per-block enumeration") {
  // Independent route to the k-median optimum: enumerate set partitions and
  // price each block at its medoid. Both routes must land on the same cost.
  Rng rng(61);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = rng.uniform_int(4, 9);
    MetricInstance inst = testutil::random_unit_metric(n, rng);
    const int k = rng.uniform_int(2, 3);

    auto by_centers = brute_force_kmedian(inst, k);

    double by_partitions = std::numeric_limits<double>::infinity();
    std::vector<int> assignment(n, -1);
    auto rec = [&](auto&& self, int i, int blocks) -> void {
      if (i == n) {
        if (blocks != k) return;
        Clustering c = testutil::clustering_of(assignment, k);
        c.centers = medoid_centers(inst, c);
        by_partitions = std::min(by_partitions, kmedian_cost(inst, c).value);
        return;
      }
      for (int b = 0; b < blocks; ++b) {
        assignment[i] = b;
        self(self, i + 1, blocks);
      }
      if (blocks < k) {
        assignment[i] = blocks;
        self(self, i + 1, blocks + 1);
      }
      assignment[i] = -1;
    };
    assignment[0] = 0;
    rec(rec, 1, 1);

    CHECK(by_centers.cost.value ==
          doctest::Approx(by_partitions).epsilon(1e-12));
  }
}

TEST_CASE("brute-force min-sum matches hand-checked optima") {
  MetricInstance reduced = graph_to_halves_metric(two_triangles());
  auto res = brute_force_minsum(reduced, 2);
  CHECK(res.cost.value == 6.0);  // n with both triangles tight
  CHECK(res.unique_partition);
  CHECK(canonical_labels(res.clustering.assignment) ==
        std::vector<int>{0, 0, 0, 1, 1, 1});

  MetricInstance four = testutil::four_point_fixture();
  CHECK(brute_force_minsum(four, 4).cost.value == 0.0);

  auto paired = brute_force_minsum(four, 2);
  CHECK(paired.cost.value == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(paired.clustering.assignment == std::vector<int>{0, 0, 1, 1});
}

TEST_CASE("min-sum oracle agrees with itself under point relabeling") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = rng.uniform_int(4, 9);
    MetricInstance inst = testutil::random_unit_metric(n, rng);
    const int k = rng.uniform_int(2, 3);
    auto base = brute_force_minsum(inst, k);

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(perm);
    MetricInstance permuted = testutil::permute_instance(inst, perm);
    auto again = brute_force_minsum(permuted, k);
    CHECK(again.cost.value == doctest::Approx(base.cost.value).epsilon(1e-12));

    // Map the permuted optimum back and compare partitions.
    std::vector<int> back(n);
    for (int p = 0; p < n; ++p) back[p] = again.clustering.assignment[perm[p]];
    CHECK(canonical_labels(back) ==
          canonical_labels(base.clustering.assignment));
  }
}

TEST_CASE("enumeration budgets abort instead of truncating") {
  Rng rng(9);
  MetricInstance inst = testutil::random_unit_metric(12, rng);
  EnumerationBudget tiny;
  tiny.center_subsets = 10;
  tiny.partitions = 10;
  CHECK_THROWS_AS(brute_force_kmedian(inst, 3, tiny), BudgetExceeded);
  CHECK_THROWS_AS(brute_force_minsum(inst, 3, tiny), BudgetExceeded);
}

TEST_CASE("minimum dominating sets on the named graphs") {
  auto star = min_dominating_set(star13(), 4);
  REQUIRE(star.has_value());
  CHECK(star->size == 1);
  CHECK(star->vertices == std::vector<int>{0});

  // P4 has four dominating pairs: {0,2},{0,3},{1,2},{1,3}; the smallest
  // in lexicographic order is {0,2}.
  auto p4 = min_dominating_set(path4(), 4);
  REQUIRE(p4.has_value());
  CHECK(p4->size == 2);
  CHECK(p4->vertices == std::vector<int>{0, 2});

  auto empty3 = min_dominating_set(Graph(3, {}), 3);
  REQUIRE(empty3.has_value());
  CHECK(empty3->size == 3);

  CHECK_FALSE(min_dominating_set(path4(), 1).has_value());
}

TEST_CASE("the whole vertex set always dominates") {
  Rng rng(13);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = rng.uniform_int(1, 9);
    const int bits = n * (n - 1) / 2;
    uint64_t mask = 0;
    for (int b = 0; b < bits; ++b)
      if (rng.uniform01() < 0.4) mask |= 1ULL << b;
    Graph g = testutil::graph_from_mask(n, mask);
    CHECK(min_dominating_set(g, n).has_value());
  }
}

TEST_CASE("perfect domination predicate") {
  CHECK(is_perfect_dominating(path4(), {1, 2}));
  CHECK_FALSE(is_perfect_dominating(path4(), {0, 2}));  // vertex 1 sees both
  CHECK(is_perfect_dominating(path4(), {0, 1, 2, 3}));  // vacuously perfect
  CHECK_THROWS_AS(is_perfect_dominating(path4(), {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(is_perfect_dominating(path4(), {9}), std::invalid_argument);

  // {0,3} is perfect too (1 sees only 0, 2 sees only 3) and comes first.
  auto perfect = min_perfect_dominating_set(path4(), 4);
  REQUIRE(perfect.has_value());
  CHECK(perfect->vertices == std::vector<int>{0, 3});
}

TEST_CASE("triangle partition decisions") {
  auto k3 = triangle_partition_decide(Graph(3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(k3.feasible);
  REQUIRE(k3.witness.size() == 1);
  CHECK(k3.witness[0] == std::array<int, 3>{0, 1, 2});

  auto p3 = triangle_partition_decide(Graph(3, {{0, 1}, {1, 2}}));
  CHECK_FALSE(p3.feasible);

  auto two = triangle_partition_decide(two_triangles());
  CHECK(two.feasible);
  CHECK(two.witness.size() == 2);
  CHECK_FALSE(two.degree_warning);

  CHECK_THROWS_AS(triangle_partition_decide(path4()), std::invalid_argument);

  // K6 has degree 5, above the regime where the stability floor is certified.
  std::vector<std::pair<int, int>> k6edges;
  for (int u = 0; u < 6; ++u)
    for (int v = u + 1; v < 6; ++v) k6edges.emplace_back(u, v);
  auto k6 = triangle_partition_decide(Graph(6, std::move(k6edges)));
  CHECK(k6.feasible);
  CHECK(k6.degree_warning);
}

TEST_CASE("promise checker spots imperfect dominating sets") {
  // Two disjoint 3-cliques: the only dominating pairs pick one vertex per
  // clique and every such pair is perfect.
  Graph cliques(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}});
  CHECK(all_dominating_sets_perfect(cliques, 2).holds);

  // P4: {0,2} dominates but vertex 1 has two neighbors in it.
  auto res = all_dominating_sets_perfect(path4(), 2);
  CHECK_FALSE(res.holds);
  REQUIRE(res.imperfect_witness.has_value());
  CHECK(is_perfect_dominating(path4(), *res.imperfect_witness) == false);
}
