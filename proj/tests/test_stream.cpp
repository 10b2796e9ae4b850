#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "stabclust/reductions.hpp"
#include "stabclust/stability.hpp"
#include "stabclust/stream.hpp"
#include "testutil.hpp"

using namespace stabclust;

TEST_CASE("a far newcomer evicts the newer half of a tight pair") {
  MetricInstance inst(3, std::vector<double>(9, 0.0));
  inst.set(0, 1, 0.1);
  inst.set(0, 2, 10.0);
  inst.set(1, 2, 10.0);

  StreamState state(2);
  DistanceOracle oracle = [&](int a, int b) { return inst.d(a, b); };
  state.step(0, oracle);
  state.step(1, oracle);
  state.step(2, oracle);  // argmin pair is (0,1); arrival 1 leaves
  CHECK(state.candidate_points() == std::vector<int>{0, 2});
  CHECK(state.last_eviction().evicted_point == 1);
  CHECK(state.last_eviction().partner_point == 0);
  CHECK(state.peak_candidates() == 2);
}

TEST_CASE("k = 1 retains the first point forever") {
  Rng rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    MetricInstance inst = testutil::random_unit_metric(8, rng);
    std::vector<int> order(8);
    for (int i = 0; i < 8; ++i) order[i] = i;
    rng.shuffle(order);
    auto run = stream_kmedian(inst, order, 1);
    CHECK(run.centers == std::vector<int>{order[0]});
  }
}

TEST_CASE("n = k keeps every point") {
  MetricInstance four = testutil::four_point_fixture();
  auto run = stream_kmedian(four, {2, 0, 3, 1}, 4);
  CHECK(run.centers.size() == 4);
  CHECK(run.peak_candidates == 4);
}

TEST_CASE("all 24 orderings of the four-point fixture recover the pairs") {
  MetricInstance four = testutil::four_point_fixture();
  std::vector<int> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end());
  do {
    auto run = stream_kmedian(four, order, 2);
    auto induced = induce_partition(four, run.centers);
    CHECK(canonical_labels(induced.assignment) ==
          std::vector<int>{0, 0, 1, 1});
    CHECK(run.peak_candidates == 2);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("planted instance at desk scale: stream equals the exact oracle") {
  auto planted = planted_stable_instance(3, {7, 6, 7}, kStrictSeparationAlpha, 21);
  const MetricInstance& inst = planted.instance;  // n = 20, certifiable
  REQUIRE(planted.certified);
  auto oracle_opt = brute_force_kmedian(inst, 3);

  Rng rng(77);
  for (int run_i = 0; run_i < 100; ++run_i) {
    std::vector<int> order(inst.n());
    for (int i = 0; i < inst.n(); ++i) order[i] = i;
    rng.shuffle(order);
    auto run = stream_kmedian(inst, order, 3);
    auto induced = induce_partition(inst, run.centers);
    CHECK(same_partition(induced, oracle_opt.clustering));
  }
}

TEST_CASE("instrumented replay: evictions stay inside ground-truth clusters") {
  auto planted = planted_stable_instance(3, {20, 20, 20}, 8.0, 5);
  const MetricInstance& inst = planted.instance;
  const auto& truth = planted.ground_truth.assignment;

  Rng rng(19);
  std::vector<int> order(inst.n());
  for (int i = 0; i < inst.n(); ++i) order[i] = i;
  rng.shuffle(order);

  StreamState state(3);
  std::set<int> evicted;
  DistanceOracle oracle = [&](int a, int b) {
    CHECK_FALSE(evicted.count(a));
    CHECK_FALSE(evicted.count(b));
    return inst.d(a, b);
  };
  bool covered = false;  // candidate set has hit every cluster
  long long seen = 0;
  for (int p : order) {
    const auto before = state.candidate_points();
    state.step(p, oracle);
    ++seen;
    if (static_cast<int>(before.size()) == state.k()) {
      const auto ev = state.last_eviction();
      evicted.insert(ev.evicted_point);
      // The argmin partner that stays shares the evictee's planted cluster.
      CHECK(truth[ev.evicted_point] == truth[ev.partner_point]);
    }
    std::set<int> clusters;
    for (int c : state.candidate_points()) clusters.insert(truth[c]);
    if (covered) CHECK(clusters.size() == 3);  // coverage never regresses
    if (clusters.size() == 3) covered = true;
    const auto pts = state.candidate_points();
    CHECK(static_cast<long long>(pts.size()) ==
          std::min<long long>(state.k(), seen));
    // Cached distances agree with the metric on all retained pairs.
    for (size_t a = 0; a < pts.size(); ++a)
      for (size_t b = a + 1; b < pts.size(); ++b)
        CHECK(state.cached_distance(static_cast<int>(a), static_cast<int>(b)) ==
              inst.d(pts[a], pts[b]));
  }
  CHECK(covered);
}

TEST_CASE("oracle calls per step stay linear in k") {
  MetricInstance four = testutil::four_point_fixture();
  auto run = stream_kmedian(four, {0, 1, 2, 3}, 2);
  // Steps see 0,1,2,2 retained candidates respectively: 5 calls total.
  CHECK(run.oracle_calls == 5);
}

TEST_CASE("induce_partition follows the nearest-center rule") {
  MetricInstance four = testutil::four_point_fixture();
  auto induced = induce_partition(four, {0, 2});
  CHECK(induced.assignment == std::vector<int>{0, 0, 1, 1});

  auto identity = induce_partition(four, {0, 1, 2, 3});
  CHECK(identity.assignment == std::vector<int>{0, 1, 2, 3});

  auto single = induce_partition(four, {3});
  CHECK(single.assignment == std::vector<int>{0, 0, 0, 0});

  CHECK_THROWS_AS(induce_partition(four, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(induce_partition(four, {}), std::invalid_argument);
}

TEST_CASE("replays are deterministic") {
  auto planted = planted_stable_instance(2, {6, 6}, 7.0, 2);
  std::vector<int> order(planted.instance.n());
  for (int i = 0; i < planted.instance.n(); ++i) order[i] = i;
  Rng rng(55);
  rng.shuffle(order);
  auto a = stream_kmedian(planted.instance, order, 2);
  auto b = stream_kmedian(planted.instance, order, 2);
  CHECK(a.centers == b.centers);
  CHECK(a.oracle_calls == b.oracle_calls);
}

TEST_CASE("stream argument validation") {
  MetricInstance four = testutil::four_point_fixture();
  CHECK_THROWS_AS(stream_kmedian(four, {0, 1, 2, 3}, 5), std::invalid_argument);
  CHECK_THROWS_AS(stream_kmedian(four, {0, 1, 2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(stream_kmedian(four, {0, 1, 2, 2}, 2), std::invalid_argument);
}
