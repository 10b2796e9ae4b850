#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stabclust/stability.hpp"
#include "testutil.hpp"

using namespace stabclust;

TEST_CASE("stability profile of the four-point fixture") {
  MetricInstance four = testutil::four_point_fixture();
  auto rep = stability_profile(four, 2, Objective::KMedian);
  CHECK(rep.alpha_center == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(rep.alpha_minsum == doctest::Approx(20.0).epsilon(1e-12));
  REQUIRE(rep.beta_center.has_value());
  CHECK(*rep.beta_center == doctest::Approx(0.9).epsilon(1e-12));
  REQUIRE(rep.beta_minsum.has_value());
  CHECK(*rep.beta_minsum == 1.0);  // clamped from 1.9
  CHECK(rep.t == 2.0);
  CHECK(rep.strict_separation);
  CHECK(rep.unique_partition);
  CHECK(rep.clustering.assignment == std::vector<int>{0, 0, 1, 1});

  auto ms = stability_profile(four, 2, Objective::MinSum);
  CHECK(ms.alpha_minsum == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(ms.unique_partition);
}

TEST_CASE("profile flags non-unique optima instead of failing") {
  MetricInstance tri = testutil::constant_metric(3, 1.0);
  auto rep = stability_profile(tri, 2, Objective::KMedian);
  CHECK_FALSE(rep.unique_partition);
  // Nearest-center assignment with ties to the lower center index induces
  // two of the three symmetric optima.
  CHECK(rep.all_optimal_count == 2);

  auto ms = stability_profile(tri, 2, Objective::MinSum);
  CHECK_FALSE(ms.unique_partition);
  CHECK(ms.all_optimal_count == 3);  // partition enumeration sees all three
}

TEST_CASE("single cluster profiles have no rivals") {
  MetricInstance four = testutil::four_point_fixture();
  auto rep = stability_profile(four, 1, Objective::KMedian);
  CHECK(std::isinf(rep.alpha_center));
  CHECK(rep.t == doctest::Approx(4.0 / 3.0));
  CHECK(rep.strict_separation);  // vacuous
}

TEST_CASE("strict separation check and witnesses") {
  MetricInstance four = testutil::four_point_fixture();
  CHECK(strict_separation_check(four, testutil::clustering_of({0, 0, 1, 1}, 2))
            .holds);

  MetricInstance half = testutil::constant_metric(3, 0.5);
  auto res =
      strict_separation_check(half, testutil::clustering_of({0, 0, 1}, 2));
  CHECK_FALSE(res.holds);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->p == 0);
  CHECK(res.witness->p_prime == 1);
  CHECK(res.witness->q == 2);

  CHECK(strict_separation_check(half, testutil::clustering_of({0, 0, 0}, 1))
            .holds);
}

TEST_CASE("center margin factor hits 4 at the separation threshold") {
  CHECK(center_margin_factor(kStrictSeparationAlpha) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(center_margin_factor(2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("center margin check on the four-point fixture") {
  MetricInstance four = testutil::four_point_fixture();
  Clustering c = testutil::clustering_of({0, 0, 1, 1}, 2, {0, 2});

  CHECK(center_margin_check(four, c, 2.0).holds);
  CHECK(center_margin_check(four, c, 10.0).holds);  // factor 90/11 < 10

  // The margin collapses when the factor reaches 10, at alpha =
  // (11 + sqrt(161)) / 2; check both sides of that boundary.
  const double boundary = 0.5 * (11.0 + std::sqrt(161.0));
  CHECK(center_margin_check(four, c, boundary - 0.05).holds);
  auto broken = center_margin_check(four, c, boundary + 0.05);
  CHECK_FALSE(broken.holds);
  REQUIRE(broken.witness.has_value());
  CHECK(broken.witness->p == 1);  // the non-center point

  CHECK_THROWS_AS(center_margin_check(four, c, 1.0), std::invalid_argument);
}

TEST_CASE("linkage condition: singleton subsets recover the point ratios") {
  MetricInstance four = testutil::four_point_fixture();
  Clustering c = testutil::clustering_of({0, 0, 1, 1}, 2);
  CHECK(linkage_condition_check(four, c, 2.0).holds);

  MetricInstance half = testutil::constant_metric(3, 0.5);
  Clustering split = testutil::clustering_of({0, 0, 1}, 2);
  auto res = linkage_condition_check(half, split, 2.0);
  CHECK_FALSE(res.holds);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->subset == std::vector<int>{0});
  CHECK(res.witness->lhs == 1.0);
  CHECK(res.witness->rhs == 0.5);
}

TEST_CASE("singleton stability implies the full subset condition") {
  Rng rng(31);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = rng.uniform_int(5, 10);
    MetricInstance inst = testutil::random_unit_metric(n, rng);
    auto opt = brute_force_minsum(inst, 2);
    Clustering c = opt.clustering;
    c.centers = medoid_centers(inst, c);
    const double alpha_minsum = measure_stability(inst, c).alpha_minsum;
    if (!(alpha_minsum > 0.0) || std::isinf(alpha_minsum)) continue;
    // Below the measured supremum every subset passes; just above it the
    // argmin point itself is a violating singleton.
    CHECK(linkage_condition_check(inst, c, 0.999 * alpha_minsum).holds);
    auto above = linkage_condition_check(inst, c, 1.001 * alpha_minsum);
    CHECK_FALSE(above.holds);
  }
}

TEST_CASE("subset sampling kicks in above 12-point clusters") {
  // Two planted clusters of 14 and 3 points: exhaustive subsets are off for
  // the large cluster, so the check samples and reports exhaustive = false.
  auto planted = planted_stable_instance(2, {14, 3}, 5.0, 61);
  Clustering truth = planted.ground_truth;
  auto ok = linkage_condition_check(planted.instance, truth, 1.5, 512, 9);
  CHECK(ok.holds);
  CHECK_FALSE(ok.exhaustive);

  // An absurd alpha is refuted by sampled subsets as well.
  auto bad = linkage_condition_check(planted.instance, truth, 1e9, 512, 9);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness.has_value());

  // Same seed, same witness subset.
  auto bad2 = linkage_condition_check(planted.instance, truth, 1e9, 512, 9);
  REQUIRE(bad2.witness.has_value());
  CHECK(bad2.witness->subset == bad.witness->subset);
}

TEST_CASE("degenerate profile shapes stay well-defined") {
  MetricInstance one(1, {0.0});
  auto rep = stability_profile(one, 1, Objective::KMedian);
  CHECK(std::isinf(rep.alpha_center));
  CHECK(std::isinf(rep.t));  // singleton cluster
  CHECK(rep.unique_partition);

  MetricInstance four = testutil::four_point_fixture();
  auto all = stability_profile(four, 4, Objective::MinSum);
  CHECK(std::isinf(all.alpha_minsum));  // every cluster is a singleton
  CHECK(std::isinf(all.t));
  REQUIRE(all.beta_minsum.has_value());
  CHECK(*all.beta_minsum == 1.0);  // clamped from +inf
}

TEST_CASE("falsifier reports symmetric instances as non-unique immediately") {
  MetricInstance tri = testutil::constant_metric(3, 1.0);
  auto out = resilience_falsifier(tri, 2, Objective::KMedian,
                                  PerturbationMode::Multiplicative, 1.5, 100, 3);
  REQUIRE(out.witness.has_value());
  CHECK(out.witness->reason ==
        FalsificationWitness::Reason::OptimumNotUnique);
  CHECK(out.witness->sample_index == -1);
  CHECK(out.samples_run == 0);
  CHECK(witness_band_valid(tri, *out.witness));
}

TEST_CASE("falsifier finds nothing below the stability supremum") {
  MetricInstance four = testutil::four_point_fixture();
  auto out = resilience_falsifier(four, 2, Objective::KMedian,
                                  PerturbationMode::Multiplicative, 1.5, 500, 7);
  CHECK_FALSE(out.witness.has_value());
  CHECK(out.samples_run == 500);
}

TEST_CASE("falsifier succeeds well above the supremum and re-validates") {
  MetricInstance four = testutil::four_point_fixture();
  auto out = resilience_falsifier(four, 2, Objective::KMedian,
                                  PerturbationMode::Multiplicative, 30.0, 1000, 7);
  REQUIRE(out.witness.has_value());
  CHECK(witness_band_valid(four, *out.witness));
  CHECK(witness_revalidates(four, 2, Objective::KMedian, *out.witness));

  // Same seed, same outcome, regardless of worker count.
  auto again = resilience_falsifier(four, 2, Objective::KMedian,
                                    PerturbationMode::Multiplicative, 30.0,
                                    1000, 7, 4);
  REQUIRE(again.witness.has_value());
  CHECK(again.witness->sample_index == out.witness->sample_index);
  CHECK(again.samples_run == out.samples_run);
}

TEST_CASE("additive falsification bands respect the measured supremum") {
  MetricInstance four = testutil::four_point_fixture();
  // beta_center is 0.9; additive perturbations below it cannot flip.
  auto safe = resilience_falsifier(four, 2, Objective::KMedian,
                                   PerturbationMode::Additive, 0.8, 400, 5);
  CHECK_FALSE(safe.witness.has_value());

  auto risky = resilience_falsifier(four, 2, Objective::KMedian,
                                    PerturbationMode::Additive, 1.0, 2000, 5);
  if (risky.witness) {
    CHECK(witness_band_valid(four, *risky.witness));
    CHECK(witness_revalidates(four, 2, Objective::KMedian, *risky.witness));
  }
}

TEST_CASE("falsifier validates parameters") {
  MetricInstance four = testutil::four_point_fixture();
  CHECK_THROWS_AS(resilience_falsifier(four, 2, Objective::KMedian,
                                       PerturbationMode::Multiplicative, 1.0,
                                       10, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(resilience_falsifier(four, 2, Objective::KMedian,
                                       PerturbationMode::Additive, 1.5, 10, 0),
                  std::invalid_argument);
}

TEST_CASE("targeted min-sum perturbation realizes the single-point proof") {
  MetricInstance four = testutil::four_point_fixture();

  // alpha = 2 is far below the measured supremum of 20: every move confirmed.
  for (int p = 0; p < 4; ++p) {
    const int donor = p < 2 ? 0 : 1;
    const int receiver = 1 - donor;
    auto out = targeted_minsum_perturbation(
        four, 2, PerturbationMode::Multiplicative, 2.0, p, donor, receiver);
    CHECK_FALSE(out.witness.has_value());
  }

  // alpha = 25 exceeds it: scaling point 0's in-cluster distances makes the
  // move strictly cheaper.
  auto out = targeted_minsum_perturbation(
      four, 2, PerturbationMode::Multiplicative, 25.0, 0, 0, 1);
  REQUIRE(out.witness.has_value());
  CHECK(out.witness->reason == FalsificationWitness::Reason::OptimumChanged);
  CHECK(out.moved_cost < out.kept_cost);
  CHECK(witness_band_valid(four, *out.witness));
  CHECK(witness_revalidates(four, 2, Objective::MinSum, *out.witness));

  // At exactly the supremum the kept and moved solutions tie.
  auto tie = targeted_minsum_perturbation(
      four, 2, PerturbationMode::Multiplicative, 20.0, 0, 0, 1);
  REQUIRE(tie.witness.has_value());
  CHECK(tie.witness->reason == FalsificationWitness::Reason::OptimumNotUnique);

  // Additive mode with the width maxed out stays confirmed: 0.1 + 1 < 2.
  auto add = targeted_minsum_perturbation(four, 2, PerturbationMode::Additive,
                                          1.0, 0, 0, 1);
  CHECK_FALSE(add.witness.has_value());

  CHECK_THROWS_AS(targeted_minsum_perturbation(
                      four, 2, PerturbationMode::Multiplicative, 2.0, 0, 1, 0),
                  std::invalid_argument);  // p not in donor
}

TEST_CASE("additive suprema bound the multiplicative ones") {
  Rng rng(41);
  int tested = 0;
  for (int rep = 0; rep < 200 && tested < 100; ++rep) {
    const int n = rng.uniform_int(4, 9);
    MetricInstance inst = testutil::random_unit_metric(n, rng);
    const int k = rng.uniform_int(2, 3);

    auto km = stability_profile(inst, k, Objective::KMedian);
    if (km.unique_partition && km.beta_center && *km.beta_center < 1.0) {
      CHECK(km.alpha_center >= 1.0 / (1.0 - *km.beta_center) - 1e-12);
      ++tested;
    }
    auto ms = stability_profile(inst, k, Objective::MinSum);
    if (ms.unique_partition && ms.beta_minsum && !std::isinf(ms.t) &&
        *ms.beta_minsum < ms.t) {
      CHECK(ms.alpha_minsum >= 1.0 / (1.0 - *ms.beta_minsum / ms.t) - 1e-12);
    }
  }
  CHECK(tested >= 50);
}

TEST_CASE("measured alpha is at least 1 on k-median optima") {
  Rng rng(43);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = rng.uniform_int(4, 9);
    MetricInstance inst = testutil::random_unit_metric(n, rng);
    auto rep_km = stability_profile(inst, 2, Objective::KMedian);
    CHECK(rep_km.alpha_center >= 1.0);
  }
}
