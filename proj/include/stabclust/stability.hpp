#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include "stabclust/metric.hpp"
#include "stabclust/oracles.hpp"

namespace stabclust {

inline const double kStrictSeparationAlpha = 0.5 * (5.0 + std::sqrt(41.0));

// Raw stability measures of a clustering-with-centers, reported as suprema:
// the instance satisfies the corresponding strict-inequality property for
// every parameter strictly below the reported value. Terms with a zero
// denominator (a point at its own center, singleton clusters for min-sum)
// contribute +infinity.
struct StabilityMeasures {
  double alpha_center = std::numeric_limits<double>::infinity();
  double alpha_minsum = std::numeric_limits<double>::infinity();
  double beta_center_raw = std::numeric_limits<double>::infinity();
  double beta_minsum_raw = std::numeric_limits<double>::infinity();
  double t = std::numeric_limits<double>::infinity();  // max|C| / (min|C| - 1)
};

StabilityMeasures measure_stability(const MetricInstance& inst,
                                    const Clustering& with_centers);

struct StabilityReport {
  double alpha_center = std::numeric_limits<double>::infinity();
  double alpha_minsum = std::numeric_limits<double>::infinity();
  std::optional<double> beta_center;  // in [0,1]; defined only on unit-range instances
  std::optional<double> beta_minsum;
  double t = std::numeric_limits<double>::infinity();
  bool strict_separation = false;
  bool unique_partition = false;
  long long all_optimal_count = 0;
  Objective objective = Objective::KMedian;
  Clustering clustering;  // certified optimum; medoid centers for min-sum
};

// Computes the exact optimum for the requested objective and evaluates every
// stability measure against it. When the optimal partition is not unique the
// report is still produced against the lexicographically first optimum and
// flagged via unique_partition = false.
StabilityReport stability_profile(const MetricInstance& inst, int k,
                                  Objective objective,
                                  const EnumerationBudget& budget = {});

struct SeparationWitness {
  int p = -1, p_prime = -1, q = -1;
};

struct SeparationResult {
  bool holds = false;
  std::optional<SeparationWitness> witness;
};

// Checks d(p,q) > d(p,p') for every co-clustered p,p' and q from a different
// cluster; returns the lexicographically first violating triple.
SeparationResult strict_separation_check(const MetricInstance& inst,
                                         const Clustering& c);

// alpha*(alpha-1)/(alpha+1); equals 4 at alpha = (5+sqrt(41))/2.
double center_margin_factor(double alpha);

struct MarginWitness {
  int i = -1, j = -1, p = -1, p_prime = -1;
  double lhs = 0.0, rhs = 0.0;
};

struct MarginResult {
  bool holds = false;
  std::optional<MarginWitness> witness;
};

// Verifies d(c_i, p') > factor(alpha) * d(c_i, p) for all p in C_i and p' in
// any other cluster C_j. Requires alpha > 1 and centers.
MarginResult center_margin_check(const MetricInstance& inst,
                                 const Clustering& c, double alpha);

struct LinkageConditionWitness {
  int cluster = -1, rival = -1;
  std::vector<int> subset;
  double lhs = 0.0, rhs = 0.0;  // alpha*d(A, C\A) vs d(A, C')
};

struct LinkageConditionResult {
  bool holds = false;
  std::optional<LinkageConditionWitness> witness;
  bool exhaustive = true;
};

// For every ordered pair of distinct clusters (C, C') and nonempty proper
// subset A of C, checks alpha * d(A, C\A) < d(A, C'). Exhaustive for clusters
// of at most 12 points, otherwise subset_budget seeded random subsets.
LinkageConditionResult linkage_condition_check(const MetricInstance& inst,
                                               const Clustering& c, double alpha,
                                               long long subset_budget = 4096,
                                               uint64_t seed = 0);

enum class PerturbationMode { Multiplicative, Additive };

struct FalsificationWitness {
  MetricInstance perturbed;
  PerturbationMode mode = PerturbationMode::Multiplicative;
  double parameter = 0.0;     // alpha or beta
  std::vector<double> scale;  // row-major multipliers or offsets applied
  Clustering original_optimum;
  Clustering perturbed_optimum;
  enum class Reason { OptimumChanged, OptimumNotUnique } reason =
      Reason::OptimumChanged;
  long long sample_index = -1;  // -1: unperturbed instance or targeted build
};

struct FalsifierOutcome {
  std::optional<FalsificationWitness> witness;
  long long samples_run = 0;
};

// Samples symmetric perturbations with independent per-pair multipliers in
// [1, alpha] (or offsets in [0, beta]), never enforcing the triangle
// inequality, and recomputes the exact optimum under each. Returns the witness
// with the lowest sample index, or no-counterexample evidence. Identical
// (inputs, seed) yield identical outcomes regardless of jobs.
FalsifierOutcome resilience_falsifier(const MetricInstance& inst, int k,
                                      Objective objective, PerturbationMode mode,
                                      double parameter, long long samples,
                                      uint64_t seed, int jobs = 1,
                                      const EnumerationBudget& budget = {});

// Witness band constraints: d <= d' <= alpha*d (or d + beta), symmetry, zero
// diagonal.
bool witness_band_valid(const MetricInstance& original,
                        const FalsificationWitness& w);

// Re-derives the optimum of the perturbed instance with a fresh oracle call
// and confirms the witness still falsifies resilience.
bool witness_revalidates(const MetricInstance& original, int k,
                         Objective objective, const FalsificationWitness& w,
                         const EnumerationBudget& budget = {});

struct TargetedOutcome {
  std::optional<FalsificationWitness> witness;  // empty: stability confirmed
  double kept_cost = 0.0;
  double moved_cost = 0.0;
};

// Builds the single-point perturbation that scales (or shifts) every distance
// from p into its own certified min-sum cluster, then tests whether moving p
// from `donor` to `receiver` beats keeping the certified partition under the
// perturbed distances. A tie yields an OptimumNotUnique witness.
TargetedOutcome targeted_minsum_perturbation(const MetricInstance& inst, int k,
                                             PerturbationMode mode,
                                             double parameter, int p, int donor,
                                             int receiver,
                                             const EnumerationBudget& budget = {});

}  // namespace stabclust
