#include "stabclust/stability.hpp"

#include <algorithm>
#include <future>
#include <string>

#include "stabclust/rng.hpp"

namespace stabclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

StabilityMeasures measure_stability(const MetricInstance& inst,
                                    const Clustering& c) {
  validate_clustering(inst, c, true);
  const auto members = cluster_members(c);
  const auto& centers = *c.centers;
  StabilityMeasures m;

  size_t max_size = 0, min_size = std::numeric_limits<size_t>::max();
  for (const auto& cl : members) {
    max_size = std::max(max_size, cl.size());
    min_size = std::min(min_size, cl.size());
  }
  m.t = (min_size <= 1) ? kInf
                        : static_cast<double>(max_size) /
                              static_cast<double>(min_size - 1);

  for (int p = 0; p < inst.n(); ++p) {
    const int i = c.assignment[p];
    const double own_center = inst.d(p, centers[i]);
    const double own_set = point_to_set_distance(inst, p, members[i]);
    const double cluster_sz = static_cast<double>(members[i].size());
    for (int j = 0; j < c.k; ++j) {
      if (j == i) continue;
      const double rival_center = inst.d(p, centers[j]);
      if (own_center > 0.0)
        m.alpha_center = std::min(m.alpha_center, rival_center / own_center);
      m.beta_center_raw = std::min(m.beta_center_raw, rival_center - own_center);
      const double rival_set = point_to_set_distance(inst, p, members[j]);
      if (own_set > 0.0)
        m.alpha_minsum = std::min(m.alpha_minsum, rival_set / own_set);
      if (cluster_sz > 1.0)
        m.beta_minsum_raw = std::min(m.beta_minsum_raw,
                                     (rival_set - own_set) / (cluster_sz - 1.0));
    }
  }
  return m;
}

StabilityReport stability_profile(const MetricInstance& inst, int k,
                                  Objective objective,
                                  const EnumerationBudget& budget) {
  OptimumResult opt = (objective == Objective::KMedian)
                          ? brute_force_kmedian(inst, k, budget)
                          : brute_force_minsum(inst, k, budget);
  StabilityReport rep;
  rep.objective = objective;
  rep.unique_partition = opt.unique_partition;
  rep.all_optimal_count = opt.all_optimal_count;
  rep.clustering = opt.clustering;
  if (!rep.clustering.centers)
    rep.clustering.centers = medoid_centers(inst, rep.clustering);

  const StabilityMeasures m = measure_stability(inst, rep.clustering);
  rep.alpha_center = m.alpha_center;
  rep.alpha_minsum = m.alpha_minsum;
  rep.t = m.t;
  if (inst.within_unit_range()) {
    rep.beta_center = clamp01(m.beta_center_raw);
    rep.beta_minsum = clamp01(m.beta_minsum_raw);
  }
  rep.strict_separation = strict_separation_check(inst, rep.clustering).holds;
  return rep;
}

SeparationResult strict_separation_check(const MetricInstance& inst,
                                         const Clustering& c) {
  validate_clustering(inst, c, false);
  const int n = inst.n();
  for (int p = 0; p < n; ++p) {
    for (int pp = 0; pp < n; ++pp) {
      if (pp == p || c.assignment[pp] != c.assignment[p]) continue;
      const double within = inst.d(p, pp);
      for (int q = 0; q < n; ++q) {
        if (c.assignment[q] == c.assignment[p]) continue;
        if (inst.d(p, q) <= within)
          return {false, SeparationWitness{p, pp, q}};
      }
    }
  }
  return {true, std::nullopt};
}

double center_margin_factor(double alpha) {
  return alpha * (alpha - 1.0) / (alpha + 1.0);
}

MarginResult center_margin_check(const MetricInstance& inst,
                                 const Clustering& c, double alpha) {
  if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
  validate_clustering(inst, c, true);
  const auto members = cluster_members(c);
  const auto& centers = *c.centers;
  const double factor = center_margin_factor(alpha);
  for (int i = 0; i < c.k; ++i) {
    for (int j = 0; j < c.k; ++j) {
      if (j == i) continue;
      for (int p : members[i]) {
        const double rhs = factor * inst.d(centers[i], p);
        for (int pp : members[j]) {
          const double lhs = inst.d(centers[i], pp);
          if (!(lhs > rhs))
            return {false, MarginWitness{i, j, p, pp, lhs, rhs}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

LinkageConditionResult linkage_condition_check(const MetricInstance& inst,
                                               const Clustering& c, double alpha,
                                               long long subset_budget,
                                               uint64_t seed) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  validate_clustering(inst, c, false);
  const auto members = cluster_members(c);
  LinkageConditionResult out;
  out.holds = true;

  auto test_subset = [&](int ci, int cj, uint64_t mask) -> bool {
    const auto& cl = members[ci];
    std::vector<int> a, rest;
    for (size_t t = 0; t < cl.size(); ++t)
      ((mask >> t) & 1ULL ? a : rest).push_back(cl[t]);
    const double lhs = alpha * set_to_set_distance(inst, a, rest);
    const double rhs = set_to_set_distance(inst, a, members[cj]);
    if (!(lhs < rhs)) {
      out.holds = false;
      out.witness = LinkageConditionWitness{ci, cj, a, lhs, rhs};
      return false;
    }
    return true;
  };

  for (int ci = 0; ci < c.k && out.holds; ++ci) {
    const size_t sz = members[ci].size();
    if (sz < 2) continue;
    if (sz > 63)
      throw std::invalid_argument("clusters above 63 points are unsupported");
    const uint64_t count = (1ULL << sz) - 2;  // nonempty proper subsets
    for (int cj = 0; cj < c.k && out.holds; ++cj) {
      if (cj == ci) continue;
      if (sz <= 12) {
        for (uint64_t mask = 1; mask <= count; ++mask)
          if (!test_subset(ci, cj, mask)) break;
      } else {
        out.exhaustive = false;
        Rng rng = Rng::derive(seed, static_cast<uint64_t>(ci) * c.k + cj);
        for (long long s = 0; s < subset_budget; ++s) {
          uint64_t mask = 1 + rng.below(count);
          if (!test_subset(ci, cj, mask)) break;
        }
      }
    }
  }
  return out;
}

namespace {

struct PerturbationDraw {
  MetricInstance perturbed;
  std::vector<double> scale;
};

PerturbationDraw draw_perturbation(const MetricInstance& inst,
                                   PerturbationMode mode, double parameter,
                                   uint64_t seed, long long sample) {
  const int n = inst.n();
  Rng rng = Rng::derive(seed, static_cast<uint64_t>(sample));
  std::vector<double> scale(static_cast<size_t>(n) * n,
                            mode == PerturbationMode::Multiplicative ? 1.0 : 0.0);
  MetricInstance perturbed = inst;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double f;
      if (mode == PerturbationMode::Multiplicative) {
        f = rng.uniform(1.0, parameter);
        perturbed.set(i, j, inst.d(i, j) * f);
      } else {
        f = rng.uniform(0.0, parameter);
        perturbed.set(i, j, inst.d(i, j) + f);
      }
      scale[static_cast<size_t>(i) * n + j] = f;
      scale[static_cast<size_t>(j) * n + i] = f;
    }
  }
  return {std::move(perturbed), std::move(scale)};
}

std::vector<double> identity_scale(int n, PerturbationMode mode) {
  return std::vector<double>(static_cast<size_t>(n) * n,
                             mode == PerturbationMode::Multiplicative ? 1.0
                                                                      : 0.0);
}

OptimumResult solve(const MetricInstance& inst, int k, Objective objective,
                    const EnumerationBudget& budget) {
  return objective == Objective::KMedian ? brute_force_kmedian(inst, k, budget)
                                         : brute_force_minsum(inst, k, budget);
}

void check_mode_parameter(const MetricInstance& inst, PerturbationMode mode,
                          double parameter) {
  if (mode == PerturbationMode::Multiplicative) {
    if (!(parameter > 1.0))
      throw std::invalid_argument("multiplicative mode needs alpha > 1");
  } else {
    if (!(parameter > 0.0 && parameter <= 1.0))
      throw std::invalid_argument("additive mode needs 0 < beta <= 1");
    if (!inst.within_unit_range())
      throw std::invalid_argument(
          "additive perturbations require a unit-range instance");
  }
}

}  // namespace

FalsifierOutcome resilience_falsifier(const MetricInstance& inst, int k,
                                      Objective objective, PerturbationMode mode,
                                      double parameter, long long samples,
                                      uint64_t seed, int jobs,
                                      const EnumerationBudget& budget) {
  check_mode_parameter(inst, mode, parameter);
  if (samples < 0) throw std::invalid_argument("negative sample count");
  jobs = std::max(1, jobs);

  const OptimumResult baseline = solve(inst, k, objective, budget);
  FalsifierOutcome out;
  if (!baseline.unique_partition) {
    // The identity perturbation (within every band) already exhibits a tie.
    FalsificationWitness w;
    w.perturbed = inst;
    w.mode = mode;
    w.parameter = parameter;
    w.scale = identity_scale(inst.n(), mode);
    w.original_optimum = baseline.clustering;
    w.perturbed_optimum = baseline.alternate.value();
    w.reason = FalsificationWitness::Reason::OptimumNotUnique;
    w.sample_index = -1;
    out.witness = std::move(w);
    return out;
  }

  auto probe = [&](long long s) -> std::optional<FalsificationWitness> {
    PerturbationDraw draw = draw_perturbation(inst, mode, parameter, seed, s);
    OptimumResult opt = solve(draw.perturbed, k, objective, budget);
    const bool changed = !same_partition(opt.clustering, baseline.clustering);
    if (opt.unique_partition && !changed) return std::nullopt;
    FalsificationWitness w;
    w.perturbed = std::move(draw.perturbed);
    w.mode = mode;
    w.parameter = parameter;
    w.scale = std::move(draw.scale);
    w.original_optimum = baseline.clustering;
    w.perturbed_optimum = changed ? opt.clustering : opt.alternate.value();
    w.reason = opt.unique_partition
                   ? FalsificationWitness::Reason::OptimumChanged
                   : FalsificationWitness::Reason::OptimumNotUnique;
    w.sample_index = s;
    return w;
  };

  long long done = 0;
  while (done < samples) {
    const long long block =
        std::min<long long>(samples - done, jobs == 1 ? 1 : 8LL * jobs);
    std::vector<std::optional<FalsificationWitness>> results(block);
    if (jobs == 1) {
      for (long long b = 0; b < block; ++b) results[b] = probe(done + b);
    } else {
      std::vector<std::future<std::optional<FalsificationWitness>>> futs;
      futs.reserve(block);
      for (long long b = 0; b < block; ++b)
        futs.push_back(std::async(std::launch::async, probe, done + b));
      for (long long b = 0; b < block; ++b) results[b] = futs[b].get();
    }
    for (long long b = 0; b < block; ++b) {
      if (results[b]) {
        out.witness = std::move(results[b]);
        out.samples_run = done + b + 1;
        return out;
      }
    }
    done += block;
  }
  out.samples_run = samples;
  return out;
}

bool witness_band_valid(const MetricInstance& original,
                        const FalsificationWitness& w) {
  const int n = original.n();
  if (w.perturbed.n() != n) return false;
  constexpr double slack = 1e-12;
  for (int i = 0; i < n; ++i) {
    if (w.perturbed.d(i, i) != 0.0) return false;
    for (int j = i + 1; j < n; ++j) {
      const double d = original.d(i, j);
      const double dp = w.perturbed.d(i, j);
      if (w.perturbed.d(j, i) != dp) return false;
      const double hi = w.mode == PerturbationMode::Multiplicative
                            ? w.parameter * d
                            : d + w.parameter;
      if (dp < d - slack || dp > hi + slack) return false;
    }
  }
  return true;
}

bool witness_revalidates(const MetricInstance& original, int k,
                         Objective objective, const FalsificationWitness& w,
                         const EnumerationBudget& budget) {
  if (!witness_band_valid(original, w)) return false;
  const OptimumResult fresh = solve(w.perturbed, k, objective, budget);
  if (!fresh.unique_partition) return true;
  return !same_partition(fresh.clustering, w.original_optimum);
}

TargetedOutcome targeted_minsum_perturbation(const MetricInstance& inst, int k,
                                             PerturbationMode mode,
                                             double parameter, int p, int donor,
                                             int receiver,
                                             const EnumerationBudget& budget) {
  check_mode_parameter(inst, mode, parameter);
  const OptimumResult baseline = brute_force_minsum(inst, k, budget);
  const Clustering& cl = baseline.clustering;
  if (p < 0 || p >= inst.n()) throw std::out_of_range("point index out of range");
  if (donor < 0 || donor >= k || receiver < 0 || receiver >= k ||
      donor == receiver)
    throw std::invalid_argument("invalid donor/receiver cluster indices");
  if (cl.assignment[p] != donor)
    throw std::invalid_argument(
        "point is not in the donor cluster of the certified optimum");

  const auto members = cluster_members(cl);
  MetricInstance perturbed = inst;
  std::vector<double> scale = identity_scale(inst.n(), mode);
  for (int q : members[donor]) {
    if (q == p) continue;
    double f;
    if (mode == PerturbationMode::Multiplicative) {
      f = parameter;
      perturbed.set(p, q, inst.d(p, q) * f);
    } else {
      f = parameter;
      perturbed.set(p, q, inst.d(p, q) + f);
    }
    scale[static_cast<size_t>(p) * inst.n() + q] = f;
    scale[static_cast<size_t>(q) * inst.n() + p] = f;
  }

  TargetedOutcome out;
  out.kept_cost = minsum_cost(perturbed, cl).value;
  if (members[donor].size() == 1) {
    // Moving the sole member would drop a cluster; a singleton donor has
    // d(p, C_i) = 0, so the stability condition holds vacuously.
    out.moved_cost = std::numeric_limits<double>::infinity();
    return out;
  }
  Clustering moved = cl;
  moved.centers.reset();
  moved.assignment[p] = receiver;
  out.moved_cost = minsum_cost(perturbed, moved).value;

  const double diff = out.moved_cost - out.kept_cost;
  if (diff < -kCostTolerance || std::abs(diff) <= kCostTolerance) {
    Clustering original = cl;
    original.centers.reset();
    FalsificationWitness& w = out.witness.emplace();
    w.perturbed = std::move(perturbed);
    w.mode = mode;
    w.parameter = parameter;
    w.scale = std::move(scale);
    w.original_optimum = std::move(original);
    w.perturbed_optimum = std::move(moved);
    w.reason = diff < -kCostTolerance
                   ? FalsificationWitness::Reason::OptimumChanged
                   : FalsificationWitness::Reason::OptimumNotUnique;
    w.sample_index = -1;
  }
  return out;
}

}  // namespace stabclust
