#include "stabclust/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "stabclust/rng.hpp"
#include "stabclust/stability.hpp"

namespace stabclust {

void validate_threedm(const ThreeDMInstance& inst) {
  if (inst.m < 1) throw std::invalid_argument("ground sets must be nonempty");
  if (inst.triples.empty()) throw std::invalid_argument("triple list is empty");
  std::set<std::array<int, 3>> seen;
  for (const auto& t : inst.triples) {
    for (int v : t)
      if (v < 0 || v >= inst.m)
        throw std::invalid_argument("triple entry out of range");
    if (!seen.insert(t).second) throw std::invalid_argument("duplicate triple");
  }
}

const char* source_kind_name(SourceKind k) {
  switch (k) {
    case SourceKind::DomSet: return "domset";
    case SourceKind::TrianglePartition: return "triangle_partition";
    case SourceKind::ThreeDM: return "threedm";
  }
  return "unknown";
}

MetricInstance graph_to_halves_metric(const Graph& g) {
  const int n = g.n();
  if (n < 2) throw std::invalid_argument("need at least two vertices");
  std::vector<double> dist(static_cast<size_t>(n) * n, 0.0);
  MetricInstance inst(n, std::move(dist));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      inst.set(u, v, g.has_edge(u, v) ? 0.5 : 1.0);
  // Any two hops sum to at least 1, so the triangle inequality always holds.
  auto verdict = validate_metric(inst, true, true);
  if (!verdict.valid)
    throw std::logic_error("halves metric failed validation");
  return inst;
}

PdsppResult threedm_to_pdspp(const ThreeDMInstance& inst) {
  validate_threedm(inst);
  if (inst.m < 2)
    throw std::invalid_argument(
        "m must be at least 2; the apex-forcing argument needs multiple "
        "triple vertices");
  const int m = inst.m;
  const int L = static_cast<int>(inst.triples.size());
  const int n = 3 * m + L + 1;
  const int apex = 3 * m + L;
  std::vector<std::pair<int, int>> edges;
  for (int t = 0; t < L; ++t) {
    const int tv = 3 * m + t;
    edges.emplace_back(tv, inst.triples[t][0]);
    edges.emplace_back(tv, m + inst.triples[t][1]);
    edges.emplace_back(tv, 2 * m + inst.triples[t][2]);
    edges.emplace_back(tv, apex);
  }
  PdsppResult out{Graph(n, std::move(edges)), m + 1, {}};
  out.certificate = ReductionCertificate{SourceKind::ThreeDM, n, m + 1, m,
                                         std::nullopt, 2.0};
  return out;
}

KMedianHardnessInstance make_kmedian_hardness_instance(const Graph& g, int d) {
  if (d < 1 || d > g.n())
    throw std::invalid_argument("d must satisfy 1 <= d <= n");
  KMedianHardnessInstance out{graph_to_halves_metric(g), d, {}};
  out.certificate =
      ReductionCertificate{SourceKind::DomSet, g.n(), d, std::nullopt,
                           (g.n() - d) / 2.0, 2.0};
  return out;
}

MinSumHardnessInstance make_minsum_hardness_instance(const Graph& g) {
  if (g.n() % 3 != 0)
    throw std::invalid_argument("vertex count must be divisible by 3");
  MinSumHardnessInstance out{graph_to_halves_metric(g), g.n() / 3, {}, false};
  out.degree_warning = g.max_degree() > 4;
  out.certificate =
      ReductionCertificate{SourceKind::TrianglePartition, g.n(), g.n() / 3,
                           std::nullopt, static_cast<double>(g.n()), 2.0};
  return out;
}

namespace {

constexpr int kCertifiableSize = 20;
constexpr int kMaxDraws = 64;

PlantedInstance draw_planted(int k, const std::vector<int>& sizes, double gap,
                             Rng& rng, bool normalize_unit) {
  int n = 0;
  for (int s : sizes) n += s;
  std::vector<double> coords;
  coords.reserve(n);
  Clustering truth;
  truth.k = k;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < sizes[i]; ++j) {
      coords.push_back(i * gap + rng.uniform(-0.5, 0.5));
      truth.assignment.push_back(i);
    }
  }
  std::vector<double> dist(static_cast<size_t>(n) * n, 0.0);
  MetricInstance inst(n, std::move(dist));
  double maxd = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = std::abs(coords[i] - coords[j]);
      inst.set(i, j, d);
      maxd = std::max(maxd, d);
    }
  if (normalize_unit && maxd > 0.0) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inst.set(i, j, inst.d(i, j) / maxd);
  }
  validate_metric(inst, true, normalize_unit);
  truth.centers = medoid_centers(inst, truth);
  return PlantedInstance{std::move(inst), std::move(truth), false, 0.0};
}

}  // namespace

PlantedInstance planted_stable_instance(int k, const std::vector<int>& sizes,
                                        double target_alpha, uint64_t seed,
                                        bool normalize_unit) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (static_cast<int>(sizes.size()) != k)
    throw std::invalid_argument("sizes list must have k entries");
  if (!(target_alpha > 1.0))
    throw std::invalid_argument("target_alpha must exceed 1");
  int max_size = 0, n = 0;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("cluster sizes must be positive");
    max_size = std::max(max_size, s);
    n += s;
  }
  // Deliberately loose spacing; correctness rests on post-hoc certification.
  const double gap = 4.0 * target_alpha * max_size * k;

  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    Rng rng = Rng::derive(seed, static_cast<uint64_t>(attempt));
    PlantedInstance draw = draw_planted(k, sizes, gap, rng, normalize_unit);
    if (n > kCertifiableSize) return draw;

    StabilityReport rep =
        stability_profile(draw.instance, k, Objective::KMedian);
    if (rep.unique_partition &&
        same_partition(rep.clustering, draw.ground_truth) &&
        rep.alpha_center >= target_alpha) {
      draw.certified = true;
      draw.certified_alpha_center = rep.alpha_center;
      return draw;
    }
  }
  throw std::runtime_error(
      "no certifiable draw found; the spacing formula should make this "
      "unreachable");
}

}  // namespace stabclust
