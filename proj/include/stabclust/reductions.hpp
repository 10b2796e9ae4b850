#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "stabclust/metric.hpp"
#include "stabclust/oracles.hpp"

namespace stabclust {

// Triple system over three ground sets of m elements each.
struct ThreeDMInstance {
  int m = 0;
  std::vector<std::array<int, 3>> triples;
};

// Throws std::invalid_argument on out-of-range entries, duplicates, or an
// empty triple list.
void validate_threedm(const ThreeDMInstance& inst);

enum class SourceKind { DomSet, TrianglePartition, ThreeDM };

const char* source_kind_name(SourceKind k);

struct ReductionCertificate {
  SourceKind source_kind = SourceKind::DomSet;
  int n = 0;  // points of the produced instance (or vertices of the graph)
  int k = 0;  // cluster count, or the dominating-set size bound
  std::optional<int> m;  // ground-set size for triple systems
  std::optional<double> expected_cost;  // closed-form optimum for yes-instances
  double stability_floor = 2.0;
};

// Edge -> 1/2, non-edge -> 1. Always triangle-valid and unit-range.
MetricInstance graph_to_halves_metric(const Graph& g);

struct PdsppResult {
  Graph graph;
  int d = 0;  // dominating-set size bound, m + 1
  ReductionCertificate certificate;
};

// Vertex layout is frozen: elements of the three ground sets occupy
// [0,m), [m,2m), [2m,3m); triple vertices [3m, 3m+L); the apex vertex is
// 3m+L. Each triple vertex connects to its three elements and to the apex.
// Requires m >= 2: with a single ground element the size accounting that
// forces the apex into small dominating sets degenerates.
PdsppResult threedm_to_pdspp(const ThreeDMInstance& inst);

struct KMedianHardnessInstance {
  MetricInstance instance;
  int k = 0;
  ReductionCertificate certificate;
};

// Halves metric with k = d; expected optimal cost (n - k) / 2 when a
// dominating set of size d exists.
KMedianHardnessInstance make_kmedian_hardness_instance(const Graph& g, int d);

struct MinSumHardnessInstance {
  MetricInstance instance;
  int k = 0;
  ReductionCertificate certificate;
  bool degree_warning = false;  // stability floor is certified only for degree <= 4
};

// Halves metric with k = n/3; expected optimal cost n when a triangle
// partition exists.
MinSumHardnessInstance make_minsum_hardness_instance(const Graph& g);

struct PlantedInstance {
  MetricInstance instance;
  Clustering ground_truth;  // planted partition with medoid centers
  bool certified = false;   // exact oracle confirmed the planted optimum
  double certified_alpha_center = 0.0;
};

// Places cluster i on a unit-width segment centered at i*G with
// G = 4 * target_alpha * max(sizes) * k; distances are coordinate gaps,
// optionally normalized to max 1. Draws are certified by the exact oracle up
// to 20 points (re-drawing on failure); larger instances carry
// certified = false and only assert the planted clustering.
PlantedInstance planted_stable_instance(int k, const std::vector<int>& sizes,
                                        double target_alpha, uint64_t seed,
                                        bool normalize_unit = true);

}  // namespace stabclust
