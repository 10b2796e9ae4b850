#pragma once

#include <istream>
#include <optional>
#include <string>

#include <json.hpp>

#include "stabclust/linkage.hpp"
#include "stabclust/reductions.hpp"
#include "stabclust/stability.hpp"

namespace stabclust {

// Insertion-ordered JSON keeps serialized output byte-stable.
using json = nlohmann::ordered_json;

struct LoadOptions {
  bool require_triangle = false;  // perturbed instances need not be metric
  bool require_unit = false;
  bool allow_zero_distances = false;
};

struct LoadedInstance {
  MetricInstance instance;
  std::optional<Clustering> ground_truth;
  ValidationVerdict verdict;
};

// Canonical instance format: {"n": int, "d": [[...], ...], "ground_truth":
// {"assignment": [...], "centers": [...]}} with ground_truth (and centers)
// optional. Rejects ragged rows and any constraint required by the options.
LoadedInstance instance_from_json(const json& j, const LoadOptions& opts = {});
json instance_to_json(const MetricInstance& inst,
                      const std::optional<Clustering>& ground_truth = {});

LoadedInstance load_instance(const std::string& path,
                             const LoadOptions& opts = {});
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
void save_json(const json& j, const std::string& path);

// Graph text format: "n m" header, then m lines "u v" (0-based).
Graph graph_from_text(std::istream& in);
std::string graph_to_text(const Graph& g);
Graph load_graph(const std::string& path);

// Triple-system text format: "m L" header, then L lines "x y z" (0-based).
ThreeDMInstance threedm_from_text(std::istream& in);
std::string threedm_to_text(const ThreeDMInstance& inst);
ThreeDMInstance load_threedm(const std::string& path);

json clustering_to_json(const Clustering& c);
json report_to_json(const StabilityReport& rep);
std::string report_to_csv(const StabilityReport& rep);
json certificate_to_json(const ReductionCertificate& cert);
json merge_tree_to_json(const MergeTree& tree);
json witness_to_json(const FalsificationWitness& w);

// FNV-1a 64-bit digest of the file contents, as 16 hex characters.
std::string file_digest(const std::string& path);

}  // namespace stabclust
