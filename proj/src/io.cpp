#include "stabclust/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace stabclust {

namespace {

json double_or_inf(double v) {
  if (std::isinf(v)) return json("inf");
  return json(v);
}

json optional_double(const std::optional<double>& v) {
  if (!v) return json(nullptr);
  return double_or_inf(*v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

LoadedInstance instance_from_json(const json& j, const LoadOptions& opts) {
  if (!j.is_object() || !j.contains("n") || !j.contains("d"))
    throw std::invalid_argument("instance JSON needs \"n\" and \"d\"");
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("d");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("\"d\" must hold n rows");
  std::vector<std::vector<double>> matrix;
  matrix.reserve(n);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::invalid_argument("\"d\" has a ragged row");
    matrix.push_back(row.get<std::vector<double>>());
  }

  LoadedInstance out{MetricInstance::from_rows(matrix), std::nullopt, {}};
  out.verdict = validate_metric(out.instance, opts.require_triangle,
                                opts.require_unit, !opts.allow_zero_distances);
  if (!out.verdict.valid) {
    std::string msg = "invalid instance";
    for (const auto& v : out.verdict.violations) msg += "; " + v;
    throw std::invalid_argument(msg);
  }

  if (j.contains("ground_truth") && !j.at("ground_truth").is_null()) {
    const auto& gt = j.at("ground_truth");
    Clustering c;
    c.assignment = gt.at("assignment").get<std::vector<int>>();
    int k = 0;
    for (int a : c.assignment) k = std::max(k, a + 1);
    c.k = k;
    if (gt.contains("centers") && !gt.at("centers").is_null())
      c.centers = gt.at("centers").get<std::vector<int>>();
    validate_clustering(out.instance, c, false);
    out.ground_truth = std::move(c);
  }
  return out;
}

json instance_to_json(const MetricInstance& inst,
                      const std::optional<Clustering>& ground_truth) {
  json j;
  j["n"] = inst.n();
  json rows = json::array();
  for (int i = 0; i < inst.n(); ++i) {
    json row = json::array();
    for (int jj = 0; jj < inst.n(); ++jj) row.push_back(inst.d(i, jj));
    rows.push_back(std::move(row));
  }
  j["d"] = std::move(rows);
  if (ground_truth) {
    json gt;
    gt["assignment"] = ground_truth->assignment;
    if (ground_truth->centers) gt["centers"] = *ground_truth->centers;
    j["ground_truth"] = std::move(gt);
  }
  return j;
}

LoadedInstance load_instance(const std::string& path, const LoadOptions& opts) {
  return instance_from_json(read_json_file(path), opts);
}

json read_json_file(const std::string& path) {
  return json::parse(read_file(path));
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void save_json(const json& j, const std::string& path) {
  write_text_file(path, j.dump(2) + "\n");
}

Graph graph_from_text(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("missing graph header");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (int e = 0; e < m; ++e) {
    int u, v;
    if (!(in >> u >> v))
      throw std::invalid_argument("graph file ends before all edges are read");
    edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

std::string graph_to_text(const Graph& g) {
  std::ostringstream os;
  os << g.n() << " " << g.m() << "\n";
  for (const auto& [u, v] : g.edges()) os << u << " " << v << "\n";
  return os.str();
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return graph_from_text(in);
}

ThreeDMInstance threedm_from_text(std::istream& in) {
  int m = 0, L = 0;
  if (!(in >> m >> L)) throw std::invalid_argument("missing triple-system header");
  ThreeDMInstance inst;
  inst.m = m;
  for (int t = 0; t < L; ++t) {
    int x, y, z;
    if (!(in >> x >> y >> z))
      throw std::invalid_argument("triple file ends before all triples are read");
    inst.triples.push_back({x, y, z});
  }
  validate_threedm(inst);
  return inst;
}

std::string threedm_to_text(const ThreeDMInstance& inst) {
  std::ostringstream os;
  os << inst.m << " " << inst.triples.size() << "\n";
  for (const auto& t : inst.triples) os << t[0] << " " << t[1] << " " << t[2] << "\n";
  return os.str();
}

ThreeDMInstance load_threedm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return threedm_from_text(in);
}

json clustering_to_json(const Clustering& c) {
  json j;
  j["assignment"] = c.assignment;
  j["centers"] = c.centers ? json(*c.centers) : json(nullptr);
  return j;
}

json report_to_json(const StabilityReport& rep) {
  json j;
  j["alpha_center"] = double_or_inf(rep.alpha_center);
  j["alpha_minsum"] = double_or_inf(rep.alpha_minsum);
  j["beta_center"] = optional_double(rep.beta_center);
  j["beta_minsum"] = optional_double(rep.beta_minsum);
  j["t"] = double_or_inf(rep.t);
  j["strict_separation"] = rep.strict_separation;
  j["unique_partition"] = rep.unique_partition;
  j["assignment"] = rep.clustering.assignment;
  j["centers"] = rep.clustering.centers ? json(*rep.clustering.centers)
                                        : json(nullptr);
  return j;
}

std::string report_to_csv(const StabilityReport& rep) {
  auto num = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  auto opt = [&](const std::optional<double>& v) {
    return v ? num(*v) : std::string();
  };
  std::ostringstream os;
  os << "alpha_center,alpha_minsum,beta_center,beta_minsum,t,"
        "strict_separation,unique_partition\n";
  os << num(rep.alpha_center) << "," << num(rep.alpha_minsum) << ","
     << opt(rep.beta_center) << "," << opt(rep.beta_minsum) << ","
     << num(rep.t) << "," << (rep.strict_separation ? "true" : "false") << ","
     << (rep.unique_partition ? "true" : "false") << "\n";
  return os.str();
}

json certificate_to_json(const ReductionCertificate& cert) {
  json j;
  j["source_kind"] = source_kind_name(cert.source_kind);
  j["n"] = cert.n;
  j["k"] = cert.k;
  j["m"] = cert.m ? json(*cert.m) : json(nullptr);
  j["expected_cost"] = optional_double(cert.expected_cost);
  j["stability_floor"] = cert.stability_floor;
  return j;
}

json merge_tree_to_json(const MergeTree& tree) {
  json merges = json::array();
  for (const auto& m : tree.merges) {
    json entry;
    entry["left"] = m.left;
    entry["right"] = m.right;
    entry["height"] = m.height;
    merges.push_back(std::move(entry));
  }
  return merges;
}

json witness_to_json(const FalsificationWitness& w) {
  json j;
  j["reason"] = w.reason == FalsificationWitness::Reason::OptimumChanged
                    ? "optimum_changed"
                    : "optimum_not_unique";
  j["mode"] = w.mode == PerturbationMode::Multiplicative ? "multiplicative"
                                                         : "additive";
  j["parameter"] = w.parameter;
  j["sample_index"] = w.sample_index;
  j["perturbed"] = instance_to_json(w.perturbed);
  const int n = w.perturbed.n();
  json scale_rows = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int jj = 0; jj < n; ++jj)
      row.push_back(w.scale[static_cast<size_t>(i) * n + jj]);
    scale_rows.push_back(std::move(row));
  }
  j["scale"] = std::move(scale_rows);
  j["original_optimum"] = clustering_to_json(w.original_optimum);
  j["perturbed_optimum"] = clustering_to_json(w.perturbed_optimum);
  return j;
}

std::string file_digest(const std::string& path) {
  const std::string data = read_file(path);
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace stabclust
