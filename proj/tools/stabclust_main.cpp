#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stabclust/io.hpp"
#include "stabclust/linkage.hpp"
#include "stabclust/reductions.hpp"
#include "stabclust/rng.hpp"
#include "stabclust/stability.hpp"
#include "stabclust/stream.hpp"

namespace sc = stabclust;
using sc::json;

namespace {

struct CommonOpts {
  std::string output;
  std::string format = "json";
  uint64_t seed = 0;
  int jobs = 1;
  bool require_triangle = false;
  bool allow_zero = false;
};

sc::EnumerationBudget budget_from_env() {
  sc::EnumerationBudget b;
  if (const char* env = std::getenv("STABLE_CLUSTER_BUDGET")) {
    const long long v = std::stoll(env);
    if (v <= 0) throw std::invalid_argument("STABLE_CLUSTER_BUDGET must be positive");
    b.center_subsets = v;
    b.partitions = v;
    b.vertex_subsets = v;
  }
  return b;
}

sc::LoadOptions load_opts(const CommonOpts& c) {
  return sc::LoadOptions{c.require_triangle, false, c.allow_zero};
}

std::string cert_sidecar_path(const std::string& out) {
  const std::string suffix = ".json";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + ".cert.json";
  return out + ".cert.json";
}

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<std::string> outputs;
  json summary;
};

void emit(const Report& rep) {
  json j;
  j["command"] = rep.command;
  json in = json::object();
  for (const auto& [path, digest] : rep.inputs) in[path] = digest;
  j["inputs"] = std::move(in);
  j["outputs"] = rep.outputs;
  j["summary"] = rep.summary;
  j["exit_code"] = 0;
  std::cout << j.dump(2) << "\n";
}

void add_input(Report& rep, const std::string& path) {
  rep.inputs.emplace_back(path, sc::file_digest(path));
}

// Writes instance + certificate, or inlines both when no output path given.
void finish_generation(Report& rep, const CommonOpts& common, const json& inst,
                       const json& cert, json extra_summary = json::object()) {
  if (!common.output.empty()) {
    sc::save_json(inst, common.output);
    const std::string cert_path = cert_sidecar_path(common.output);
    sc::save_json(cert, cert_path);
    rep.outputs.push_back(common.output);
    rep.outputs.push_back(cert_path);
    json summary = std::move(extra_summary);
    summary["certificate"] = cert;
    rep.summary = std::move(summary);
  } else {
    json summary = std::move(extra_summary);
    summary["instance"] = inst;
    summary["certificate"] = cert;
    rep.summary = std::move(summary);
  }
  emit(rep);
}

void finish_result(Report& rep, const CommonOpts& common, json summary) {
  if (!common.output.empty()) {
    sc::save_json(summary, common.output);
    rep.outputs.push_back(common.output);
  }
  rep.summary = std::move(summary);
  emit(rep);
}

json optimum_summary(const sc::OptimumResult& res, const std::string& method) {
  json j;
  j["objective"] = sc::objective_name(res.cost.objective);
  j["method"] = method;
  j["cost"] = res.cost.value;
  j["assignment"] = res.clustering.assignment;
  j["centers"] = res.clustering.centers ? json(*res.clustering.centers)
                                        : json(nullptr);
  j["unique_partition"] = res.unique_partition;
  j["all_optimal_count"] = res.all_optimal_count;
  return j;
}

std::vector<int> parse_sizes(const std::string& csv) {
  std::vector<int> sizes;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    sizes.push_back(std::stoi(item));
  }
  if (sizes.empty()) throw std::invalid_argument("empty size list");
  return sizes;
}

sc::Objective parse_objective(const std::string& s) {
  if (s == "kmedian") return sc::Objective::KMedian;
  if (s == "minsum") return sc::Objective::MinSum;
  throw std::invalid_argument("objective must be kmedian or minsum");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabclust: generate, certify, solve and stress-test "
               "stability-constrained clustering instances"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("-o,--output", common.output, "write the result artifact here");
  app.add_option("--format", common.format, "json or csv (tabular reports)")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", common.seed, "seed for all randomized behavior");
  app.add_option("--jobs", common.jobs, "worker threads for sampling")
      ->check(CLI::PositiveNumber);
  app.add_flag("--require-triangle", common.require_triangle,
               "reject instances violating the triangle inequality");
  app.add_flag("--allow-zero-distances", common.allow_zero,
               "accept zero distance between distinct points");

  std::function<void()> action;

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->fallthrough();
  gen->require_subcommand(1);

  struct {
    std::string graph;
    int d = 1;
  } gd;
  auto* gen_domset = gen->add_subcommand(
      "reduce-domset", "k-median instance from a dominating-set question");
  gen_domset->fallthrough();
  gen_domset->add_option("--graph", gd.graph, "graph file (\"n m\" + edges)")
      ->required();
  gen_domset->add_option("--d", gd.d, "dominating-set size bound")->required();
  gen_domset->callback([&] {
    action = [&] {
      Report rep{"gen reduce-domset", {}, {}, {}};
      add_input(rep, gd.graph);
      const sc::Graph g = sc::load_graph(gd.graph);
      auto made = sc::make_kmedian_hardness_instance(g, gd.d);
      json extra;
      extra["n"] = made.instance.n();
      extra["k"] = made.k;
      finish_generation(rep, common, sc::instance_to_json(made.instance),
                        sc::certificate_to_json(made.certificate),
                        std::move(extra));
    };
  });

  struct {
    std::string graph;
  } gt;
  auto* gen_tri = gen->add_subcommand(
      "reduce-trianglepart", "min-sum instance from a triangle-partition question");
  gen_tri->fallthrough();
  gen_tri->add_option("--graph", gt.graph, "graph file")->required();
  gen_tri->callback([&] {
    action = [&] {
      Report rep{"gen reduce-trianglepart", {}, {}, {}};
      add_input(rep, gt.graph);
      const sc::Graph g = sc::load_graph(gt.graph);
      auto made = sc::make_minsum_hardness_instance(g);
      json extra;
      extra["n"] = made.instance.n();
      extra["k"] = made.k;
      extra["degree_warning"] = made.degree_warning;
      finish_generation(rep, common, sc::instance_to_json(made.instance),
                        sc::certificate_to_json(made.certificate),
                        std::move(extra));
    };
  });

  struct {
    std::string input;
    std::string graph_out;
  } g3;
  auto* gen_3dm = gen->add_subcommand(
      "from-3dm", "k-median instance via the triple-system reduction");
  gen_3dm->fallthrough();
  gen_3dm->add_option("--input", g3.input, "triple-system file (\"m L\" + triples)")
      ->required();
  gen_3dm->add_option("--graph-out", g3.graph_out,
                      "also save the intermediate graph");
  gen_3dm->callback([&] {
    action = [&] {
      Report rep{"gen from-3dm", {}, {}, {}};
      add_input(rep, g3.input);
      const sc::ThreeDMInstance tdm = sc::load_threedm(g3.input);
      auto pdspp = sc::threedm_to_pdspp(tdm);
      if (!g3.graph_out.empty()) {
        sc::write_text_file(g3.graph_out, sc::graph_to_text(pdspp.graph));
        rep.outputs.push_back(g3.graph_out);
      }
      auto made = sc::make_kmedian_hardness_instance(pdspp.graph, pdspp.d);
      sc::ReductionCertificate cert = made.certificate;
      cert.source_kind = sc::SourceKind::ThreeDM;
      cert.m = tdm.m;
      json extra;
      extra["n"] = made.instance.n();
      extra["k"] = made.k;
      finish_generation(rep, common, sc::instance_to_json(made.instance),
                        sc::certificate_to_json(cert), std::move(extra));
    };
  });

  struct {
    int k = 2;
    std::string sizes;
    double alpha = 2.0;
    bool no_normalize = false;
  } gp;
  auto* gen_planted =
      gen->add_subcommand("planted", "well-separated instance with ground truth");
  gen_planted->fallthrough();
  gen_planted->add_option("--k", gp.k, "cluster count")->required();
  gen_planted->add_option("--sizes", gp.sizes, "comma-separated cluster sizes")
      ->required();
  gen_planted->add_option("--alpha", gp.alpha, "target center-stability")
      ->required();
  gen_planted->add_flag("--no-normalize", gp.no_normalize,
                        "keep raw coordinate distances");
  gen_planted->callback([&] {
    action = [&] {
      Report rep{"gen planted", {}, {}, {}};
      auto planted = sc::planted_stable_instance(
          gp.k, parse_sizes(gp.sizes), gp.alpha, common.seed, !gp.no_normalize);
      json cert;
      cert["kind"] = "planted";
      cert["k"] = gp.k;
      cert["target_alpha"] = gp.alpha;
      cert["seed"] = common.seed;
      cert["certified"] = planted.certified;
      cert["alpha_center"] =
          planted.certified ? json(planted.certified_alpha_center) : json(nullptr);
      json extra;
      extra["n"] = planted.instance.n();
      extra["k"] = gp.k;
      extra["certified"] = planted.certified;
      finish_generation(
          rep, common,
          sc::instance_to_json(planted.instance, planted.ground_truth), cert,
          std::move(extra));
    };
  });

  // ---- solve --------------------------------------------------------------
  auto* solve = app.add_subcommand("solve", "exact and linkage solvers");
  solve->fallthrough();
  solve->require_subcommand(1);

  struct {
    int k = 1;
    std::string instance;
    bool exact = false;
  } sk;
  auto* solve_km = solve->add_subcommand("kmedian", "exact k-median optimum");
  solve_km->fallthrough();
  solve_km->add_option("--k", sk.k, "cluster count")->required();
  solve_km->add_option("instance", sk.instance, "instance JSON")->required();
  solve_km->add_flag("--exact", sk.exact, "exhaustive solver (default)");
  solve_km->callback([&] {
    action = [&] {
      Report rep{"solve kmedian", {}, {}, {}};
      add_input(rep, sk.instance);
      auto loaded = sc::load_instance(sk.instance, load_opts(common));
      auto res = sc::brute_force_kmedian(loaded.instance, sk.k, budget_from_env());
      finish_result(rep, common, optimum_summary(res, "exact"));
    };
  });

  struct {
    int k = 1;
    std::string instance;
    bool exact = false;
    bool linkage = false;
    std::string tree_out;
  } sm;
  auto* solve_ms = solve->add_subcommand("minsum", "min-sum optimum");
  solve_ms->fallthrough();
  solve_ms->add_option("--k", sm.k, "cluster count")->required();
  solve_ms->add_option("instance", sm.instance, "instance JSON")->required();
  auto* ms_exact = solve_ms->add_flag("--exact", sm.exact,
                                      "exhaustive solver (default)");
  solve_ms->add_flag("--linkage", sm.linkage,
                     "average-linkage tree with best-k pruning")
      ->excludes(ms_exact);
  solve_ms->add_option("--tree-out", sm.tree_out, "save the merge tree JSON");
  solve_ms->callback([&] {
    action = [&] {
      Report rep{"solve minsum", {}, {}, {}};
      add_input(rep, sm.instance);
      auto loaded = sc::load_instance(sm.instance, load_opts(common));
      if (sm.linkage) {
        const sc::MergeTree tree = sc::average_linkage_tree(loaded.instance);
        if (!sm.tree_out.empty()) {
          sc::save_json(sc::merge_tree_to_json(tree), sm.tree_out);
          rep.outputs.push_back(sm.tree_out);
        }
        auto pruned = sc::best_k_pruning(tree, loaded.instance, sm.k);
        json j;
        j["objective"] = "minsum";
        j["method"] = "linkage";
        j["cost"] = pruned.cost.value;
        j["assignment"] = pruned.clustering.assignment;
        j["centers"] = json(nullptr);
        finish_result(rep, common, std::move(j));
      } else {
        auto res = sc::brute_force_minsum(loaded.instance, sm.k, budget_from_env());
        finish_result(rep, common, optimum_summary(res, "exact"));
      }
    };
  });

  // ---- stream -------------------------------------------------------------
  auto* stream = app.add_subcommand("stream", "one-pass bounded-memory solver");
  stream->fallthrough();
  stream->require_subcommand(1);

  struct {
    int k = 1;
    std::string instance;
    std::string order = "given";
    std::string order_file;
  } st;
  auto* stream_km = stream->add_subcommand("kmedian", "streaming candidate centers");
  stream_km->fallthrough();
  stream_km->add_option("--k", st.k, "cluster count")->required();
  stream_km->add_option("instance", st.instance, "instance JSON")->required();
  stream_km->add_option("--order", st.order, "given, random or reverse")
      ->check(CLI::IsMember({"given", "random", "reverse"}));
  stream_km->add_option("--order-file", st.order_file,
                        "replay file, one point index per line");
  stream_km->callback([&] {
    action = [&] {
      Report rep{"stream kmedian", {}, {}, {}};
      add_input(rep, st.instance);
      auto loaded = sc::load_instance(st.instance, load_opts(common));
      const int n = loaded.instance.n();
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      if (!st.order_file.empty()) {
        add_input(rep, st.order_file);
        std::ifstream in(st.order_file);
        if (!in) throw std::runtime_error("cannot open " + st.order_file);
        order.clear();
        int v;
        while (in >> v) order.push_back(v);
      } else if (st.order == "random") {
        sc::Rng rng(common.seed);
        rng.shuffle(order);
      } else if (st.order == "reverse") {
        std::reverse(order.begin(), order.end());
      }
      auto run = sc::stream_kmedian(loaded.instance, order, st.k);
      auto induced = sc::induce_partition(loaded.instance, run.centers);
      json j;
      j["k"] = st.k;
      j["order"] = st.order_file.empty() ? st.order : "file";
      j["seed"] = common.seed;
      j["centers"] = run.centers;
      j["assignment"] = induced.assignment;
      j["peak_candidates"] = run.peak_candidates;
      finish_result(rep, common, std::move(j));
    };
  });

  // ---- verify -------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "stability measurement and checks");
  verify->fallthrough();
  verify->require_subcommand(1);

  struct {
    int k = 1;
    std::string instance;
    std::string objective = "kmedian";
  } vs;
  auto* verify_stab = verify->add_subcommand("stability", "full stability profile");
  verify_stab->fallthrough();
  verify_stab->add_option("--k", vs.k, "cluster count")->required();
  verify_stab->add_option("instance", vs.instance, "instance JSON")->required();
  verify_stab->add_option("--objective", vs.objective, "kmedian or minsum")
      ->check(CLI::IsMember({"kmedian", "minsum"}));
  verify_stab->callback([&] {
    action = [&] {
      Report rep{"verify stability", {}, {}, {}};
      add_input(rep, vs.instance);
      auto loaded = sc::load_instance(vs.instance, load_opts(common));
      auto profile = sc::stability_profile(
          loaded.instance, vs.k, parse_objective(vs.objective), budget_from_env());
      if (common.format == "csv") {
        const std::string csv = sc::report_to_csv(profile);
        if (!common.output.empty()) {
          sc::write_text_file(common.output, csv);
          rep.outputs.push_back(common.output);
          json j;
          j["format"] = "csv";
          j["rows"] = 1;
          rep.summary = std::move(j);
          emit(rep);
        } else {
          std::cout << csv;
        }
      } else {
        finish_result(rep, common, sc::report_to_json(profile));
      }
    };
  });

  struct {
    int k = 1;
    std::string instance;
    std::string objective = "kmedian";
    std::string mode = "mult";
    double alpha = 0.0;
    double beta = 0.0;
    long long samples = 1000;
  } vf;
  auto* verify_fal = verify->add_subcommand(
      "falsify", "sampled perturbations hunting for a changed optimum");
  verify_fal->fallthrough();
  verify_fal->add_option("--k", vf.k, "cluster count")->required();
  verify_fal->add_option("instance", vf.instance, "instance JSON")->required();
  verify_fal->add_option("--objective", vf.objective, "kmedian or minsum")
      ->check(CLI::IsMember({"kmedian", "minsum"}));
  verify_fal->add_option("--mode", vf.mode, "mult or add")
      ->check(CLI::IsMember({"mult", "add"}));
  auto* fal_alpha = verify_fal->add_option("--alpha", vf.alpha,
                                           "multiplicative band upper factor");
  auto* fal_beta =
      verify_fal->add_option("--beta", vf.beta, "additive band width");
  verify_fal->add_option("--samples", vf.samples, "perturbations to draw");
  verify_fal->callback([&] {
    const bool mult = vf.mode == "mult";
    if (mult && fal_alpha->count() == 0)
      throw CLI::ValidationError("falsify", "--alpha is required for --mode mult");
    if (!mult && fal_beta->count() == 0)
      throw CLI::ValidationError("falsify", "--beta is required for --mode add");
    action = [&] {
      Report rep{"verify falsify", {}, {}, {}};
      add_input(rep, vf.instance);
      auto loaded = sc::load_instance(vf.instance, load_opts(common));
      const bool mult = vf.mode == "mult";
      const double parameter = mult ? vf.alpha : vf.beta;
      auto outcome = sc::resilience_falsifier(
          loaded.instance, vf.k, parse_objective(vf.objective),
          mult ? sc::PerturbationMode::Multiplicative
               : sc::PerturbationMode::Additive,
          parameter, vf.samples, common.seed, common.jobs, budget_from_env());
      json j;
      j["result"] = outcome.witness ? "falsified" : "no_counterexample";
      j["samples_run"] = outcome.samples_run;
      j["witness"] =
          outcome.witness ? sc::witness_to_json(*outcome.witness) : json(nullptr);
      finish_result(rep, common, std::move(j));
    };
  });

  struct {
    int k = 1;
    std::string instance;
    std::string objective = "kmedian";
    bool use_ground_truth = false;
  } vsep;
  auto* verify_sep = verify->add_subcommand(
      "strict-sep", "within-cluster closer than cross-cluster, per point");
  verify_sep->fallthrough();
  verify_sep->add_option("--k", vsep.k, "cluster count")->required();
  verify_sep->add_option("instance", vsep.instance, "instance JSON")->required();
  verify_sep->add_option("--objective", vsep.objective, "kmedian or minsum")
      ->check(CLI::IsMember({"kmedian", "minsum"}));
  verify_sep->add_flag("--use-ground-truth", vsep.use_ground_truth,
                       "check the file's ground truth instead of the oracle optimum");
  verify_sep->callback([&] {
    action = [&] {
      Report rep{"verify strict-sep", {}, {}, {}};
      add_input(rep, vsep.instance);
      auto loaded = sc::load_instance(vsep.instance, load_opts(common));
      sc::Clustering clustering;
      if (vsep.use_ground_truth) {
        if (!loaded.ground_truth)
          throw std::invalid_argument("instance file carries no ground truth");
        clustering = *loaded.ground_truth;
      } else {
        auto profile = sc::stability_profile(loaded.instance, vsep.k,
                                             parse_objective(vsep.objective),
                                             budget_from_env());
        clustering = profile.clustering;
      }
      auto res = sc::strict_separation_check(loaded.instance, clustering);
      json j;
      j["holds"] = res.holds;
      if (res.witness) {
        json w;
        w["p"] = res.witness->p;
        w["p_prime"] = res.witness->p_prime;
        w["q"] = res.witness->q;
        j["witness"] = std::move(w);
      } else {
        j["witness"] = json(nullptr);
      }
      finish_result(rep, common, std::move(j));
    };
  });

  struct {
    int k = 1;
    std::string instance;
    double alpha = 2.0;
  } vm;
  auto* verify_margin = verify->add_subcommand(
      "center-margin", "rival-point margin around certified centers");
  verify_margin->fallthrough();
  verify_margin->add_option("--k", vm.k, "cluster count")->required();
  verify_margin->add_option("instance", vm.instance, "instance JSON")->required();
  verify_margin->add_option("--alpha", vm.alpha, "stability parameter, > 1")
      ->required();
  verify_margin->callback([&] {
    action = [&] {
      Report rep{"verify center-margin", {}, {}, {}};
      add_input(rep, vm.instance);
      auto loaded = sc::load_instance(vm.instance, load_opts(common));
      auto profile = sc::stability_profile(loaded.instance, vm.k,
                                           sc::Objective::KMedian, budget_from_env());
      auto res =
          sc::center_margin_check(loaded.instance, profile.clustering, vm.alpha);
      json j;
      j["alpha"] = vm.alpha;
      j["factor"] = sc::center_margin_factor(vm.alpha);
      j["holds"] = res.holds;
      if (res.witness) {
        json w;
        w["i"] = res.witness->i;
        w["j"] = res.witness->j;
        w["p"] = res.witness->p;
        w["p_prime"] = res.witness->p_prime;
        w["lhs"] = res.witness->lhs;
        w["rhs"] = res.witness->rhs;
        j["witness"] = std::move(w);
      } else {
        j["witness"] = json(nullptr);
      }
      finish_result(rep, common, std::move(j));
    };
  });

  struct {
    int k = 1;
    std::string instance;
    std::string objective = "minsum";
    double alpha = 2.0;
    long long subset_budget = 4096;
  } vl;
  auto* verify_link = verify->add_subcommand(
      "linkage-cond", "subsets of a cluster stay closer to it than to rivals");
  verify_link->fallthrough();
  verify_link->add_option("--k", vl.k, "cluster count")->required();
  verify_link->add_option("instance", vl.instance, "instance JSON")->required();
  verify_link->add_option("--alpha", vl.alpha, "stability parameter")->required();
  verify_link->add_option("--objective", vl.objective, "kmedian or minsum")
      ->check(CLI::IsMember({"kmedian", "minsum"}));
  verify_link->add_option("--subset-budget", vl.subset_budget,
                          "sampled subsets per cluster pair above 12 points");
  verify_link->callback([&] {
    action = [&] {
      Report rep{"verify linkage-cond", {}, {}, {}};
      add_input(rep, vl.instance);
      auto loaded = sc::load_instance(vl.instance, load_opts(common));
      auto profile = sc::stability_profile(loaded.instance, vl.k,
                                           parse_objective(vl.objective),
                                           budget_from_env());
      auto res = sc::linkage_condition_check(loaded.instance, profile.clustering,
                                             vl.alpha, vl.subset_budget,
                                             common.seed);
      json j;
      j["alpha"] = vl.alpha;
      j["holds"] = res.holds;
      j["exhaustive"] = res.exhaustive;
      if (res.witness) {
        json w;
        w["cluster"] = res.witness->cluster;
        w["rival"] = res.witness->rival;
        w["subset"] = res.witness->subset;
        w["lhs"] = res.witness->lhs;
        w["rhs"] = res.witness->rhs;
        j["witness"] = std::move(w);
      } else {
        j["witness"] = json(nullptr);
      }
      finish_result(rep, common, std::move(j));
    };
  });

  // ---- oracle -------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "exact combinatorial oracles");
  oracle->fallthrough();
  oracle->require_subcommand(1);

  struct {
    std::string graph;
    int max_size = -1;
  } od;
  auto* oracle_dom = oracle->add_subcommand("domset", "minimum dominating set");
  oracle_dom->fallthrough();
  oracle_dom->add_option("--graph", od.graph, "graph file")->required();
  oracle_dom->add_option("--max-size", od.max_size, "search bound (default n)");
  oracle_dom->callback([&] {
    action = [&] {
      Report rep{"oracle domset", {}, {}, {}};
      add_input(rep, od.graph);
      const sc::Graph g = sc::load_graph(od.graph);
      const int bound = od.max_size < 0 ? g.n() : od.max_size;
      auto res = sc::min_dominating_set(g, bound, budget_from_env());
      json j;
      j["found"] = bool(res);
      j["size"] = res ? json(res->size) : json(nullptr);
      j["witness"] = res ? json(res->vertices) : json(nullptr);
      if (res) j["perfect"] = sc::is_perfect_dominating(g, res->vertices);
      finish_result(rep, common, std::move(j));
    };
  });

  struct {
    std::string graph;
  } ot;
  auto* oracle_tri =
      oracle->add_subcommand("triangle-partition", "partition into triangles");
  oracle_tri->fallthrough();
  oracle_tri->add_option("--graph", ot.graph, "graph file")->required();
  oracle_tri->callback([&] {
    action = [&] {
      Report rep{"oracle triangle-partition", {}, {}, {}};
      add_input(rep, ot.graph);
      const sc::Graph g = sc::load_graph(ot.graph);
      auto res = sc::triangle_partition_decide(g, budget_from_env());
      json j;
      j["feasible"] = res.feasible;
      json triples = json::array();
      for (const auto& t : res.witness) triples.push_back({t[0], t[1], t[2]});
      j["witness"] = res.feasible ? std::move(triples) : json(nullptr);
      j["degree_warning"] = res.degree_warning;
      finish_result(rep, common, std::move(j));
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!action) {
    std::cerr << "{\"error\": \"no subcommand selected\"}\n";
    return 2;
  }
  try {
    action();
  } catch (const std::exception& e) {
    json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
