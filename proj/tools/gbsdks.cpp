// Command-line front end. Every subcommand prints one JSON record on stdout
// (figure commands write their files under --out instead).
//
// Exit codes: 0 success, 1 input error, 2 enumeration budget refused,
// 3 I/O error, 4 any other failure.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gbsdks/hafnian.hpp"
#include "gbsdks/harness.hpp"
#include "gbsdks/optimize.hpp"
#include "gbsdks/sampler.hpp"
#include "gbsdks/weight_table.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gbsdks;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json subset_json(const VertexSubset& s) { return json(std::vector<Vertex>(s.begin(), s.end())); }

json result_record(const Graph& g, const VertexSubset& s) {
  const int e = g.induced_edges(s.indices());
  const double pairs = 0.5 * s.size() * (s.size() - 1.0);
  return {{"subset", subset_json(s)}, {"edges", e}, {"density", pairs > 0 ? e / pairs : 0.0}};
}

json trace_record(const Graph& g, const RunTrace& t) {
  json j = result_record(g, t.final_subset);
  j["trace"] = t.best_edges;
  j["samples_used"] = t.samples_used;
  j["events"] = to_json(t.events);
  return j;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

struct Options {
  std::string matrix;
  std::string graph;
  int k = 0;
  std::string method = "gbs";
  std::uint64_t samples = 1;
  std::uint64_t seed = 1;
  MisParams mis;
  std::string cache_dir;
  AnnealParams anneal;
  std::string cooling = "linear";
  std::string explore = "gbs";
  std::string tweak = "gbs";
  std::string config;
  std::string out;
  Fig1Config fig1;
  bool planted = false;
  bool shuffle = false;
  int n = 30;
  double p = 0.5;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

std::unique_ptr<Explorer> make_explorer(const Graph& g, int k, const std::string& kind, const Options& o) {
  if (kind == "uniform") return std::make_unique<UniformExplorer>(g, k);
  if (kind == "mis") return std::make_unique<MisExplorer>(g, k, o.mis);
  return std::make_unique<GbsExplorer>(g, k, GbsExplorer::table_for(g, k, o.cache_dir, o.budget));
}

int run_hafnian(const Options& o) {
  const auto m = parse_adjacency_matrix(read_text(o.matrix));
  std::cout << hafnian_fast(m) << "\n";
  return 0;
}

int run_sample(const Options& o) {
  const auto start = Clock::now();
  const Graph g = read_graph(o.graph);
  Rng rng(o.seed);
  SamplerEvents events;
  json draws = json::array();
  if (o.method == "mis" && o.k % 2 == 0) {
    for (const auto& s : mis_sample(g, o.k, o.mis, rng, o.samples)) draws.push_back(subset_json(s));
  } else {
    auto explorer = make_explorer(g, o.k, o.method, o);
    for (std::uint64_t i = 0; i < o.samples; ++i) draws.push_back(subset_json(explorer->explore(rng, events)));
  }
  print({{"method", o.method},
         {"k", o.k},
         {"seed", o.seed},
         {"samples", draws},
         {"events", to_json(events)},
         {"wall_time_s", seconds_since(start)}});
  return 0;
}

int run_search(const Options& o) {
  const auto start = Clock::now();
  const Graph g = read_graph(o.graph);
  auto explorer = make_explorer(g, o.k, o.method, o);
  Rng rng(o.seed);
  json j = trace_record(g, random_search(g, o.k, static_cast<int>(o.samples), *explorer, rng));
  j["wall_time_s"] = seconds_since(start);
  print(j);
  return 0;
}

int run_anneal(Options o) {
  const auto start = Clock::now();
  const Graph g = read_graph(o.graph);
  if (o.cooling != "linear" && o.cooling != "constant") throw InputError("cooling must be linear or constant");
  o.anneal.cooling = o.cooling == "linear" ? Cooling::linear : Cooling::constant;
  o.anneal.validate(o.k);
  auto explorer = make_explorer(g, o.k, o.explore, o);
  std::unique_ptr<Tweaker> tweaker;
  if (o.tweak == "uniform") {
    tweaker = std::make_unique<UniformTweaker>(g, o.anneal.l);
  } else {
    tweaker = std::make_unique<GbsTweaker>(
        g, o.anneal.l,
        std::make_shared<const WeightTable>(load_or_build_weight_table(g, o.k - o.anneal.l, o.cache_dir, o.budget)));
  }
  Rng rng(o.seed);
  json j = trace_record(g, simulated_annealing(g, o.k, o.anneal, *explorer, *tweaker, rng));
  j["wall_time_s"] = seconds_since(start);
  print(j);
  return 0;
}

int run_greedy(const Options& o) {
  const auto start = Clock::now();
  const Graph g = read_graph(o.graph);
  json j = result_record(g, charikar_greedy(g, o.k));
  j["wall_time_s"] = seconds_since(start);
  print(j);
  return 0;
}

int run_exhaustive(const Options& o) {
  const auto start = Clock::now();
  const Graph g = read_graph(o.graph);
  json j = result_record(g, exhaustive_best(g, o.k, o.budget).subset);
  j["wall_time_s"] = seconds_since(start);
  print(j);
  return 0;
}

int run_spectral(const Options& o) {
  const auto info = spectral_radius(read_graph(o.graph));
  json j{{"radius", info.radius}};
  j["max_scaling"] = info.max_scaling ? json(*info.max_scaling) : json("unbounded");
  print(j);
  return 0;
}

int run_fig1(const Options& o) {
  const auto rows = fig1_sweep(o.fig1);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  emit_outputs(rows, o.fig1, OutputFormat::csv, dir / "fig1.csv");
  emit_outputs(rows, o.fig1, OutputFormat::json, dir / "fig1.json");
  emit_outputs(rows, o.fig1, OutputFormat::svg, dir / "fig1.svg");
  return 0;
}

int run_fig3(const Options& o) {
  ExperimentConfig cfg = read_config(o.config);
  const std::string echoed_dir = cfg.output_dir;
  cfg.output_dir = o.out;
  const fs::path dir(o.out);
  fs::create_directories(dir);
  auto r = fig3_compare(cfg);
  // --out is where files land, not part of the experiment; keep the echo
  // independent of it so two output directories get identical bytes.
  r.config.output_dir = echoed_dir;
  emit_outputs(r, OutputFormat::csv, dir / "fig3.csv");
  emit_outputs(r, OutputFormat::json, dir / "fig3.json");
  emit_outputs(r, OutputFormat::svg, dir / "fig3.svg");
  return 0;
}

int run_generate(const Options& o) {
  if (o.planted) {
    PlantedSpec spec;
    spec.shuffle = o.shuffle;
    const auto inst = planted_instance(o.seed, spec);
    write_graph(inst.graph, o.out);
    write_subset(inst.planted, o.out + ".planted");
    print({{"vertices", inst.graph.size()},
           {"edges", inst.graph.edge_count()},
           {"planted", subset_json(inst.planted)},
           {"planted_edges", inst.planted_edges},
           {"fingerprint", inst.graph.fingerprint()}});
  } else {
    const Graph g = erdos_renyi(o.n, o.p, o.seed);
    write_graph(g, o.out);
    print({{"vertices", g.size()}, {"edges", g.edge_count()}, {"fingerprint", g.fingerprint()}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densest k-subgraph search with exact Gaussian boson sampling distributions"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto* haf = app.add_subcommand("hafnian", "Hafnian of a symmetric 0/1 matrix");
  haf->add_option("--matrix", o.matrix, "Whitespace-separated matrix file")->required();

  auto graph_k = [&](CLI::App* c) {
    c->add_option("--graph", o.graph, "Edge-list graph file")->required();
    c->add_option("--k", o.k, "Subset size")->required()->check(CLI::PositiveNumber);
    c->add_option("--budget", o.budget, "Largest subset count to enumerate");
  };
  auto sampler_opts = [&](CLI::App* c) {
    c->add_option("--burn-in", o.mis.burn_in, "MIS burn-in steps");
    c->add_option("--thinning", o.mis.thinning, "MIS steps between retained samples")->check(CLI::PositiveNumber);
    c->add_option("--cache-dir", o.cache_dir, "Directory for weight-table cache files");
  };

  auto* sample = app.add_subcommand("sample", "Draw k-subsets");
  graph_k(sample);
  sampler_opts(sample);
  sample->add_option("--method", o.method)->check(CLI::IsMember({"gbs", "uniform", "mis"}));
  sample->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  sample->add_option("--seed", o.seed);

  auto* search = app.add_subcommand("search", "Random search");
  graph_k(search);
  sampler_opts(search);
  search->add_option("--method", o.method)->check(CLI::IsMember({"gbs", "uniform", "mis"}));
  search->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  search->add_option("--seed", o.seed);

  auto* anneal = app.add_subcommand("anneal", "Simulated annealing");
  graph_k(anneal);
  sampler_opts(anneal);
  anneal->add_option("--t0", o.anneal.t0);
  anneal->add_option("--steps", o.anneal.steps);
  anneal->add_option("--l", o.anneal.l, "Vertices kept untouched by each tweak");
  anneal->add_option("--cooling", o.cooling)->check(CLI::IsMember({"linear", "constant"}));
  anneal->add_option("--explore", o.explore)->check(CLI::IsMember({"gbs", "uniform", "mis"}));
  anneal->add_option("--tweak", o.tweak)->check(CLI::IsMember({"gbs", "uniform"}));
  anneal->add_option("--seed", o.seed);

  auto* greedy = app.add_subcommand("greedy", "Greedy peeling");
  graph_k(greedy);
  auto* exhaustive = app.add_subcommand("exhaustive", "Exact densest k-subgraph");
  graph_k(exhaustive);

  auto* spectral = app.add_subcommand("spectral", "Largest adjacency eigenvalue");
  spectral->add_option("--graph", o.graph)->required();

  auto* fig1 = app.add_subcommand("fig1", "Perfect matchings against edge count");
  fig1->add_option("--k", o.fig1.k);
  fig1->add_option("--per-p", o.fig1.per_p)->check(CLI::PositiveNumber);
  fig1->add_option("--seed", o.fig1.seed);
  fig1->add_option("--out", o.out)->required();

  auto* fig3 = app.add_subcommand("fig3", "Optimizer comparison");
  fig3->add_option("--config", o.config)->required();
  fig3->add_option("--out", o.out)->required();

  auto* generate = app.add_subcommand("generate", "Write a generated graph");
  generate->add_flag("--planted", o.planted, "Planted dense subgraph instance");
  generate->add_flag("--shuffle", o.shuffle, "Permute labels of the planted instance");
  generate->add_option("--n", o.n);
  generate->add_option("--p", o.p);
  generate->add_option("--seed", o.seed);
  generate->add_option("--out", o.out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*haf) return run_hafnian(o);
    if (*sample) return run_sample(o);
    if (*search) return run_search(o);
    if (*anneal) return run_anneal(o);
    if (*greedy) return run_greedy(o);
    if (*exhaustive) return run_exhaustive(o);
    if (*spectral) return run_spectral(o);
    if (*fig1) return run_fig1(o);
    if (*fig3) return run_fig3(o);
    if (*generate) return run_generate(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
