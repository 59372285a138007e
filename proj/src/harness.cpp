#include "gbsdks/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>

#include "gbsdks/hafnian.hpp"
#include "gbsdks/weight_table.hpp"

namespace gbsdks {

using nlohmann::json;

namespace {

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return item.key() == a; })) {
      throw InputError(where + ": unknown key '" + item.key() + "'");
    }
  }
}

template <typename T>
void read_key(const json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(where + "." + key + ": " + e.what());
  }
}

const char* cooling_name(Cooling c) { return c == Cooling::linear ? "linear" : "constant"; }

}  // namespace

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw InputError("repetitions must be at least 1");
  if (checkpoints.empty()) throw InputError("at least one checkpoint is required");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || (i && checkpoints[i] <= checkpoints[i - 1])) {
      throw InputError("checkpoints must be positive and strictly increasing");
    }
  }
  if (methods.empty()) throw InputError("at least one method is required");
  std::set<std::string> seen;
  for (const auto& m : methods) {
    if (std::find(kMethods.begin(), kMethods.end(), m) == kMethods.end()) {
      throw InputError("unknown method '" + m + "'");
    }
    if (!seen.insert(m).second) throw InputError("method listed twice: " + m);
  }
  if (k < 1) throw InputError("k must be positive");
  const bool annealing = std::any_of(methods.begin(), methods.end(),
                                     [](const std::string& m) { return m.ends_with("-sa"); });
  if (annealing) anneal.validate(k);
  if (sampler.type != "exact" && sampler.type != "mis") throw InputError("sampler.type must be exact or mis");
  if (sampler.mis.thinning < 1) throw InputError("sampler.thinning must be at least 1");
  if (graph.type != "planted" && graph.type != "erdos_renyi" && graph.type != "file") {
    throw InputError("graph.type must be planted, erdos_renyi or file");
  }
}

ExperimentConfig parse_config(const json& j) {
  check_keys(j, {"id", "graph", "k", "methods", "repetitions", "checkpoints", "anneal", "sampler",
                 "output_dir", "master_seed", "budget", "cache_dir"},
             "config");
  ExperimentConfig cfg;
  read_key(j, "id", cfg.id, "config");
  read_key(j, "k", cfg.k, "config");
  read_key(j, "methods", cfg.methods, "config");
  read_key(j, "repetitions", cfg.repetitions, "config");
  read_key(j, "checkpoints", cfg.checkpoints, "config");
  read_key(j, "output_dir", cfg.output_dir, "config");
  read_key(j, "master_seed", cfg.master_seed, "config");
  read_key(j, "budget", cfg.budget, "config");
  read_key(j, "cache_dir", cfg.cache_dir, "config");
  if (j.contains("graph")) {
    const json& g = j.at("graph");
    check_keys(g, {"type", "seed", "shuffle", "n", "p", "path"}, "config.graph");
    read_key(g, "type", cfg.graph.type, "config.graph");
    read_key(g, "seed", cfg.graph.seed, "config.graph");
    read_key(g, "shuffle", cfg.graph.shuffle, "config.graph");
    read_key(g, "n", cfg.graph.n, "config.graph");
    read_key(g, "p", cfg.graph.p, "config.graph");
    read_key(g, "path", cfg.graph.path, "config.graph");
  }
  if (j.contains("anneal")) {
    const json& a = j.at("anneal");
    check_keys(a, {"t0", "cooling", "floor", "l", "steps"}, "config.anneal");
    read_key(a, "t0", cfg.anneal.t0, "config.anneal");
    read_key(a, "floor", cfg.anneal.floor, "config.anneal");
    read_key(a, "l", cfg.anneal.l, "config.anneal");
    read_key(a, "steps", cfg.anneal.steps, "config.anneal");
    std::string cooling = cooling_name(cfg.anneal.cooling);
    read_key(a, "cooling", cooling, "config.anneal");
    if (cooling == "linear") {
      cfg.anneal.cooling = Cooling::linear;
    } else if (cooling == "constant") {
      cfg.anneal.cooling = Cooling::constant;
    } else {
      throw InputError("config.anneal.cooling must be linear or constant");
    }
  }
  if (j.contains("sampler")) {
    const json& s = j.at("sampler");
    check_keys(s, {"type", "burn_in", "thinning", "start_budget"}, "config.sampler");
    read_key(s, "type", cfg.sampler.type, "config.sampler");
    read_key(s, "burn_in", cfg.sampler.mis.burn_in, "config.sampler");
    read_key(s, "thinning", cfg.sampler.mis.thinning, "config.sampler");
    read_key(s, "start_budget", cfg.sampler.mis.start_budget, "config.sampler");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig read_config(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  return json{
      {"id", cfg.id},
      {"graph",
       {{"type", cfg.graph.type},
        {"seed", cfg.graph.seed},
        {"shuffle", cfg.graph.shuffle},
        {"n", cfg.graph.n},
        {"p", cfg.graph.p},
        {"path", cfg.graph.path}}},
      {"k", cfg.k},
      {"methods", cfg.methods},
      {"repetitions", cfg.repetitions},
      {"checkpoints", cfg.checkpoints},
      {"anneal",
       {{"t0", cfg.anneal.t0},
        {"cooling", cooling_name(cfg.anneal.cooling)},
        {"floor", cfg.anneal.floor},
        {"l", cfg.anneal.l},
        {"steps", cfg.anneal.steps}}},
      {"sampler",
       {{"type", cfg.sampler.type},
        {"burn_in", cfg.sampler.mis.burn_in},
        {"thinning", cfg.sampler.mis.thinning},
        {"start_budget", cfg.sampler.mis.start_budget}}},
      {"output_dir", cfg.output_dir},
      {"master_seed", cfg.master_seed},
      {"budget", cfg.budget},
      {"cache_dir", cfg.cache_dir},
  };
}

LoadedGraph load_graph(const GraphSource& src) {
  if (src.type == "planted") {
    PlantedSpec spec;
    spec.shuffle = src.shuffle;
    PlantedInstance inst = planted_instance(src.seed, spec);
    return {std::move(inst.graph), std::move(inst.planted)};
  }
  if (src.type == "erdos_renyi") return {erdos_renyi(src.n, src.p, src.seed), std::nullopt};
  if (src.type == "file") return {read_graph(src.path), std::nullopt};
  throw InputError("unknown graph source '" + src.type + "'");
}

std::uint64_t run_seed(std::uint64_t master, std::size_t method_index, std::uint64_t rep) {
  return derive_seed(master, method_index + 1, rep);
}

std::vector<Fig1Row> fig1_sweep(const Fig1Config& cfg) {
  if (cfg.k < 2 || cfg.k % 2) throw InputError("fig1 needs an even k >= 2");
  if (cfg.per_p < 1) throw InputError("fig1 needs at least one graph per probability");
  const auto per = static_cast<std::size_t>(cfg.per_p);
  std::vector<Fig1Row> rows(cfg.probs.size() * per);
  for (double p : cfg.probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability outside [0, 1]");
  }
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(rows.size()); ++idx) {
    const std::size_t j = idx / per;
    const std::size_t i = idx % per;
    const Graph g = erdos_renyi(cfg.k, cfg.probs[j], derive_seed(cfg.seed, j, i));
    Fig1Row& row = rows[idx];
    row.p = cfg.probs[j];
    row.index = static_cast<int>(i);
    row.edges = g.edge_count();
    row.hafnian = static_cast<std::uint64_t>(hafnian_fast(adjacency_matrix(g)));
    row.bound = pm_upper_bound({cfg.k, row.edges});
    if (row.hafnian > 0) row.bound_edges = min_edges_for_pm(cfg.k, row.hafnian);
  }
  return rows;
}

std::pair<double, double> mean_stddev(const std::vector<double>& values) {
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / values.size();
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (values.size() - 1))};
}

namespace {

struct RunSummary {
  std::vector<int> at_checkpoints;
  int final_edges = 0;
  SamplerEvents events;
};

void dump_partial(const ExperimentConfig& cfg, const Fig3Result& partial, const std::string& error) {
  if (cfg.output_dir.empty()) return;
  json j = to_json(partial);
  j["error"] = error;
  j["partial"] = true;
  std::filesystem::create_directories(cfg.output_dir);
  write_text(std::filesystem::path(cfg.output_dir) / "partial_results.json", j.dump(2) + "\n");
}

}  // namespace

Fig3Result fig3_compare(const ExperimentConfig& cfg) {
  cfg.validate();
  LoadedGraph loaded = load_graph(cfg.graph);
  const Graph& g = loaded.graph;
  const int k = cfg.k;
  if (k > g.size()) throw InputError("k exceeds the vertex count");

  Fig3Result result;
  result.config = cfg;
  result.fingerprint = g.fingerprint();
  result.greedy_edges = g.induced_edges(charikar_greedy(g, k).indices());
  try {
    result.optimum_edges = exhaustive_best(g, k, cfg.budget).edges;
  } catch (const BudgetExceeded&) {
  }
  if (loaded.planted) result.planted_edges = g.induced_edges(loaded.planted->indices());

  auto uses = [&](const char* m) {
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) != cfg.methods.end();
  };
  const bool gbs_explore_needed = uses("gbs-rs") || uses("gbs-sa");
  std::shared_ptr<const WeightTable> explore_table, replace_table;
  if (gbs_explore_needed && cfg.sampler.type == "exact") {
    explore_table = GbsExplorer::table_for(g, k, cfg.cache_dir, cfg.budget);
  }
  if (uses("gbs-sa")) {
    replace_table = std::make_shared<const WeightTable>(
        load_or_build_weight_table(g, k - cfg.anneal.l, cfg.cache_dir, cfg.budget));
  }

  std::map<std::string, double> references{{"greedy", result.greedy_edges}};
  if (result.optimum_edges) references["optimum"] = *result.optimum_edges;
  if (result.planted_edges) references["planted"] = *result.planted_edges;

  for (std::size_t mi = 0; mi < kMethods.size(); ++mi) {
    const std::string& method = kMethods[mi];
    if (!uses(method.c_str())) continue;
    const bool gbs = method.starts_with("gbs");
    const bool annealing = method.ends_with("-sa");
    const int reps = cfg.repetitions;
    std::vector<RunSummary> runs(reps);
    std::vector<std::string> errors(reps);

#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < reps; ++rep) {
      try {
        Rng rng(run_seed(cfg.master_seed, mi, static_cast<std::uint64_t>(rep)));
        std::unique_ptr<Explorer> explorer;
        if (!gbs) {
          explorer = std::make_unique<UniformExplorer>(g, k);
        } else if (explore_table) {
          explorer = std::make_unique<GbsExplorer>(g, k, explore_table);
        } else {
          explorer = std::make_unique<MisExplorer>(g, k, cfg.sampler.mis);
        }
        RunTrace trace;
        if (annealing) {
          std::unique_ptr<Tweaker> tweaker;
          if (gbs) {
            tweaker = std::make_unique<GbsTweaker>(g, cfg.anneal.l, replace_table);
          } else {
            tweaker = std::make_unique<UniformTweaker>(g, cfg.anneal.l);
          }
          trace = simulated_annealing(g, k, cfg.anneal, *explorer, *tweaker, rng);
        } else {
          trace = random_search(g, k, static_cast<int>(cfg.checkpoints.back()), *explorer, rng);
        }
        RunSummary& run = runs[rep];
        for (std::uint64_t c : cfg.checkpoints) run.at_checkpoints.push_back(trace.best_after(c));
        run.final_edges = trace.final_edges;
        run.events = trace.events;
      } catch (const std::exception& e) {
        errors[rep] = e.what();
      }
    }

    for (int rep = 0; rep < reps; ++rep) {
      if (!errors[rep].empty()) {
        const std::string what =
            method + " repetition " + std::to_string(rep) + " failed: " + errors[rep];
        dump_partial(cfg, result, what);
        throw std::runtime_error(what);
      }
    }

    MethodResult mr;
    mr.method = method;
    mr.curve.checkpoints = cfg.checkpoints;
    mr.curve.reference_lines = references;
    for (std::size_t c = 0; c < cfg.checkpoints.size(); ++c) {
      std::vector<double> values;
      values.reserve(reps);
      for (const auto& run : runs) values.push_back(run.at_checkpoints[c]);
      const auto [mean, sd] = mean_stddev(values);
      mr.curve.mean.push_back(mean);
      mr.curve.stddev.push_back(sd);
    }
    std::vector<double> finals;
    for (const auto& run : runs) {
      finals.push_back(run.final_edges);
      mr.events += run.events;
    }
    std::tie(mr.final_mean, mr.final_stddev) = mean_stddev(finals);
    result.methods.push_back(std::move(mr));
  }
  return result;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gbsdks
