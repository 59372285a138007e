// Acceptance checks, one PASS/FAIL line per criterion.
//
//   acceptance [--cli PATH] [--expect-fail AC4,AC6] [--only AC9,AC10]
//
// Criteria named in --expect-fail still print their real verdict; they only
// stop a FAIL from turning the exit status nonzero.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gbsdks/hafnian.hpp"
#include "gbsdks/harness.hpp"
#include "gbsdks/optimize.hpp"
#include "gbsdks/sampler.hpp"
#include "gbsdks/weight_table.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace gbsdks;
using namespace gbsdks::testing;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[2048];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Shared instance for the sampler-fidelity criteria.
const Graph& fidelity_graph() {
  static const Graph g = erdos_renyi(12, 0.5, std::uint64_t{1});
  return g;
}

// Expected TV distance of `draws` independent exact draws, to first order.
double tv_noise_floor(const WeightTable& t, double draws) {
  double s = 0.0;
  t.for_each_entry([&](std::uint64_t, std::uint64_t w) {
    const double p = static_cast<double>(w) / t.total_weight();
    s += std::sqrt(p * (1 - p));
  });
  return 0.5 * s * std::sqrt(2.0 / (M_PI * draws));
}

double chi_square_p(const WeightTable& t, const std::map<std::uint64_t, std::uint64_t>& counts, double draws) {
  double stat = 0.0;
  std::uint64_t cells = 0;
  t.for_each_entry([&](std::uint64_t r, std::uint64_t w) {
    const double expected = draws * static_cast<double>(w) / t.total_weight();
    const auto it = counts.find(r);
    const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    stat += (observed - expected) * (observed - expected) / expected;
    ++cells;
  });
  const boost::math::chi_squared dist(static_cast<double>(cells - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

double tv_from_ranks(const WeightTable& t, const std::map<std::uint64_t, std::uint64_t>& counts, double draws) {
  double tv = 0.0;
  std::uint64_t seen = 0;
  t.for_each_entry([&](std::uint64_t r, std::uint64_t w) {
    const auto it = counts.find(r);
    const double c = it == counts.end() ? 0.0 : static_cast<double>(it->second);
    seen += static_cast<std::uint64_t>(c);
    tv += std::abs(static_cast<double>(w) / t.total_weight() - c / draws);
  });
  tv += (draws - static_cast<double>(seen)) / draws;  // mass on zero-weight subsets
  return tv / 2;
}

Verdict ac1() {
  const auto t = Clock::now();
  const std::int64_t expected[] = {1, 3, 15, 105, 945, 10395};
  bool ok = true;
  for (int k = 2; k <= 12; k += 2) {
    const auto a = adjacency_matrix(complete_graph(k));
    ok = ok && hafnian_fast(a) == expected[k / 2 - 1] && hafnian_pairings(a) == expected[k / 2 - 1];
  }
  const double s = since(t);
  return {ok && s < 1.0, fmt("K2..K12 give 1,3,15,105,945,10395: %s; %.3f s (limit 1 s)", ok ? "yes" : "no", s)};
}

Verdict ac2() {
  const auto t = Clock::now();
  std::uint64_t graphs = 0, mismatches = 0;
  for (int n = 1; n <= 6; ++n) {
    const int pairs = n * (n - 1) / 2;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << pairs); ++code, ++graphs) {
      const auto a = adjacency_matrix(graph_from_code(n, code));
      mismatches += hafnian_fast(a) != hafnian_pairings(a);
    }
  }
  std::mt19937_64 rng(2);
  for (int i = 0; i < 500; ++i) {
    const int dim = 1 + static_cast<int>(rng() % 12);
    const double p = 0.1 + 0.9 * (rng() % 1000) / 1000.0;
    SymmetricMatrix m(dim);
    std::bernoulli_distribution coin(p);
    for (int r = 0; r < dim; ++r) {
      for (int c = r + 1; c < dim; ++c) m.set(r, c, coin(rng));
    }
    mismatches += hafnian_fast(m) != hafnian_pairings(m);
  }
  const double s = since(t);
  return {mismatches == 0 && s < 30.0,
          fmt("%llu small graphs + 500 random matrices, %llu mismatches; %.2f s (limit 30 s)",
              static_cast<unsigned long long>(graphs), static_cast<unsigned long long>(mismatches), s)};
}

Verdict ac3() {
  const auto t = Clock::now();
  const Fig1Config cfg;  // k = 16, p = 0.1..1.0, 600 graphs each
  const auto rows = fig1_sweep(cfg);
  std::uint64_t bound_violations = 0, edge_violations = 0, positive = 0;
  for (const auto& r : rows) {
    if (static_cast<double>(r.hafnian) > pm_upper_bound({cfg.k, r.edges})) ++bound_violations;
    if (r.hafnian >= 1) {
      ++positive;
      if (min_edges_for_pm(cfg.k, r.hafnian) > r.edges) ++edge_violations;
    }
  }
  const double s = since(t);
  return {bound_violations == 0 && edge_violations == 0 && s < 600.0,
          fmt("full sweep, %zu graphs (%llu with PM >= 1): %llu bound violations, %llu edge-bound violations; "
              "%.1f s (limit 600 s)",
              rows.size(), static_cast<unsigned long long>(positive),
              static_cast<unsigned long long>(bound_violations),
              static_cast<unsigned long long>(edge_violations), s)};
}

Verdict ac4() {
  const auto t = Clock::now();
  const auto table = build_weight_table(fidelity_graph(), 4);
  Rng rng(4);
  const double draws = 1e6;
  std::map<std::uint64_t, std::uint64_t> counts;
  for (int i = 0; i < 1000000; ++i) ++counts[table.sample_rank(rng)];
  const double tv = tv_from_ranks(table, counts, draws);
  const double s = since(t);
  return {tv < 0.005 && s < 60.0,
          fmt("TV = %.5f (limit 0.005) over 10^6 draws, %llu subsets with weight; expected TV of exact "
              "i.i.d. draws %.5f; chi-square p = %.3f; %.2f s",
              tv, static_cast<unsigned long long>(table.entry_count()), tv_noise_floor(table, draws),
              chi_square_p(table, counts, draws), s)};
}

Verdict ac5() {
  double worst = 1.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Graph g = erdos_renyi(12, 0.5, seed);
    const auto table = build_weight_table(g, 2);
    Rng rng(derive_seed(5, seed, 0));
    std::map<std::uint64_t, std::uint64_t> counts;
    for (int i = 0; i < 100000; ++i) ++counts[table.sample_rank(rng)];
    std::vector<std::uint64_t> cells;
    for (const auto& [u, v] : g.edges()) {
      const auto it = counts.find(table.rank_of(VertexSubset({u, v})));
      cells.push_back(it == counts.end() ? 0 : it->second);
    }
    const bool only_edges = cells.size() == counts.size();
    worst = std::min(worst, only_edges ? uniform_chi_square_p(cells) : 0.0);
  }
  return {worst > 0.01, fmt("10 graphs, 10^5 draws each; smallest chi-square p = %.4f (limit > 0.01)", worst)};
}

Verdict ac6() {
  const auto t = Clock::now();
  const auto table = build_weight_table(fidelity_graph(), 4);
  Rng rng(6);
  MisParams params;
  params.burn_in = 10000;
  params.thinning = 10;
  const auto samples = mis_sample(fidelity_graph(), 4, params, rng, 100000);
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto& s : samples) ++counts[table.rank_of(s)];
  const double tv = tv_from_ranks(table, counts, 1e5);
  return {tv < 0.02,
          fmt("TV = %.5f (limit 0.02) over 10^5 retained samples; expected TV of 10^5 exact i.i.d. "
              "draws %.5f; %.2f s",
              tv, tv_noise_floor(table, 1e5), since(t))};
}

Verdict ac7() {
  const Graph& g = fidelity_graph();
  const auto table = build_weight_table(g, 4);
  Rng rng(7);
  std::map<std::uint64_t, bool> checked;
  std::uint64_t zero = 0;
  for (int i = 0; i < 1000000; ++i) {
    const auto r = table.sample_rank(rng);
    auto [it, fresh] = checked.try_emplace(r, false);
    if (fresh) {
      const auto s = table.subset_at(r);
      it->second = hafnian_pairings(adjacency_matrix(subgraph(g, s))) == 0;
    }
    zero += it->second;
  }
  return {zero == 0, fmt("10^6 draws, %zu distinct subsets, %llu with Haf = 0", checked.size(),
                         static_cast<unsigned long long>(zero))};
}

Verdict ac8() {
  const auto inst = planted_instance(1);
  auto replace = std::make_shared<const WeightTable>(build_weight_table(inst.graph, 4));
  GbsExplorer explorer(inst.graph, 10, GbsExplorer::table_for(inst.graph, 10));
  GbsTweaker tweaker(inst.graph, 6, replace);
  AnnealParams p;
  p.t0 = 0.01;
  p.cooling = Cooling::constant;
  p.steps = 200000;
  Rng rng(8);
  const auto trace = simulated_annealing(inst.graph, 10, p, explorer, tweaker, rng);
  bool ok = true;
  std::string detail;
  for (int d = 1; d <= 3; ++d) {
    const auto it = trace.downhill.find(d);
    const AcceptanceCounts c = it == trace.downhill.end() ? AcceptanceCounts{} : it->second;
    const double rate = c.proposed ? static_cast<double>(c.accepted) / c.proposed : -1.0;
    const double expected = std::exp(-d / 45.0 / 0.01);
    ok = ok && c.proposed > 0 && std::abs(rate - expected) <= 0.02;
    detail += fmt("%sdelta=-%d/45: %.4f vs %.4f (n=%llu)", d > 1 ? "; " : "", d, rate, expected,
                  static_cast<unsigned long long>(c.proposed));
  }
  return {ok, detail + " (tolerance 0.02)"};
}

Verdict ac9() {
  const auto t_table = Clock::now();
  const auto inst = planted_instance(1);
  const auto table = build_weight_table(inst.graph, 10);
  const double table_s = since(t_table);

  const auto t_cmp = Clock::now();
  ExperimentConfig cfg;  // planted seed 1, k = 10, 400 repetitions, default checkpoints
  const auto r = fig3_compare(cfg);
  const double cmp_s = since(t_cmp);

  std::map<std::string, const MethodResult*> m;
  for (const auto& x : r.methods) m[x.method] = &x;
  const auto& gbs_rs = m.at("gbs-rs")->curve;
  const auto& uni_rs = m.at("uniform-rs")->curve;
  bool a = true;
  bool strict50 = false;
  for (std::size_t i = 0; i < gbs_rs.checkpoints.size(); ++i) {
    a = a && gbs_rs.mean[i] >= uni_rs.mean[i];
    if (gbs_rs.checkpoints[i] == 50) strict50 = gbs_rs.mean[i] > uni_rs.mean[i];
  }
  a = a && strict50;
  const double gbs_sa = m.at("gbs-sa")->final_mean;
  const double uni_sa = m.at("uniform-sa")->final_mean;
  const bool b = gbs_sa > uni_sa;
  const bool c = gbs_sa > r.greedy_edges;
  const bool d = r.optimum_edges && r.planted_edges && *r.optimum_edges >= *r.planted_edges;
  const bool timing = table_s < 1800.0 && cmp_s < 600.0;

  std::ostringstream rs;
  for (std::size_t i = 0; i < gbs_rs.checkpoints.size(); ++i) {
    rs << (i ? " " : "") << gbs_rs.checkpoints[i] << ":" << fmt("%.2f/%.2f", gbs_rs.mean[i], uni_rs.mean[i]);
  }
  return {a && b && c && d && timing,
          fmt("(a) %s gbs/uniform RS means %s; (b) %s SA finals %.2f vs %.2f; (c) %s greedy %d; "
              "(d) %s optimum %d planted %d; table %.1f s (limit 1800), comparison %.1f s (limit 600)",
              a ? "ok" : "NO", rs.str().c_str(), b ? "ok" : "NO", gbs_sa, uni_sa, c ? "ok" : "NO",
              r.greedy_edges, d ? "ok" : "NO", r.optimum_edges.value_or(-1), r.planted_edges.value_or(-1),
              table_s, cmp_s)};
}

Verdict ac10() {
  auto count = [](bool shuffle, int& below, int& found) {
    PlantedSpec spec;
    spec.shuffle = shuffle;
    below = found = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const auto inst = planted_instance(seed, spec);
      const auto s = charikar_greedy(inst.graph, 10);
      below += inst.graph.induced_edges(s.indices()) < inst.planted_edges;
      found += s == inst.planted;
    }
  };
  int below = 0, found = 0, below_shuffled = 0, found_shuffled = 0;
  count(false, below, found);
  count(true, below_shuffled, found_shuffled);
  return {below >= 95,
          fmt("greedy below planted on %d of 100 seeds (need >= 95), returned the planted set on %d; "
              "with shuffled labels %d below, %d found",
              below, found, below_shuffled, found_shuffled)};
}

Verdict ac11(const std::string& cli) {
  if (cli.empty()) return {false, "no --cli given"};
  const fs::path dir = fs::temp_directory_path() / "gbsdks_acceptance_repro";
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_text(dir / "config.json", to_json(ExperimentConfig{}).dump(2) + "\n");
  auto run = [&](const char* out) {
    const std::string cmd =
        "\"" + cli + "\" fig3 --config \"" + (dir / "config.json").string() + "\" --out \"" + (dir / out).string() + "\"";
    return std::system(cmd.c_str());
  };
  const int ra = run("A"), rb = run("B");
  if (ra != 0 || rb != 0) return {false, fmt("CLI exit codes %d and %d", ra, rb)};
  const auto a = read_text(dir / "A" / "fig3.csv");
  const auto b = read_text(dir / "B" / "fig3.csv");
  const bool json_same = read_text(dir / "A" / "fig3.json") == read_text(dir / "B" / "fig3.json");
  return {a == b && !a.empty() && json_same, fmt("fig3.csv %zu bytes, identical: %s; fig3.json identical: %s", a.size(),
                                    a == b ? "yes" : "no", json_same ? "yes" : "no")};
}

std::set<std::string> split(const std::string& s) {
  std::set<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::set<std::string> expect_fail, only;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") {
      cli = argv[i + 1];
    } else if (flag == "--expect-fail") {
      expect_fail = split(argv[i + 1]);
    } else if (flag == "--only") {
      only = split(argv[i + 1]);
    } else {
      std::fprintf(stderr, "unknown argument %s\n", flag.c_str());
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"AC1 Hafnian identities", ac1},
      {"AC2 oracle equivalence", ac2},
      {"AC3 matching bound on the full sweep", ac3},
      {"AC4 exact sampler fidelity", ac4},
      {"AC5 k=2 uniform over edges", ac5},
      {"AC6 MIS convergence", ac6},
      {"AC7 zero-Hafnian exclusion", ac7},
      {"AC8 annealing acceptance law", ac8},
      {"AC9 planted-instance dominance", ac9},
      {"AC10 greedy blindness", ac10},
      {"AC11 reproducible fig3 CSV", [&] { return ac11(cli); }},
  };

  int unexpected = 0;
  for (const auto& [name, check] : criteria) {
    const std::string id = name.substr(0, name.find(' '));
    if (!only.empty() && !only.count(id)) continue;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const bool expected = expect_fail.count(id) > 0;
    std::printf("[%s] %s: %s%s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(),
                !v.pass && expected ? " (known failure, see notes)" : "");
    std::fflush(stdout);
    if (!v.pass && !expected) ++unexpected;
  }
  std::printf("%d unexpected failure(s)\n", unexpected);
  return unexpected ? 1 : 0;
}
