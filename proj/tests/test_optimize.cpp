#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "gbsdks/optimize.hpp"
#include "gbsdks/weight_table.hpp"
#include "test_support.hpp"

using namespace gbsdks;
using namespace gbsdks::testing;

namespace {

bool non_decreasing(const std::vector<int>& v) {
  return std::is_sorted(v.begin(), v.end());
}

AnnealParams params_with(double t0, Cooling cooling, int l, int steps) {
  AnnealParams p;
  p.t0 = t0;
  p.cooling = cooling;
  p.l = l;
  p.steps = steps;
  return p;
}

}  // namespace

TEST_CASE("random search on a complete graph") {
  const Graph g = complete_graph(8);
  UniformExplorer explorer(g, 4);
  Rng rng(1);
  const auto trace = random_search(g, 4, 1, explorer, rng);
  CHECK(trace.best_edges == std::vector<int>{6});
  CHECK(trace.samples_used == 1);
  CHECK(trace.final_subset.size() == 4);
}

TEST_CASE("random search finds a point-mass clique on the first draw") {
  const Graph g = graph_of(8, {{4, 5}, {4, 6}, {4, 7}, {5, 6}, {5, 7}, {6, 7}});
  GbsExplorer explorer(g, 4, GbsExplorer::table_for(g, 4));
  Rng rng(2);
  const auto trace = random_search(g, 4, 3, explorer, rng);
  CHECK(trace.best_edges.front() == 6);
  CHECK(trace.final_subset == VertexSubset({4, 5, 6, 7}));
  CHECK(trace.events.explore_fallbacks == 0);
}

TEST_CASE("random search supports odd k and records fallbacks") {
  const Graph g = erdos_renyi(12, 0.5, std::uint64_t{3});
  GbsExplorer odd(g, 5, GbsExplorer::table_for(g, 5));
  Rng rng(3);
  const auto trace = random_search(g, 5, 50, odd, rng);
  CHECK(trace.final_subset.size() == 5);

  const Graph empty(10);
  GbsExplorer fallback(empty, 4, GbsExplorer::table_for(empty, 4));
  const auto t2 = random_search(empty, 4, 10, fallback, rng);
  CHECK(t2.events.explore_fallbacks == 10);
  CHECK_THROWS_AS(random_search(g, 4, 0, fallback, rng), InputError);
  CHECK_THROWS_AS(random_search(g, 6, 5, odd, rng), InputError);
}

TEST_CASE("traces are non-decreasing and bounded by the optimum") {
  std::mt19937_64 seeds(4);
  for (int trial = 0; trial < 8; ++trial) {
    const Graph g = erdos_renyi(14, 0.4, seeds());
    const int k = 6;
    const int best = exhaustive_best(g, k).edges;
    auto table = GbsExplorer::table_for(g, k);
    auto replace = std::make_shared<const WeightTable>(build_weight_table(g, 4));
    GbsExplorer gbs(g, k, table);
    UniformExplorer uni(g, k);
    GbsTweaker gtweak(g, 2, replace);
    UniformTweaker utweak(g, 2);
    Rng rng(seeds());
    for (Explorer* e : {static_cast<Explorer*>(&gbs), static_cast<Explorer*>(&uni)}) {
      const auto rs = random_search(g, k, 100, *e, rng);
      CHECK(non_decreasing(rs.best_edges));
      CHECK(rs.best_edges.back() <= best);
      CHECK(rs.best_edges.size() == 100);
      for (Tweaker* t : {static_cast<Tweaker*>(&gtweak), static_cast<Tweaker*>(&utweak)}) {
        const auto sa = simulated_annealing(g, k, params_with(0.01, Cooling::linear, 2, 200), *e, *t, rng);
        CHECK(non_decreasing(sa.best_edges));
        CHECK(sa.best_edges.back() <= best);
        CHECK(sa.best_edges.size() == 201);
        CHECK(sa.samples_used == 201);
        CHECK(sa.final_edges == g.induced_edges(sa.final_subset.indices()));
        CHECK(sa.final_edges == sa.best_edges.back());
      }
    }
  }
}

TEST_CASE("near-zero temperature never accepts a worse state") {
  const auto inst = planted_instance(5);
  UniformExplorer explorer(inst.graph, 10);
  UniformTweaker tweaker(inst.graph, 6);
  Rng rng(5);
  const auto trace =
      simulated_annealing(inst.graph, 10, params_with(1e-12, Cooling::constant, 6, 100000), explorer, tweaker, rng);
  std::uint64_t worse = 0;
  for (const auto& [deficit, counts] : trace.downhill) {
    if (deficit > 0) {
      worse += counts.proposed;
      CHECK(counts.accepted == 0);
    }
  }
  CHECK(worse > 1000);
}

TEST_CASE("huge temperature accepts every proposal") {
  const auto inst = planted_instance(6);
  UniformExplorer explorer(inst.graph, 10);
  UniformTweaker tweaker(inst.graph, 6);
  Rng rng(6);
  const auto trace =
      simulated_annealing(inst.graph, 10, params_with(1e12, Cooling::constant, 6, 5000), explorer, tweaker, rng);
  for (const auto& [deficit, counts] : trace.downhill) CHECK(counts.accepted == counts.proposed);
  CHECK(trace.final_edges == *std::max_element(trace.best_edges.begin(), trace.best_edges.end()));
}

TEST_CASE("acceptance frequencies follow exp(delta / t)") {
  const auto inst = planted_instance(7);
  UniformExplorer explorer(inst.graph, 10);
  UniformTweaker tweaker(inst.graph, 6);
  Rng rng(7);
  const auto trace =
      simulated_annealing(inst.graph, 10, params_with(0.01, Cooling::constant, 6, 200000), explorer, tweaker, rng);
  for (int deficit = 1; deficit <= 3; ++deficit) {
    const auto& c = trace.downhill.at(deficit);
    REQUIRE(c.proposed > 2000);
    const double rate = static_cast<double>(c.accepted) / c.proposed;
    CHECK(std::abs(rate - std::exp(-deficit / 45.0 / 0.01)) < 0.02);
  }
  CHECK(trace.downhill.at(0).accepted == trace.downhill.at(0).proposed);
}

TEST_CASE("annealing is reproducible") {
  const auto inst = planted_instance(8);
  auto replace = std::make_shared<const WeightTable>(build_weight_table(inst.graph, 4));
  auto run = [&](std::uint64_t seed) {
    UniformExplorer explorer(inst.graph, 10);
    GbsTweaker tweaker(inst.graph, 6, replace);
    Rng rng(seed);
    return simulated_annealing(inst.graph, 10, AnnealParams{}, explorer, tweaker, rng);
  };
  const auto a = run(1), b = run(1);
  CHECK(a.best_edges == b.best_edges);
  CHECK(a.final_subset == b.final_subset);
  CHECK(a.events == b.events);
}

TEST_CASE("temperature schedule") {
  const AnnealParams p = params_with(0.01, Cooling::linear, 6, 500);
  CHECK(temperature(p, 0) == 0.01);
  CHECK(temperature(p, 250) == doctest::Approx(0.005));
  CHECK(temperature(p, 500) == 1e-12);
  const AnnealParams c = params_with(0.01, Cooling::constant, 6, 500);
  CHECK(temperature(c, 499) == 0.01);
}

TEST_CASE("annealing parameter validation") {
  const Graph g = complete_graph(12);
  UniformExplorer odd(g, 9);
  UniformExplorer even(g, 10);
  UniformTweaker tweaker(g, 6);
  Rng rng(1);
  CHECK_THROWS_AS(simulated_annealing(g, 9, AnnealParams{}, odd, tweaker, rng), InputError);
  CHECK_THROWS_AS(params_with(0.01, Cooling::linear, 5, 10).validate(10), InputError);
  CHECK_THROWS_AS(params_with(0.01, Cooling::linear, 10, 10).validate(10), InputError);
  CHECK_THROWS_AS(params_with(0.0, Cooling::linear, 6, 10).validate(10), InputError);
  CHECK_THROWS_AS(params_with(0.01, Cooling::linear, 6, 0).validate(10), InputError);
  UniformTweaker other(g, 4);
  CHECK_THROWS_AS(simulated_annealing(g, 10, AnnealParams{}, even, other, rng), InputError);
}

TEST_CASE("greedy peeling") {
  CHECK(charikar_greedy(complete_graph(8), 3) == VertexSubset({5, 6, 7}));
  const Graph chain = graph_of(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(charikar_greedy(chain, 3) == VertexSubset({0, 1, 2}));
  const Graph g = erdos_renyi(20, 0.3, std::uint64_t{9});
  for (int k = 1; k <= 20; ++k) {
    const auto s = charikar_greedy(g, k);
    CHECK(s.size() == static_cast<std::size_t>(k));
    CHECK(s == charikar_greedy(g, k));
  }
  CHECK_THROWS_AS(charikar_greedy(g, 21), InputError);
}

TEST_CASE("exhaustive search") {
  const auto kn = exhaustive_best(complete_graph(7), 4);
  CHECK(kn.subset == VertexSubset({0, 1, 2, 3}));
  CHECK(kn.edges == 6);

  std::vector<Edge> e;
  for (Vertex u = 0; u < 5; ++u) {
    for (Vertex v = u + 1; v < 5; ++v) e.emplace_back(u, v);
  }
  e.insert(e.end(), {{5, 6}, {5, 7}, {6, 7}});
  const auto r = exhaustive_best(Graph(8, e), 3);
  CHECK(r.subset == VertexSubset({0, 1, 2}));
  CHECK(r.edges == 3);

  std::mt19937_64 seeds(10);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = erdos_renyi(16, 0.4, seeds());
    const int k = 3 + trial % 6;
    const auto par = exhaustive_best(g, k);
    const auto ser = exhaustive_best_serial(g, k);
    CHECK(par.subset == ser.subset);
    CHECK(par.edges == ser.edges);
  }
  CHECK_THROWS_AS(exhaustive_best(complete_graph(30), 10, 1000), BudgetExceeded);
  CHECK_THROWS_AS(exhaustive_best_serial(complete_graph(30), 10, 1000), BudgetExceeded);
}

TEST_CASE("exhaustive search dominates the planted subgraph") {
  const auto inst = planted_instance(11);
  CHECK(exhaustive_best(inst.graph, 10).edges >= inst.planted_edges);
}
