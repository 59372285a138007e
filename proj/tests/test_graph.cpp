#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <random>

#include "gbsdks/graph.hpp"
#include "test_support.hpp"

using namespace gbsdks;
using namespace gbsdks::testing;

namespace {

int cross_edge_count(const PlantedInstance& inst) {
  int cross = 0;
  for (const auto& [u, v] : inst.graph.edges()) {
    if (inst.planted.contains(u) != inst.planted.contains(v)) ++cross;
  }
  return cross;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gbsdks_test_graph";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("vertex subsets are strictly increasing") {
  CHECK(VertexSubset({0, 2, 5}).size() == 3);
  CHECK_THROWS_AS(VertexSubset({2, 1}), InputError);
  CHECK_THROWS_AS(VertexSubset({1, 1}), InputError);
  CHECK(VertexSubset::from_unsorted({5, 0, 2}) == VertexSubset({0, 2, 5}));
  CHECK_THROWS_AS(VertexSubset::from_unsorted({3, 0, 3}), InputError);
  CHECK(VertexSubset({1, 4}).contains(4));
  CHECK_FALSE(VertexSubset({1, 4}).contains(2));
}

TEST_CASE("construction validates edges") {
  CHECK_THROWS_AS(graph_of(3, {{0, 0}}), InputError);
  CHECK_THROWS_AS(graph_of(3, {{0, 3}}), InputError);
  CHECK_THROWS_AS(Graph(0), InputError);
  const Graph g = graph_of(3, {{0, 1}, {1, 0}, {0, 1}});
  CHECK(g.edge_count() == 1);
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 0));
}

TEST_CASE("subgraph examples") {
  const Graph k4 = complete_graph(4);
  const Graph pair = subgraph(k4, VertexSubset({0, 1}));
  CHECK(pair.size() == 2);
  CHECK(pair.edge_count() == 1);
  CHECK(subgraph(k4, VertexSubset({0, 1, 2, 3})) == k4);
  const Graph er = erdos_renyi(9, 0.4, std::uint64_t{4});
  CHECK(subgraph(er, VertexSubset({0, 1, 2, 3, 4, 5, 6, 7, 8})) == er);
  CHECK_THROWS_AS(subgraph(k4, VertexSubset({1, 4})), InputError);
}

TEST_CASE("edge counts, density and degree") {
  CHECK(edge_count(complete_graph(10)) == 45);
  CHECK(edge_count(Graph(5)) == 0);
  CHECK(edge_count(erdos_renyi(16, 1.0, std::uint64_t{8})) == 120);

  CHECK(density(complete_graph(10)) == 1.0);
  CHECK(density(Graph(5)) == 0.0);
  CHECK_THROWS_AS(density(Graph(1)), InputError);
  std::vector<Edge> e;
  for (Vertex u = 0; u < 10 && e.size() < 42; ++u) {
    for (Vertex v = u + 1; v < 10 && e.size() < 42; ++v) e.emplace_back(u, v);
  }
  CHECK(density(Graph(10, e)) == doctest::Approx(42.0 / 45.0));

  for (Vertex v = 0; v < 4; ++v) CHECK(degree(complete_graph(4), v) == 3);
  CHECK(degree(graph_of(3, {{0, 1}}), 2) == 0);
  CHECK(degree(path_graph(3), 1) == 2);
  CHECK_THROWS_AS(degree(path_graph(3), 3), InputError);
}

TEST_CASE("induced edge counts match the extracted subgraph") {
  std::mt19937_64 rng(1);
  for (int n : {12, 30, 70, 130}) {
    const Graph g = erdos_renyi(n, 0.3, rng());
    for (int trial = 0; trial < 50; ++trial) {
      Rng r(rng());
      const auto s = VertexSubset::from_unsorted([&] {
        std::vector<Vertex> all(n);
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), r);
        all.resize(1 + r() % n);
        return all;
      }());
      CHECK(g.induced_edges(s.indices()) == subgraph(g, s).edge_count());
    }
  }
}

TEST_CASE("Erdos-Renyi limits and determinism") {
  CHECK(erdos_renyi(16, 1.0, std::uint64_t{3}) == complete_graph(16));
  CHECK(erdos_renyi(16, 0.0, std::uint64_t{3}) == Graph(16));
  CHECK(erdos_renyi(16, 0.5, std::uint64_t{3}) == erdos_renyi(16, 0.5, std::uint64_t{3}));
  CHECK(erdos_renyi(16, 0.5, std::uint64_t{3}).fingerprint() ==
        erdos_renyi(16, 0.5, std::uint64_t{3}).fingerprint());
  CHECK_FALSE(erdos_renyi(16, 0.5, std::uint64_t{3}) == erdos_renyi(16, 0.5, std::uint64_t{4}));
  CHECK_THROWS_AS(erdos_renyi(5, 1.5, std::uint64_t{1}), InputError);
  CHECK_THROWS_AS(erdos_renyi(5, -0.1, std::uint64_t{1}), InputError);
}

TEST_CASE("fingerprints are fixed strings for fixed graphs") {
  const auto fp = complete_graph(4).fingerprint();
  CHECK(fp.size() == 16);
  CHECK(fp != Graph(4).fingerprint());
  CHECK(fp != complete_graph(5).fingerprint());
}

TEST_CASE("planted instances have the documented shape") {
  double planted_total = 0.0;
  const int seeds = 1000;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto inst = planted_instance(seed);
    REQUIRE(inst.graph.size() == 30);
    REQUIRE(cross_edge_count(inst) == 8);
    REQUIRE(inst.planted == VertexSubset({20, 21, 22, 23, 24, 25, 26, 27, 28, 29}));
    REQUIRE(subgraph(inst.graph, inst.planted).edge_count() == inst.planted_edges);
    planted_total += inst.planted_edges;
  }
  CHECK(planted_total / seeds == doctest::Approx(39.375).epsilon(1.0 / 39.375));
}

TEST_CASE("shuffled planted instances are relabelled copies") {
  for (int seed = 0; seed < 20; ++seed) {
    const auto plain = planted_instance(seed);
    PlantedSpec spec;
    spec.shuffle = true;
    const auto shuffled = planted_instance(seed, spec);
    CHECK(shuffled.graph.edge_count() == plain.graph.edge_count());
    CHECK(shuffled.planted_edges == plain.planted_edges);
    CHECK(cross_edge_count(shuffled) == 8);
    CHECK(subgraph(shuffled.graph, shuffled.planted).edge_count() == shuffled.planted_edges);
  }
}

TEST_CASE("the planted subgraph beats random base subsets on most seeds") {
  const int seeds = 100;
  int wins = 0;
  for (int seed = 0; seed < seeds; ++seed) {
    const auto inst = planted_instance(seed);
    Rng rng(derive_seed(seed, 7, 0));
    std::vector<Vertex> base(20);
    std::iota(base.begin(), base.end(), 0);
    int best = 0;
    for (int t = 0; t < 1000; ++t) {
      std::shuffle(base.begin(), base.end(), rng);
      std::vector<Vertex> pick(base.begin(), base.begin() + 10);
      best = std::max(best, inst.graph.induced_edges(pick));
    }
    wins += inst.planted_edges > best;
  }
  CHECK(wins >= 95);
}

TEST_CASE("density of an induced subgraph is invariant under relabelling") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + trial % 20;
    const Graph g = erdos_renyi(n, 0.5, rng());
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Vertex> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(2 + rng() % (n - 1));
    const auto s = VertexSubset::from_unsorted(all);
    std::vector<Vertex> mapped;
    for (Vertex v : s) mapped.push_back(perm[v]);
    const Graph h = permuted(g, perm);
    CHECK(density(subgraph(h, VertexSubset::from_unsorted(mapped))) ==
          density(subgraph(g, s)));
    CHECK(h.edge_count() == g.edge_count());
  }
}

TEST_CASE("graph text format") {
  const Graph g = parse_graph("3\n0 1\n1 2\n");
  CHECK(g == path_graph(3));
  CHECK(parse_graph("# comment\n4\n\n0 1\n# another\n2 3\n").edge_count() == 2);
  CHECK(parse_graph(format_graph(complete_graph(4))) == complete_graph(4));

  const auto path = scratch("k4.txt");
  write_graph(complete_graph(4), path);
  CHECK(read_graph(path) == complete_graph(4));

  CHECK_THROWS_AS(parse_graph("3\n0 0\n"), InputError);
  CHECK_THROWS_WITH_AS(parse_graph("3\n0 1\n1 x\n"), doctest::Contains("line 3"), InputError);
  CHECK_THROWS_WITH_AS(parse_graph("3\n0 1 2\n"), doctest::Contains("weighted"), InputError);
  CHECK_THROWS_AS(parse_graph("3\n0 5\n"), InputError);
  CHECK_THROWS_AS(parse_graph(""), InputError);
  CHECK_THROWS_AS(read_graph(scratch("missing.txt")), IoError);
}

TEST_CASE("subset text format") {
  const VertexSubset s({1, 4, 7});
  CHECK(parse_subset(format_subset(s)) == s);
  const auto path = scratch("s.txt");
  write_subset(s, path);
  CHECK(read_subset(path) == s);
  CHECK_THROWS_AS(parse_subset("3 3"), InputError);
}
