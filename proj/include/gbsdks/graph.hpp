#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gbsdks/common.hpp"

namespace gbsdks {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Strictly increasing vertex indices; a collision-free outcome.
class VertexSubset {
 public:
  VertexSubset() = default;
  /// Throws InputError unless `indices` is strictly increasing.
  explicit VertexSubset(std::vector<Vertex> indices);
  /// Sorts; throws InputError on duplicates.
  static VertexSubset from_unsorted(std::vector<Vertex> indices);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::span<const Vertex> indices() const { return indices_; }
  Vertex operator[](std::size_t i) const { return indices_[i]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  bool contains(Vertex v) const;

  auto operator<=>(const VertexSubset&) const = default;

 private:
  std::vector<Vertex> indices_;
};

/// Simple undirected unweighted graph. Immutable once built; the adjacency
/// rows are stored as bitsets so induced-subgraph queries are popcounts.
class Graph {
 public:
  explicit Graph(int n = 1);
  /// Duplicate edges are merged. Self loops and out-of-range endpoints throw
  /// InputError.
  Graph(int n, std::span<const Edge> edges);

  int size() const { return n_; }
  bool adjacent(Vertex u, Vertex v) const {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }
  std::span<const std::uint64_t> row(Vertex v) const {
    return {rows_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  std::size_t words_per_row() const { return words_; }

  std::vector<Edge> edges() const;
  int edge_count() const { return edge_count_; }

  /// Edges of the subgraph induced by `vertices` (no validation).
  int induced_edges(std::span<const Vertex> vertices) const;

  /// 16 hex digits of FNV-1a over n and the upper triangle.
  std::string fingerprint() const;

  bool operator==(const Graph&) const = default;

 private:
  void set_edge(Vertex u, Vertex v);

  int n_;
  std::size_t words_;
  int edge_count_ = 0;
  std::vector<std::uint64_t> rows_;
};

// Checked query functions; invalid arguments throw InputError.

int edge_count(const Graph& g);
double density(const Graph& g);
int degree(const Graph& g, Vertex v);
Graph subgraph(const Graph& g, const VertexSubset& s);
/// Relabels vertex v as perm[v].
Graph permuted(const Graph& g, std::span<const Vertex> perm);
Graph complete_graph(int n);

/// Each of the n(n-1)/2 pairs, visited in (i, j>i) order, is kept when a
/// uniform draw falls below p.
Graph erdos_renyi(int n, double p, std::uint64_t seed);
Graph erdos_renyi(int n, double p, Rng& rng);

struct PlantedInstance {
  Graph graph;
  VertexSubset planted;
  int planted_edges = 0;
};

struct PlantedSpec {
  int base_vertices = 20;
  double base_p = 0.5;
  int planted_vertices = 10;
  double planted_q = 0.875;
  int cross_edges = 8;
  bool shuffle = false;
};

/// Base Erdos-Renyi graph on the low indices, a denser random graph on the
/// next block, then `cross_edges` distinct uniformly drawn (base, planted)
/// pairs. With shuffle set, labels are randomly permuted afterwards.
PlantedInstance planted_instance(std::uint64_t seed, const PlantedSpec& spec = {});

// Text format: first line is n, then one "u v" pair per line. '#' starts a
// comment line. Duplicate edges are merged.
Graph parse_graph(const std::string& text);
Graph read_graph(const std::filesystem::path& path);
void write_graph(const Graph& g, const std::filesystem::path& path);
std::string format_graph(const Graph& g);

VertexSubset parse_subset(const std::string& text);
VertexSubset read_subset(const std::filesystem::path& path);
void write_subset(const VertexSubset& s, const std::filesystem::path& path);
std::string format_subset(const VertexSubset& s);

}  // namespace gbsdks
