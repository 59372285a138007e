#include "gbsdks/graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace gbsdks {

VertexSubset::VertexSubset(std::vector<Vertex> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 1; i < indices_.size(); ++i) {
    if (indices_[i - 1] >= indices_[i]) {
      throw InputError("vertex subset must be strictly increasing");
    }
  }
}

VertexSubset VertexSubset::from_unsorted(std::vector<Vertex> indices) {
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
    throw InputError("vertex subset contains a repeated vertex");
  }
  return VertexSubset(std::move(indices));
}

bool VertexSubset::contains(Vertex v) const {
  return std::binary_search(indices_.begin(), indices_.end(), v);
}

Graph::Graph(int n) : n_(n), words_((static_cast<std::size_t>(n) + 63) / 64) {
  if (n < 1) throw InputError("graph needs at least one vertex");
  rows_.assign(static_cast<std::size_t>(n) * words_, 0);
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (const auto& [u, v] : edges) {
    if (u >= static_cast<Vertex>(n) || v >= static_cast<Vertex>(n)) {
      throw InputError("edge endpoint out of range: " + std::to_string(u) + " " +
                       std::to_string(v));
    }
    if (u == v) throw InputError("self loop on vertex " + std::to_string(u));
    set_edge(u, v);
  }
}

void Graph::set_edge(Vertex u, Vertex v) {
  if (adjacent(u, v)) return;
  rows_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  rows_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  ++edge_count_;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < static_cast<Vertex>(n_); ++u) {
    for (Vertex v = u + 1; v < static_cast<Vertex>(n_); ++v) {
      if (adjacent(u, v)) out.emplace_back(u, v);
    }
  }
  return out;
}

int Graph::induced_edges(std::span<const Vertex> vertices) const {
  if (words_ == 1) {
    std::uint64_t mask = 0;
    for (Vertex v : vertices) mask |= std::uint64_t{1} << v;
    int twice = 0;
    for (Vertex v : vertices) twice += std::popcount(rows_[v] & mask);
    return twice / 2;
  }
  int count = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      count += adjacent(vertices[i], vertices[j]);
    }
  }
  return count;
}

std::string Graph::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int shift = 0; shift < 32; shift += 8) mix((static_cast<std::uint32_t>(n_) >> shift) & 0xff);
  for (Vertex u = 0; u < static_cast<Vertex>(n_); ++u) {
    for (Vertex v = u + 1; v < static_cast<Vertex>(n_); ++v) mix(adjacent(u, v) ? 1 : 0);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int edge_count(const Graph& g) { return g.edge_count(); }

double density(const Graph& g) {
  if (g.size() < 2) throw InputError("density needs at least two vertices");
  const double pairs = 0.5 * g.size() * (g.size() - 1);
  return g.edge_count() / pairs;
}

int degree(const Graph& g, Vertex v) {
  if (v >= static_cast<Vertex>(g.size())) throw InputError("vertex out of range");
  int d = 0;
  for (std::uint64_t w : g.row(v)) d += std::popcount(w);
  return d;
}

Graph subgraph(const Graph& g, const VertexSubset& s) {
  if (s.empty()) throw InputError("subgraph of an empty subset");
  if (s.indices().back() >= static_cast<Vertex>(g.size())) {
    throw InputError("subset index out of range");
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (g.adjacent(s[i], s[j])) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return Graph(static_cast<int>(s.size()), edges);
}

Graph permuted(const Graph& g, std::span<const Vertex> perm) {
  if (perm.size() != static_cast<std::size_t>(g.size())) {
    throw InputError("permutation size mismatch");
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return Graph(g.size(), edges);
}

Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
    for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) edges.emplace_back(u, v);
  }
  return Graph(n, edges);
}

Graph erdos_renyi(int n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability outside [0, 1]");
  if (n < 1) throw InputError("graph needs at least one vertex");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
    for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) {
      if (uniform_unit(rng) < p) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return erdos_renyi(n, p, rng);
}

PlantedInstance planted_instance(std::uint64_t seed, const PlantedSpec& spec) {
  const int nb = spec.base_vertices;
  const int np = spec.planted_vertices;
  if (nb < 1 || np < 1) throw InputError("planted instance needs non-empty parts");
  if (spec.cross_edges < 0 || spec.cross_edges > nb * np) {
    throw InputError("cross edge count exceeds available pairs");
  }
  Rng rng(seed);
  const Graph base = erdos_renyi(nb, spec.base_p, rng);
  const Graph dense = erdos_renyi(np, spec.planted_q, rng);

  std::vector<Edge> edges = base.edges();
  for (const auto& [u, v] : dense.edges()) edges.emplace_back(u + nb, v + nb);

  std::vector<Edge> cross;
  while (static_cast<int>(cross.size()) < spec.cross_edges) {
    const auto u = static_cast<Vertex>(uniform_below(rng, nb));
    const auto v = static_cast<Vertex>(nb + uniform_below(rng, np));
    if (std::find(cross.begin(), cross.end(), Edge{u, v}) == cross.end()) {
      cross.emplace_back(u, v);
    }
  }
  edges.insert(edges.end(), cross.begin(), cross.end());

  const int n = nb + np;
  std::vector<Vertex> planted(np);
  std::iota(planted.begin(), planted.end(), static_cast<Vertex>(nb));
  Graph g(n, edges);

  if (spec.shuffle) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) {
      std::swap(perm[i], perm[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
    }
    g = permuted(g, perm);
    for (auto& v : planted) v = perm[v];
  }
  PlantedInstance out{std::move(g), VertexSubset::from_unsorted(std::move(planted)), 0};
  out.planted_edges = out.graph.induced_edges(out.planted.indices());
  return out;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

long long parse_index(const std::string& token, int line) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(token, &used);
  } catch (const std::exception&) {
    parse_fail(line, "expected an integer, got '" + token + "'");
  }
  if (used != token.size()) parse_fail(line, "expected an integer, got '" + token + "'");
  return value;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  long long n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (n < 0) {
      if (tokens.size() != 1) parse_fail(line_no, "expected the vertex count alone");
      n = parse_index(tokens[0], line_no);
      if (n < 1 || n > (1 << 20)) parse_fail(line_no, "vertex count out of range");
      continue;
    }
    if (tokens.size() == 3) parse_fail(line_no, "weighted edges are not supported");
    if (tokens.size() != 2) parse_fail(line_no, "expected 'u v'");
    const long long u = parse_index(tokens[0], line_no);
    const long long v = parse_index(tokens[1], line_no);
    if (u < 0 || v < 0 || u >= n || v >= n) parse_fail(line_no, "vertex index out of range");
    if (u == v) parse_fail(line_no, "self loop is not allowed");
    edges.emplace_back(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
  }
  if (n < 0) throw InputError("graph file has no vertex count");
  return Graph(static_cast<int>(n), edges);
}

Graph read_graph(const std::filesystem::path& path) { return parse_graph(slurp(path)); }

std::string format_graph(const Graph& g) {
  std::string out = std::to_string(g.size()) + "\n";
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u) + " " + std::to_string(v) + "\n";
  }
  return out;
}

void write_graph(const Graph& g, const std::filesystem::path& path) { spit(path, format_graph(g)); }

VertexSubset parse_subset(const std::string& text) {
  std::istringstream in(text);
  std::vector<Vertex> indices;
  for (std::string t; in >> t;) {
    const long long v = parse_index(t, 1);
    if (v < 0 || v > 0xffffffffLL) parse_fail(1, "vertex index out of range");
    indices.push_back(static_cast<Vertex>(v));
  }
  return VertexSubset::from_unsorted(std::move(indices));
}

VertexSubset read_subset(const std::filesystem::path& path) { return parse_subset(slurp(path)); }

std::string format_subset(const VertexSubset& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  return out;
}

void write_subset(const VertexSubset& s, const std::filesystem::path& path) {
  spit(path, format_subset(s) + "\n");
}

}  // namespace gbsdks
