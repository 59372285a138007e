#include "gbsdks/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gbsdks/combinatorics.hpp"

namespace gbsdks {

void AnnealParams::validate(int k) const {
  if (!(t0 > 0.0)) throw InputError("initial temperature must be positive");
  if (!(floor >= 0.0)) throw InputError("temperature floor must be non-negative");
  if (steps < 1) throw InputError("annealing needs at least one step");
  if (k % 2) throw InputError("simulated annealing needs an even k");
  if (l < 2 || l % 2 || l >= k) throw InputError("l must be even with 2 <= l < k");
}

double temperature(const AnnealParams& p, int completed) {
  if (p.cooling == Cooling::constant) return p.t0;
  const double t = p.t0 * (1.0 - static_cast<double>(completed) / p.steps);
  return std::max(t, p.floor);
}

int RunTrace::best_after(std::uint64_t draws) const {
  if (best_edges.empty()) throw InputError("empty trace");
  const std::uint64_t i = std::clamp<std::uint64_t>(draws, 1, best_edges.size()) - 1;
  return best_edges[i];
}

namespace {
void check_k(const Graph& g, int k) {
  if (k < 1 || k > g.size()) throw InputError("k must lie in [1, n]");
}
}  // namespace

RunTrace random_search(const Graph& g, int k, int n_samples, Explorer& explorer, Rng& rng) {
  check_k(g, k);
  if (n_samples < 1) throw InputError("random search needs at least one sample");
  if (explorer.k() != k) throw InputError("explorer draws subsets of a different size");
  RunTrace trace;
  trace.best_edges.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    VertexSubset s = explorer.explore(rng, trace.events);
    const int e = g.induced_edges(s.indices());
    if (i == 0 || e > trace.final_edges) {
      trace.final_edges = e;
      trace.final_subset = std::move(s);
    }
    trace.best_edges.push_back(trace.final_edges);
  }
  trace.samples_used = static_cast<std::uint64_t>(n_samples);
  return trace;
}

RunTrace simulated_annealing(const Graph& g, int k, const AnnealParams& params, Explorer& explorer,
                             Tweaker& tweaker, Rng& rng) {
  check_k(g, k);
  params.validate(k);
  if (explorer.k() != k) throw InputError("explorer draws subsets of a different size");
  if (tweaker.l() != params.l) throw InputError("tweaker was built for a different l");
  const double pairs = 0.5 * k * (k - 1);

  RunTrace trace;
  trace.best_edges.reserve(static_cast<std::size_t>(params.steps) + 1);
  VertexSubset current = explorer.explore(rng, trace.events);
  int current_edges = g.induced_edges(current.indices());
  trace.final_subset = current;
  trace.final_edges = current_edges;
  trace.best_edges.push_back(current_edges);

  double t = params.t0;
  for (int a = 1; a <= params.steps; ++a) {
    VertexSubset proposal = tweaker.tweak(current, rng, trace.events);
    const int proposal_edges = g.induced_edges(proposal.indices());
    bool take = proposal_edges > current_edges;
    if (!take) {
      const double delta = (proposal_edges - current_edges) / pairs;
      take = uniform_unit(rng) < std::exp(delta / t);
      auto& counts = trace.downhill[current_edges - proposal_edges];
      ++counts.proposed;
      counts.accepted += take;
    }
    if (take) {
      current = std::move(proposal);
      current_edges = proposal_edges;
    }
    if (current_edges > trace.final_edges) {
      trace.final_edges = current_edges;
      trace.final_subset = current;
    }
    t = temperature(params, a);
    trace.best_edges.push_back(trace.final_edges);
  }
  trace.samples_used = trace.best_edges.size();
  return trace;
}

VertexSubset charikar_greedy(const Graph& g, int k) {
  check_k(g, k);
  const int n = g.size();
  std::vector<int> deg(n);
  std::vector<char> alive(n, 1);
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) deg[v] = degree(g, v);
  for (int remaining = n; remaining > k; --remaining) {
    int victim = -1;
    for (int v = 0; v < n; ++v) {
      if (alive[v] && (victim < 0 || deg[v] < deg[victim])) victim = v;
    }
    alive[victim] = 0;
    for (int u = 0; u < n; ++u) {
      if (alive[u] && g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(victim))) --deg[u];
    }
  }
  std::vector<Vertex> out;
  for (int v = 0; v < n; ++v) {
    if (alive[v]) out.push_back(static_cast<Vertex>(v));
  }
  return VertexSubset(std::move(out));
}

namespace {

void check_exhaustive(const Graph& g, int k, std::uint64_t budget) {
  check_k(g, k);
  if (binomial(g.size(), k) > budget) {
    throw BudgetExceeded("C(" + std::to_string(g.size()) + ", " + std::to_string(k) +
                         ") exceeds the enumeration budget of " + std::to_string(budget));
  }
}

}  // namespace

ExhaustiveResult exhaustive_best(const Graph& g, int k, std::uint64_t budget) {
  check_exhaustive(g, k, budget);
  const int n = g.size();
  const BinomialTable binom(n, k);
  const std::uint64_t count = binom(n, k);
  constexpr std::uint64_t kChunk = 1 << 14;
  const auto chunks = static_cast<std::int64_t>((count + kChunk - 1) / kChunk);
  std::vector<int> chunk_best(chunks, -1);
  std::vector<std::uint64_t> chunk_rank(chunks, 0);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::vector<Vertex> combo(k);
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = std::min(count, begin + kChunk);
    lex_unrank(begin, n, k, binom, combo);
    int best = -1;
    std::uint64_t best_rank = begin;
    for (std::uint64_t r = begin; r < end; ++r) {
      const int e = g.induced_edges(combo);
      if (e > best) {
        best = e;
        best_rank = r;
      }
      next_combination(combo, n);
    }
    chunk_best[c] = best;
    chunk_rank[c] = best_rank;
  }
  // Chunks are in rank order, so strict improvement keeps the smallest rank.
  int best = -1;
  std::uint64_t best_rank = 0;
  for (std::int64_t c = 0; c < chunks; ++c) {
    if (chunk_best[c] > best) {
      best = chunk_best[c];
      best_rank = chunk_rank[c];
    }
  }
  std::vector<Vertex> combo(k);
  lex_unrank(best_rank, n, k, binom, combo);
  return {VertexSubset(std::move(combo)), best};
}

ExhaustiveResult exhaustive_best_serial(const Graph& g, int k, std::uint64_t budget) {
  check_exhaustive(g, k, budget);
  std::vector<Vertex> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = static_cast<Vertex>(i);
  ExhaustiveResult best{VertexSubset(combo), g.induced_edges(combo)};
  while (next_combination(combo, g.size())) {
    const int e = g.induced_edges(combo);
    if (e > best.edges) best = {VertexSubset(combo), e};
  }
  return best;
}

}  // namespace gbsdks
