#include "gbsdks/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "gbsdks/hafnian.hpp"

namespace gbsdks {

SamplerEvents& SamplerEvents::operator+=(const SamplerEvents& o) {
  explore_fallbacks += o.explore_fallbacks;
  tweak_keep_fallbacks += o.tweak_keep_fallbacks;
  tweak_replace_fallbacks += o.tweak_replace_fallbacks;
  tweak_retries += o.tweak_retries;
  tweak_retry_exhausted += o.tweak_retry_exhausted;
  return *this;
}

VertexSubset uniform_subset(int n, int k, Rng& rng) {
  if (k < 0 || k > n) throw InputError("cannot draw " + std::to_string(k) + " of " + std::to_string(n));
  std::vector<Vertex> picked;
  picked.reserve(k);
  for (int j = n - k; j < n; ++j) {
    const auto t = static_cast<Vertex>(uniform_below(rng, static_cast<std::uint64_t>(j) + 1));
    if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
      picked.push_back(t);
    } else {
      picked.push_back(static_cast<Vertex>(j));
    }
  }
  std::sort(picked.begin(), picked.end());
  return VertexSubset(std::move(picked));
}

VertexSubset uniform_explore(const Graph& g, int k, Rng& rng) { return uniform_subset(g.size(), k, rng); }

std::optional<VertexSubset> gbs_explore(const WeightTable& table, Rng& rng) {
  if (table.empty()) return std::nullopt;
  return table.sample(rng);
}

VertexSubset remove_min_degree_vertex(const Graph& g, const VertexSubset& s) {
  if (s.empty()) throw InputError("cannot remove a vertex from an empty subset");
  std::size_t victim = 0;
  int best = -1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    int d = 0;
    for (std::size_t j = 0; j < s.size(); ++j) d += g.adjacent(s[i], s[j]);
    if (best < 0 || d < best) {
      best = d;
      victim = i;
    }
  }
  std::vector<Vertex> out(s.begin(), s.end());
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(victim));
  return VertexSubset(std::move(out));
}

std::optional<VertexSubset> gbs_explore_odd(const Graph& g, const WeightTable& table_k_plus_1,
                                            Rng& rng) {
  auto drawn = gbs_explore(table_k_plus_1, rng);
  if (!drawn) return std::nullopt;
  return remove_min_degree_vertex(g, *drawn);
}

std::optional<VertexSubset> gbs_explore_odd(const Graph& g, int k, Rng& rng, std::uint64_t budget) {
  if (k % 2 == 0) throw InputError("gbs_explore_odd needs an odd k");
  if (k + 1 > g.size()) throw InputError("k + 1 exceeds the vertex count");
  return gbs_explore_odd(g, build_weight_table(g, k + 1, budget), rng);
}

// ---- MIS -------------------------------------------------------------------

MisChain::MisChain(const Graph& g, int k, MisParams params) : g_(&g), k_(k), params_(params) {
  if (k < 0 || k > g.size()) throw InputError("MIS subset size out of range");
  if (params.thinning < 1) throw InputError("MIS thinning must be at least 1");
}

bool MisChain::accept(std::uint64_t current, std::uint64_t proposed, Rng& rng) {
  if (proposed == 0) return false;
  if (proposed >= current) return true;
  return uniform_unit(rng) * static_cast<double>(current) < static_cast<double>(proposed);
}

namespace {
std::uint64_t haf_squared(const Graph& g, const VertexSubset& s) {
  const std::uint64_t h = perfect_matchings(g, s.indices());
  return h * h;
}
}  // namespace

void MisChain::step(Rng& rng) {
  VertexSubset proposal = uniform_subset(g_->size(), k_, rng);
  const std::uint64_t w = haf_squared(*g_, proposal);
  ++proposals_;
  if (accept(weight_, w, rng)) {
    state_ = std::move(proposal);
    weight_ = w;
    ++accepted_;
  }
}

VertexSubset MisChain::next(Rng& rng) {
  if (!started_) {
    std::uint64_t tries = 0;
    while (weight_ == 0) {
      if (tries++ >= params_.start_budget) {
        throw EmptyDistribution("MIS found no subset with a perfect matching");
      }
      state_ = uniform_subset(g_->size(), k_, rng);
      weight_ = haf_squared(*g_, state_);
    }
    for (std::uint64_t i = 0; i < params_.burn_in; ++i) step(rng);
    started_ = true;
  }
  for (std::uint64_t i = 0; i < params_.thinning; ++i) step(rng);
  return state_;
}

std::vector<VertexSubset> mis_sample(const Graph& g, int k, const MisParams& params, Rng& rng,
                                     std::size_t count) {
  if (k % 2) throw InputError("mis_sample needs an even k");
  MisChain chain(g, k, params);
  std::vector<VertexSubset> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(chain.next(rng));
  return out;
}

// ---- tweaks ----------------------------------------------------------------

namespace {

void check_tweak_args(const Graph& g, const VertexSubset& s, int l) {
  const int k = static_cast<int>(s.size());
  if (l < 2 || l % 2 || l >= k) throw InputError("tweak needs an even l with 2 <= l < k");
  if (s.indices().back() >= static_cast<Vertex>(g.size())) throw InputError("subset index out of range");
}

std::vector<Vertex> pick(std::span<const Vertex> pool, int count, Rng& rng) {
  const VertexSubset positions = uniform_subset(static_cast<int>(pool.size()), count, rng);
  std::vector<Vertex> out;
  out.reserve(count);
  for (Vertex p : positions) out.push_back(pool[p]);
  return out;
}

using KeepDraw = std::function<VertexSubset(const VertexSubset& s, Rng&, TweakOutcome&)>;
using ReplaceDraw = std::function<VertexSubset(Rng&, TweakOutcome&)>;

TweakOutcome run_tweak(const Graph& g, const VertexSubset& s, int l, Rng& rng, int retry_budget,
                       const KeepDraw& draw_keep, const ReplaceDraw& draw_replace) {
  const int k = static_cast<int>(s.size());
  TweakOutcome out;

  // Step 1: core R of size l, extended by m more members of s.
  const VertexSubset core = draw_keep(s, rng, out);
  const int m = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k - l)));
  out.extension = m;
  std::vector<Vertex> rest;
  for (Vertex v : s) {
    if (!core.contains(v)) rest.push_back(v);
  }
  std::vector<Vertex> kept(core.begin(), core.end());
  for (Vertex v : pick(rest, m, rng)) kept.push_back(v);
  out.kept = VertexSubset::from_unsorted(kept);

  // Step 2: (k-l)-subset T, reduced by m, redrawn while it meets the kept set.
  const int need = k - l - m;
  std::optional<std::vector<Vertex>> replacement;
  for (int attempt = 0; attempt <= retry_budget; ++attempt) {
    const VertexSubset t = draw_replace(rng, out);
    std::vector<Vertex> reduced = pick(t.indices(), need, rng);
    const bool clash = std::any_of(reduced.begin(), reduced.end(),
                                   [&](Vertex v) { return out.kept.contains(v); });
    if (!clash) {
      replacement = std::move(reduced);
      break;
    }
    if (attempt < retry_budget) ++out.retries;
  }
  if (!replacement) {
    out.retry_exhausted = true;
    std::vector<Vertex> free;
    for (Vertex v = 0; v < static_cast<Vertex>(g.size()); ++v) {
      if (!out.kept.contains(v)) free.push_back(v);
    }
    replacement = pick(free, need, rng);
  }
  out.replacement = VertexSubset::from_unsorted(*replacement);

  // Step 3.
  kept.insert(kept.end(), replacement->begin(), replacement->end());
  out.subset = VertexSubset::from_unsorted(std::move(kept));
  return out;
}

VertexSubset lift(const VertexSubset& local, const VertexSubset& s) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex i : local) out.push_back(s[i]);
  return VertexSubset(std::move(out));
}

}  // namespace

TweakOutcome gbs_tweak(const Graph& g, const VertexSubset& s, int l, const WeightTable& replace_table,
                       Rng& rng, int retry_budget) {
  check_tweak_args(g, s, l);
  const int k = static_cast<int>(s.size());
  if (replace_table.k() != k - l || replace_table.n() != g.size()) {
    throw InputError("replacement table must hold (k-l)-subsets of the same graph");
  }
  auto keep = [&](const VertexSubset& subset, Rng& r, TweakOutcome& o) {
    const WeightTable local = build_weight_table(subgraph(g, subset), l);
    if (local.empty()) {
      o.keep_fallback = true;
      return lift(uniform_subset(k, l, r), subset);
    }
    return lift(local.sample(r), subset);
  };
  auto replace = [&](Rng& r, TweakOutcome& o) {
    if (replace_table.empty()) {
      o.replace_fallback = true;
      return uniform_subset(g.size(), k - l, r);
    }
    return replace_table.sample(r);
  };
  return run_tweak(g, s, l, rng, retry_budget, keep, replace);
}

TweakOutcome uniform_tweak(const Graph& g, const VertexSubset& s, int l, Rng& rng, int retry_budget) {
  check_tweak_args(g, s, l);
  const int k = static_cast<int>(s.size());
  auto keep = [&](const VertexSubset& subset, Rng& r, TweakOutcome&) {
    return lift(uniform_subset(k, l, r), subset);
  };
  auto replace = [&](Rng& r, TweakOutcome&) { return uniform_subset(g.size(), k - l, r); };
  return run_tweak(g, s, l, rng, retry_budget, keep, replace);
}

// ---- strategies ------------------------------------------------------------

namespace {
void record(const TweakOutcome& t, SamplerEvents& events) {
  events.tweak_keep_fallbacks += t.keep_fallback;
  events.tweak_replace_fallbacks += t.replace_fallback;
  events.tweak_retries += static_cast<std::uint64_t>(t.retries);
  events.tweak_retry_exhausted += t.retry_exhausted;
}
}  // namespace

UniformExplorer::UniformExplorer(const Graph& g, int k) : g_(&g), k_(k) {
  if (k < 1 || k > g.size()) throw InputError("k out of range");
}

VertexSubset UniformExplorer::explore(Rng& rng, SamplerEvents&) { return uniform_explore(*g_, k_, rng); }

GbsExplorer::GbsExplorer(const Graph& g, int k, std::shared_ptr<const WeightTable> table)
    : g_(&g), k_(k), table_(std::move(table)) {
  const int table_k = k % 2 ? k + 1 : k;
  if (!table_ || table_->k() != table_k || table_->n() != g.size()) {
    throw InputError("weight table does not match the explorer's graph and k");
  }
}

std::shared_ptr<const WeightTable> GbsExplorer::table_for(const Graph& g, int k,
                                                          const std::string& cache_dir,
                                                          std::uint64_t budget) {
  const int table_k = k % 2 ? k + 1 : k;
  if (table_k > g.size()) throw InputError("k + 1 exceeds the vertex count");
  return std::make_shared<const WeightTable>(load_or_build_weight_table(g, table_k, cache_dir, budget));
}

VertexSubset GbsExplorer::explore(Rng& rng, SamplerEvents& events) {
  auto drawn = k_ % 2 ? gbs_explore_odd(*g_, *table_, rng) : gbs_explore(*table_, rng);
  if (drawn) return *std::move(drawn);
  ++events.explore_fallbacks;
  return uniform_explore(*g_, k_, rng);
}

MisExplorer::MisExplorer(const Graph& g, int k, MisParams params)
    : g_(&g), k_(k), chain_(g, k % 2 ? k + 1 : k, params) {}

VertexSubset MisExplorer::explore(Rng& rng, SamplerEvents& events) {
  if (!failed_) {
    try {
      VertexSubset s = chain_.next(rng);
      return k_ % 2 ? remove_min_degree_vertex(*g_, s) : s;
    } catch (const EmptyDistribution&) {
      failed_ = true;
    }
  }
  ++events.explore_fallbacks;
  return uniform_explore(*g_, k_, rng);
}

UniformTweaker::UniformTweaker(const Graph& g, int l, int retry_budget)
    : g_(&g), l_(l), retry_budget_(retry_budget) {}

VertexSubset UniformTweaker::tweak(const VertexSubset& s, Rng& rng, SamplerEvents& events) {
  TweakOutcome t = uniform_tweak(*g_, s, l_, rng, retry_budget_);
  record(t, events);
  return std::move(t.subset);
}

GbsTweaker::GbsTweaker(const Graph& g, int l, std::shared_ptr<const WeightTable> replace_table,
                       int retry_budget)
    : g_(&g), l_(l), replace_table_(std::move(replace_table)), retry_budget_(retry_budget) {
  if (!replace_table_) throw InputError("GbsTweaker needs a replacement table");
}

VertexSubset GbsTweaker::tweak(const VertexSubset& s, Rng& rng, SamplerEvents& events) {
  TweakOutcome t = gbs_tweak(*g_, s, l_, *replace_table_, rng, retry_budget_);
  record(t, events);
  return std::move(t.subset);
}

SpectralInfo spectral_radius(const Graph& g) {
  const int n = g.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  SpectralInfo info;
  if (g.edge_count() == 0) return info;
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  // Perron-Frobenius: the largest eigenvalue dominates in absolute value.
  info.radius = solver.eigenvalues().maxCoeff();
  info.max_scaling = 1.0 / info.radius;
  return info;
}

}  // namespace gbsdks
