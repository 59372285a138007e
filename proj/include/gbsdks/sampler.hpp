#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbsdks/common.hpp"
#include "gbsdks/graph.hpp"
#include "gbsdks/weight_table.hpp"

namespace gbsdks {

/// No k-subset with a perfect matching was found.
class EmptyDistribution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts of every non-fatal fallback taken by the samplers.
struct SamplerEvents {
  std::uint64_t explore_fallbacks = 0;
  std::uint64_t tweak_keep_fallbacks = 0;
  std::uint64_t tweak_replace_fallbacks = 0;
  std::uint64_t tweak_retries = 0;
  std::uint64_t tweak_retry_exhausted = 0;

  SamplerEvents& operator+=(const SamplerEvents& o);
  bool operator==(const SamplerEvents&) const = default;
};

inline constexpr int kDefaultTweakRetries = 1000;

// ---- exploration -----------------------------------------------------------

/// Uniform k-subset of {0..n-1} (Floyd's algorithm).
VertexSubset uniform_subset(int n, int k, Rng& rng);
VertexSubset uniform_explore(const Graph& g, int k, Rng& rng);

/// Draw from the exact table; nullopt when every subset has weight zero.
std::optional<VertexSubset> gbs_explore(const WeightTable& table, Rng& rng);

/// Drops the vertex of lowest induced degree, lowest index on ties.
VertexSubset remove_min_degree_vertex(const Graph& g, const VertexSubset& s);

/// Odd k: a (k+1)-subset from `table_k_plus_1`, minus its lowest-degree vertex.
std::optional<VertexSubset> gbs_explore_odd(const Graph& g, const WeightTable& table_k_plus_1,
                                            Rng& rng);
std::optional<VertexSubset> gbs_explore_odd(const Graph& g, int k, Rng& rng,
                                            std::uint64_t budget = kDefaultEnumerationBudget);

// ---- metropolized independent sampling --------------------------------------

struct MisParams {
  std::uint64_t burn_in = 10'000;
  std::uint64_t thinning = 10;
  /// Uniform proposals tried while looking for a nonzero starting state.
  std::uint64_t start_budget = 100'000;
};

/// Metropolis chain with independent uniform k-subset proposals and
/// stationary law Haf(A_S)^2.
class MisChain {
 public:
  MisChain(const Graph& g, int k, MisParams params);

  /// Next retained state. The first call finds a start state and burns in;
  /// throws EmptyDistribution if no nonzero state turns up within budget.
  VertexSubset next(Rng& rng);

  std::uint64_t proposals() const { return proposals_; }
  std::uint64_t accepted() const { return accepted_; }

  /// min(1, proposed/current) acceptance; zero weight never accepted.
  static bool accept(std::uint64_t current, std::uint64_t proposed, Rng& rng);

 private:
  void step(Rng& rng);

  const Graph* g_;
  int k_;
  MisParams params_;
  bool started_ = false;
  VertexSubset state_;
  std::uint64_t weight_ = 0;
  std::uint64_t proposals_ = 0;
  std::uint64_t accepted_ = 0;
};

std::vector<VertexSubset> mis_sample(const Graph& g, int k, const MisParams& params, Rng& rng,
                                     std::size_t count);

// ---- tweaking --------------------------------------------------------------

struct TweakOutcome {
  VertexSubset subset;
  VertexSubset kept;
  VertexSubset replacement;
  int extension = 0;  // the random m
  bool keep_fallback = false;
  bool replace_fallback = false;
  bool retry_exhausted = false;
  int retries = 0;
};

/// Keeps a Haf^2-weighted l-subset of s plus m uniform extra members of s,
/// m uniform on {0..k-l-1}, and fills up with k-l-m members of a
/// Haf^2-weighted (k-l)-subset of the whole graph drawn from
/// `replace_table`. Intersecting draws are redrawn up to `retry_budget`
/// times before a uniform disjoint replacement is used.
TweakOutcome gbs_tweak(const Graph& g, const VertexSubset& s, int l,
                       const WeightTable& replace_table, Rng& rng,
                       int retry_budget = kDefaultTweakRetries);

/// Same three steps with both weighted draws replaced by uniform ones.
TweakOutcome uniform_tweak(const Graph& g, const VertexSubset& s, int l, Rng& rng,
                           int retry_budget = kDefaultTweakRetries);

// ---- strategies ------------------------------------------------------------

class Explorer {
 public:
  virtual ~Explorer() = default;
  virtual VertexSubset explore(Rng& rng, SamplerEvents& events) = 0;
  virtual int k() const = 0;
};

class Tweaker {
 public:
  virtual ~Tweaker() = default;
  virtual VertexSubset tweak(const VertexSubset& s, Rng& rng, SamplerEvents& events) = 0;
  virtual int l() const = 0;
};

class UniformExplorer final : public Explorer {
 public:
  UniformExplorer(const Graph& g, int k);
  VertexSubset explore(Rng& rng, SamplerEvents& events) override;
  int k() const override { return k_; }

 private:
  const Graph* g_;
  int k_;
};

/// Exact sampler; for odd k the table holds (k+1)-subsets.
class GbsExplorer final : public Explorer {
 public:
  GbsExplorer(const Graph& g, int k, std::shared_ptr<const WeightTable> table);
  static std::shared_ptr<const WeightTable> table_for(const Graph& g, int k,
                                                      const std::string& cache_dir = {},
                                                      std::uint64_t budget = kDefaultEnumerationBudget);
  VertexSubset explore(Rng& rng, SamplerEvents& events) override;
  int k() const override { return k_; }

 private:
  const Graph* g_;
  int k_;
  std::shared_ptr<const WeightTable> table_;
};

/// One MIS chain per explorer; for odd k the chain runs on k+1.
class MisExplorer final : public Explorer {
 public:
  MisExplorer(const Graph& g, int k, MisParams params);
  VertexSubset explore(Rng& rng, SamplerEvents& events) override;
  int k() const override { return k_; }

 private:
  const Graph* g_;
  int k_;
  MisChain chain_;
  bool failed_ = false;
};

class UniformTweaker final : public Tweaker {
 public:
  UniformTweaker(const Graph& g, int l, int retry_budget = kDefaultTweakRetries);
  VertexSubset tweak(const VertexSubset& s, Rng& rng, SamplerEvents& events) override;
  int l() const override { return l_; }

 private:
  const Graph* g_;
  int l_;
  int retry_budget_;
};

class GbsTweaker final : public Tweaker {
 public:
  GbsTweaker(const Graph& g, int l, std::shared_ptr<const WeightTable> replace_table,
             int retry_budget = kDefaultTweakRetries);
  VertexSubset tweak(const VertexSubset& s, Rng& rng, SamplerEvents& events) override;
  int l() const override { return l_; }

 private:
  const Graph* g_;
  int l_;
  std::shared_ptr<const WeightTable> replace_table_;
  int retry_budget_;
};

// ---- encoding scale ----------------------------------------------------------

struct SpectralInfo {
  double radius = 0.0;
  /// 1/radius, the supremum of admissible encoding scales; nullopt when the
  /// graph has no edges and any scale is admissible.
  std::optional<double> max_scaling;
};

SpectralInfo spectral_radius(const Graph& g);

}  // namespace gbsdks
