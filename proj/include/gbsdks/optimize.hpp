#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "gbsdks/common.hpp"
#include "gbsdks/graph.hpp"
#include "gbsdks/sampler.hpp"

namespace gbsdks {

enum class Cooling { linear, constant };

struct AnnealParams {
  double t0 = 0.01;
  Cooling cooling = Cooling::linear;
  double floor = 1e-12;
  int l = 6;
  int steps = 500;

  /// Throws InputError unless t0 > 0, floor >= 0, steps >= 1 and l is even
  /// with 2 <= l < k.
  void validate(int k) const;
};

/// Temperature after `completed` of the `steps` decreases. Linear:
/// max(floor, t0 * (1 - completed/steps)).
double temperature(const AnnealParams& p, int completed);

struct AcceptanceCounts {
  std::uint64_t proposed = 0;
  std::uint64_t accepted = 0;
};

struct RunTrace {
  /// best_edges[i] is the best induced edge count after i+1 draws
  /// (explore and tweak draws alike), so its length equals samples_used.
  std::vector<int> best_edges;
  VertexSubset final_subset;
  int final_edges = 0;
  std::uint64_t samples_used = 0;
  SamplerEvents events;
  /// Non-improving annealing proposals keyed by their edge deficit.
  std::map<int, AcceptanceCounts> downhill;

  /// Best-so-far after `draws` draws (1-based), clamped to the trace end.
  int best_after(std::uint64_t draws) const;
};

RunTrace random_search(const Graph& g, int k, int n_samples, Explorer& explorer, Rng& rng);

/// Start from one exploration draw, then per step tweak, always accept
/// improvements, accept the rest with probability exp(delta_density / t),
/// keep Best separately and cool once per step.
RunTrace simulated_annealing(const Graph& g, int k, const AnnealParams& params, Explorer& explorer,
                             Tweaker& tweaker, Rng& rng);

/// Greedy peeling: drop a minimum-degree vertex (lowest index on ties) of the
/// current induced graph until k remain.
VertexSubset charikar_greedy(const Graph& g, int k);

struct ExhaustiveResult {
  VertexSubset subset;
  int edges = 0;
};

/// Densest k-subset, lexicographically smallest among ties. Parallel over
/// the lexicographic rank range.
ExhaustiveResult exhaustive_best(const Graph& g, int k,
                                 std::uint64_t budget = kDefaultEnumerationBudget);
ExhaustiveResult exhaustive_best_serial(const Graph& g, int k,
                                        std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace gbsdks
