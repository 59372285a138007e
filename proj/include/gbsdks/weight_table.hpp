#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gbsdks/combinatorics.hpp"
#include "gbsdks/common.hpp"
#include "gbsdks/graph.hpp"

namespace gbsdks {

/// Exact post-selected sampling distribution over the k-subsets of a graph:
/// weight(S) = Haf(A_S)^2. Stored as running totals over the lexicographic
/// subset order, so zero-weight subsets take no probability mass and a draw
/// is one binary search.
class WeightTable {
 public:
  WeightTable(std::string fingerprint, int n, int k, std::vector<std::uint64_t> cumulative);

  const std::string& fingerprint() const { return fingerprint_; }
  int n() const { return n_; }
  int k() const { return k_; }
  std::uint64_t total_weight() const { return cumulative_.empty() ? 0 : cumulative_.back(); }
  std::uint64_t entry_count() const { return entry_count_; }
  bool empty() const { return total_weight() == 0; }
  std::uint64_t subset_count() const { return cumulative_.size(); }

  std::uint64_t weight_at(std::uint64_t rank) const {
    return cumulative_[rank] - (rank ? cumulative_[rank - 1] : 0);
  }
  std::uint64_t weight(const VertexSubset& s) const;
  double probability(const VertexSubset& s) const;

  std::uint64_t rank_of(const VertexSubset& s) const;
  VertexSubset subset_at(std::uint64_t rank) const;

  /// Rank drawn with probability weight/total. Precondition: !empty().
  std::uint64_t sample_rank(Rng& rng) const;
  VertexSubset sample(Rng& rng) const { return subset_at(sample_rank(rng)); }

  /// Visits nonzero entries in lexicographic order.
  template <typename F>
  void for_each_entry(F&& f) const {
    for (std::uint64_t r = 0; r < cumulative_.size(); ++r) {
      if (const std::uint64_t w = weight_at(r)) f(r, w);
    }
  }

  std::span<const std::uint64_t> cumulative() const { return cumulative_; }

 private:
  std::string fingerprint_;
  int n_;
  int k_;
  BinomialTable binom_;
  std::vector<std::uint64_t> cumulative_;
  std::uint64_t entry_count_ = 0;
};

/// Enumerates all k-subsets (k even) with the parallel Hafnian kernel.
/// Throws InputError for odd k and BudgetExceeded when C(n, k) > budget.
WeightTable build_weight_table(const Graph& g, int k,
                               std::uint64_t budget = kDefaultEnumerationBudget);

/// Serial reference: per-subset hafnian_fast and a sequential running sum.
WeightTable build_weight_table_serial(const Graph& g, int k,
                                      std::uint64_t budget = kDefaultEnumerationBudget);

// Cache file: "GBSWT1 <fingerprint> <n> <k> <entry_count>" then one line per
// nonzero entry, "<i j ...>\t<weight>", in lexicographic subset order.
void save_weight_table(const WeightTable& t, const std::filesystem::path& path);
WeightTable load_weight_table(const std::filesystem::path& path);

std::filesystem::path weight_table_cache_path(const std::filesystem::path& dir,
                                              const Graph& g, int k);

/// Loads <dir>/<fingerprint>-k<k>.gbswt if present and matching, otherwise
/// builds and writes it. An empty dir disables caching.
WeightTable load_or_build_weight_table(const Graph& g, int k, const std::filesystem::path& dir,
                                       std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace gbsdks
