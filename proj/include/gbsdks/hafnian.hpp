#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gbsdks/common.hpp"
#include "gbsdks/graph.hpp"

namespace gbsdks {

/// Dense symmetric integer matrix. The diagonal is stored but ignored by the
/// Hafnian routines.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int dim = 0);
  /// Row-major entries; throws InputError when not square or not symmetric.
  SymmetricMatrix(int dim, std::vector<std::int64_t> entries);

  int dim() const { return dim_; }
  std::int64_t operator()(int i, int j) const { return entries_[i * dim_ + j]; }
  void set(int i, int j, std::int64_t value);

 private:
  int dim_;
  std::vector<std::int64_t> entries_;
};

SymmetricMatrix adjacency_matrix(const Graph& g);
/// Whitespace-separated rows. Must be square, symmetric and 0/1.
SymmetricMatrix parse_adjacency_matrix(const std::string& text);

/// Sum over all (dim-1)!! perfect pairings of the product of paired entries.
/// Odd dimension gives 0. Throws std::overflow_error rather than wrapping.
std::int64_t hafnian_pairings(const SymmetricMatrix& m);

/// Power-trace inclusion-exclusion over the 2^(dim/2) subsets of index pairs,
/// evaluated in exact 128-bit integer arithmetic. Same value as
/// hafnian_pairings; throws std::overflow_error if 128 bits do not suffice.
std::int64_t hafnian_fast(const SymmetricMatrix& m);

/// Perfect matchings of the subgraph induced by `vertices` (at most 64),
/// by expansion along the lowest remaining vertex.
std::uint64_t perfect_matchings(const Graph& g, std::span<const Vertex> vertices);

/// Hafnian of every k-subset of g, indexed by lexicographic rank. Built layer
/// by layer: Haf(S) = sum over neighbours j of min(S) inside S of
/// Haf(S - {min S, j}), with each layer filled in parallel.
std::vector<std::uint64_t> subset_hafnians(const Graph& g, int k,
                                           std::uint64_t budget = kDefaultEnumerationBudget);

/// Serial reference for subset_hafnians: hafnian_fast on each extracted
/// principal submatrix.
std::vector<std::uint64_t> subset_hafnians_serial(const Graph& g, int k,
                                                  std::uint64_t budget = kDefaultEnumerationBudget);

/// (2m-1)!! as a double; exact up to m = 12.
double double_factorial_odd(int vertices);

/// Edge-count form of the perfect-matching upper bound for a graph on
/// `vertices` = 2m vertices and `edges` = l edges.
struct PmBoundInput {
  int vertices = 0;
  std::int64_t edges = 0;

  int m() const { return vertices / 2; }
  std::int64_t alpha() const { return m() == 0 ? 0 : edges - m() * (edges / m()); }
};

/// (floor(l/m)!)^((m-alpha)/floor(l/m)) * (ceil(l/m)!)^(alpha/ceil(l/m)),
/// and 0 when l < m.
double pm_upper_bound(const PmBoundInput& b);

/// Smallest edge count whose bound reaches pm_count.
std::int64_t min_edges_for_pm(int vertices, std::uint64_t pm_count);

}  // namespace gbsdks
