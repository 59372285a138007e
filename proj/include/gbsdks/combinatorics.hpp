#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gbsdks {

/// Pascal table C(a, b) for 0 <= a <= n, 0 <= b <= k. Entries that do not fit
/// in 64 bits saturate at UINT64_MAX.
class BinomialTable {
 public:
  BinomialTable(int n, int k);

  std::uint64_t operator()(int a, int b) const {
    if (a < 0 || b < 0 || b > a) return 0;
    return table_[static_cast<std::size_t>(a) * stride_ + b];
  }

  int n() const { return n_; }
  int k() const { return k_; }

 private:
  int n_;
  int k_;
  std::size_t stride_;
  std::vector<std::uint64_t> table_;
};

/// C(n, k) with saturation at UINT64_MAX.
std::uint64_t binomial(int n, int k);

// k-subsets of {0..n-1} as strictly increasing sequences, ranked in
// lexicographic order. The rank is computed through the colex rank of the
// reflected set {n-1-c}: lex order on c is reverse colex order on the
// reflection.

std::uint64_t lex_rank(std::span<const std::uint32_t> combo, int n,
                       const BinomialTable& binom);

void lex_unrank(std::uint64_t rank, int n, int k, const BinomialTable& binom,
                std::span<std::uint32_t> out);

/// Advance to the lexicographic successor. Returns false past the last one.
bool next_combination(std::span<std::uint32_t> combo, int n);

}  // namespace gbsdks
