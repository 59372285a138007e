#include "gbsdks/combinatorics.hpp"

#include <limits>

#include "gbsdks/common.hpp"

namespace gbsdks {

namespace {
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
}

BinomialTable::BinomialTable(int n, int k)
    : n_(n), k_(k), stride_(static_cast<std::size_t>(k) + 1) {
  if (n < 0 || k < 0) throw InputError("binomial table: negative size");
  table_.assign(static_cast<std::size_t>(n + 1) * stride_, 0);
  for (int a = 0; a <= n; ++a) {
    table_[a * stride_] = 1;
    for (int b = 1; b <= k && b <= a; ++b) {
      const std::uint64_t left = table_[(a - 1) * stride_ + b - 1];
      const std::uint64_t right = b <= a - 1 ? table_[(a - 1) * stride_ + b] : 0;
      std::uint64_t sum;
      table_[a * stride_ + b] =
          __builtin_add_overflow(left, right, &sum) ? kSaturated : sum;
    }
  }
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t lex_rank(std::span<const std::uint32_t> combo, int n,
                       const BinomialTable& binom) {
  const int k = static_cast<int>(combo.size());
  std::uint64_t colex = 0;
  for (int i = 0; i < k; ++i) {
    colex += binom(n - 1 - static_cast<int>(combo[i]), k - i);
  }
  return binom(n, k) - 1 - colex;
}

void lex_unrank(std::uint64_t rank, int n, int k, const BinomialTable& binom,
                std::span<std::uint32_t> out) {
  // Greedy colex unranking of the reflected set, largest element first.
  std::uint64_t colex = binom(n, k) - 1 - rank;
  int hi = n - 1;
  for (int i = 0; i < k; ++i) {
    const int slot = k - i;
    int d = hi;
    while (binom(d, slot) > colex) --d;
    colex -= binom(d, slot);
    out[i] = static_cast<std::uint32_t>(n - 1 - d);
    hi = d - 1;
  }
}

bool next_combination(std::span<std::uint32_t> combo, int n) {
  const int k = static_cast<int>(combo.size());
  int i = k - 1;
  while (i >= 0 && static_cast<int>(combo[i]) == n - k + i) --i;
  if (i < 0) return false;
  ++combo[i];
  for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  return true;
}

}  // namespace gbsdks
