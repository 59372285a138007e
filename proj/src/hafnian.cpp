#include "gbsdks/hafnian.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gbsdks/combinatorics.hpp"

namespace gbsdks {

SymmetricMatrix::SymmetricMatrix(int dim) : dim_(dim) {
  if (dim < 0) throw InputError("negative matrix dimension");
  entries_.assign(static_cast<std::size_t>(dim) * dim, 0);
}

SymmetricMatrix::SymmetricMatrix(int dim, std::vector<std::int64_t> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim < 0 || entries_.size() != static_cast<std::size_t>(dim) * dim) {
    throw InputError("matrix entries do not form a square matrix");
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if ((*this)(i, j) != (*this)(j, i)) {
        throw InputError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
      }
    }
  }
}

void SymmetricMatrix::set(int i, int j, std::int64_t value) {
  entries_[i * dim_ + j] = value;
  entries_[j * dim_ + i] = value;
}

SymmetricMatrix adjacency_matrix(const Graph& g) {
  SymmetricMatrix m(g.size());
  for (const auto& [u, v] : g.edges()) m.set(static_cast<int>(u), static_cast<int>(v), 1);
  return m;
}

SymmetricMatrix parse_adjacency_matrix(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::vector<std::int64_t>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::int64_t> row;
    for (std::string t; fields >> t;) {
      if (t != "0" && t != "1") {
        throw InputError("line " + std::to_string(line_no) + ": entries must be 0 or 1");
      }
      row.push_back(t == "1");
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const int dim = static_cast<int>(rows.size());
  std::vector<std::int64_t> flat;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != dim) throw InputError("matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  for (int i = 0; i < dim; ++i) {
    if (flat[i * dim + i] != 0) throw InputError("adjacency matrix has a nonzero diagonal");
  }
  return SymmetricMatrix(dim, std::move(flat));
}

namespace {

using i128 = __int128;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("hafnian overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("hafnian overflow");
  return r;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("hafnian overflow");
  return r;
}

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("hafnian overflow");
  return r;
}

std::int64_t pairings_rec(const SymmetricMatrix& m, std::uint64_t unmatched) {
  if (unmatched == 0) return 1;
  const int i = std::countr_zero(unmatched);
  const std::uint64_t rest = unmatched & (unmatched - 1);
  std::int64_t total = 0;
  for (std::uint64_t cand = rest; cand; cand &= cand - 1) {
    const int j = std::countr_zero(cand);
    const std::int64_t a = m(i, j);
    if (a == 0) continue;
    const std::int64_t sub = pairings_rec(m, rest & ~(std::uint64_t{1} << j));
    total = checked_add(total, checked_mul(a, sub));
  }
  return total;
}

}  // namespace

std::int64_t hafnian_pairings(const SymmetricMatrix& m) {
  const int n = m.dim();
  if (n % 2) return 0;
  if (n > 64) throw InputError("hafnian_pairings supports dimension <= 64");
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return pairings_rec(m, all);
}

std::int64_t hafnian_fast(const SymmetricMatrix& m) {
  const int n = m.dim();
  if (n % 2) return 0;
  if (n == 0) return 1;
  const int h = n / 2;
  if (h > 30) throw InputError("hafnian_fast supports dimension <= 60");

  // B = A X with X swapping the two members of each index pair, zero diagonal.
  std::vector<std::int64_t> b(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int src = c ^ 1;
      b[r * n + c] = (r == src) ? 0 : m(r, src);
    }
  }

  // Integer form of the exp series: with p = exp(sum_j tr_j eta^j / (2j)),
  // P_k = 2^k k! p_k obeys P_k = sum_j tr_j P_{k-j} 2^(j-1) (k-1)!/(k-j)!.
  // falling[k][j] = 2^(j-1) (k-1)!/(k-j)!
  std::vector<i128> falling(static_cast<std::size_t>(h + 1) * (h + 1), 0);
  for (int k = 1; k <= h; ++k) {
    i128 f = 1;
    for (int j = 1; j <= k; ++j) {
      if (j > 1) f = checked_mul(f, static_cast<i128>(2 * (k - j + 1)));
      falling[k * (h + 1) + j] = f;
    }
  }

  std::vector<int> idx;
  std::vector<std::int64_t> c, power, scratch;
  std::vector<i128> traces(h + 1), series(h + 1);
  i128 total = 0;
  for (std::uint64_t z = 1; z < (std::uint64_t{1} << h); ++z) {
    idx.clear();
    for (int p = 0; p < h; ++p) {
      if ((z >> p) & 1) {
        idx.push_back(2 * p);
        idx.push_back(2 * p + 1);
      }
    }
    const int d = static_cast<int>(idx.size());
    c.assign(static_cast<std::size_t>(d) * d, 0);
    for (int r = 0; r < d; ++r) {
      for (int q = 0; q < d; ++q) c[r * d + q] = b[idx[r] * n + idx[q]];
    }
    power = c;
    for (int j = 1; j <= h; ++j) {
      if (j > 1) {
        scratch.assign(static_cast<std::size_t>(d) * d, 0);
        for (int r = 0; r < d; ++r) {
          for (int t = 0; t < d; ++t) {
            const std::int64_t prt = power[r * d + t];
            if (prt == 0) continue;
            for (int q = 0; q < d; ++q) {
              scratch[r * d + q] =
                  checked_add(scratch[r * d + q], checked_mul(prt, c[t * d + q]));
            }
          }
        }
        power.swap(scratch);
      }
      std::int64_t tr = 0;
      for (int r = 0; r < d; ++r) tr = checked_add(tr, power[r * d + r]);
      traces[j] = tr;
    }
    series[0] = 1;
    for (int k = 1; k <= h; ++k) {
      i128 acc = 0;
      for (int j = 1; j <= k; ++j) {
        if (traces[j] == 0 || series[k - j] == 0) continue;
        acc = checked_add(acc, checked_mul(checked_mul(traces[j], series[k - j]),
                                           falling[k * (h + 1) + j]));
      }
      series[k] = acc;
    }
    const bool negative = (h - std::popcount(z)) % 2;
    total = checked_add(total, negative ? -series[h] : series[h]);
  }

  i128 norm = 1;
  for (int k = 1; k <= h; ++k) norm = checked_mul(norm, static_cast<i128>(2 * k));
  if (total % norm != 0) throw std::logic_error("hafnian_fast: inexact normalization");
  const i128 result = total / norm;
  if (result > INT64_MAX || result < INT64_MIN) throw std::overflow_error("hafnian overflow");
  return static_cast<std::int64_t>(result);
}

namespace {

std::uint64_t matchings_rec(const std::uint64_t* adj, std::uint64_t mask) {
  if (mask == 0) return 1;
  const int i = std::countr_zero(mask);
  const std::uint64_t rest = mask & (mask - 1);
  std::uint64_t total = 0;
  for (std::uint64_t cand = adj[i] & rest; cand; cand &= cand - 1) {
    const int j = std::countr_zero(cand);
    total += matchings_rec(adj, rest & ~(std::uint64_t{1} << j));
  }
  return total;
}

}  // namespace

std::uint64_t perfect_matchings(const Graph& g, std::span<const Vertex> vertices) {
  const std::size_t k = vertices.size();
  if (k % 2) return 0;
  if (k > 64) throw InputError("perfect_matchings supports at most 64 vertices");
  std::uint64_t adj[64];
  for (std::size_t i = 0; i < k; ++i) {
    adj[i] = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (g.adjacent(vertices[i], vertices[j])) adj[i] |= std::uint64_t{1} << j;
    }
    if (adj[i] == 0) return 0;
  }
  const std::uint64_t all = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  return matchings_rec(adj, all);
}

namespace {

void check_subset_request(const Graph& g, int k, std::uint64_t budget) {
  if (k < 0 || k > g.size()) throw InputError("subset size out of range");
  if (binomial(g.size(), k) > budget) {
    throw BudgetExceeded("C(" + std::to_string(g.size()) + ", " + std::to_string(k) +
                         ") exceeds the enumeration budget of " + std::to_string(budget));
  }
}

constexpr std::uint64_t kChunk = 4096;

// Per-subset fallback for when intermediate layers would outgrow the budget.
std::vector<std::uint64_t> subset_matchings_direct(const Graph& g, int k,
                                                   const BinomialTable& binom) {
  const int n = g.size();
  const std::uint64_t count = binom(n, k);
  std::vector<std::uint64_t> out(count);
  const auto chunks = static_cast<std::int64_t>((count + kChunk - 1) / kChunk);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t c = 0; c < chunks; ++c) {
    std::vector<Vertex> combo(k);
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t end = std::min(count, begin + kChunk);
    lex_unrank(begin, n, k, binom, combo);
    for (std::uint64_t r = begin; r < end; ++r) {
      out[r] = perfect_matchings(g, combo);
      next_combination(combo, n);
    }
  }
  return out;
}

}  // namespace

std::vector<std::uint64_t> subset_hafnians(const Graph& g, int k, std::uint64_t budget) {
  check_subset_request(g, k, budget);
  const int n = g.size();
  const BinomialTable binom(n, k);
  if (k % 2) return std::vector<std::uint64_t>(binom(n, k), 0);

  for (int s = 2; s < k; s += 2) {
    if (binom(n, s) > budget) return subset_matchings_direct(g, k, binom);
  }

  std::vector<std::uint64_t> prev{1};
  for (int s = 2; s <= k; s += 2) {
    const std::uint64_t count = binom(n, s);
    const std::uint64_t below_top = binom(n, s - 2) - 1;
    std::vector<std::uint64_t> cur(count);
    const auto chunks = static_cast<std::int64_t>((count + kChunk - 1) / kChunk);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t c = 0; c < chunks; ++c) {
      std::vector<Vertex> combo(s);
      std::vector<std::uint64_t> before(s + 1), after(s + 1);
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kChunk;
      const std::uint64_t end = std::min(count, begin + kChunk);
      lex_unrank(begin, n, s, binom, combo);
      for (std::uint64_t r = begin; r < end; ++r) {
        // Colex terms of S - {c0, cj}: members before j shift down one slot,
        // members after j shift down two.
        before[1] = 0;
        for (int i = 1; i < s; ++i) {
          before[i + 1] = before[i] + binom(n - 1 - static_cast<int>(combo[i]), s - 1 - i);
        }
        after[s - 1] = 0;
        for (int i = s - 1; i >= 1; --i) {
          after[i - 1] = after[i] + binom(n - 1 - static_cast<int>(combo[i]), s - i);
        }
        std::uint64_t total = 0;
        const Vertex lead = combo[0];
        for (int j = 1; j < s; ++j) {
          if (!g.adjacent(lead, combo[j])) continue;
          total += prev[below_top - (before[j] + after[j])];
        }
        cur[r] = total;
        next_combination(combo, n);
      }
    }
    prev = std::move(cur);
  }
  return prev;
}

std::vector<std::uint64_t> subset_hafnians_serial(const Graph& g, int k, std::uint64_t budget) {
  check_subset_request(g, k, budget);
  const int n = g.size();
  const std::uint64_t count = binomial(n, k);
  std::vector<std::uint64_t> out;
  out.reserve(count);
  std::vector<Vertex> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = static_cast<Vertex>(i);
  for (std::uint64_t r = 0; r < count; ++r) {
    SymmetricMatrix sub(k);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (g.adjacent(combo[i], combo[j])) sub.set(i, j, 1);
      }
    }
    out.push_back(static_cast<std::uint64_t>(hafnian_fast(sub)));
    next_combination(combo, n);
  }
  return out;
}

double double_factorial_odd(int vertices) {
  double acc = 1.0;
  for (int i = vertices - 1; i > 1; i -= 2) acc *= i;
  return acc;
}

double pm_upper_bound(const PmBoundInput& b) {
  if (b.vertices <= 0 || b.vertices % 2) throw InputError("bound needs an even, positive vertex count");
  const std::int64_t m = b.m();
  if (b.edges < 0 || b.edges > m * (2 * m - 1)) throw InputError("edge count out of range");
  if (b.edges < m) return 0.0;
  const std::int64_t lo = b.edges / m;
  const std::int64_t alpha = b.alpha();
  const std::int64_t hi = alpha == 0 ? lo : lo + 1;
  const double log_bound =
      static_cast<double>(m - alpha) / lo * std::lgamma(static_cast<double>(lo) + 1.0) +
      static_cast<double>(alpha) / hi * std::lgamma(static_cast<double>(hi) + 1.0);
  return std::exp(log_bound);
}

std::int64_t min_edges_for_pm(int vertices, std::uint64_t pm_count) {
  if (vertices <= 0 || vertices % 2) throw InputError("vertex count must be even and positive");
  if (pm_count == 0) throw InputError("perfect matching count must be positive");
  if (static_cast<double>(pm_count) > double_factorial_odd(vertices)) {
    throw InputError("more perfect matchings than the complete graph has");
  }
  const std::int64_t m = vertices / 2;
  const std::int64_t max_edges = m * (2 * m - 1);
  // The bound is monotone in l, so the first crossing is the answer. The
  // relative slack absorbs lgamma/exp rounding at exact integer values.
  const double target = static_cast<double>(pm_count) * (1.0 - 1e-12);
  std::int64_t lo = m, hi = max_edges;
  if (pm_upper_bound({vertices, hi}) < target) throw InputError("count exceeds the bound at every edge count");
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (pm_upper_bound({vertices, mid}) >= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace gbsdks
