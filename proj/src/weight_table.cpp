#include "gbsdks/weight_table.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "gbsdks/hafnian.hpp"

namespace gbsdks {

WeightTable::WeightTable(std::string fingerprint, int n, int k,
                         std::vector<std::uint64_t> cumulative)
    : fingerprint_(std::move(fingerprint)),
      n_(n),
      k_(k),
      binom_(n, k),
      cumulative_(std::move(cumulative)) {
  if (cumulative_.size() != binom_(n, k)) {
    throw InputError("weight table size does not match C(n, k)");
  }
  for (std::uint64_t r = 0; r < cumulative_.size(); ++r) {
    if (r && cumulative_[r] < cumulative_[r - 1]) throw InputError("weight table is not cumulative");
    entry_count_ += weight_at(r) != 0;
  }
}

std::uint64_t WeightTable::rank_of(const VertexSubset& s) const {
  if (static_cast<int>(s.size()) != k_) throw InputError("subset size does not match table");
  if (k_ && s.indices().back() >= static_cast<Vertex>(n_)) throw InputError("subset index out of range");
  return lex_rank(s.indices(), n_, binom_);
}

VertexSubset WeightTable::subset_at(std::uint64_t rank) const {
  std::vector<Vertex> combo(k_);
  lex_unrank(rank, n_, k_, binom_, combo);
  return VertexSubset(std::move(combo));
}

std::uint64_t WeightTable::weight(const VertexSubset& s) const { return weight_at(rank_of(s)); }

double WeightTable::probability(const VertexSubset& s) const {
  return empty() ? 0.0 : static_cast<double>(weight(s)) / static_cast<double>(total_weight());
}

std::uint64_t WeightTable::sample_rank(Rng& rng) const {
  const std::uint64_t r = uniform_below(rng, total_weight());
  return static_cast<std::uint64_t>(
      std::upper_bound(cumulative_.begin(), cumulative_.end(), r) - cumulative_.begin());
}

namespace {

void check_table_request(int k) {
  if (k < 2 || k % 2) throw InputError("weight tables need an even k >= 2");
}

std::uint64_t square_checked(std::uint64_t h) {
  std::uint64_t w;
  if (__builtin_mul_overflow(h, h, &w)) throw std::overflow_error("Hafnian squared overflows 64 bits");
  return w;
}

// Squares in place and turns the vector into running totals. Blocks are
// summed in parallel and offset afterwards; the result does not depend on the
// thread count.
void square_and_accumulate(std::vector<std::uint64_t>& v) {
  constexpr std::size_t kBlock = 1 << 16;
  const std::size_t blocks = (v.size() + kBlock - 1) / kBlock;
  std::vector<std::uint64_t> block_sum(blocks, 0);
  bool overflow = false;
#pragma omp parallel for schedule(static) reduction(|| : overflow)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t begin = b * kBlock;
    const std::size_t end = std::min(v.size(), begin + kBlock);
    std::uint64_t acc = 0;
    for (std::size_t i = begin; i < end; ++i) {
      std::uint64_t w;
      if (__builtin_mul_overflow(v[i], v[i], &w) || __builtin_add_overflow(acc, w, &acc)) {
        overflow = true;
        break;
      }
      v[i] = acc;
    }
    block_sum[b] = acc;
  }
  if (overflow) throw std::overflow_error("total weight overflows 64 bits");
  std::vector<std::uint64_t> offset(blocks, 0);
  for (std::size_t b = 1; b < blocks; ++b) {
    if (__builtin_add_overflow(offset[b - 1], block_sum[b - 1], &offset[b])) {
      throw std::overflow_error("total weight overflows 64 bits");
    }
  }
  std::uint64_t unused;
  if (blocks && __builtin_add_overflow(offset.back(), block_sum.back(), &unused)) {
    throw std::overflow_error("total weight overflows 64 bits");
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 1; b < static_cast<std::int64_t>(blocks); ++b) {
    const std::size_t begin = b * kBlock;
    const std::size_t end = std::min(v.size(), begin + kBlock);
    for (std::size_t i = begin; i < end; ++i) v[i] += offset[b];
  }
}

}  // namespace

WeightTable build_weight_table(const Graph& g, int k, std::uint64_t budget) {
  check_table_request(k);
  std::vector<std::uint64_t> values = subset_hafnians(g, k, budget);
  square_and_accumulate(values);
  return WeightTable(g.fingerprint(), g.size(), k, std::move(values));
}

WeightTable build_weight_table_serial(const Graph& g, int k, std::uint64_t budget) {
  check_table_request(k);
  std::vector<std::uint64_t> values = subset_hafnians_serial(g, k, budget);
  std::uint64_t acc = 0;
  for (auto& v : values) {
    if (__builtin_add_overflow(acc, square_checked(v), &acc)) {
      throw std::overflow_error("total weight overflows 64 bits");
    }
    v = acc;
  }
  return WeightTable(g.fingerprint(), g.size(), k, std::move(values));
}

void save_weight_table(const WeightTable& t, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "GBSWT1 " << t.fingerprint() << ' ' << t.n() << ' ' << t.k() << ' '
      << t.entry_count() << '\n';
  std::string buf;
  buf.reserve(1 << 20);
  std::vector<Vertex> combo(t.k());
  for (int i = 0; i < t.k(); ++i) combo[i] = static_cast<Vertex>(i);
  char num[24];
  for (std::uint64_t r = 0; r < t.subset_count(); ++r) {
    if (const std::uint64_t w = t.weight_at(r)) {
      for (int i = 0; i < t.k(); ++i) {
        if (i) buf += ' ';
        buf.append(num, std::to_chars(num, num + sizeof num, combo[i]).ptr);
      }
      buf += '\t';
      buf.append(num, std::to_chars(num, num + sizeof num, w).ptr);
      buf += '\n';
      if (buf.size() > (1 << 20) - 256) {
        out << buf;
        buf.clear();
      }
    }
    next_combination(combo, t.n());
  }
  out << buf;
  if (!out) throw IoError("write failed for " + path.string());
}

WeightTable load_weight_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic, fingerprint;
  int n = 0, k = 0;
  std::uint64_t entries = 0;
  if (!(hs >> magic >> fingerprint >> n >> k >> entries) || magic != "GBSWT1" || n < 1 || k < 0 ||
      k > n) {
    throw InputError(path.string() + ": line 1: bad weight table header");
  }
  const BinomialTable binom(n, k);
  std::vector<std::uint64_t> cumulative(binom(n, k), 0);
  std::string line;
  std::uint64_t line_no = 1, seen = 0;
  std::int64_t last_rank = -1;
  std::vector<Vertex> combo(k);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fail = [&](const char* what) {
      throw InputError(path.string() + ": line " + std::to_string(line_no) + ": " + what);
    };
    const auto tab = line.find('\t');
    if (tab == std::string::npos) fail("missing tab before weight");
    const char* p = line.data();
    const char* const stop = p + tab;
    for (int i = 0; i < k; ++i) {
      while (p < stop && *p == ' ') ++p;
      const auto [next, ec] = std::from_chars(p, stop, combo[i]);
      if (ec != std::errc{}) fail("bad subset index");
      p = next;
    }
    while (p < stop && *p == ' ') ++p;
    if (p != stop) fail("subset has the wrong size");
    for (int i = 0; i < k; ++i) {
      if (combo[i] >= static_cast<Vertex>(n) || (i && combo[i] <= combo[i - 1])) {
        fail("subset is not strictly increasing within range");
      }
    }
    std::uint64_t w = 0;
    const auto [end, ec] = std::from_chars(line.data() + tab + 1, line.data() + line.size(), w);
    if (ec != std::errc{} || end != line.data() + line.size() || w == 0) fail("bad weight");
    const auto rank = static_cast<std::int64_t>(lex_rank(combo, n, binom));
    if (rank <= last_rank) fail("entries are not in lexicographic order");
    last_rank = rank;
    cumulative[rank] = w;
    ++seen;
  }
  if (seen != entries) throw InputError(path.string() + ": entry count does not match header");
  std::uint64_t acc = 0;
  for (auto& v : cumulative) {
    if (__builtin_add_overflow(acc, v, &acc)) throw std::overflow_error("total weight overflows 64 bits");
    v = acc;
  }
  return WeightTable(std::move(fingerprint), n, k, std::move(cumulative));
}

std::filesystem::path weight_table_cache_path(const std::filesystem::path& dir, const Graph& g,
                                              int k) {
  return dir / (g.fingerprint() + "-k" + std::to_string(k) + ".gbswt");
}

WeightTable load_or_build_weight_table(const Graph& g, int k, const std::filesystem::path& dir,
                                       std::uint64_t budget) {
  if (dir.empty()) return build_weight_table(g, k, budget);
  const auto path = weight_table_cache_path(dir, g, k);
  if (std::filesystem::exists(path)) {
    WeightTable t = load_weight_table(path);
    if (t.fingerprint() == g.fingerprint() && t.n() == g.size() && t.k() == k) return t;
  }
  WeightTable t = build_weight_table(g, k, budget);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache directory " + dir.string());
  save_weight_table(t, path);
  return t;
}

}  // namespace gbsdks
