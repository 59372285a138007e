#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace gbsdks {

inline constexpr const char* kVersion = "0.1.0";

/// Bad arguments or malformed input. Maps to CLI exit code 1.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Enumeration would exceed the configured budget. Maps to exit code 2.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be read or written. Maps to exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default cap on the number of k-subsets enumerated exhaustively.
inline constexpr std::uint64_t kDefaultEnumerationBudget = 50'000'000;

// mt19937_64 has a fully specified output sequence. The std distributions
// do not, so the helpers below are used instead to keep seed -> sample maps
// identical across standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Rejection on the top of the range removes modulo bias.
  const std::uint64_t limit = Rng::max() - (Rng::max() % bound + 1) % bound;
  std::uint64_t x = rng();
  while (x > limit) x = rng();
  return x % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream seed for repetition `rep` of stream family `stream` under a master
/// seed: splitmix64(splitmix64(splitmix64(master) ^ stream) ^ rep).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t rep) {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ rep);
}

}  // namespace gbsdks
