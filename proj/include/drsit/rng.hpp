#pragma once

#include <cstdint>
#include <initializer_list>

namespace drsit {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Order-sensitive hash of a seed and a list of integer tags. Used both to
/// split random streams and to derive per-cell benchmark seeds.
std::uint64_t hash_combine(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept;

/// Counter-based generator: draw n of stream s is mix64(key(s) + n * golden).
/// Streams are addressed by tag tuples, so any draw can be reproduced without
/// replaying the ones before it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}
  CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept
      : key_(hash_combine(seed, tags)) {}

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (one value per call; the pair's twin is discarded).
  double normal() noexcept;
  double normal(double mean, double sd) noexcept { return mean + sd * normal(); }
  bool bernoulli(double p) noexcept { return uniform() < p; }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace drsit
