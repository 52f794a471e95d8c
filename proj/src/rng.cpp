#include "drsit/rng.hpp"

#include <cmath>
#include <numbers>

namespace drsit {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t hash_combine(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept {
  std::uint64_t h = mix64(seed + kGolden);
  for (std::uint64_t t : tags) h = mix64(h ^ (mix64(t + kGolden) + 0x632BE59BD9B4E019ULL));
  return h;
}

std::uint64_t CounterRng::next_u64() noexcept {
  return mix64(key_ + (++counter_) * kGolden);
}

double CounterRng::uniform() noexcept {
  // 53 random mantissa bits, shifted by half an ulp so 0 is never returned.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() noexcept {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t CounterRng::below(std::uint64_t n) noexcept {
  if (n <= 1) return 0;
  // Rejection sampling avoids modulo bias.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % n;
}

}  // namespace drsit
