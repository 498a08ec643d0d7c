#pragma once

#include <bit>
#include <cstdint>
#include <random>

namespace chromix {

// Deterministic RNG used everywhere in the library.
//
// std::mt19937_64 output is pinned by the standard, and all bounded draws
// go through bitmask rejection below, so identical seeds give identical
// runs on every platform. std::uniform_int_distribution is deliberately
// avoided (its algorithm is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform draw from [0, bound). bound == 0 or 1 returns 0 without
  // consuming engine state.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const int zeros = std::countl_zero(bound - 1);
    const std::uint64_t mask = ~std::uint64_t{0} >> zeros;
    std::uint64_t r;
    do {
      r = eng_() & mask;
    } while (r >= bound);
    return r;
  }

  int pick_index(std::size_t size) { return static_cast<int>(below(size)); }

  // [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // Counter-mode split: one master seed fans out to independent streams.
  static Rng split(std::uint64_t master, std::uint64_t stream) {
    return Rng(mix(master + 0x9e3779b97f4a7c15ull * (stream + 1)));
  }

  // splitmix64 finalizer; also handy for hashing small configs.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace chromix
