#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "erq/errors.hpp"

namespace erq {

// Deterministic random source.  mt19937_64 output is fully specified by the
// standard; the derived draws below avoid std::uniform_int_distribution,
// whose mapping is implementation-defined, so seeded runs reproduce
// bit-identically across compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform draw from {0, ..., bound-1} by masked rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw BadParams("Rng::below: bound must be positive");
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
      std::uint64_t r = eng_() & mask;
      if (r < bound) return r;
    }
  }

  int index(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  bool chance(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace erq
