#pragma once

// Portable seeded generator for instance generation.
//
// SplitMix64: state += 0x9E3779B97F4A7C15; z = state;
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//   return z ^ (z >> 31).
// uniform() = (next() >> 11) * 2^-53, in [0, 1).
// uniform_int(lo, hi) = lo + floor(uniform() * (hi - lo + 1)).
// normal() = Box-Muller cosine branch: sqrt(-2 ln(1 - u1)) * cos(2 pi u2).
// Every derived quantity consumes draws in a fixed order, so instances can be
// regenerated in any language from the seed alone.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace kmix {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // UniformRandomBitGenerator, so std distributions accept it too.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {
    if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
    const double span = static_cast<double>(hi) - static_cast<double>(lo) + 1.0;
    return lo + static_cast<int>(std::floor(uniform() * span));
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Fisher-Yates, drawing j in [0, i] from the top down.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_int(0, static_cast<int>(i - 1)));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace kmix
