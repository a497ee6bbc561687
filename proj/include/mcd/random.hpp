#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "mcd/rational.hpp"

namespace mcd {

/// Seed splitting: every module and every trial draws from its own stream,
/// derived from the single user seed through splitmix64.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

template <typename... Streams>
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, Streams... rest) {
  return derive_seed(derive_seed(seed, stream), static_cast<std::uint64_t>(rest)...);
}

// Stream tags for the modules.
namespace stream {
inline constexpr std::uint64_t kGenerator = 1;
inline constexpr std::uint64_t kSampler = 2;
inline constexpr std::uint64_t kStructure = 3;
inline constexpr std::uint64_t kTwoColor = 4;
inline constexpr std::uint64_t kDensity = 5;
inline constexpr std::uint64_t kTopo = 6;
inline constexpr std::uint64_t kPerturb = 7;
inline constexpr std::uint64_t kCalibrate = 8;
}  // namespace stream

/// Portable generator: only the engine (fully specified by the standard) is
/// used from <random>; the distributions are implemented here so results are
/// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  /// True with probability num/den.
  bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  /// Uniform rational on the grid lo + (hi-lo) k / 2^bits, k in [0, 2^bits].
  Rational rational(const Rational& lo, const Rational& hi, unsigned bits = 24) {
    std::uint64_t k = below((std::uint64_t{1} << bits) + 1);
    Rational frac(mpz_class(static_cast<unsigned long>(k)), mpz_class(1) << bits);
    frac.canonicalize();
    return lo + (hi - lo) * frac;
  }

  /// Uniform double in [0, 1) for non-geometric choices.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mcd
