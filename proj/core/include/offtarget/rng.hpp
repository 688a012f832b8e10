#pragma once

#include <cstdint>
#include <random>

namespace offtarget {

/// Seedable random stream with a fixed, documented algorithm.
///
/// The engine is std::mt19937_64, whose output sequence is pinned by the C++
/// standard. Library distributions are deliberately not used because their
/// algorithms are implementation-defined; the conversions below are:
///   uniform()   = (next() >> 11) * 2^-53
///   below(n)    = rejection sampling on next() mod n
///   bernoulli() = uniform() < p
/// Streams are derived from a (seed, stream) pair with SplitMix64, so two
/// streams with the same seed and different stream ids are independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(mix(seed, 0)) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    std::uint64_t x = next();
    while (x < threshold) x = next();
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace offtarget
