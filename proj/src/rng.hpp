#pragma once

#include <cstdint>
#include <initializer_list>

namespace evoc {

// Counter-based stream: draw i is mix(key + i * gamma), the splitmix64
// output function over a keyed counter. Streams for different (seed, path)
// keys are independent, and any draw is reproducible from the key and the
// counter alone, so agents, iterations and runs never share generator
// state. Serial and parallel execution therefore produce identical draws.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Folds path elements into the seed, one mix round per element.
  static std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t k = mix(seed + kGamma);
    for (std::uint64_t p : path) {
      k = mix(k ^ (p + kGamma + (k << 6) + (k >> 2)));
    }
    return k;
  }

  static RandomStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    return RandomStream(derive_key(seed, path));
  }

  std::uint64_t next_u64() {
    ++counter_;
    return mix(key_ + counter_ * kGamma);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_unit() < p; }

  // Uniform in [0, n) via multiply-shift.
  std::uint32_t next_below(std::uint32_t n) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace evoc
