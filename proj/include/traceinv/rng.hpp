#pragma once

#include <cstdint>
#include <random>

namespace traceinv {

// Deterministic 64-bit generator for reproducible probabilistic checks.
// mt19937_64 output is pinned by the standard; the bounded draw below avoids
// std::uniform_int_distribution, whose output is implementation-defined.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform in [lo, hi], rejection-sampled.
  long long uniform(long long lo, long long hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t reject_above = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x = gen_();
    while (x >= reject_above) x = gen_();
    return lo + static_cast<long long>(x % range);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace traceinv
