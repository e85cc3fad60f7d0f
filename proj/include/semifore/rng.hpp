#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace semifore::rng {

// 64-bit mixing finalizer (splitmix64). The engine below indexes this by a
// counter, so any element of a stream is addressable without generating its
// predecessors; identical across platforms by construction.
std::uint64_t mix64(std::uint64_t x);

// Order-sensitive combine used to derive child seeds (per task, per tree)
// from a master seed and structured coordinates.
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);
std::uint64_t hash_combine(std::uint64_t seed, const std::string& value);

// Counter-based uniform stream: element i is mix64(seed + (i+1)*GOLDEN).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return at(counter_++); }
  std::uint64_t at(std::uint64_t counter) const;

  // Uniform on (0, 1): 53-bit mantissa, clamped away from the endpoints so
  // inverse-CDF consumers never see 0 or 1.
  double next_unit();

  // Uniform on [0, bound) via rejection sampling; bound > 0.
  std::uint64_t next_below(std::uint64_t bound);

  // Uniform on [lo, hi); degenerate interval returns lo.
  double next_range(double lo, double hi);

  // Standard normal via the inverse CDF, so the draw is a pure function of
  // the stream position.
  double next_normal();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t counter_ = 0;
};

// Derives an independent child stream; used for per-tree RNG so forest
// results do not depend on construction order or thread schedule.
CounterRng split_stream(std::uint64_t seed, std::uint64_t index);

// Inverse of the standard normal CDF (Wichura's PPND16 rational
// approximations, |error| < 1e-15 on (0,1)).
double normal_icdf(double p);

// Deterministic partial Fisher-Yates: first k elements of a shuffle of
// 0..n-1.
std::vector<int> sample_without_replacement(CounterRng& rng, int n, int k);

}  // namespace semifore::rng
