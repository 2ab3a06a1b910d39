#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace synpow {

// splitmix64 finalizer, used to spread seed material
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// One independent deterministic stream per (global seed, stream name).
// The sequence of a stream depends only on its own draws, never on how
// other streams are used, so adding a node to a scenario cannot perturb
// the randomness seen by existing nodes.
class RngStream {
 public:
  RngStream() : engine_(0) {}
  RngStream(std::uint64_t global_seed, std::string_view stream_name)
      : engine_(mix64(global_seed ^ fnv1a64(stream_name))) {}

  std::uint64_t next_u64() { return engine_(); }
  std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_()); }

  // uniform in [0, 1)
  double uniform01() { return (engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // exponential with the given mean (mean <= 0 returns 0)
  double exponential(double mean) {
    if (mean <= 0.0) return 0.0;
    return -mean * std::log1p(-uniform01());
  }

  // geometric trial count on {1, 2, ...} with success probability p;
  // mean 1/p. Used for proof-of-work solve lengths.
  std::uint64_t geometric_trials(double p) {
    if (p >= 1.0) return 1;
    if (p <= 0.0) return UINT64_MAX;
    double u = uniform01();
    double t = std::floor(std::log1p(-u) / std::log1p(-p));
    if (t >= 9.2e18) return UINT64_MAX;
    return 1 + static_cast<std::uint64_t>(t);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace synpow
