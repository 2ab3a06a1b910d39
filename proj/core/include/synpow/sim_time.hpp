#pragma once

#include <cmath>
#include <cstdint>

namespace synpow {

// simulation clock: unsigned nanoseconds since run start
using SimTime = std::uint64_t;

inline constexpr SimTime kMicro = 1'000;
inline constexpr SimTime kMilli = 1'000'000;
inline constexpr SimTime kSecond = 1'000'000'000;

inline SimTime from_s(double seconds) {
  return static_cast<SimTime>(std::llround(seconds * 1e9));
}

inline constexpr double to_s(SimTime t) { return static_cast<double>(t) / 1e9; }

}  // namespace synpow
