#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "synpow/sim_time.hpp"

namespace synpow {

// Verifiers accept the current and the immediately previous time bucket,
// so a solution stays valid for at least bucket_width seconds after the
// client computed it.
inline constexpr SimTime kDefaultBucketWidth = 64 * kSecond;
inline constexpr unsigned kMaxDifficultyBits = 32;

enum class HashBackend : std::uint8_t {
  kSuperFast32,   // Paul Hsieh's SuperFastHash, 32-bit digest
  kCryptoTrunc32  // SHA-256 truncated to the 32 most significant bits
};

// required count of leading zero bits in the digest; valid range [0, 32]
struct Difficulty {
  std::uint8_t bits = 0;
  auto operator<=>(const Difficulty&) const = default;
};

// expected solve attempts at difficulty d (2^bits)
inline std::uint64_t expected_trials(Difficulty d) {
  if (d.bits > kMaxDifficultyBits) throw std::invalid_argument("difficulty out of range");
  return std::uint64_t{1} << d.bits;
}

struct PuzzleInput {
  std::uint32_t src_ip = 0;
  std::uint32_t dst_ip = 0;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint32_t time_bucket = 0;

  // fixed 16-byte big-endian layout: src_ip, dst_ip, src_port, dst_port, bucket
  std::array<std::uint8_t, 16> serialize() const;

  bool operator==(const PuzzleInput&) const = default;
};

std::uint32_t time_bucket_of(SimTime now, SimTime bucket_width = kDefaultBucketWidth);

PuzzleInput make_puzzle_input(std::uint32_t src_ip, std::uint32_t dst_ip,
                              std::uint16_t src_port, std::uint16_t dst_port,
                              SimTime now, SimTime bucket_width = kDefaultBucketWidth);

std::uint32_t superfasthash32(const std::uint8_t* data, std::size_t len);
std::uint32_t crypto_trunc32(const std::uint8_t* data, std::size_t len);

// digest of the 20-byte message (serialized puzzle input || nonce, big-endian)
std::uint32_t puzzle_digest(const PuzzleInput& input, std::uint32_t nonce, HashBackend backend);

bool meets_difficulty(std::uint32_t digest, Difficulty d);

struct SolveResult {
  std::uint32_t nonce = 0;
  std::uint64_t trials = 0;
};

class SolverExhausted : public std::runtime_error {
 public:
  SolverExhausted() : std::runtime_error("no valid nonce in the full 32-bit range") {}
};

// Sequential search from start_nonce with 32-bit wraparound. digest_fn is
// any callable mapping a nonce to a 32-bit digest; the production overload
// below binds it to puzzle_digest.
template <typename DigestFn>
SolveResult solve_with(DigestFn&& digest_fn, Difficulty d, std::uint32_t start_nonce) {
  if (d.bits > kMaxDifficultyBits) throw std::invalid_argument("difficulty out of range");
  std::uint32_t nonce = start_nonce;
  for (std::uint64_t trials = 1; trials <= (std::uint64_t{1} << 32); ++trials) {
    if (meets_difficulty(digest_fn(nonce), d)) return {nonce, trials};
    ++nonce;  // unsigned wraparound is the intended search order
  }
  throw SolverExhausted{};
}

SolveResult solve(const PuzzleInput& input, Difficulty d, HashBackend backend,
                  std::uint32_t start_nonce);

// Stateless check against the bucket for `now` and, when it exists, the
// previous bucket. Pure: no clock access, no state.
bool verify(std::uint32_t src_ip, std::uint32_t dst_ip, std::uint16_t src_port,
            std::uint16_t dst_port, std::uint32_t nonce, Difficulty d,
            HashBackend backend, SimTime now,
            SimTime bucket_width = kDefaultBucketWidth);

inline bool meets_difficulty(std::uint32_t digest, Difficulty d) {
  if (d.bits == 0) return true;
  if (d.bits > kMaxDifficultyBits) throw std::invalid_argument("difficulty out of range");
  return (digest >> (kMaxDifficultyBits - d.bits)) == 0;
}

}  // namespace synpow
