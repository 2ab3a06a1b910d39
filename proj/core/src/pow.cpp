#include "synpow/pow.hpp"

#include <openssl/sha.h>

#include <cstring>

namespace synpow {

namespace {

inline std::uint16_t get16le(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline void put32be(std::uint8_t* p, std::uint32_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 24);
  p[1] = static_cast<std::uint8_t>(v >> 16);
  p[2] = static_cast<std::uint8_t>(v >> 8);
  p[3] = static_cast<std::uint8_t>(v);
}

inline void put16be(std::uint8_t* p, std::uint16_t v) {
  p[0] = static_cast<std::uint8_t>(v >> 8);
  p[1] = static_cast<std::uint8_t>(v);
}

}  // namespace

std::array<std::uint8_t, 16> PuzzleInput::serialize() const {
  std::array<std::uint8_t, 16> out{};
  put32be(out.data(), src_ip);
  put32be(out.data() + 4, dst_ip);
  put16be(out.data() + 8, src_port);
  put16be(out.data() + 10, dst_port);
  put32be(out.data() + 12, time_bucket);
  return out;
}

std::uint32_t time_bucket_of(SimTime now, SimTime bucket_width) {
  if (bucket_width == 0) throw std::invalid_argument("bucket_width must be positive");
  return static_cast<std::uint32_t>(now / bucket_width);
}

PuzzleInput make_puzzle_input(std::uint32_t src_ip, std::uint32_t dst_ip,
                              std::uint16_t src_port, std::uint16_t dst_port,
                              SimTime now, SimTime bucket_width) {
  return PuzzleInput{src_ip, dst_ip, src_port, dst_port, time_bucket_of(now, bucket_width)};
}

std::uint32_t superfasthash32(const std::uint8_t* data, std::size_t len) {
  if (data == nullptr || len == 0) return 0;
  std::uint32_t hash = static_cast<std::uint32_t>(len);
  std::uint32_t tmp;
  std::size_t rem = len & 3;
  for (std::size_t blocks = len >> 2; blocks > 0; --blocks) {
    hash += get16le(data);
    tmp = static_cast<std::uint32_t>(get16le(data + 2) << 11) ^ hash;
    hash = (hash << 16) ^ tmp;
    data += 4;
    hash += hash >> 11;
  }
  switch (rem) {
    case 3:
      hash += get16le(data);
      hash ^= hash << 16;
      hash ^= static_cast<std::uint32_t>(static_cast<std::int8_t>(data[2])) << 18;
      hash += hash >> 11;
      break;
    case 2:
      hash += get16le(data);
      hash ^= hash << 11;
      hash += hash >> 17;
      break;
    case 1:
      hash += static_cast<std::uint32_t>(static_cast<std::int8_t>(data[0]));
      hash ^= hash << 10;
      hash += hash >> 1;
      break;
    default:
      break;
  }
  hash ^= hash << 3;
  hash += hash >> 5;
  hash ^= hash << 4;
  hash += hash >> 17;
  hash ^= hash << 25;
  hash += hash >> 6;
  return hash;
}

std::uint32_t crypto_trunc32(const std::uint8_t* data, std::size_t len) {
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(data, len, digest);
  return (static_cast<std::uint32_t>(digest[0]) << 24) |
         (static_cast<std::uint32_t>(digest[1]) << 16) |
         (static_cast<std::uint32_t>(digest[2]) << 8) |
         static_cast<std::uint32_t>(digest[3]);
}

std::uint32_t puzzle_digest(const PuzzleInput& input, std::uint32_t nonce, HashBackend backend) {
  std::uint8_t msg[20];
  auto head = input.serialize();
  std::memcpy(msg, head.data(), 16);
  put32be(msg + 16, nonce);
  switch (backend) {
    case HashBackend::kSuperFast32:
      return superfasthash32(msg, sizeof msg);
    case HashBackend::kCryptoTrunc32:
      return crypto_trunc32(msg, sizeof msg);
  }
  throw std::invalid_argument("unknown hash backend");
}

SolveResult solve(const PuzzleInput& input, Difficulty d, HashBackend backend,
                  std::uint32_t start_nonce) {
  return solve_with(
      [&](std::uint32_t nonce) { return puzzle_digest(input, nonce, backend); }, d,
      start_nonce);
}

bool verify(std::uint32_t src_ip, std::uint32_t dst_ip, std::uint16_t src_port,
            std::uint16_t dst_port, std::uint32_t nonce, Difficulty d,
            HashBackend backend, SimTime now, SimTime bucket_width) {
  if (d.bits > kMaxDifficultyBits) throw std::invalid_argument("difficulty out of range");
  const std::uint32_t bucket = time_bucket_of(now, bucket_width);
  PuzzleInput input{src_ip, dst_ip, src_port, dst_port, bucket};
  if (meets_difficulty(puzzle_digest(input, nonce, backend), d)) return true;
  if (bucket == 0) return false;
  input.time_bucket = bucket - 1;
  return meets_difficulty(puzzle_digest(input, nonce, backend), d);
}

}  // namespace synpow
