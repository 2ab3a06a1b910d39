#pragma once

#include <cstdint>

namespace synpow {

enum class PacketKind : std::uint8_t { kSyn, kSynAck, kAck, kRequest, kResponse, kRst };

// default on-wire sizes in bytes; request/response are workload-configurable
inline constexpr std::uint32_t default_packet_bytes(PacketKind kind) {
  switch (kind) {
    case PacketKind::kRequest:
      return 140;
    case PacketKind::kResponse:
      return 1064;
    default:
      return 40;  // SYN, SYN-ACK, ACK, RST
  }
}

struct Packet {
  PacketKind kind = PacketKind::kSyn;
  std::uint32_t src_ip = 0;
  std::uint32_t dst_ip = 0;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  std::uint32_t seq = 0;
  // On SYNs this is the repurposed acknowledgment-number field carrying the
  // proof-of-work nonce; on ACKs it acknowledges the server's sequence.
  std::uint32_t ack = 0;
  std::uint32_t size_bytes = 40;
  // Hop budget: replies to spoofed addresses can enter forwarding loops
  // between a switch's default route and its router, and the TTL is what
  // bounds them, exactly as on a real network.
  std::uint8_t ttl = 64;
  // Simulation-side record of sampled solve effort: a sender that spent a
  // sampled solve at difficulty d marks d here and the verifier treats the
  // nonce as sound for d leading zero bits. Senders that do no work leave
  // it negative and their raw nonce is hashed for real.
  std::int8_t solved_bits = -1;
};

const char* to_string(PacketKind kind);

}  // namespace synpow
