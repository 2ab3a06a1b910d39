#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>

#include "synpow/link.hpp"
#include "synpow/pow.hpp"
#include "synpow/rng.hpp"
#include "synpow/sim.hpp"

namespace synpow {

enum class AttackVariant : std::uint8_t {
  kNone,
  kCurlFlood,    // request flood from a plain HTTP client that never solves
  kCFlood,       // raw SYN flood, fixed source address, cycling ports
  kCFloodSpoof,  // raw SYN flood with a random spoofed source per packet
};

enum class AttackSpacing : std::uint8_t {
  kDeterministic,  // packet i departs at start + floor(i * 1e9 / rate) ns
  kPoisson,        // exponential gaps with mean 1/rate
};

enum class NoncePolicy : std::uint8_t { kZero, kRandom };

struct AttackerConfig {
  AttackVariant variant = AttackVariant::kCFloodSpoof;
  double rate_pps = 0;  // this attacker's emission rate
  SimTime start = 0;
  SimTime stop = 0;  // exclusive
  AttackSpacing spacing = AttackSpacing::kDeterministic;
  NoncePolicy nonce_policy = NoncePolicy::kZero;
  std::uint32_t ip = 0;
  std::uint32_t server_ip = 0;
  std::uint16_t server_port = 443;
  std::pair<std::uint32_t, std::uint32_t> spoof_range = {0, 0xffffffffu};  // inclusive
  int solves_at = -1;      // >= 0: pay (sampled) proof-of-work at this difficulty
  double hash_rate = 2e8;  // attacker compute, used only when solves_at >= 0
  SimTime curl_abandon = 100 * kMilli;
  std::uint32_t request_bytes = 140;
};

struct AttackerStats {
  std::uint64_t syns_sent = 0;
  std::uint64_t synacks_received = 0;
  std::uint64_t responses_received = 0;
  std::uint64_t completions = 0;  // curl transactions that got a response
};

// Flood variants emit in 1 ms batches: one scheduler event per batch hands
// the access channel a list of exact future departure times, so per-packet
// timing is preserved without per-packet control events.
class AttackerNode : public Node {
 public:
  AttackerNode(Simulator& sim, std::string name, AttackerConfig cfg, RngStream rng)
      : Node(std::move(name)), sim_(sim), cfg_(cfg), rng_(std::move(rng)) {}

  void set_uplink(Channel* out) { uplink_ = out; }
  void start();
  void on_packet(const Packet& pkt, Node& from) override;

  const AttackerStats& stats() const { return stats_; }

 private:
  void emit_flood_batch(SimTime batch_start);
  SimTime next_departure();  // flood spacing policy
  Packet make_flood_syn(SimTime depart);
  void begin_curl();

  Simulator& sim_;
  AttackerConfig cfg_;
  RngStream rng_;
  Channel* uplink_ = nullptr;
  AttackerStats stats_;
  std::uint64_t flood_index_ = 0;   // deterministic spacing position
  double poisson_next_ns_ = 0;      // absolute, accumulated in double
  SimTime solve_free_at_ = 0;       // when the (optional) solver is free again
  std::optional<SimTime> pending_depart_;  // drawn but not yet emitted
  std::uint16_t curl_port_ = 1024;
  std::unordered_map<std::uint16_t, std::uint64_t> curl_pending_;  // port -> generation
  std::uint64_t curl_gen_ = 0;
};

}  // namespace synpow
