#pragma once

#include <cstdint>
#include <vector>

#include "synpow/link.hpp"
#include "synpow/pow.hpp"
#include "synpow/rng.hpp"
#include "synpow/sim.hpp"

namespace synpow {

struct ClientConfig {
  std::uint32_t ip = 0;
  std::uint32_t server_ip = 0;
  std::uint16_t server_port = 443;
  double hash_rate = 2e8;       // puzzle attempts per second
  SimTime timeout = kSecond;    // SYN emission to response deadline
  bool solve_pow = false;
  Difficulty belief{0};         // difficulty assumed for the next solve
  std::vector<std::uint8_t> ladder;  // timeout escalation steps (ascending)
  Difficulty belief_cap{26};
  std::uint32_t request_bytes = 140;
  SimTime start_at = 0;
  // Uniform pause in [0, think_jitter] between a response and the next
  // attempt. Deterministic closed loops otherwise phase-lock through shared
  // queues, which makes throughput a fragile function of topology constants.
  SimTime think_jitter = 0;
};

struct ClientStats {
  std::uint64_t attempts = 0;
  std::uint64_t successes = 0;
  std::uint64_t timeouts = 0;
  std::uint64_t window_attempts = 0;
  std::uint64_t window_successes = 0;
  std::uint64_t window_solves = 0;
  double window_solve_s = 0;  // summed solve latency for SYNs sent in-window
  double solve_s_total = 0;
};

// Closed-loop client: one transaction in flight at a time. Each attempt
// solves (when enabled) for the currently believed difficulty, sends a SYN
// on a fresh source port, and either completes the
// SYN-ACK / ACK+request / response exchange or times out and retries.
// Solve latency is a sampled trial count over the device hash rate; the SYN
// carries the solved difficulty level in metadata (see Packet::solved_bits).
class ClientNode : public Node {
 public:
  ClientNode(Simulator& sim, std::string name, ClientConfig cfg, RngStream rng)
      : Node(std::move(name)), sim_(sim), cfg_(cfg), rng_(std::move(rng)) {}

  void set_uplink(Channel* out) { uplink_ = out; }
  void set_window(SimTime begin, SimTime end) {
    win_begin_ = begin;
    win_end_ = end;
  }

  void start() {
    sim_.schedule(cfg_.start_at, [this]() { begin_transaction(); });
  }

  void on_packet(const Packet& pkt, Node& from) override;
  void on_advisory(Difficulty d);  // published difficulty for this client's LAN

  const ClientStats& stats() const { return stats_; }
  Difficulty belief() const { return cfg_.belief; }

 private:
  void begin_transaction();
  void emit_syn();
  void handle_timeout(std::uint64_t tx);
  bool in_window(SimTime t) const { return t >= win_begin_ && t < win_end_; }

  Simulator& sim_;
  ClientConfig cfg_;
  RngStream rng_;
  Channel* uplink_ = nullptr;
  ClientStats stats_;
  SimTime win_begin_ = 0;
  SimTime win_end_ = ~SimTime{0};
  std::uint64_t tx_ = 0;          // generation counter; stale events no-op
  std::uint16_t port_ = 10000;
  bool awaiting_response_ = false;
  double last_solve_s_ = 0;
};

}  // namespace synpow
