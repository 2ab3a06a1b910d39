#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "synpow/link.hpp"
#include "synpow/pow.hpp"
#include "synpow/rng.hpp"
#include "synpow/sim.hpp"

namespace synpow {

enum class ServerMode : std::uint8_t {
  kPlainBacklog,  // bounded half-open table, new SYNs dropped when full
  kSynCookies,    // stateless before the final ACK, per-SYN cookie CPU cost
  kPowAware       // plain backlog behind switch-enforced proof-of-work
};

struct ServerConfig {
  std::uint32_t ip = 0;
  std::uint16_t port = 443;
  ServerMode mode = ServerMode::kPlainBacklog;
  std::size_t backlog_capacity = 8192;
  SimTime half_open_timeout = 600 * kMilli;
  // Extra uniform [0, jitter] added per entry. Real stacks never reap
  // half-open state on an exact global period (timer slack, per-connection
  // retransmit schedules), and an exact period would let the reap phase of a
  // flood-filled table act as a synchronized admission gate.
  SimTime half_open_jitter = 0;
  SimTime service_time = 2 * kMilli;
  int concurrency = 8;              // parallel request-service lanes
  SimTime cookie_cpu = 5 * kMicro;  // serial per-SYN cost in cookie mode
  // Per-SYN spread added to cookie_cpu, uniform [0, jitter]. A bit-exact
  // constant cost would lock synack emission to the arrival serialization
  // grid and make egress drop races periodic instead of fair.
  SimTime cookie_cpu_jitter = 0;
  std::uint32_t response_bytes = 1064;
  SimTime bucket_width = kDefaultBucketWidth;
};

struct ServerStats {
  std::uint64_t syns_received = 0;
  std::uint64_t synacks_sent = 0;
  std::uint64_t backlog_drops = 0;
  std::uint64_t cookie_rejects = 0;
  std::uint64_t established = 0;
  std::uint64_t responses_sent = 0;
};

class ServerNode : public Node {
 public:
  ServerNode(Simulator& sim, std::string name, ServerConfig cfg)
      : Node(std::move(name)),
        sim_(sim),
        cfg_(cfg),
        lane_free_(static_cast<std::size_t>(cfg.concurrency), 0) {}

  void set_uplink(Channel* out) { uplink_ = out; }
  void set_rng(RngStream rng) { rng_ = rng; }
  void on_packet(const Packet& pkt, Node& from) override;

  const ServerStats& stats() const { return stats_; }
  std::size_t half_open_size() const { return half_open_.size(); }

 private:
  static std::uint64_t peer_key(std::uint32_t ip, std::uint16_t port) {
    return (static_cast<std::uint64_t>(ip) << 16) | port;
  }

  std::uint32_t cookie_of(std::uint32_t src_ip, std::uint16_t src_port,
                          std::uint32_t bucket) const;
  void send(Packet pkt);
  void on_syn(const Packet& pkt);
  void on_ack(const Packet& pkt);
  void on_request(const Packet& pkt);

  Simulator& sim_;
  ServerConfig cfg_;
  Channel* uplink_ = nullptr;
  ServerStats stats_;
  std::unordered_map<std::uint64_t, SimTime> half_open_;  // key -> admission time
  std::unordered_map<std::uint64_t, SimTime> established_;
  std::vector<SimTime> lane_free_;
  SimTime cookie_cpu_free_ = 0;
  RngStream rng_;
};

}  // namespace synpow
