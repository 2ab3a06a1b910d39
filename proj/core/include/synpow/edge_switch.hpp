#pragma once

#include <cstdint>
#include <unordered_set>

#include "synpow/flow_table.hpp"
#include "synpow/pow.hpp"
#include "synpow/routing.hpp"
#include "synpow/sim.hpp"

namespace synpow {

struct SwitchCounters {
  std::uint64_t syns_seen = 0;
  std::uint64_t syns_dropped = 0;
};

struct TelemetryWindow {
  std::uint64_t syns = 0;
  std::uint64_t drops = 0;
};

// Edge switch: forwards like a router, but SYNs arriving on host-facing
// ports are checked against the difficulty rule matching their source
// address and silently dropped on verification failure. Only host-facing
// ports are checked or counted, so transit traffic through a trunk port
// never trips another LAN's telemetry.
class EdgeSwitch : public ForwardingNode {
 public:
  EdgeSwitch(Simulator& sim, std::string name, Difficulty default_difficulty,
             HashBackend backend, SimTime bucket_width = kDefaultBucketWidth)
      : ForwardingNode(std::move(name)),
        sim_(sim),
        table_(default_difficulty),
        backend_(backend),
        bucket_width_(bucket_width) {}

  void attach_host(const Node* host) { host_ports_.insert(host); }
  void set_verify_enabled(bool on) { verify_enabled_ = on; }

  void on_packet(const Packet& pkt, Node& from) override;

  void install_rule(FlowRule rule) { table_.install(rule); }
  bool retract_rule(const Ipv4Prefix& prefix) { return table_.retract(prefix); }

  FlowTable& table() { return table_; }
  const FlowTable& table() const { return table_; }
  const SwitchCounters& counters() const { return counters_; }

  // window counters for the controller; reset on read
  TelemetryWindow take_telemetry() {
    TelemetryWindow out = window_;
    window_ = TelemetryWindow{};
    return out;
  }

 private:
  bool admit(const Packet& pkt) const;

  Simulator& sim_;
  FlowTable table_;
  HashBackend backend_;
  SimTime bucket_width_;
  bool verify_enabled_ = false;
  std::unordered_set<const Node*> host_ports_;
  SwitchCounters counters_;
  TelemetryWindow window_;
};

}  // namespace synpow
