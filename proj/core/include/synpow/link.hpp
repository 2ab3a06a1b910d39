#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <string>

#include "synpow/packet.hpp"
#include "synpow/sim.hpp"
#include "synpow/sim_time.hpp"

namespace synpow {

class Node {
 public:
  explicit Node(std::string name) : name_(std::move(name)) {}
  virtual ~Node() = default;
  // `from` is the node on the far end of the delivering channel; switches
  // use it to distinguish host-facing ports from trunk ports.
  virtual void on_packet(const Packet& pkt, Node& from) = 0;
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct ChannelConfig {
  std::uint64_t bandwidth_bps = 100'000'000;
  SimTime prop_delay = kMilli;
  std::size_t queue_capacity = 100;  // waiting packets; the one serializing is excluded
};

struct ChannelStats {
  std::uint64_t offered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t delivered = 0;
};

// One direction of a point-to-point link: a serializing transmitter with a
// drop-tail FIFO queue, then fixed propagation delay. Queue occupancy is
// tracked lazily from serialization end times, so a dropped packet costs no
// event and a delivered packet costs exactly one.
class Channel {
 public:
  Channel(Simulator& sim, ChannelConfig cfg, Node* src, Node* dst, std::string label)
      : sim_(sim), cfg_(cfg), src_(src), dst_(dst), label_(std::move(label)) {}

  void transmit(Packet pkt) { transmit_at(std::move(pkt), sim_.now()); }

  // Future-dated sends let a source hand over a batch with exact per-packet
  // departure times. Offers on one channel must be non-decreasing in time.
  void transmit_at(Packet pkt, SimTime depart);

  const ChannelStats& stats() const { return stats_; }
  const std::string& label() const { return label_; }
  Node* destination() const { return dst_; }
  const ChannelConfig& config() const { return cfg_; }

  SimTime serialization_delay(std::uint32_t bytes) const {
    return (static_cast<SimTime>(bytes) * 8u * kSecond) / cfg_.bandwidth_bps;
  }

 private:
  struct InFlight {
    SimTime start;
    SimTime end;
  };

  Simulator& sim_;
  ChannelConfig cfg_;
  Node* src_;
  Node* dst_;
  std::string label_;
  std::deque<InFlight> in_system_;
  SimTime last_end_ = 0;
  SimTime last_offer_ = 0;
  ChannelStats stats_;
};

// full-duplex link modeled as two independent half-duplex channels
class Link {
 public:
  Link(Simulator& sim, Node* a, Node* b, ChannelConfig a_to_b, ChannelConfig b_to_a,
       const std::string& label)
      : fwd_(sim, a_to_b, a, b, label + ":" + a->name() + ">" + b->name()),
        rev_(sim, b_to_a, b, a, label + ":" + b->name() + ">" + a->name()) {}

  Channel& toward_b() { return fwd_; }
  Channel& toward_a() { return rev_; }

 private:
  Channel fwd_;
  Channel rev_;
};

}  // namespace synpow
