#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "synpow/link.hpp"
#include "synpow/prefix.hpp"

namespace synpow {

// Node with a static longest-prefix-match forwarding table plus an optional
// default route; the base behavior of routers and edge switches.
class ForwardingNode : public Node {
 public:
  using Node::Node;

  void add_route(const Ipv4Prefix& prefix, Channel* out) {
    routes_.emplace_back(prefix, out);
  }
  void set_default_route(Channel* out) { default_route_ = out; }

  void on_packet(const Packet& pkt, Node& /*from*/) override { forward(pkt); }

  std::uint64_t route_drops() const { return route_drops_; }

 protected:
  Channel* route_for(std::uint32_t dst_ip) const {
    Channel* best = default_route_;
    int best_len = -1;
    for (const auto& [prefix, out] : routes_) {
      if (prefix.contains(dst_ip) && static_cast<int>(prefix.length) > best_len) {
        best = out;
        best_len = prefix.length;
      }
    }
    return best;
  }

  void forward(const Packet& pkt) {
    Channel* out = route_for(pkt.dst_ip);
    if (out == nullptr || pkt.ttl == 0) {
      ++route_drops_;
      return;
    }
    Packet hop = pkt;
    --hop.ttl;
    out->transmit(std::move(hop));
  }

 private:
  std::vector<std::pair<Ipv4Prefix, Channel*>> routes_;
  Channel* default_route_ = nullptr;
  std::uint64_t route_drops_ = 0;
};

class Router : public ForwardingNode {
 public:
  using ForwardingNode::ForwardingNode;
};

// absorbs traffic with no real destination (e.g. SYN-ACKs to spoofed sources)
class SinkNode : public Node {
 public:
  using Node::Node;
  void on_packet(const Packet& /*pkt*/, Node& /*from*/) override { ++received_; }
  std::uint64_t received() const { return received_; }

 private:
  std::uint64_t received_ = 0;
};

}  // namespace synpow
