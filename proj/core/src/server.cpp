#include "synpow/server.hpp"

#include <algorithm>

namespace synpow {

namespace {

void put32be(std::uint8_t* out, std::uint32_t v) {
  out[0] = static_cast<std::uint8_t>(v >> 24);
  out[1] = static_cast<std::uint8_t>(v >> 16);
  out[2] = static_cast<std::uint8_t>(v >> 8);
  out[3] = static_cast<std::uint8_t>(v);
}

}  // namespace

std::uint32_t ServerNode::cookie_of(std::uint32_t src_ip, std::uint16_t src_port,
                                    std::uint32_t bucket) const {
  std::uint8_t buf[10];
  put32be(buf, src_ip);
  buf[4] = static_cast<std::uint8_t>(src_port >> 8);
  buf[5] = static_cast<std::uint8_t>(src_port);
  put32be(buf + 6, bucket);
  return superfasthash32(buf, sizeof buf);
}

void ServerNode::send(Packet pkt) {
  uplink_->transmit(std::move(pkt));
}

void ServerNode::on_packet(const Packet& pkt, Node& /*from*/) {
  switch (pkt.kind) {
    case PacketKind::kSyn:
      on_syn(pkt);
      return;
    case PacketKind::kAck:
      on_ack(pkt);
      return;
    case PacketKind::kRequest:
      on_request(pkt);
      return;
    default:
      return;
  }
}

void ServerNode::on_syn(const Packet& pkt) {
  ++stats_.syns_received;
  Packet reply;
  reply.kind = PacketKind::kSynAck;
  reply.src_ip = cfg_.ip;
  reply.dst_ip = pkt.src_ip;
  reply.src_port = cfg_.port;
  reply.dst_port = pkt.src_port;
  reply.ack = pkt.seq + 1;

  if (cfg_.mode == ServerMode::kSynCookies) {
    // Stateless: the connection state is folded into the sequence number.
    // Encoding burns a serial slice of CPU that delays every later SYN.
    reply.seq = cookie_of(pkt.src_ip, pkt.src_port, time_bucket_of(sim_.now(), cfg_.bucket_width));
    SimTime cost = cfg_.cookie_cpu;
    if (cfg_.cookie_cpu_jitter > 0) {
      cost += from_s(rng_.uniform(0.0, to_s(cfg_.cookie_cpu_jitter)));
    }
    const SimTime ready = std::max(sim_.now(), cookie_cpu_free_) + cost;
    cookie_cpu_free_ = ready;
    sim_.schedule(ready, [this, reply]() {
      ++stats_.synacks_sent;
      send(reply);
    });
    return;
  }

  const std::uint64_t key = peer_key(pkt.src_ip, pkt.src_port);
  if (established_.count(key) != 0) {
    return;  // handshake already completed for this 4-tuple
  }
  if (const auto it = half_open_.find(key); it != half_open_.end()) {
    ++stats_.synacks_sent;  // duplicate SYN: re-answer, no new state
    send(reply);
    return;
  }
  if (half_open_.size() >= cfg_.backlog_capacity) {
    ++stats_.backlog_drops;
    return;
  }

  const SimTime admitted = sim_.now();
  half_open_.emplace(key, admitted);
  SimTime hold = cfg_.half_open_timeout;
  if (cfg_.half_open_jitter > 0) {
    hold += from_s(rng_.uniform(0.0, to_s(cfg_.half_open_jitter)));
  }
  sim_.schedule(admitted + hold, [this, key, admitted]() {
    const auto it = half_open_.find(key);
    if (it != half_open_.end() && it->second == admitted) {
      half_open_.erase(it);
    }
  });
  ++stats_.synacks_sent;
  send(reply);
}

void ServerNode::on_ack(const Packet& pkt) {
  const std::uint64_t key = peer_key(pkt.src_ip, pkt.src_port);
  if (cfg_.mode == ServerMode::kSynCookies) {
    const std::uint32_t bucket = time_bucket_of(sim_.now(), cfg_.bucket_width);
    const bool current = pkt.ack == cookie_of(pkt.src_ip, pkt.src_port, bucket) + 1;
    const bool previous =
        bucket > 0 && pkt.ack == cookie_of(pkt.src_ip, pkt.src_port, bucket - 1) + 1;
    if (!current && !previous) {
      ++stats_.cookie_rejects;
      return;
    }
    ++stats_.established;
    established_.emplace(key, sim_.now());
    return;
  }

  const auto it = half_open_.find(key);
  if (it == half_open_.end()) {
    return;
  }
  half_open_.erase(it);
  ++stats_.established;
  established_.emplace(key, sim_.now());
}

void ServerNode::on_request(const Packet& pkt) {
  const std::uint64_t key = peer_key(pkt.src_ip, pkt.src_port);
  if (established_.count(key) == 0) {
    return;
  }

  auto lane = std::min_element(lane_free_.begin(), lane_free_.end());
  const SimTime start = std::max(sim_.now(), *lane);
  const SimTime done = start + cfg_.service_time;
  *lane = done;

  Packet reply;
  reply.kind = PacketKind::kResponse;
  reply.src_ip = cfg_.ip;
  reply.dst_ip = pkt.src_ip;
  reply.src_port = cfg_.port;
  reply.dst_port = pkt.src_port;
  reply.seq = pkt.ack;
  reply.ack = pkt.seq + 1;
  reply.size_bytes = cfg_.response_bytes;

  sim_.schedule(done, [this, reply, key]() {
    established_.erase(key);
    ++stats_.responses_sent;
    send(reply);
  });
}

}  // namespace synpow
