#include "synpow/attack.hpp"

#include <algorithm>
#include <cmath>

namespace synpow {

namespace {
constexpr SimTime kBatch = kMilli;
}

void AttackerNode::start() {
  if (cfg_.variant == AttackVariant::kNone || cfg_.rate_pps <= 0 ||
      cfg_.stop <= cfg_.start) {
    return;
  }
  if (cfg_.variant == AttackVariant::kCurlFlood) {
    sim_.schedule(cfg_.start, [this]() { begin_curl(); });
    return;
  }
  poisson_next_ns_ = static_cast<double>(cfg_.start);
  sim_.schedule(cfg_.start, [this]() { emit_flood_batch(cfg_.start); });
}

// Computes (and commits) the departure time of the next flood packet. With
// deterministic spacing packet i leaves at start + floor(i * 1e9 / rate);
// long double keeps the product exact for any feasible run length.
SimTime AttackerNode::next_departure() {
  SimTime at = 0;
  if (cfg_.spacing == AttackSpacing::kDeterministic) {
    const long double offset_ns =
        static_cast<long double>(flood_index_) * 1.0e9L / cfg_.rate_pps;
    at = cfg_.start + static_cast<SimTime>(offset_ns);
    ++flood_index_;
  } else {
    at = static_cast<SimTime>(std::llround(poisson_next_ns_));
    poisson_next_ns_ += rng_.exponential(1e9 / cfg_.rate_pps);
  }
  if (cfg_.solves_at >= 0) {
    // a solve must finish before each send; the solver works serially
    const double p = std::ldexp(1.0, -cfg_.solves_at);
    const double solve_s =
        static_cast<double>(rng_.geometric_trials(p)) / cfg_.hash_rate;
    at = std::max(at, solve_free_at_) + from_s(solve_s);
    solve_free_at_ = at;
  }
  return at;
}

Packet AttackerNode::make_flood_syn(SimTime /*depart*/) {
  Packet syn;
  syn.kind = PacketKind::kSyn;
  syn.dst_ip = cfg_.server_ip;
  syn.dst_port = cfg_.server_port;
  if (cfg_.variant == AttackVariant::kCFloodSpoof) {
    const std::uint64_t span =
        std::uint64_t{cfg_.spoof_range.second} - cfg_.spoof_range.first + 1;
    syn.src_ip = cfg_.spoof_range.first +
                 static_cast<std::uint32_t>(rng_.next_u64() % span);
    syn.src_port = static_cast<std::uint16_t>(1024 + rng_.next_u32() % 64512);
  } else {
    syn.src_ip = cfg_.ip;
    syn.src_port = static_cast<std::uint16_t>(1024 + (stats_.syns_sent % 64512));
  }
  syn.seq = static_cast<std::uint32_t>(stats_.syns_sent);
  syn.ack = cfg_.nonce_policy == NoncePolicy::kRandom ? rng_.next_u32() : 0;
  if (cfg_.solves_at >= 0) {
    syn.solved_bits = static_cast<std::int8_t>(cfg_.solves_at);
  }
  return syn;
}

void AttackerNode::emit_flood_batch(SimTime batch_start) {
  const SimTime batch_end = std::min(batch_start + kBatch, cfg_.stop);
  while (true) {
    // a departure drawn past the batch boundary is held, not redrawn
    if (!pending_depart_) pending_depart_ = next_departure();
    if (*pending_depart_ >= batch_end) break;
    uplink_->transmit_at(make_flood_syn(*pending_depart_), *pending_depart_);
    ++stats_.syns_sent;
    pending_depart_.reset();
  }
  if (batch_end < cfg_.stop) {
    sim_.schedule(batch_end, [this, batch_end]() { emit_flood_batch(batch_end); });
  }
}

void AttackerNode::begin_curl() {
  if (sim_.now() >= cfg_.stop) return;

  curl_port_ = curl_port_ == 65535 ? 1024 : static_cast<std::uint16_t>(curl_port_ + 1);
  const std::uint16_t port = curl_port_;
  const std::uint64_t gen = ++curl_gen_;
  curl_pending_[port] = gen;

  Packet syn;
  syn.kind = PacketKind::kSyn;
  syn.src_ip = cfg_.ip;
  syn.dst_ip = cfg_.server_ip;
  syn.src_port = port;
  syn.dst_port = cfg_.server_port;
  syn.seq = static_cast<std::uint32_t>(gen);
  uplink_->transmit(syn);
  ++stats_.syns_sent;

  sim_.schedule_in(cfg_.curl_abandon, [this, port, gen]() {
    const auto it = curl_pending_.find(port);
    if (it != curl_pending_.end() && it->second == gen) curl_pending_.erase(it);
  });

  // open-loop pacing: the next connection starts regardless of this one
  const SimTime next = sim_.now() + from_s(1.0 / cfg_.rate_pps);
  if (next < cfg_.stop) {
    sim_.schedule(next, [this]() { begin_curl(); });
  }
}

void AttackerNode::on_packet(const Packet& pkt, Node& /*from*/) {
  if (pkt.kind == PacketKind::kSynAck) {
    ++stats_.synacks_received;
    if (cfg_.variant != AttackVariant::kCurlFlood) return;
    const auto it = curl_pending_.find(pkt.dst_port);
    if (it == curl_pending_.end()) return;

    Packet ack;
    ack.kind = PacketKind::kAck;
    ack.src_ip = cfg_.ip;
    ack.dst_ip = cfg_.server_ip;
    ack.src_port = pkt.dst_port;
    ack.dst_port = cfg_.server_port;
    ack.seq = pkt.ack;
    ack.ack = pkt.seq + 1;
    uplink_->transmit(ack);

    Packet req = ack;
    req.kind = PacketKind::kRequest;
    req.size_bytes = cfg_.request_bytes;
    uplink_->transmit(req);
    return;
  }
  if (pkt.kind == PacketKind::kResponse) {
    ++stats_.responses_received;
    if (cfg_.variant == AttackVariant::kCurlFlood &&
        curl_pending_.erase(pkt.dst_port) != 0) {
      ++stats_.completions;
    }
  }
}

}  // namespace synpow
