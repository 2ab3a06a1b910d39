#include "synpow/client.hpp"

#include <algorithm>
#include <cmath>

namespace synpow {

void ClientNode::begin_transaction() {
  ++tx_;
  port_ = port_ == 65535 ? 1024 : static_cast<std::uint16_t>(port_ + 1);

  SimTime solve_delay = 0;
  double solve_s = 0;
  if (cfg_.solve_pow) {
    const double p = std::ldexp(1.0, -static_cast<int>(cfg_.belief.bits));
    solve_s = static_cast<double>(rng_.geometric_trials(p)) / cfg_.hash_rate;
    solve_delay = from_s(solve_s);
  }

  const std::uint64_t tx = tx_;
  sim_.schedule_in(solve_delay, [this, tx, solve_s]() {
    if (tx != tx_) return;
    last_solve_s_ = solve_s;
    emit_syn();
  });
}

void ClientNode::emit_syn() {
  ++stats_.attempts;
  if (in_window(sim_.now())) {
    ++stats_.window_attempts;
    ++stats_.window_solves;
    stats_.window_solve_s += last_solve_s_;
  }
  stats_.solve_s_total += last_solve_s_;

  Packet syn;
  syn.kind = PacketKind::kSyn;
  syn.src_ip = cfg_.ip;
  syn.dst_ip = cfg_.server_ip;
  syn.src_port = port_;
  syn.dst_port = cfg_.server_port;
  syn.seq = static_cast<std::uint32_t>(tx_);
  syn.solved_bits = cfg_.solve_pow ? static_cast<std::int8_t>(cfg_.belief.bits) : -1;
  uplink_->transmit(syn);

  awaiting_response_ = false;
  const std::uint64_t tx = tx_;
  sim_.schedule_in(cfg_.timeout, [this, tx]() { handle_timeout(tx); });
}

void ClientNode::handle_timeout(std::uint64_t tx) {
  if (tx != tx_) return;
  ++stats_.timeouts;
  if (cfg_.solve_pow && !cfg_.ladder.empty()) {
    // assume the SYN was dropped for insufficient work; step up the ladder
    for (std::uint8_t step : cfg_.ladder) {
      if (step > cfg_.belief.bits) {
        cfg_.belief.bits = std::min<std::uint8_t>(step, cfg_.belief_cap.bits);
        break;
      }
    }
  }
  // Retries get the same pause spread as fresh transactions: an exact shared
  // retry period would keep every stalled client probing a loaded server at a
  // fixed phase of whatever queue cycle is starving it.
  SimTime pause = 0;
  if (cfg_.think_jitter != 0) {
    pause = from_s(rng_.uniform(0.0, to_s(cfg_.think_jitter)));
  }
  const std::uint64_t next = tx_;
  sim_.schedule_in(pause, [this, next]() {
    if (next != tx_) return;
    begin_transaction();
  });
}

void ClientNode::on_packet(const Packet& pkt, Node& /*from*/) {
  if (pkt.dst_port != port_ || pkt.src_ip != cfg_.server_ip) return;

  if (pkt.kind == PacketKind::kSynAck && !awaiting_response_) {
    Packet ack;
    ack.kind = PacketKind::kAck;
    ack.src_ip = cfg_.ip;
    ack.dst_ip = cfg_.server_ip;
    ack.src_port = port_;
    ack.dst_port = cfg_.server_port;
    ack.seq = pkt.ack;
    ack.ack = pkt.seq + 1;
    uplink_->transmit(ack);

    Packet req = ack;
    req.kind = PacketKind::kRequest;
    req.size_bytes = cfg_.request_bytes;
    uplink_->transmit(req);
    awaiting_response_ = true;
    return;
  }

  if (pkt.kind == PacketKind::kResponse && awaiting_response_) {
    ++stats_.successes;
    if (in_window(sim_.now())) ++stats_.window_successes;
    awaiting_response_ = false;
    ++tx_;  // disarm the pending timeout across the think pause
    SimTime pause = 0;
    if (cfg_.think_jitter != 0) {
      pause = from_s(rng_.uniform(0.0, to_s(cfg_.think_jitter)));
    }
    const std::uint64_t tx = tx_;
    sim_.schedule_in(pause, [this, tx]() {
      if (tx != tx_) return;
      begin_transaction();
    });
  }
}

void ClientNode::on_advisory(Difficulty d) {
  cfg_.belief.bits = std::min(d.bits, cfg_.belief_cap.bits);
}

}  // namespace synpow
