#include "synpow/link.hpp"

#include <stdexcept>

namespace synpow {

const char* to_string(PacketKind kind) {
  switch (kind) {
    case PacketKind::kSyn:
      return "syn";
    case PacketKind::kSynAck:
      return "synack";
    case PacketKind::kAck:
      return "ack";
    case PacketKind::kRequest:
      return "request";
    case PacketKind::kResponse:
      return "response";
    case PacketKind::kRst:
      return "rst";
  }
  return "unknown";
}

void Channel::transmit_at(Packet pkt, SimTime depart) {
  if (depart < sim_.now()) {
    throw std::logic_error("channel " + label_ + ": departure in the past");
  }
  if (depart < last_offer_) {
    throw std::logic_error("channel " + label_ + ": offers must be time-ordered");
  }
  last_offer_ = depart;
  ++stats_.offered;

  // retire everything that finished serializing by `depart`
  while (!in_system_.empty() && in_system_.front().end <= depart) {
    in_system_.pop_front();
  }

  // A packet waits only if the transmitter is still busy at `depart`; an
  // idle channel serves it immediately, so even a zero-buffer channel
  // accepts it. The head packet is in service (not waiting) once its start
  // time passed.
  if (!in_system_.empty()) {
    std::size_t waiting = in_system_.size();
    if (in_system_.front().start <= depart) {
      --waiting;
    }
    if (waiting >= cfg_.queue_capacity) {
      ++stats_.dropped;
      return;
    }
  }

  const SimTime start = depart > last_end_ ? depart : last_end_;
  const SimTime end = start + serialization_delay(pkt.size_bytes);
  last_end_ = end;
  in_system_.push_back({start, end});

  sim_.schedule(end + cfg_.prop_delay, [this, p = std::move(pkt)]() {
    ++stats_.delivered;
    dst_->on_packet(p, *src_);
  });
}

}  // namespace synpow
