#include "synpow/edge_switch.hpp"

namespace synpow {

void EdgeSwitch::on_packet(const Packet& pkt, Node& from) {
  if (pkt.kind == PacketKind::kSyn && host_ports_.count(&from) != 0) {
    ++counters_.syns_seen;
    ++window_.syns;
    if (verify_enabled_ && !admit(pkt)) {
      ++counters_.syns_dropped;
      ++window_.drops;
      return;  // silent drop: no reject is signaled to the sender
    }
  }
  forward(pkt);
}

bool EdgeSwitch::admit(const Packet& pkt) const {
  const Difficulty required = table_.match(pkt.src_ip).difficulty;
  if (required.bits == 0) {
    return true;
  }
  // Senders that solved analytically advertise the difficulty they paid for;
  // comparing levels is then exact up to the (negligible, conservative)
  // chance that a weaker solution also clears a stricter rule.
  if (pkt.solved_bits >= 0) {
    return pkt.solved_bits >= static_cast<int>(required.bits);
  }
  return verify(pkt.src_ip, pkt.dst_ip, pkt.src_port, pkt.dst_port, pkt.ack, required,
                backend_, sim_.now(), bucket_width_);
}

}  // namespace synpow
