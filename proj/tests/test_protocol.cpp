#include <doctest.h>

#include <cstdint>
#include <vector>

#include "synpow/link.hpp"
#include "synpow/pow.hpp"
#include "synpow/rng.hpp"
#include "synpow/server.hpp"
#include "synpow/sim.hpp"

namespace {

using namespace synpow;

// Captures every packet the server emits, with the delivery clock.
struct WireTap : Node {
  explicit WireTap(Simulator& sim) : Node("tap"), sim_(sim) {}
  Simulator& sim_;
  std::vector<Packet> packets;
  std::vector<SimTime> at;
  void on_packet(const Packet& pkt, Node& /*from*/) override {
    packets.push_back(pkt);
    at.push_back(sim_.now());
  }
  std::size_t count(PacketKind kind) const {
    std::size_t n = 0;
    for (const auto& p : packets)
      if (p.kind == kind) ++n;
    return n;
  }
};

// Server under test with a fast, drop-free uplink toward the tap.
struct Rig {
  Simulator sim;
  WireTap tap{sim};
  ServerNode server;
  Channel up;

  explicit Rig(ServerConfig cfg)
      : server(sim, "srv", cfg),
        up(sim, ChannelConfig{1'000'000'000, 0, 1 << 20}, &server, &tap, "up") {
    server.set_uplink(&up);
  }

  void inject(SimTime at, Packet pkt) {
    sim.schedule(at, [this, pkt]() { server.on_packet(pkt, tap); });
  }
};

Packet syn_from(std::uint32_t ip, std::uint16_t port, std::uint32_t seq = 7) {
  Packet p;
  p.kind = PacketKind::kSyn;
  p.src_ip = ip;
  p.src_port = port;
  p.seq = seq;
  return p;
}

Packet ack_from(std::uint32_t ip, std::uint16_t port, std::uint32_t ack = 0) {
  Packet p;
  p.kind = PacketKind::kAck;
  p.src_ip = ip;
  p.src_port = port;
  p.ack = ack;
  return p;
}

Packet request_from(std::uint32_t ip, std::uint16_t port) {
  Packet p;
  p.kind = PacketKind::kRequest;
  p.src_ip = ip;
  p.src_port = port;
  return p;
}

TEST_CASE("bounded backlog answers up to capacity and drops the rest") {
  ServerConfig cfg;
  cfg.backlog_capacity = 128;
  Rig rig(cfg);
  for (std::uint32_t i = 0; i < 200; ++i) {
    rig.inject(kMicro * i, syn_from(0x0a000000 + i, 1000));
  }
  rig.sim.run_until(kMilli);

  CHECK(rig.server.stats().syns_received == 200);
  CHECK(rig.server.stats().synacks_sent == 128);
  CHECK(rig.server.stats().backlog_drops == 72);
  CHECK(rig.server.half_open_size() == 128);
  CHECK(rig.tap.count(PacketKind::kSynAck) == 128);
}

TEST_CASE("half-open entries expire after the timeout and free capacity") {
  ServerConfig cfg;
  cfg.backlog_capacity = 4;
  cfg.half_open_timeout = 100 * kMilli;
  Rig rig(cfg);
  for (std::uint32_t i = 0; i < 4; ++i) rig.inject(0, syn_from(i + 1, 2000));
  rig.sim.run_until(100 * kMilli - 1);
  CHECK(rig.server.half_open_size() == 4);
  rig.sim.run_until(100 * kMilli);
  CHECK(rig.server.half_open_size() == 0);

  // recycled capacity admits a new peer
  rig.inject(101 * kMilli, syn_from(99, 2000));
  rig.sim.run_until(102 * kMilli);
  CHECK(rig.server.half_open_size() == 1);
  CHECK(rig.server.stats().backlog_drops == 0);
}

TEST_CASE("half-open expiry spread stays within the configured jitter bound") {
  ServerConfig cfg;
  cfg.backlog_capacity = 4096;
  cfg.half_open_timeout = 100 * kMilli;
  cfg.half_open_jitter = 50 * kMilli;
  Rig rig(cfg);
  rig.server.set_rng(RngStream(7, "reap"));
  for (std::uint32_t i = 0; i < 500; ++i) rig.inject(0, syn_from(i + 1, 2000));

  rig.sim.run_until(100 * kMilli - 1);
  CHECK(rig.server.half_open_size() == 500);  // nothing reaped before the base timeout
  rig.sim.run_until(125 * kMilli);
  const std::size_t mid = rig.server.half_open_size();
  CHECK(mid > 0);    // spread out: some survive the midpoint...
  CHECK(mid < 500);  // ...and some have already gone
  rig.sim.run_until(150 * kMilli + 1);
  CHECK(rig.server.half_open_size() == 0);  // all reaped by timeout + jitter
}

TEST_CASE("handshake then request yields a response and clears all state") {
  ServerConfig cfg;
  cfg.service_time = 10 * kMilli;
  cfg.response_bytes = 40;
  Rig rig(cfg);
  rig.inject(0, syn_from(42, 5555, /*seq=*/100));
  rig.inject(kMilli, ack_from(42, 5555));
  rig.inject(2 * kMilli, request_from(42, 5555));
  rig.sim.run_until(kSecond);

  CHECK(rig.server.stats().established == 1);
  CHECK(rig.server.stats().responses_sent == 1);
  CHECK(rig.server.half_open_size() == 0);
  REQUIRE(rig.tap.count(PacketKind::kSynAck) == 1);
  REQUIRE(rig.tap.count(PacketKind::kResponse) == 1);
  // SYN-ACK acknowledges the client's sequence number
  CHECK(rig.tap.packets[0].ack == 101);
  // response appears service_time after the request (plus 320 ns on the wire)
  CHECK(rig.tap.at[1] == 12 * kMilli + 320);
}

TEST_CASE("service lanes bound concurrency: bursts drain in lane-sized waves") {
  ServerConfig cfg;
  cfg.service_time = 10 * kMilli;
  cfg.concurrency = 2;
  cfg.response_bytes = 40;
  Rig rig(cfg);
  for (std::uint32_t i = 0; i < 4; ++i) {
    rig.inject(0, syn_from(i + 1, 4000));
    rig.inject(kMicro, ack_from(i + 1, 4000));
    rig.inject(kMilli, request_from(i + 1, 4000));
  }
  rig.sim.run_until(kSecond);

  std::vector<SimTime> resp;
  for (std::size_t i = 0; i < rig.tap.packets.size(); ++i) {
    if (rig.tap.packets[i].kind == PacketKind::kResponse) resp.push_back(rig.tap.at[i]);
  }
  REQUIRE(resp.size() == 4);
  // two lanes finish at 11 ms, the other two queue behind them until 21 ms;
  // each response then serializes for 320 ns on the gigabit uplink
  CHECK(resp[0] == 11 * kMilli + 320);
  CHECK(resp[1] == 11 * kMilli + 640);
  CHECK(resp[2] == 21 * kMilli + 320);
  CHECK(resp[3] == 21 * kMilli + 640);
}

TEST_CASE("duplicate SYN is re-answered without consuming extra backlog") {
  ServerConfig cfg;
  cfg.backlog_capacity = 8;
  Rig rig(cfg);
  for (int i = 0; i < 5; ++i) rig.inject(kMilli * (i + 1), syn_from(1, 1234));
  rig.sim.run_until(100 * kMilli);

  CHECK(rig.server.stats().syns_received == 5);
  CHECK(rig.server.stats().synacks_sent == 5);  // every retransmit re-answered
  CHECK(rig.server.half_open_size() == 1);      // but only one table entry
  CHECK(rig.server.stats().backlog_drops == 0);
}

TEST_CASE("SYN for an already-established 4-tuple is ignored") {
  ServerConfig cfg;
  Rig rig(cfg);
  rig.inject(0, syn_from(9, 900));
  rig.inject(kMilli, ack_from(9, 900));
  rig.inject(2 * kMilli, syn_from(9, 900));
  rig.sim.run_until(kSecond);
  CHECK(rig.server.stats().established == 1);
  CHECK(rig.server.stats().synacks_sent == 1);
  CHECK(rig.server.half_open_size() == 0);
}

TEST_CASE("ACK with no matching half-open entry does nothing") {
  ServerConfig cfg;
  Rig rig(cfg);
  rig.inject(0, ack_from(77, 7777));
  rig.sim.run_until(kMilli);
  CHECK(rig.server.stats().established == 0);
}

TEST_CASE("request from a non-established peer is ignored") {
  ServerConfig cfg;
  Rig rig(cfg);
  rig.inject(0, request_from(5, 50));
  rig.sim.run_until(kSecond);
  CHECK(rig.server.stats().responses_sent == 0);
}

TEST_CASE("a reaped expiry timer never kills a successor entry from the same peer") {
  ServerConfig cfg;
  cfg.half_open_timeout = 100 * kMilli;
  cfg.service_time = 2 * kMilli;
  Rig rig(cfg);
  // first connection completes fully, then the same 4-tuple reconnects
  rig.inject(0, syn_from(3, 300));
  rig.inject(10 * kMilli, ack_from(3, 300));
  rig.inject(11 * kMilli, request_from(3, 300));
  rig.inject(20 * kMilli, syn_from(3, 300));  // second connection's SYN

  // the first SYN's timer fires at 100 ms; the second entry (admitted at
  // 20 ms) must survive it and expire on its own schedule at 120 ms
  rig.sim.run_until(101 * kMilli);
  CHECK(rig.server.half_open_size() == 1);
  rig.sim.run_until(121 * kMilli);
  CHECK(rig.server.half_open_size() == 0);
}

TEST_CASE("backlog mode never amplifies: one SYN in, at most one SYN-ACK out") {
  ServerConfig cfg;
  cfg.backlog_capacity = 20;
  Rig rig(cfg);
  // 50 peers x 6 SYNs each; only 20 peers fit in the table
  SimTime t = 0;
  for (int round = 0; round < 6; ++round) {
    for (std::uint32_t peer = 0; peer < 50; ++peer) {
      rig.inject(t, syn_from(peer + 1, 6000));
      t += kMicro;
    }
  }
  rig.sim.run_until(kSecond);

  const auto& st = rig.server.stats();
  CHECK(st.syns_received == 300);
  CHECK(st.synacks_sent == 20 + 20 * 5);  // admits + duplicate re-answers
  CHECK(st.backlog_drops == 30 * 6);
  CHECK(st.synacks_sent <= st.syns_received);
  CHECK(st.synacks_sent + st.backlog_drops == st.syns_received);
}

TEST_CASE("cookie mode answers every SYN and keeps no pre-ACK state") {
  ServerConfig cfg;
  cfg.mode = ServerMode::kSynCookies;
  cfg.backlog_capacity = 16;  // must be irrelevant in cookie mode
  Rig rig(cfg);
  for (std::uint32_t i = 0; i < 500; ++i) {
    rig.inject(kMicro * i, syn_from(0x0b000000 + i, 1000 + (i % 7)));
  }
  rig.sim.run_until(kSecond);

  CHECK(rig.server.stats().syns_received == 500);
  CHECK(rig.server.stats().synacks_sent == 500);
  CHECK(rig.server.stats().backlog_drops == 0);
  CHECK(rig.server.half_open_size() == 0);
  CHECK(rig.tap.count(PacketKind::kSynAck) == 500);
}

TEST_CASE("cookie encoding is serial CPU: a SYN burst drains at cookie_cpu per packet") {
  ServerConfig cfg;
  cfg.mode = ServerMode::kSynCookies;
  cfg.cookie_cpu = 5 * kMicro;
  Rig rig(cfg);
  for (std::uint32_t i = 0; i < 10; ++i) rig.inject(0, syn_from(i + 1, 1));
  rig.sim.run_until(kSecond);

  REQUIRE(rig.tap.at.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    // i-th cookie finishes at (i+1) * 5 us, then 320 ns serialization
    CHECK(rig.tap.at[i] == (i + 1) * 5 * kMicro + 320);
  }
}

TEST_CASE("cookie round trip: echoing the cookie establishes, anything else is rejected") {
  ServerConfig cfg;
  cfg.mode = ServerMode::kSynCookies;
  Rig rig(cfg);
  rig.inject(0, syn_from(12, 1200));
  rig.sim.run_until(kMilli);
  REQUIRE(rig.tap.packets.size() == 1);
  const std::uint32_t cookie = rig.tap.packets[0].seq;

  rig.inject(2 * kMilli, ack_from(12, 1200, cookie + 1));      // correct echo
  rig.inject(3 * kMilli, ack_from(12, 1200, cookie + 12345));  // corrupted echo
  rig.inject(4 * kMilli, ack_from(13, 1200, cookie + 1));      // right cookie, wrong peer
  rig.sim.run_until(kSecond);

  CHECK(rig.server.stats().established == 1);
  CHECK(rig.server.stats().cookie_rejects == 2);
}

TEST_CASE("cookie from the previous time bucket is still accepted, older ones are not") {
  ServerConfig cfg;
  cfg.mode = ServerMode::kSynCookies;
  cfg.bucket_width = 64 * kSecond;
  Rig rig(cfg);
  // SYN lands late in bucket 0; the ACK returns early in bucket 1
  rig.inject(from_s(63.9), syn_from(21, 2100));
  rig.sim.run_until(from_s(63.95));
  REQUIRE(rig.tap.packets.size() == 1);
  const std::uint32_t cookie = rig.tap.packets[0].seq;

  rig.inject(from_s(64.1), ack_from(21, 2100, cookie + 1));
  rig.sim.run_until(from_s(65));
  CHECK(rig.server.stats().established == 1);
  CHECK(rig.server.stats().cookie_rejects == 0);

  // two buckets later the same cookie has aged out
  rig.inject(from_s(128.1), ack_from(21, 2100, cookie + 1));
  rig.sim.run_until(from_s(129));
  CHECK(rig.server.stats().cookie_rejects == 1);
}

}  // namespace
