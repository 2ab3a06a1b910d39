#include <doctest.h>

#include <vector>

#include "synpow/link.hpp"
#include "synpow/sim.hpp"

namespace {

using namespace synpow;

struct Recorder : Node {
  using Node::Node;
  std::vector<Packet> packets;
  void on_packet(const Packet& pkt, Node& /*from*/) override { packets.push_back(pkt); }
};

// Recorder that also captures the simulation clock at delivery.
struct TimedSink : Node {
  explicit TimedSink(Simulator& sim) : Node("sink"), sim_(sim) {}
  Simulator& sim_;
  std::vector<SimTime> at;
  std::vector<Packet> packets;
  void on_packet(const Packet& pkt, Node& /*from*/) override {
    at.push_back(sim_.now());
    packets.push_back(pkt);
  }
};

TEST_CASE("events run in timestamp order regardless of insertion order") {
  Simulator sim;
  std::vector<int> order;
  sim.schedule(30, [&]() { order.push_back(3); });
  sim.schedule(10, [&]() { order.push_back(1); });
  sim.schedule(20, [&]() { order.push_back(2); });
  sim.run_until(100);
  CHECK(order == std::vector<int>{1, 2, 3});
  CHECK(sim.now() == 100);
  CHECK(sim.idle());
}

TEST_CASE("same-timestamp events fire in insertion (FIFO) order") {
  Simulator sim;
  std::vector<int> order;
  for (int i = 0; i < 16; ++i) {
    sim.schedule(5, [&order, i]() { order.push_back(i); });
  }
  sim.run_until(5);
  REQUIRE(order.size() == 16);
  for (int i = 0; i < 16; ++i) CHECK(order[i] == i);
}

TEST_CASE("scheduling before the current time throws") {
  Simulator sim;
  sim.schedule(50, []() {});
  sim.run_until(50);
  CHECK_THROWS_AS(sim.schedule(49, []() {}), SchedulingInPast);
  CHECK_NOTHROW(sim.schedule(50, []() {}));  // same instant is allowed
}

TEST_CASE("run_until horizon is inclusive and parks the clock") {
  Simulator sim;
  int fired = 0;
  sim.schedule(100, [&]() { ++fired; });
  sim.schedule(101, [&]() { ++fired; });
  sim.run_until(100);
  CHECK(fired == 1);
  CHECK(sim.now() == 100);
  CHECK(sim.pending() == 1);
  sim.run_until(101);
  CHECK(fired == 2);
}

TEST_CASE("schedule_in is relative to the current event time") {
  Simulator sim;
  SimTime second_fire = 0;
  sim.schedule(40, [&]() {
    sim.schedule_in(5, [&]() { second_fire = sim.now(); });
  });
  sim.run_until(1000);
  CHECK(second_fire == 45);
}

TEST_CASE("events scheduled while running are honored in order") {
  Simulator sim;
  std::vector<int> order;
  sim.schedule(10, [&]() {
    order.push_back(1);
    sim.schedule(10, [&]() { order.push_back(2); });  // same instant, runs after
    sim.schedule(15, [&]() { order.push_back(4); });
  });
  sim.schedule(12, [&]() { order.push_back(3); });
  sim.run_until(20);
  CHECK(order == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("channel delivery = serialization + propagation") {
  Simulator sim;
  Recorder src("src");
  TimedSink dst(sim);
  ChannelConfig cfg;
  cfg.bandwidth_bps = 100'000'000;  // 1000 B -> 80 us
  cfg.prop_delay = kMilli;
  Channel ch(sim, cfg, &src, &dst, "t");

  Packet p;
  p.size_bytes = 1000;
  ch.transmit(p);
  sim.run_until(10 * kMilli);

  REQUIRE(dst.at.size() == 1);
  CHECK(dst.at[0] == 80 * kMicro + kMilli);
  CHECK(ch.serialization_delay(1000) == 80 * kMicro);
  CHECK(ch.stats().offered == 1);
  CHECK(ch.stats().delivered == 1);
  CHECK(ch.stats().dropped == 0);
}

TEST_CASE("queue capacity counts waiting packets, not the one serializing") {
  Simulator sim;
  Recorder src("src");
  TimedSink dst(sim);
  ChannelConfig cfg;
  cfg.bandwidth_bps = 100'000'000;
  cfg.prop_delay = kMilli;
  cfg.queue_capacity = 1;
  Channel ch(sim, cfg, &src, &dst, "t");

  Packet p;
  p.size_bytes = 1000;
  ch.transmit(p);  // serializes [0, 80us)
  ch.transmit(p);  // waits (1 queued)
  ch.transmit(p);  // queue full -> dropped
  sim.run_until(10 * kMilli);

  REQUIRE(dst.at.size() == 2);
  CHECK(dst.at[0] == 80 * kMicro + kMilli);
  CHECK(dst.at[1] == 160 * kMicro + kMilli);  // back-to-back serialization
  CHECK(ch.stats().offered == 3);
  CHECK(ch.stats().delivered == 2);
  CHECK(ch.stats().dropped == 1);
}

TEST_CASE("a burst into a bounded queue delivers exactly capacity + 1") {
  Simulator sim;
  Recorder src("src");
  TimedSink dst(sim);
  ChannelConfig cfg;
  cfg.bandwidth_bps = 1'000'000;
  cfg.prop_delay = 0;
  cfg.queue_capacity = 10;
  Channel ch(sim, cfg, &src, &dst, "t");

  Packet p;
  p.size_bytes = 125;  // 1 ms each at 1 Mb/s
  for (int i = 0; i < 1000; ++i) ch.transmit(p);
  sim.run_until(kSecond);

  CHECK(dst.at.size() == 11);  // 1 serializing + 10 waiting
  CHECK(ch.stats().dropped == 989);
  // deliveries drain at exactly the serialization period
  for (std::size_t i = 0; i < dst.at.size(); ++i) {
    CHECK(dst.at[i] == static_cast<SimTime>(i + 1) * kMilli);
  }
}

TEST_CASE("offers paced at the serialization period never drop") {
  Simulator sim;
  Recorder src("src");
  TimedSink dst(sim);
  ChannelConfig cfg;
  cfg.bandwidth_bps = 1'000'000;
  cfg.prop_delay = 0;
  cfg.queue_capacity = 0;  // zero waiting room: any overlap would drop
  Channel ch(sim, cfg, &src, &dst, "t");

  Packet p;
  p.size_bytes = 125;
  for (int i = 0; i < 100; ++i) {
    ch.transmit_at(p, static_cast<SimTime>(i) * kMilli);
  }
  sim.run_until(kSecond);
  CHECK(dst.at.size() == 100);
  CHECK(ch.stats().dropped == 0);
}

TEST_CASE("future-dated offers preserve exact departure times") {
  Simulator sim;
  Recorder src("src");
  TimedSink dst(sim);
  ChannelConfig cfg;
  cfg.bandwidth_bps = 1'000'000'000;  // 40 B -> 320 ns
  cfg.prop_delay = kMicro;
  Channel ch(sim, cfg, &src, &dst, "t");

  Packet p;
  p.size_bytes = 40;
  ch.transmit_at(p, 100 * kMicro);
  ch.transmit_at(p, 250 * kMicro);
  sim.run_until(kSecond);

  REQUIRE(dst.at.size() == 2);
  CHECK(dst.at[0] == 100 * kMicro + 320 + kMicro);
  CHECK(dst.at[1] == 250 * kMicro + 320 + kMicro);
}

TEST_CASE("delivered packets cost one event each; drops cost none") {
  Simulator sim;
  Recorder src("src");
  TimedSink dst(sim);
  ChannelConfig cfg;
  cfg.bandwidth_bps = 1'000'000;
  cfg.prop_delay = 0;
  cfg.queue_capacity = 1;
  Channel ch(sim, cfg, &src, &dst, "t");

  Packet p;
  p.size_bytes = 125;
  for (int i = 0; i < 50; ++i) ch.transmit(p);
  sim.run_until(kSecond);

  CHECK(dst.at.size() == 2);
  CHECK(sim.processed() == 2);  // exactly one delivery event per delivered packet
}

TEST_CASE("link wires two named half-duplex channels") {
  Simulator sim;
  Recorder a("a");
  Recorder b("b");
  ChannelConfig up;
  ChannelConfig down;
  Link link(sim, &a, &b, up, down, "access");
  CHECK(link.toward_b().label() == "access:a>b");
  CHECK(link.toward_a().label() == "access:b>a");
  CHECK(link.toward_b().destination() == &b);
  CHECK(link.toward_a().destination() == &a);
}

}  // namespace
