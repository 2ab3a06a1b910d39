#include <benchmark/benchmark.h>

#include "synpow/link.hpp"
#include "synpow/packet.hpp"
#include "synpow/rng.hpp"
#include "synpow/sim.hpp"

namespace {

using namespace synpow;

// raw event loop: schedule/fire churn at a given pending-queue depth
void bm_event_churn(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  Simulator sim;
  RngStream rng(1, "bench");
  SimTime t = 1;
  std::uint64_t fired = 0;
  auto tick = [&]() { ++fired; };
  for (int i = 0; i < depth; ++i) {
    sim.schedule(t + (rng.next_u32() % 1000), tick);
  }
  for (auto _ : state) {
    t += 1000;
    for (int i = 0; i < 64; ++i) sim.schedule(t + (rng.next_u32() % 1000), tick);
    sim.run_until(t);
  }
  benchmark::DoNotOptimize(fired);
  state.counters["events/op"] = benchmark::Counter(
      static_cast<double>(sim.processed()), benchmark::Counter::kAvgIterations);
}
BENCHMARK(bm_event_churn)->Arg(64)->Arg(4096);

struct CountingSink final : Node {
  using Node::Node;
  std::uint64_t got = 0;
  void on_packet(const Packet&, Node&) override { ++got; }
};

// full channel path: serialization, queueing and delivery per packet
void bm_channel_delivery(benchmark::State& state) {
  Simulator sim;
  CountingSink a("a"), b("b");
  ChannelConfig cfg;
  cfg.bandwidth_bps = 1'000'000'000;
  cfg.queue_capacity = 1 << 20;
  Channel ch(sim, cfg, &a, &b, "bench");
  Packet p;
  p.kind = PacketKind::kSyn;
  p.size_bytes = 60;
  SimTime t = 0;
  for (auto _ : state) {
    for (int i = 0; i < 64; ++i) ch.transmit(p);
    t += kSecond;
    sim.run_until(t);
  }
  benchmark::DoNotOptimize(b.got);
}
BENCHMARK(bm_channel_delivery);

}  // namespace

BENCHMARK_MAIN();
