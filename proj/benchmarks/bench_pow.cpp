#include <benchmark/benchmark.h>

#include "synpow/pow.hpp"

namespace {

using namespace synpow;

const PuzzleInput kInput{0x0a020064u, 0x0a010064u, 51234, 443, 7};

void bm_superfasthash_digest(benchmark::State& state) {
  std::uint32_t nonce = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        puzzle_digest(kInput, nonce++, HashBackend::kSuperFast32));
  }
}
BENCHMARK(bm_superfasthash_digest);

void bm_crypto_digest(benchmark::State& state) {
  std::uint32_t nonce = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        puzzle_digest(kInput, nonce++, HashBackend::kCryptoTrunc32));
  }
}
BENCHMARK(bm_crypto_digest);

void bm_solve(benchmark::State& state) {
  const Difficulty d{static_cast<std::uint8_t>(state.range(0))};
  std::uint32_t start = 0;
  std::uint64_t trials = 0;
  for (auto _ : state) {
    auto r = solve(kInput, d, HashBackend::kSuperFast32, start);
    trials += r.trials;
    start = r.nonce + 1;
  }
  state.counters["trials/op"] =
      benchmark::Counter(static_cast<double>(trials),
                         benchmark::Counter::kAvgIterations);
}
BENCHMARK(bm_solve)->Arg(8)->Arg(12)->Arg(16);

void bm_verify(benchmark::State& state) {
  const auto sol = solve(kInput, Difficulty{12}, HashBackend::kSuperFast32, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify(kInput.src_ip, kInput.dst_ip, kInput.src_port,
                                    kInput.dst_port, sol.nonce, Difficulty{12},
                                    HashBackend::kSuperFast32,
                                    7 * kDefaultBucketWidth));
  }
}
BENCHMARK(bm_verify);

}  // namespace

BENCHMARK_MAIN();
