#include <doctest.h>

#include <map>
#include <string>
#include <vector>

#include "synpow/controller.hpp"
#include "synpow/prefix.hpp"

namespace {

using namespace synpow;
using doctest::Approx;

const Ipv4Prefix kLanA = Ipv4Prefix::parse("10.1.0.0/16");
const Ipv4Prefix kLanB = Ipv4Prefix::parse("10.2.0.0/16");

std::map<std::string, DeviceClassInfo> classes() {
  return {
      {"laptop", {"laptop", 2e8, 1.0}},
      {"iot", {"iot", 1e6, 0.01}},
  };
}

// one telemetry round with a single monitored prefix
std::vector<Command> feed(Controller& ctl, SimTime w, const Ipv4Prefix& p,
                          std::uint64_t count) {
  return ctl.step(w, {TelemetrySample{p, count, 0}});
}

TEST_CASE("the first sample seeds the baseline instead of ramping an EWMA from zero") {
  Controller ctl(ControllerParams{}, classes());
  ctl.register_prefix(kLanA, "sw1", "laptop");

  auto cmds = feed(ctl, 0, kLanA, 100);
  CHECK(cmds.empty());
  REQUIRE(ctl.decisions().size() == 1);
  CHECK(ctl.decisions()[0].baseline == Approx(100.0));
  CHECK(ctl.decisions()[0].mode == PrefixMode::kNormal);

  // second calm window: EWMA with alpha = 0.1
  feed(ctl, kSecond, kLanA, 80);
  CHECK(ctl.decisions()[1].baseline == Approx(0.1 * 80 + 0.9 * 100));
}

TEST_CASE("the baseline learns from calm windows only, never from attack traffic") {
  Controller ctl(ControllerParams{}, classes());
  ctl.register_prefix(kLanA, "sw1", "laptop");
  feed(ctl, 0, kLanA, 100);  // baseline = 100

  SimTime w = kSecond;
  for (int i = 0; i < 5; ++i, w += kSecond) {
    feed(ctl, w, kLanA, 350'000);  // far over theta * baseline
    CHECK(ctl.decisions().back().baseline == Approx(100.0));
  }
  CHECK(ctl.mode_of(kLanA) == PrefixMode::kElevated);  // detected meanwhile
}

TEST_CASE("detection requires tau_detect consecutive hot windows; a calm one resets") {
  Controller ctl(ControllerParams{}, classes());  // tau_detect = 3
  ctl.register_prefix(kLanA, "sw1", "laptop");
  feed(ctl, 0 * kSecond, kLanA, 100);

  CHECK(feed(ctl, 1 * kSecond, kLanA, 350'000).empty());  // over #1
  CHECK(feed(ctl, 2 * kSecond, kLanA, 350'000).empty());  // over #2
  CHECK(feed(ctl, 3 * kSecond, kLanA, 100).empty());      // calm: streak resets
  CHECK(feed(ctl, 4 * kSecond, kLanA, 350'000).empty());  // over #1 again
  CHECK(feed(ctl, 5 * kSecond, kLanA, 350'000).empty());  // over #2
  auto cmds = feed(ctl, 6 * kSecond, kLanA, 350'000);     // over #3 -> act
  REQUIRE(cmds.size() == 1);
  CHECK(ctl.mode_of(kLanA) == PrefixMode::kElevated);
}

TEST_CASE("an install targets the ingress switch with a catch-all rule") {
  Controller ctl(ControllerParams{}, classes());
  ctl.register_prefix(kLanA, "sw1", "laptop");
  feed(ctl, 0, kLanA, 100);
  std::vector<Command> cmds;
  for (int i = 1; i <= 3; ++i) cmds = feed(ctl, i * kSecond, kLanA, 350'000);

  REQUIRE(cmds.size() == 1);
  const Command& cmd = cmds[0];
  CHECK(cmd.kind == CommandKind::kInstall);
  CHECK(cmd.switch_name == "sw1");
  CHECK(cmd.prefix == Ipv4Prefix{});  // spoofed sources defeat prefix scoping
  CHECK(cmd.scope == kLanA);          // but the decision tracks the monitored LAN
  CHECK(cmd.issued_at == 4 * kSecond);
  // smallest d with 1 - 2e8 / (350k * 2^d) >= 0.95 that a laptop solves in budget
  CHECK(cmd.difficulty == Difficulty{14});
}

TEST_CASE("expected early-drop closed forms") {
  // no work requirement filters nothing
  CHECK(Controller::early_drop_expected(2e8, 350'000, Difficulty{0}, false) == 0.0);
  CHECK(Controller::early_drop_expected(2e8, 350'000, Difficulty{0}, true) == 0.0);

  // naive model: blind guesses pass with probability 2^-d
  CHECK(Controller::early_drop_expected(0, 0, Difficulty{1}, true) == Approx(0.5));
  CHECK(Controller::early_drop_expected(0, 0, Difficulty{10}, true) ==
        Approx(1.0 - 1.0 / 1024.0));

  // budget model: attacker compute covers hash_rate / (rate * 2^d) of the flood
  CHECK(Controller::early_drop_expected(2e8, 350'000, Difficulty{14}, false) ==
        Approx(1.0 - 2e8 / (350'000.0 * 16384.0)));
  CHECK(Controller::early_drop_expected(2e8, 350'000, Difficulty{13}, false) ==
        Approx(1.0 - 2e8 / (350'000.0 * 8192.0)));
  // enough compute to cover the whole stream -> nothing dropped
  CHECK(Controller::early_drop_expected(2e8, 100, Difficulty{5}, false) == 0.0);
  // degenerate rates: treat as fully filtered rather than dividing by zero
  CHECK(Controller::early_drop_expected(2e8, 0, Difficulty{5}, false) == 1.0);
  CHECK(Controller::early_drop_expected(0, 100, Difficulty{5}, false) == 1.0);
}

TEST_CASE("difficulty selection picks the smallest feasible level") {
  Controller ctl(ControllerParams{}, classes());
  const DeviceClassInfo laptop{"laptop", 2e8, 1.0};

  // 350 kpps: d=13 drops 93.0% (< 0.95), d=14 drops 96.5% -> 14
  auto d = ctl.select_difficulty(laptop, 350'000);
  REQUIRE(d.has_value());
  CHECK(*d == Difficulty{14});

  // a slower flood needs more work per SYN to starve the same budget
  d = ctl.select_difficulty(laptop, 35'000);
  REQUIRE(d.has_value());
  CHECK(*d == Difficulty{17});

  // constrained devices cannot afford the level the drop target demands
  const DeviceClassInfo iot{"iot", 1e6, 0.01};  // max affordable: 2^13 / 1e6 = 8.2 ms
  CHECK_FALSE(ctl.select_difficulty(iot, 350'000).has_value());
}

TEST_CASE("naive drop model ignores the attacker budget entirely") {
  ControllerParams p;
  p.naive_drop_model = true;  // 1 - 2^-d >= 0.95 -> d >= 5
  Controller ctl(p, classes());
  const DeviceClassInfo laptop{"laptop", 2e8, 1.0};
  auto d = ctl.select_difficulty(laptop, 350'000);
  REQUIRE(d.has_value());
  CHECK(*d == p.d_min);
}

TEST_CASE("infeasible drop target falls back to d_max and is flagged") {
  ControllerParams p;
  p.tau_detect = 1;
  Controller ctl(p, classes());
  ctl.register_prefix(kLanA, "sw1", "iot");
  feed(ctl, 0, kLanA, 100);
  auto cmds = feed(ctl, kSecond, kLanA, 350'000);

  REQUIRE(cmds.size() == 1);
  CHECK(cmds[0].difficulty == p.d_max);  // partial filtering beats none
  const DecisionRecord& rec = ctl.decisions().back();
  CHECK(rec.infeasible);
  REQUIRE(rec.selected.has_value());
  CHECK(*rec.selected == p.d_max);
}

TEST_CASE("clearing requires tau_clear consecutive calm windows") {
  ControllerParams p;
  p.tau_detect = 1;
  p.tau_clear = 4;
  Controller ctl(p, classes());
  ctl.register_prefix(kLanA, "sw1", "laptop");
  feed(ctl, 0, kLanA, 100);
  feed(ctl, 1 * kSecond, kLanA, 350'000);  // detect
  REQUIRE(ctl.mode_of(kLanA) == PrefixMode::kElevated);

  CHECK(feed(ctl, 2 * kSecond, kLanA, 100).empty());      // calm #1
  CHECK(feed(ctl, 3 * kSecond, kLanA, 100).empty());      // calm #2
  CHECK(feed(ctl, 4 * kSecond, kLanA, 350'000).empty());  // flare-up: streak resets
  CHECK(feed(ctl, 5 * kSecond, kLanA, 100).empty());      // calm #1
  CHECK(feed(ctl, 6 * kSecond, kLanA, 100).empty());      // calm #2
  CHECK(feed(ctl, 7 * kSecond, kLanA, 100).empty());      // calm #3
  auto cmds = feed(ctl, 8 * kSecond, kLanA, 100);         // calm #4 -> retract
  REQUIRE(cmds.size() == 1);
  CHECK(cmds[0].kind == CommandKind::kRetract);
  CHECK(cmds[0].prefix == Ipv4Prefix{});
  CHECK(cmds[0].scope == kLanA);
  CHECK(ctl.mode_of(kLanA) == PrefixMode::kNormal);
  CHECK(ctl.retracts_issued() == 1);
}

TEST_CASE("install rate cap defers overflow FIFO and drains it next round") {
  ControllerParams p;
  p.tau_detect = 1;
  p.max_installs_per_sec = 10;
  Controller ctl(p, classes());

  std::vector<Ipv4Prefix> lans;
  std::vector<TelemetrySample> calm, hot;
  for (int i = 0; i < 12; ++i) {
    Ipv4Prefix lan = Ipv4Prefix::parse("10." + std::to_string(i + 1) + ".0.0/16");
    ctl.register_prefix(lan, "sw" + std::to_string(i), "laptop");
    lans.push_back(lan);
    calm.push_back({lan, 100, 0});
    hot.push_back({lan, 350'000, 0});
  }

  ctl.step(0, calm);                      // seed all baselines
  auto cmds = ctl.step(kSecond, hot);     // 12 detections, budget 10
  CHECK(cmds.size() == 10);
  CHECK(ctl.installs_issued() == 10);
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    CHECK(cmds[i].scope == lans[i]);  // FIFO: first decided, first cleared
  }
  // the two held-back decisions are flagged in this window's records
  int flagged = 0;
  for (const auto& rec : ctl.decisions()) {
    if (rec.window_start == kSecond && rec.deferred) {
      ++flagged;
      CHECK((rec.prefix == lans[10] || rec.prefix == lans[11]));
    }
  }
  CHECK(flagged == 2);

  cmds = ctl.step(2 * kSecond, hot);  // still elevated: the backlog drains
  REQUIRE(cmds.size() == 2);
  CHECK(cmds[0].scope == lans[10]);
  CHECK(cmds[1].scope == lans[11]);
  CHECK(cmds[0].issued_at == 3 * kSecond);  // re-stamped when actually issued
  CHECK(ctl.installs_issued() == 12);
}

TEST_CASE("a deferred install is dropped if its scope has calmed down meanwhile") {
  ControllerParams p;
  p.tau_detect = 1;
  p.tau_clear = 1;
  p.max_installs_per_sec = 1;
  Controller ctl(p, classes());
  ctl.register_prefix(kLanA, "sw1", "laptop");
  ctl.register_prefix(kLanB, "sw2", "laptop");

  ctl.step(0, {{kLanA, 100, 0}, {kLanB, 100, 0}});
  auto cmds = ctl.step(kSecond, {{kLanA, 350'000, 0}, {kLanB, 350'000, 0}});
  REQUIRE(cmds.size() == 1);  // budget 1: A cleared, B deferred
  CHECK(cmds[0].scope == kLanA);

  // B calms down and clears before its install ever reached a switch
  cmds = ctl.step(2 * kSecond, {{kLanA, 350'000, 0}, {kLanB, 100, 0}});
  REQUIRE(cmds.size() == 1);
  CHECK(cmds[0].kind == CommandKind::kRetract);
  CHECK(cmds[0].scope == kLanB);
  CHECK(ctl.installs_issued() == 1);  // the stale deferral was discarded, not issued
}

TEST_CASE("retracts are never rate-capped") {
  ControllerParams p;
  p.tau_detect = 1;
  p.tau_clear = 1;
  p.max_installs_per_sec = 1;
  Controller ctl(p, classes());
  ctl.register_prefix(kLanA, "sw1", "laptop");
  ctl.register_prefix(kLanB, "sw2", "laptop");

  ctl.step(0, {{kLanA, 100, 0}, {kLanB, 100, 0}});
  CHECK(ctl.step(kSecond, {{kLanA, 350'000, 0}, {kLanB, 350'000, 0}}).size() == 1);
  CHECK(ctl.step(2 * kSecond, {{kLanA, 350'000, 0}, {kLanB, 350'000, 0}}).size() == 1);
  CHECK(ctl.installs_issued() == 2);

  // both clear in the same window: two retracts despite the 1/s install cap
  auto cmds = ctl.step(3 * kSecond, {{kLanA, 100, 0}, {kLanB, 100, 0}});
  REQUIRE(cmds.size() == 2);
  CHECK(cmds[0].kind == CommandKind::kRetract);
  CHECK(cmds[1].kind == CommandKind::kRetract);
  CHECK(ctl.retracts_issued() == 2);
}

TEST_CASE("samples for unregistered prefixes are ignored") {
  Controller ctl(ControllerParams{}, classes());
  ctl.register_prefix(kLanA, "sw1", "laptop");
  auto cmds = ctl.step(0, {{Ipv4Prefix::parse("172.16.0.0/12"), 1'000'000, 0}});
  CHECK(cmds.empty());
  CHECK(ctl.decisions().empty());
}

TEST_CASE("registering a prefix with an unknown device class throws") {
  Controller ctl(ControllerParams{}, classes());
  CHECK_THROWS_AS(ctl.register_prefix(kLanA, "sw1", "mainframe"), std::invalid_argument);
}

TEST_CASE("querying the mode of an unregistered prefix throws") {
  Controller ctl(ControllerParams{}, classes());
  CHECK_THROWS_AS(ctl.mode_of(kLanA), std::invalid_argument);
}

}  // namespace
