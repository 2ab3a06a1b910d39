#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synpow/pow.hpp"
#include "synpow/prefix.hpp"
#include "synpow/sim_time.hpp"

namespace synpow {

struct ControllerParams {
  SimTime window = kSecond;      // telemetry pull / decision interval
  double theta = 5.0;            // detect when rate > theta * baseline
  double beta = 2.0;             // clear when rate < beta * baseline
  int tau_detect = 3;            // consecutive over-threshold windows to act
  int tau_clear = 10;            // consecutive calm windows to retract
  double alpha = 0.1;            // EWMA weight of the newest sample
  Difficulty d_default{1};
  Difficulty d_min{5};
  Difficulty d_max{26};
  double drop_target = 0.95;     // required expected early-drop of attack SYNs
  double attacker_hash_rate = 2e8;  // assumed aggregate attacker compute
  int max_installs_per_sec = 10;
  bool naive_drop_model = false;  // ignore the attacker compute budget
};

struct DeviceClassInfo {
  std::string name;
  double hash_rate = 2e8;   // legitimate client compute
  double solve_budget_s = 1.0;  // acceptable expected solve latency
};

enum class PrefixMode : std::uint8_t { kNormal, kElevated };

struct TelemetrySample {
  Ipv4Prefix prefix;
  std::uint64_t syn_count = 0;
  std::uint64_t drop_count = 0;
};

enum class CommandKind : std::uint8_t { kInstall, kRetract };

struct Command {
  CommandKind kind = CommandKind::kInstall;
  std::string switch_name;
  Ipv4Prefix prefix;       // rule prefix (catch-all for spoofed floods)
  Ipv4Prefix scope;        // monitored prefix the decision was made for
  Difficulty difficulty{0};
  SimTime issued_at = 0;
};

// one line of the decision log, appended every window for every prefix
struct DecisionRecord {
  SimTime window_start = 0;
  Ipv4Prefix prefix;
  double syn_rate = 0;
  double baseline = 0;
  int over_count = 0;
  int under_count = 0;
  PrefixMode mode = PrefixMode::kNormal;
  std::optional<Difficulty> selected;  // set when an install was decided
  bool infeasible = false;             // no difficulty met both constraints
  bool deferred = false;               // install decided but rate-capped
};

// Control logic only: consumes per-window telemetry, keeps per-prefix EWMA
// baselines and mode state, and emits install/retract commands. Transport
// (pull latency, install latency, advisories) is the harness's concern.
class Controller {
 public:
  Controller(ControllerParams params,
             std::map<std::string, DeviceClassInfo> device_classes)
      : params_(params), device_classes_(std::move(device_classes)) {}

  void register_prefix(const Ipv4Prefix& prefix, const std::string& ingress_switch,
                       const std::string& device_class);

  // Expected fraction of attack SYNs dropped at difficulty d, given the
  // attacker's total hash budget and observed SYN rate. The naive model
  // assumes attackers guess nonces blindly; the budget model assumes they
  // spend their compute solving as many puzzles as it affords.
  static double early_drop_expected(double attacker_hash_rate, double attack_syn_rate,
                                    Difficulty d, bool naive_model);

  // Smallest difficulty in [d_min, d_max] meeting the drop target that the
  // class's devices can still solve inside their latency budget.
  std::optional<Difficulty> select_difficulty(const DeviceClassInfo& cls,
                                              double attack_syn_rate) const;

  // One decision round over the window that just ended. Returns the
  // commands cleared for issue this round (rate cap applied, FIFO).
  std::vector<Command> step(SimTime window_start,
                            const std::vector<TelemetrySample>& samples);

  const std::vector<DecisionRecord>& decisions() const { return decisions_; }
  std::uint64_t installs_issued() const { return installs_issued_; }
  std::uint64_t retracts_issued() const { return retracts_issued_; }
  PrefixMode mode_of(const Ipv4Prefix& prefix) const;

 private:
  struct PrefixState {
    std::string ingress_switch;
    std::string device_class;
    double baseline = -1;  // EWMA of calm-window SYN rate; <0 until seeded
    int over_count = 0;
    int under_count = 0;
    PrefixMode mode = PrefixMode::kNormal;
    Difficulty installed{0};
  };

  ControllerParams params_;
  std::map<std::string, DeviceClassInfo> device_classes_;
  std::map<Ipv4Prefix, PrefixState, Ipv4PrefixLess> prefixes_;
  std::deque<Command> deferred_;
  std::vector<DecisionRecord> decisions_;
  std::uint64_t installs_issued_ = 0;
  std::uint64_t retracts_issued_ = 0;
};

}  // namespace synpow
