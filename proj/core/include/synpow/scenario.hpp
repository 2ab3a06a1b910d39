#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synpow/attack.hpp"
#include "synpow/controller.hpp"
#include "synpow/link.hpp"
#include "synpow/pow.hpp"
#include "synpow/prefix.hpp"
#include "synpow/sim_time.hpp"

namespace synpow {

// both directions of a link; "up" points toward the server/core
struct LinkSpec {
  ChannelConfig up;
  ChannelConfig down;
};

struct LanSpec {
  std::string name;        // "A", "B", ...
  Ipv4Prefix prefix;       // client/attacker addresses are allocated from it
  int clients = 0;
  int attackers = 0;
  std::string device_class = "laptop";
  LinkSpec access;         // each host <-> LAN switch
  LinkSpec uplink;         // LAN switch <-> LAN router
  LinkSpec core;           // LAN router <-> hub router (ignored for the hub LAN)
};

struct ServerSpec {
  std::uint32_t ip = 0;
  std::uint16_t port = 443;
  std::string lan;         // LAN whose switch the server hangs off (the hub)
  LinkSpec access;         // asymmetric in the reference scenario
  std::size_t backlog_capacity = 8192;
  double half_open_timeout_s = 0.6;
  double half_open_jitter_s = 0.0;
  double cookie_cpu_s = 5e-6;
  double cookie_cpu_jitter_s = 0.0;
};

struct WorkloadSpec {
  std::uint32_t request_bytes = 140;
  std::uint32_t response_bytes = 1064;
  double timeout_s = 1.0;
  double service_time_s = 0.002;
  int server_concurrency = 8;
  double client_start_stagger_s = 0.05;  // uniform start jitter per client
  double think_jitter_s = 0.002;         // uniform pause cap between transactions
};

struct PowSpec {
  HashBackend backend = HashBackend::kSuperFast32;
  double bucket_width_s = 64.0;
};

enum class DefenseMode : std::uint8_t { kNone, kSynCookies, kStaticPow, kAdaptivePow };

struct DefenseSpec {
  DefenseMode mode = DefenseMode::kNone;
  Difficulty static_d{26};
  bool advisory = true;            // publish installed difficulty to the LAN's clients
  double advisory_latency_s = 0.2;
  double install_latency_s = 0.01;
  std::vector<std::uint8_t> ladder = {1, 16};  // client fallback when no advisory
  ControllerParams controller;     // window/thresholds; delta_t given in seconds
  std::map<std::string, double> t_budget_by_class = {{"laptop", 1.0}};
};

struct AttackSpec {
  AttackVariant variant = AttackVariant::kNone;
  double rate = 0;  // aggregate packets/s (curl: connections/s), split across attackers
  double start_at = 15.0;
  std::optional<double> stop_at;  // absent: attack runs to the end
  AttackSpacing spacing = AttackSpacing::kPoisson;
  NoncePolicy nonce_policy = NoncePolicy::kZero;
  std::optional<Ipv4Prefix> spoof_space;  // absent: full 32-bit space
  int attacker_solves_at = -1;
  double attacker_hash_rate = 2e8;
  double curl_abandon_s = 0.1;
};

struct DeviceClassSpec {
  double hash_rate = 2e8;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  int runs = 5;
  double duration_s = 120.0;
  double warmup_s = 10.0;
  double scale = 1.0;
  PowSpec pow;
  std::vector<LanSpec> lans;
  ServerSpec server;
  LinkSpec sink_link;  // hub router <-> absorber for unroutable replies
  WorkloadSpec workload;
  std::map<std::string, DeviceClassSpec> device_classes = {{"laptop", {2e8}}};
  DefenseSpec defense;
  AttackSpec attack;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Parses the JSON scenario description. Unknown keys are rejected and every
// problem is reported with the offending field's path.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario_file(const std::string& path);

// full consistency check; throws ValidationError listing every violation
void validate(const ScenarioConfig& cfg);

// Uniform time dilation: rates are multiplied by `factor` and every
// duration, delay, timeout and window divided by it, so queue occupancies,
// loss ratios and success probabilities are preserved exactly and only the
// simulated wall span changes.
ScenarioConfig apply_scale(ScenarioConfig cfg);

std::string defense_mode_name(DefenseMode mode);
std::string attack_variant_name(AttackVariant variant);

}  // namespace synpow
