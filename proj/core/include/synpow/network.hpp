#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "synpow/attack.hpp"
#include "synpow/client.hpp"
#include "synpow/controller.hpp"
#include "synpow/edge_switch.hpp"
#include "synpow/link.hpp"
#include "synpow/metrics.hpp"
#include "synpow/routing.hpp"
#include "synpow/scenario.hpp"
#include "synpow/server.hpp"
#include "synpow/sim.hpp"

namespace synpow {

// fingerprint of everything that must match for phases to be comparable
// (topology, workload, hashing, timing grid — not defense or attack)
std::uint64_t config_digest(const ScenarioConfig& cfg);

// One concrete simulation instance: a scenario expanded into nodes, links,
// and (when active) the controller loop and attackers. Phase semantics are
// the caller's: `defense_active` gates switch verification, client solving
// and the controller; `attack_active` gates attacker emission.
class Network {
 public:
  Network(const ScenarioConfig& cfg, bool defense_active, bool attack_active,
          std::uint64_t seed);

  void run();  // advances the simulation to the configured duration

  // metrics for the measurement window; identity fields are left blank for
  // the caller to stamp
  RunMetrics collect() const;

  Simulator& sim() { return sim_; }
  ServerNode& server() { return *server_; }
  Controller* controller() { return controller_ ? controller_.get() : nullptr; }
  EdgeSwitch* switch_of(const std::string& lan_name);
  const std::vector<std::unique_ptr<ClientNode>>& clients() const { return clients_; }
  const std::vector<std::unique_ptr<AttackerNode>>& attackers() const {
    return attackers_;
  }
  SinkNode& sink() { return *sink_; }
  std::optional<SimTime> first_install_at() const { return first_install_at_; }

 private:
  void build_hosts(const LanSpec& lan, EdgeSwitch* sw);
  Link* wire_host(Node* host, std::uint32_t ip, EdgeSwitch* sw, const LinkSpec& access,
                  const std::string& label);
  void controller_tick();
  void apply_command(const Command& cmd);
  void publish_advisory(const std::string& switch_name);

  ScenarioConfig cfg_;
  bool defense_active_;
  bool attack_active_;
  std::uint64_t seed_;

  Simulator sim_;
  std::vector<std::unique_ptr<Link>> links_;
  std::vector<std::unique_ptr<EdgeSwitch>> switches_;
  std::vector<std::unique_ptr<Router>> routers_;
  std::vector<std::unique_ptr<ClientNode>> clients_;
  std::vector<std::unique_ptr<AttackerNode>> attackers_;
  std::unique_ptr<ServerNode> server_;
  std::unique_ptr<SinkNode> sink_;
  std::unique_ptr<Controller> controller_;

  std::map<std::string, EdgeSwitch*> switch_by_name_;
  std::map<std::string, std::vector<ClientNode*>> clients_by_switch_;
  std::map<std::string, std::string> lan_of_switch_;
  std::map<std::string, std::string> lan_of_client_;
  std::map<std::string, Ipv4Prefix> prefix_of_lan_;
  std::map<std::string, Difficulty> advised_by_switch_;
  std::uint64_t telemetry_pulls_ = 0;
  std::optional<SimTime> first_install_at_;
  SimTime horizon_ = 0;
};

}  // namespace synpow
