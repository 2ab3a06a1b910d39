#include "synpow/network.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace synpow {

namespace {

std::string host_name(const std::string& lan_name, const char* stem, int index) {
  std::string prefix = lan_name;
  std::transform(prefix.begin(), prefix.end(), prefix.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (*stem != '\0') prefix += stem;
  return prefix + std::to_string(index + 1);
}

void digest_channel(std::ostringstream& os, const ChannelConfig& ch) {
  os << ch.bandwidth_bps << ',' << ch.prop_delay << ',' << ch.queue_capacity << ';';
}

void digest_link(std::ostringstream& os, const LinkSpec& link) {
  digest_channel(os, link.up);
  digest_channel(os, link.down);
}

}  // namespace

std::uint64_t config_digest(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << cfg.name << '|' << cfg.duration_s << '|' << cfg.warmup_s << '|' << cfg.scale
     << '|' << static_cast<int>(cfg.pow.backend) << '|' << cfg.pow.bucket_width_s << '|';
  for (const LanSpec& lan : cfg.lans) {
    os << lan.name << ',' << lan.prefix.str() << ',' << lan.clients << ','
       << lan.attackers << ',' << lan.device_class << '|';
    digest_link(os, lan.access);
    digest_link(os, lan.uplink);
    digest_link(os, lan.core);
  }
  os << cfg.server.ip << ',' << cfg.server.port << ',' << cfg.server.lan << ','
     << cfg.server.backlog_capacity << ',' << cfg.server.half_open_timeout_s << ','
     << cfg.server.half_open_jitter_s << ',' << cfg.server.cookie_cpu_s << ','
     << cfg.server.cookie_cpu_jitter_s << '|';
  digest_link(os, cfg.server.access);
  digest_link(os, cfg.sink_link);
  os << cfg.workload.request_bytes << ',' << cfg.workload.response_bytes << ','
     << cfg.workload.timeout_s << ',' << cfg.workload.service_time_s << ','
     << cfg.workload.server_concurrency << ',' << cfg.workload.client_start_stagger_s
     << ',' << cfg.workload.think_jitter_s << '|';
  for (const auto& [name, cls] : cfg.device_classes) {
    os << name << '=' << cls.hash_rate << ';';
  }
  return fnv1a64(os.str());
}

Network::Network(const ScenarioConfig& cfg, bool defense_active, bool attack_active,
                 std::uint64_t seed)
    : cfg_(cfg),
      defense_active_(defense_active),
      attack_active_(attack_active),
      seed_(seed),
      horizon_(from_s(cfg.duration_s)) {
  const DefenseMode mode = defense_active_ ? cfg_.defense.mode : DefenseMode::kNone;
  const bool pow_defense =
      mode == DefenseMode::kStaticPow || mode == DefenseMode::kAdaptivePow;
  const Difficulty d_default = mode == DefenseMode::kStaticPow
                                   ? cfg_.defense.static_d
                                   : cfg_.defense.controller.d_default;
  const SimTime bucket_width = from_s(cfg_.pow.bucket_width_s);

  ServerConfig scfg;
  scfg.ip = cfg_.server.ip;
  scfg.port = cfg_.server.port;
  scfg.mode = mode == DefenseMode::kSynCookies
                  ? ServerMode::kSynCookies
                  : (pow_defense ? ServerMode::kPowAware : ServerMode::kPlainBacklog);
  scfg.backlog_capacity = cfg_.server.backlog_capacity;
  scfg.half_open_timeout = from_s(cfg_.server.half_open_timeout_s);
  scfg.half_open_jitter = from_s(cfg_.server.half_open_jitter_s);
  scfg.service_time = from_s(cfg_.workload.service_time_s);
  scfg.concurrency = cfg_.workload.server_concurrency;
  scfg.cookie_cpu = from_s(cfg_.server.cookie_cpu_s);
  scfg.cookie_cpu_jitter = from_s(cfg_.server.cookie_cpu_jitter_s);
  scfg.response_bytes = cfg_.workload.response_bytes;
  scfg.bucket_width = bucket_width;
  server_ = std::make_unique<ServerNode>(sim_, "server", scfg);
  server_->set_rng(RngStream(seed_, "server-reap"));
  sink_ = std::make_unique<SinkNode>("sink");

  // hub router first, so it is r0 whatever LAN hosts the server
  Router* hub = routers_.emplace_back(std::make_unique<Router>("r0")).get();

  EdgeSwitch* hub_switch = nullptr;
  struct LanWiring {
    const LanSpec* lan;
    EdgeSwitch* sw;
    Router* router;
  };
  std::vector<LanWiring> wirings;

  int router_index = 0;
  for (const LanSpec& lan : cfg_.lans) {
    const bool is_hub_lan = lan.name == cfg_.server.lan;
    auto sw = std::make_unique<EdgeSwitch>(sim_, "sw" + lan.name,
                                           pow_defense ? d_default : Difficulty{0},
                                           cfg_.pow.backend, bucket_width);
    sw->set_verify_enabled(pow_defense);
    EdgeSwitch* swp = switches_.emplace_back(std::move(sw)).get();
    switch_by_name_[swp->name()] = swp;
    lan_of_switch_[swp->name()] = lan.name;
    prefix_of_lan_[lan.name] = lan.prefix;

    Router* router = hub;
    if (!is_hub_lan) {
      ++router_index;
      router = routers_
                   .emplace_back(std::make_unique<Router>("r" + std::to_string(router_index)))
                   .get();
    } else {
      hub_switch = swp;
    }

    // switch <-> its router ("up" points at the router)
    Link* uplink = links_
                       .emplace_back(std::make_unique<Link>(sim_, swp, router,
                                                            lan.uplink.up, lan.uplink.down,
                                                            "uplink" + lan.name))
                       .get();
    swp->set_default_route(&uplink->toward_b());
    router->add_route(lan.prefix, &uplink->toward_a());

    if (!is_hub_lan) {
      Link* core = links_
                       .emplace_back(std::make_unique<Link>(sim_, router, hub, lan.core.up,
                                                            lan.core.down, "core" + lan.name))
                       .get();
      router->set_default_route(&core->toward_b());
      hub->add_route(lan.prefix, &core->toward_a());
    }

    wirings.push_back({&lan, swp, router});
  }

  // the absorber for replies to addresses nobody owns
  Link* sink_link = links_
                        .emplace_back(std::make_unique<Link>(sim_, hub, sink_.get(),
                                                             cfg_.sink_link.up,
                                                             cfg_.sink_link.down, "sink"))
                        .get();
  hub->set_default_route(&sink_link->toward_b());

  Link* server_link =
      wire_host(server_.get(), cfg_.server.ip, hub_switch, cfg_.server.access, "srv");
  server_->set_uplink(&server_link->toward_b());

  for (const LanWiring& w : wirings) build_hosts(*w.lan, w.sw);

  if (mode == DefenseMode::kAdaptivePow) {
    std::map<std::string, DeviceClassInfo> classes;
    for (const auto& [name, spec] : cfg_.device_classes) {
      DeviceClassInfo info;
      info.name = name;
      info.hash_rate = spec.hash_rate;
      const auto it = cfg_.defense.t_budget_by_class.find(name);
      info.solve_budget_s = it != cfg_.defense.t_budget_by_class.end() ? it->second : 1.0;
      classes.emplace(name, info);
    }
    controller_ = std::make_unique<Controller>(cfg_.defense.controller, classes);
    for (const LanSpec& lan : cfg_.lans) {
      controller_->register_prefix(lan.prefix, "sw" + lan.name, lan.device_class);
    }
    sim_.schedule(cfg_.defense.controller.window, [this]() { controller_tick(); });
  }
}

Link* Network::wire_host(Node* host, std::uint32_t ip, EdgeSwitch* sw,
                         const LinkSpec& access, const std::string& label) {
  Link* link = links_
                   .emplace_back(std::make_unique<Link>(sim_, host, sw, access.up,
                                                        access.down,
                                                        label + ":" + host->name()))
                   .get();
  sw->add_route(Ipv4Prefix(ip, 32), &link->toward_a());
  sw->attach_host(host);
  return link;
}

void Network::build_hosts(const LanSpec& lan, EdgeSwitch* sw) {
  const double hash_rate = cfg_.device_classes.at(lan.device_class).hash_rate;
  const DefenseMode mode = defense_active_ ? cfg_.defense.mode : DefenseMode::kNone;
  const bool solving =
      mode == DefenseMode::kStaticPow || mode == DefenseMode::kAdaptivePow;

  std::uint32_t next_host = 1000;  // clients sit above the attacker block
  for (int i = 0; i < lan.clients; ++i) {
    std::uint32_t ip = lan.prefix.addr + next_host++;
    if (ip == cfg_.server.ip) ip = lan.prefix.addr + next_host++;

    ClientConfig ccfg;
    ccfg.ip = ip;
    ccfg.server_ip = cfg_.server.ip;
    ccfg.server_port = cfg_.server.port;
    ccfg.hash_rate = hash_rate;
    ccfg.timeout = from_s(cfg_.workload.timeout_s);
    ccfg.solve_pow = solving;
    if (mode == DefenseMode::kStaticPow) {
      ccfg.belief = cfg_.defense.static_d;
      ccfg.belief_cap = cfg_.defense.static_d;
      ccfg.ladder = {};  // the global difficulty is published, nothing to probe
    } else {
      ccfg.belief = cfg_.defense.controller.d_default;
      ccfg.belief_cap = cfg_.defense.controller.d_max;
      ccfg.ladder = cfg_.defense.ladder;
    }
    ccfg.request_bytes = cfg_.workload.request_bytes;
    ccfg.think_jitter = from_s(cfg_.workload.think_jitter_s);

    const std::string name = host_name(lan.name, "", i);
    RngStream rng(seed_, "client:" + name);
    ccfg.start_at = from_s(rng.uniform(0.0, cfg_.workload.client_start_stagger_s));

    auto client = std::make_unique<ClientNode>(sim_, name, ccfg, std::move(rng));
    client->set_window(from_s(cfg_.warmup_s), from_s(cfg_.duration_s));
    Link* link = wire_host(client.get(), ip, sw, lan.access, "access");
    client->set_uplink(&link->toward_b());
    client->start();
    clients_by_switch_[sw->name()].push_back(client.get());
    lan_of_client_[name] = lan.name;
    clients_.push_back(std::move(client));
  }

  if (!attack_active_ || cfg_.attack.variant == AttackVariant::kNone) return;
  int total_attackers = 0;
  for (const LanSpec& l : cfg_.lans) total_attackers += l.attackers;
  if (total_attackers == 0) return;

  std::uint32_t next_atk = 100;
  for (int j = 0; j < lan.attackers; ++j) {
    std::uint32_t ip = lan.prefix.addr + next_atk++;
    if (ip == cfg_.server.ip) ip = lan.prefix.addr + next_atk++;

    AttackerConfig acfg;
    acfg.variant = cfg_.attack.variant;
    acfg.rate_pps = cfg_.attack.rate / total_attackers;
    acfg.start = from_s(cfg_.attack.start_at);
    acfg.stop = from_s(cfg_.attack.stop_at.value_or(cfg_.duration_s));
    acfg.spacing = cfg_.attack.spacing;
    acfg.nonce_policy = cfg_.attack.nonce_policy;
    acfg.ip = ip;
    acfg.server_ip = cfg_.server.ip;
    acfg.server_port = cfg_.server.port;
    if (cfg_.attack.spoof_space.has_value()) {
      const Ipv4Prefix& space = *cfg_.attack.spoof_space;
      acfg.spoof_range = {space.addr, space.addr | ~space.mask()};
    }
    acfg.solves_at = cfg_.attack.attacker_solves_at;
    acfg.hash_rate = cfg_.attack.attacker_hash_rate;
    acfg.curl_abandon = from_s(cfg_.attack.curl_abandon_s);
    acfg.request_bytes = cfg_.workload.request_bytes;

    const std::string name = host_name(lan.name, "atk", j);
    auto attacker =
        std::make_unique<AttackerNode>(sim_, name, acfg, RngStream(seed_, "attacker:" + name));
    Link* link = wire_host(attacker.get(), ip, sw, lan.access, "access");
    attacker->set_uplink(&link->toward_b());
    attacker->start();
    attackers_.push_back(std::move(attacker));
  }
}

void Network::controller_tick() {
  const SimTime window = cfg_.defense.controller.window;
  const SimTime window_start = sim_.now() - window;
  std::vector<TelemetrySample> samples;
  for (const auto& [sw_name, sw] : switch_by_name_) {
    const TelemetryWindow w = sw->take_telemetry();
    ++telemetry_pulls_;
    samples.push_back({prefix_of_lan_.at(lan_of_switch_.at(sw_name)), w.syns, w.drops});
  }
  for (const Command& cmd : controller_->step(window_start, samples)) {
    sim_.schedule_in(from_s(cfg_.defense.install_latency_s),
                     [this, cmd]() { apply_command(cmd); });
  }
  // State push, not edge-triggered signalling: every window the controller
  // re-publishes each switch's advised difficulty, so clients whose local
  // fallback ladder overshot (or who missed an advisory) converge back.
  for (const auto& [sw_name, sw] : switch_by_name_) {
    publish_advisory(sw_name);
  }
  if (sim_.now() + window <= horizon_) {
    sim_.schedule_in(window, [this]() { controller_tick(); });
  }
}

void Network::apply_command(const Command& cmd) {
  EdgeSwitch* sw = switch_by_name_.at(cmd.switch_name);
  if (cmd.kind == CommandKind::kInstall) {
    sw->install_rule(FlowRule{cmd.prefix, cmd.difficulty, 100, sim_.now()});
    if (!first_install_at_.has_value()) first_install_at_ = sim_.now();
    advised_by_switch_[cmd.switch_name] = cmd.difficulty;
  } else {
    sw->retract_rule(cmd.prefix);
    advised_by_switch_[cmd.switch_name] = cfg_.defense.controller.d_default;
  }
  publish_advisory(cmd.switch_name);
}

void Network::publish_advisory(const std::string& switch_name) {
  if (!cfg_.defense.advisory) return;
  const auto it = clients_by_switch_.find(switch_name);
  if (it == clients_by_switch_.end()) return;
  Difficulty advised = cfg_.defense.controller.d_default;
  if (const auto adv = advised_by_switch_.find(switch_name); adv != advised_by_switch_.end()) {
    advised = adv->second;
  }
  sim_.schedule_in(from_s(cfg_.defense.advisory_latency_s), [clients = it->second, advised]() {
    for (ClientNode* c : clients) c->on_advisory(advised);
  });
}

void Network::run() { sim_.run_until(horizon_); }

EdgeSwitch* Network::switch_of(const std::string& lan_name) {
  const auto it = switch_by_name_.find("sw" + lan_name);
  return it == switch_by_name_.end() ? nullptr : it->second;
}

RunMetrics Network::collect() const {
  RunMetrics out;
  out.seed = seed_;
  out.window_s = cfg_.duration_s - cfg_.warmup_s;
  out.config_digest = config_digest(cfg_);

  for (const auto& client : clients_) {
    const ClientStats& st = client->stats();
    ClientRunMetrics cm;
    cm.client_id = client->name();
    cm.lan = lan_of_client_.at(client->name());
    cm.tps = static_cast<double>(st.window_successes) / out.window_s;
    cm.attempts = st.window_attempts;
    cm.successes = st.window_successes;
    cm.mean_solve_s =
        st.window_solves == 0 ? 0.0 : st.window_solve_s / static_cast<double>(st.window_solves);
    out.clients.push_back(std::move(cm));
  }
  std::sort(out.clients.begin(), out.clients.end(),
            [](const ClientRunMetrics& a, const ClientRunMetrics& b) {
              return a.client_id < b.client_id;
            });

  std::uint64_t seen = 0;
  std::uint64_t dropped = 0;
  for (const auto& sw : switches_) {
    const SwitchCounters& c = sw->counters();
    out.switches.emplace(sw->name(), SwitchRunMetrics{c.syns_seen, c.syns_dropped});
    seen += c.syns_seen;
    dropped += c.syns_dropped;
  }
  out.early_drop_ratio = seen == 0 ? 0.0 : static_cast<double>(dropped) / seen;

  for (const auto& link : links_) {
    for (const Channel* ch : {&link->toward_b(), &link->toward_a()}) {
      out.link_drops.emplace(ch->label(), ch->stats().dropped);
      out.link_drops_total += ch->stats().dropped;
    }
  }

  if (controller_) {
    out.rule_installs = controller_->installs_issued();
    out.rule_retracts = controller_->retracts_issued();
    out.decisions = controller_->decisions();
  }
  out.telemetry_pulls = telemetry_pulls_;
  if (attack_active_ && first_install_at_.has_value()) {
    out.detection_latency_s = to_s(*first_install_at_) - cfg_.attack.start_at;
  }
  out.server = server_->stats();
  return out;
}

}  // namespace synpow
