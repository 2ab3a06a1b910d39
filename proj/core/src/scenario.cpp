#include "synpow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace synpow {

namespace {

using nlohmann::json;

// Field access wrapper that records every problem with its JSON path, so a
// bad file reports all offenses at once instead of one per invocation.
struct Reader {
  const json* node;
  std::string path;
  std::vector<std::string>* errs;
  std::set<std::string> seen;

  bool has(const std::string& key) const {
    return node != nullptr && node->contains(key);
  }

  const json* raw(const std::string& key) {
    seen.insert(key);
    if (!has(key)) return nullptr;
    return &(*node)[key];
  }

  void fail(const std::string& key, const std::string& why) const {
    errs->push_back(path + key + ": " + why);
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    const json* v = raw(key);
    if (v == nullptr) return fallback;
    try {
      return v->get<T>();
    } catch (const json::exception&) {
      fail(key, "wrong type (got " + std::string(v->type_name()) + ")");
      return fallback;
    }
  }

  double get_seconds(const std::string& key, double fallback) {
    const double v = get<double>(key, fallback);
    if (!std::isfinite(v)) {
      fail(key, "must be finite");
      return fallback;
    }
    return v;
  }

  Reader child(const std::string& key) {
    const json* v = raw(key);
    if (v != nullptr && !v->is_object()) {
      fail(key, "must be an object");
      v = nullptr;
    }
    return Reader{v, path + key + ".", errs};
  }

  std::vector<Reader> children(const std::string& key) {
    std::vector<Reader> out;
    const json* v = raw(key);
    if (v == nullptr) return out;
    if (!v->is_array()) {
      fail(key, "must be an array");
      return out;
    }
    for (std::size_t i = 0; i < v->size(); ++i) {
      const json& item = (*v)[i];
      const std::string item_path = path + key + "[" + std::to_string(i) + "].";
      if (!item.is_object()) {
        errs->push_back(item_path + ": must be an object");
        out.push_back(Reader{nullptr, item_path, errs});
      } else {
        out.push_back(Reader{&item, item_path, errs});
      }
    }
    return out;
  }

  // call after all reads on this object: flags typos and unknown settings
  void finish() {
    if (node == nullptr) return;
    for (const auto& [key, value] : node->items()) {
      if (seen.count(key) == 0) fail(key, "unknown field");
    }
  }
};

Ipv4Prefix get_prefix(Reader& r, const std::string& key, const std::string& fallback) {
  const std::string text = r.get<std::string>(key, fallback);
  try {
    return Ipv4Prefix::parse(text);
  } catch (const std::exception& e) {
    r.fail(key, e.what());
    return Ipv4Prefix{};
  }
}

std::uint32_t get_ip(Reader& r, const std::string& key, const std::string& fallback) {
  const std::string text = r.get<std::string>(key, fallback);
  try {
    return parse_ipv4(text);
  } catch (const std::exception& e) {
    r.fail(key, e.what());
    return 0;
  }
}

template <typename Enum>
Enum get_enum(Reader& r, const std::string& key,
              const std::vector<std::pair<std::string, Enum>>& table, Enum fallback) {
  std::string text;
  for (const auto& [name, value] : table) {
    if (value == fallback) text = name;
  }
  text = r.get<std::string>(key, text);
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : table) {
    allowed += allowed.empty() ? "'" + name + "'" : ", '" + name + "'";
  }
  r.fail(key, "must be one of " + allowed);
  return fallback;
}

ChannelConfig read_channel_fields(Reader& r, ChannelConfig base) {
  const double bw = r.get<double>("bandwidth_bps", static_cast<double>(base.bandwidth_bps));
  if (bw <= 0 || !std::isfinite(bw)) {
    r.fail("bandwidth_bps", "must be positive");
  } else {
    base.bandwidth_bps = static_cast<std::uint64_t>(std::llround(bw));
  }
  const double delay = r.get_seconds("delay_s", to_s(base.prop_delay));
  if (delay < 0) {
    r.fail("delay_s", "must be non-negative");
  } else {
    base.prop_delay = from_s(delay);
  }
  const std::int64_t q =
      r.get<std::int64_t>("queue_packets", static_cast<std::int64_t>(base.queue_capacity));
  if (q < 1) {
    r.fail("queue_packets", "must be at least 1");
  } else {
    base.queue_capacity = static_cast<std::size_t>(q);
  }
  return base;
}

// Flat fields apply to both directions; optional "up"/"down" blocks then
// override one side ("up" points toward the server/core).
LinkSpec parse_link(Reader r, LinkSpec def) {
  if (r.node == nullptr) return def;
  LinkSpec out;
  out.up = read_channel_fields(r, def.up);
  out.down = read_channel_fields(r, def.down);
  if (r.has("up")) {
    Reader side = r.child("up");
    out.up = read_channel_fields(side, out.up);
    side.finish();
  }
  if (r.has("down")) {
    Reader side = r.child("down");
    out.down = read_channel_fields(side, out.down);
    side.finish();
  }
  r.finish();
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error([&problems] {
        std::ostringstream os;
        os << "invalid scenario (" << problems.size() << " problem"
           << (problems.size() == 1 ? "" : "s") << ")";
        for (const std::string& p : problems) os << "\n  " << p;
        return os.str();
      }()),
      problems_(std::move(problems)) {}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError({std::string("not valid JSON: ") + e.what()});
  }
  if (!root.is_object()) {
    throw ValidationError({"top level: must be an object"});
  }

  std::vector<std::string> errs;
  ScenarioConfig cfg;
  Reader r{&root, "", &errs};

  r.raw("description");  // free-form notes, any JSON shape
  cfg.name = r.get<std::string>("name", cfg.name);
  cfg.seed = r.get<std::uint64_t>("seed", cfg.seed);
  cfg.runs = r.get<int>("runs", cfg.runs);
  cfg.duration_s = r.get_seconds("duration_s", cfg.duration_s);
  cfg.warmup_s = r.get_seconds("warmup_s", cfg.warmup_s);
  cfg.scale = r.get<double>("scale", cfg.scale);

  {
    Reader pow = r.child("pow");
    cfg.pow.backend = get_enum<HashBackend>(
        pow, "backend",
        {{"superfast32", HashBackend::kSuperFast32},
         {"crypto32", HashBackend::kCryptoTrunc32}},
        cfg.pow.backend);
    cfg.pow.bucket_width_s = pow.get_seconds("bucket_width_s", cfg.pow.bucket_width_s);
    pow.finish();
  }

  {
    Reader topo = r.child("topology");
    cfg.lans.clear();
    for (Reader lan_r : topo.children("lans")) {
      LanSpec lan;
      lan.name = lan_r.get<std::string>("name", "");
      lan.prefix = get_prefix(lan_r, "prefix", "0.0.0.0/0");
      lan.clients = lan_r.get<int>("clients", 0);
      lan.attackers = lan_r.get<int>("attackers", 0);
      lan.device_class = lan_r.get<std::string>("device_class", lan.device_class);
      lan.access = parse_link(lan_r.child("access"), lan.access);
      lan.uplink = parse_link(lan_r.child("uplink"), lan.uplink);
      lan.core = parse_link(lan_r.child("core"), lan.core);
      lan_r.finish();
      cfg.lans.push_back(std::move(lan));
    }

    Reader srv = topo.child("server");
    cfg.server.ip = get_ip(srv, "ip", "10.1.0.100");
    cfg.server.port = static_cast<std::uint16_t>(srv.get<int>("port", cfg.server.port));
    cfg.server.lan = srv.get<std::string>("lan", "A");
    cfg.server.access = parse_link(srv.child("access"), cfg.server.access);
    cfg.server.backlog_capacity = static_cast<std::size_t>(
        srv.get<std::int64_t>("backlog_capacity",
                              static_cast<std::int64_t>(cfg.server.backlog_capacity)));
    cfg.server.half_open_timeout_s =
        srv.get_seconds("half_open_timeout_s", cfg.server.half_open_timeout_s);
    cfg.server.half_open_jitter_s =
        srv.get_seconds("half_open_jitter_s", cfg.server.half_open_jitter_s);
    cfg.server.cookie_cpu_s = srv.get_seconds("cookie_cpu_s", cfg.server.cookie_cpu_s);
    cfg.server.cookie_cpu_jitter_s =
        srv.get_seconds("cookie_cpu_jitter_s", cfg.server.cookie_cpu_jitter_s);
    srv.finish();

    cfg.sink_link = parse_link(topo.child("sink_link"), cfg.sink_link);
    topo.finish();
  }

  {
    Reader w = r.child("workload");
    cfg.workload.request_bytes =
        static_cast<std::uint32_t>(w.get<std::int64_t>("request_bytes", cfg.workload.request_bytes));
    cfg.workload.response_bytes = static_cast<std::uint32_t>(
        w.get<std::int64_t>("response_bytes", cfg.workload.response_bytes));
    cfg.workload.timeout_s = w.get_seconds("timeout_s", cfg.workload.timeout_s);
    cfg.workload.service_time_s = w.get_seconds("service_time_s", cfg.workload.service_time_s);
    cfg.workload.server_concurrency =
        w.get<int>("server_concurrency", cfg.workload.server_concurrency);
    cfg.workload.client_start_stagger_s =
        w.get_seconds("client_start_stagger_s", cfg.workload.client_start_stagger_s);
    cfg.workload.think_jitter_s = w.get_seconds("think_jitter_s", cfg.workload.think_jitter_s);
    w.finish();
  }

  if (r.has("device_classes")) {
    Reader dc = r.child("device_classes");
    cfg.device_classes.clear();
    if (dc.node != nullptr) {
      for (const auto& [name, value] : dc.node->items()) {
        Reader cls{&value, "device_classes." + name + ".", &errs};
        DeviceClassSpec spec;
        spec.hash_rate = cls.get<double>("hash_rate", spec.hash_rate);
        cls.finish();
        cfg.device_classes.emplace(name, spec);
      }
    }
  }

  {
    Reader d = r.child("defense");
    cfg.defense.mode = get_enum<DefenseMode>(
        d, "mode",
        {{"none", DefenseMode::kNone},
         {"syncookies", DefenseMode::kSynCookies},
         {"staticpow", DefenseMode::kStaticPow},
         {"adaptive", DefenseMode::kAdaptivePow}},
        cfg.defense.mode);
    cfg.defense.static_d.bits =
        static_cast<std::uint8_t>(d.get<int>("static_d", cfg.defense.static_d.bits));
    cfg.defense.advisory = d.get<bool>("advisory", cfg.defense.advisory);
    cfg.defense.advisory_latency_s =
        d.get_seconds("advisory_latency_s", cfg.defense.advisory_latency_s);
    cfg.defense.install_latency_s =
        d.get_seconds("install_latency_s", cfg.defense.install_latency_s);
    if (d.has("ladder")) {
      cfg.defense.ladder.clear();
      for (const int step : d.get<std::vector<int>>("ladder", {})) {
        cfg.defense.ladder.push_back(static_cast<std::uint8_t>(step));
      }
    }

    Reader c = d.child("controller");
    ControllerParams& p = cfg.defense.controller;
    p.window = from_s(c.get_seconds("delta_t", to_s(p.window)));
    p.theta = c.get<double>("theta", p.theta);
    p.beta = c.get<double>("beta", p.beta);
    p.tau_detect = c.get<int>("tau_detect", p.tau_detect);
    p.tau_clear = c.get<int>("tau_clear", p.tau_clear);
    p.alpha = c.get<double>("ewma_alpha", p.alpha);
    p.d_default.bits = static_cast<std::uint8_t>(c.get<int>("d_default", p.d_default.bits));
    p.d_min.bits = static_cast<std::uint8_t>(c.get<int>("d_min", p.d_min.bits));
    p.d_max.bits = static_cast<std::uint8_t>(c.get<int>("d_max", p.d_max.bits));
    p.drop_target = c.get<double>("drop_target", p.drop_target);
    p.attacker_hash_rate = c.get<double>("attacker_hash_rate_assumed", p.attacker_hash_rate);
    p.max_installs_per_sec = c.get<int>("max_installs_per_sec", p.max_installs_per_sec);
    p.naive_drop_model = c.get<bool>("naive_drop_model", p.naive_drop_model);
    if (c.has("T_budget_by_class")) {
      Reader tb = c.child("T_budget_by_class");
      cfg.defense.t_budget_by_class.clear();
      if (tb.node != nullptr) {
        for (const auto& [name, value] : tb.node->items()) {
          if (!value.is_number()) {
            errs.push_back("defense.controller.T_budget_by_class." + name +
                           ": must be a number of seconds");
            continue;
          }
          cfg.defense.t_budget_by_class.emplace(name, value.get<double>());
        }
      }
    }
    c.finish();
    d.finish();
  }

  {
    Reader a = r.child("attack");
    cfg.attack.variant = get_enum<AttackVariant>(
        a, "variant",
        {{"none", AttackVariant::kNone},
         {"curl", AttackVariant::kCurlFlood},
         {"cflood", AttackVariant::kCFlood},
         {"cflood-spoof", AttackVariant::kCFloodSpoof}},
        cfg.attack.variant);
    cfg.attack.rate = a.get<double>("rate", cfg.attack.rate);
    cfg.attack.start_at = a.get_seconds("start_at", cfg.attack.start_at);
    if (a.has("stop_at")) {
      cfg.attack.stop_at = a.get_seconds("stop_at", 0.0);
    }
    cfg.attack.spacing = get_enum<AttackSpacing>(
        a, "spacing",
        {{"poisson", AttackSpacing::kPoisson},
         {"deterministic", AttackSpacing::kDeterministic}},
        cfg.attack.spacing);
    cfg.attack.nonce_policy = get_enum<NoncePolicy>(
        a, "nonce_policy", {{"zero", NoncePolicy::kZero}, {"random", NoncePolicy::kRandom}},
        cfg.attack.nonce_policy);
    if (a.has("spoof_space")) {
      cfg.attack.spoof_space = get_prefix(a, "spoof_space", "0.0.0.0/0");
    }
    cfg.attack.attacker_solves_at =
        a.get<int>("attacker_solves_at", cfg.attack.attacker_solves_at);
    cfg.attack.attacker_hash_rate =
        a.get<double>("attacker_hash_rate", cfg.attack.attacker_hash_rate);
    cfg.attack.curl_abandon_s = a.get_seconds("curl_abandon_s", cfg.attack.curl_abandon_s);
    a.finish();
  }

  r.finish();
  if (!errs.empty()) throw ValidationError(std::move(errs));
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError({"scenario file not readable: " + path});
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ScenarioConfig cfg = parse_scenario(buf.str());
  if (cfg.name == "scenario") {
    // default the label to the file stem for traceable run ids
    std::string stem = path;
    if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) {
      stem = stem.substr(slash + 1);
    }
    if (const auto dot = stem.find_last_of('.'); dot != std::string::npos) {
      stem = stem.substr(0, dot);
    }
    if (!stem.empty()) cfg.name = stem;
  }
  return cfg;
}

void validate(const ScenarioConfig& cfg) {
  std::vector<std::string> errs;
  const auto bad = [&errs](const std::string& field, const std::string& why) {
    errs.push_back(field + ": " + why);
  };

  if (cfg.runs < 1) bad("runs", "must be at least 1");
  if (cfg.duration_s <= 0) bad("duration_s", "must be positive");
  if (cfg.warmup_s < 0) bad("warmup_s", "must be non-negative");
  if (cfg.warmup_s >= cfg.duration_s) bad("warmup_s", "must be smaller than duration_s");
  if (cfg.scale <= 0) bad("scale", "must be positive");
  if (cfg.pow.bucket_width_s <= 0) bad("pow.bucket_width_s", "must be positive");

  if (cfg.lans.empty()) bad("topology.lans", "at least one LAN is required");
  std::set<std::string> lan_names;
  int total_attackers = 0;
  for (std::size_t i = 0; i < cfg.lans.size(); ++i) {
    const LanSpec& lan = cfg.lans[i];
    const std::string where = "topology.lans[" + std::to_string(i) + "]";
    if (lan.name.empty()) bad(where + ".name", "must not be empty");
    if (!lan_names.insert(lan.name).second) bad(where + ".name", "duplicate LAN name");
    if (lan.clients < 0) bad(where + ".clients", "must be non-negative");
    if (lan.attackers < 0) bad(where + ".attackers", "must be non-negative");
    // hosts draw addresses from fixed offsets inside the prefix: attackers
    // from +100, clients from +1000
    const std::uint64_t capacity = std::uint64_t{1} << (32 - lan.prefix.length);
    const std::uint64_t top = std::max<std::uint64_t>(100 + lan.attackers + 1,
                                                      1000 + lan.clients + 1);
    if (top > capacity) bad(where, "prefix too small for the requested hosts");
    if (lan.attackers > 0 && lan.clients > 0 && 100 + lan.attackers > 1000) {
      bad(where + ".attackers", "attacker block would overlap client addresses");
    }
    if (cfg.device_classes.count(lan.device_class) == 0) {
      bad(where + ".device_class", "unknown device class '" + lan.device_class + "'");
    }
    total_attackers += lan.attackers;
  }
  if (lan_names.count(cfg.server.lan) == 0) {
    bad("topology.server.lan", "references unknown LAN '" + cfg.server.lan + "'");
  } else {
    for (const LanSpec& lan : cfg.lans) {
      if (lan.name == cfg.server.lan && !lan.prefix.contains(cfg.server.ip)) {
        bad("topology.server.ip", "must lie inside its LAN's prefix for routing");
      }
    }
  }

  if (cfg.workload.timeout_s <= 0) bad("workload.timeout_s", "must be positive");
  if (cfg.workload.service_time_s < 0) bad("workload.service_time_s", "must be non-negative");
  if (cfg.workload.think_jitter_s < 0) bad("workload.think_jitter_s", "must be non-negative");
  if (cfg.workload.server_concurrency < 1) {
    bad("workload.server_concurrency", "must be at least 1");
  }
  if (cfg.workload.request_bytes < 40 || cfg.workload.response_bytes < 40) {
    bad("workload", "request_bytes and response_bytes must be at least 40");
  }
  if (cfg.server.backlog_capacity < 1) {
    bad("topology.server.backlog_capacity", "must be at least 1");
  }
  if (cfg.server.half_open_timeout_s <= 0) {
    bad("topology.server.half_open_timeout_s", "must be positive");
  }
  if (cfg.server.half_open_jitter_s < 0) {
    bad("topology.server.half_open_jitter_s", "must be non-negative");
  }
  if (cfg.server.cookie_cpu_jitter_s < 0) {
    bad("topology.server.cookie_cpu_jitter_s", "must be non-negative");
  }

  if (cfg.defense.mode == DefenseMode::kStaticPow && cfg.defense.static_d.bits > 32) {
    bad("defense.static_d", "difficulty is limited to 32 bits");
  }
  if (cfg.defense.mode == DefenseMode::kAdaptivePow) {
    const ControllerParams& p = cfg.defense.controller;
    if (p.window == 0) bad("defense.controller.delta_t", "must be positive");
    if (p.theta <= 0) bad("defense.controller.theta", "must be positive");
    if (p.beta <= 0) bad("defense.controller.beta", "must be positive");
    if (p.beta > p.theta) {
      bad("defense.controller.beta", "clear threshold must not exceed detect threshold");
    }
    if (p.tau_detect < 1) bad("defense.controller.tau_detect", "must be at least 1");
    if (p.tau_clear < 1) bad("defense.controller.tau_clear", "must be at least 1");
    if (p.alpha <= 0 || p.alpha > 1) bad("defense.controller.ewma_alpha", "must be in (0, 1]");
    if (p.d_min > p.d_max) bad("defense.controller.d_min", "must not exceed d_max");
    if (p.d_max.bits > 32) bad("defense.controller.d_max", "difficulty is limited to 32 bits");
    if (p.d_default > p.d_max) bad("defense.controller.d_default", "must not exceed d_max");
    if (p.drop_target <= 0 || p.drop_target >= 1) {
      bad("defense.controller.drop_target", "must be in (0, 1)");
    }
    if (p.max_installs_per_sec < 1) {
      bad("defense.controller.max_installs_per_sec", "must be at least 1");
    }
    for (const LanSpec& lan : cfg.lans) {
      if (cfg.device_classes.count(lan.device_class) != 0 &&
          cfg.defense.t_budget_by_class.count(lan.device_class) == 0) {
        bad("defense.controller.T_budget_by_class",
            "missing budget for device class '" + lan.device_class + "'");
      }
    }
  }

  if (cfg.attack.variant != AttackVariant::kNone) {
    if (cfg.attack.rate <= 0) bad("attack.rate", "must be positive when an attack is set");
    if (total_attackers == 0) {
      bad("topology.lans", "attack requested but no LAN declares attackers");
    }
    if (cfg.attack.start_at < 0) bad("attack.start_at", "must be non-negative");
    if (cfg.attack.stop_at.has_value() && *cfg.attack.stop_at <= cfg.attack.start_at) {
      bad("attack.stop_at", "must be after start_at");
    }
    if (cfg.attack.variant == AttackVariant::kCurlFlood && cfg.attack.rate > 1000) {
      bad("attack.rate", "curl floods are capped at 1000 connections/s");
    }
    if (cfg.attack.attacker_solves_at > 32) {
      bad("attack.attacker_solves_at", "difficulty is limited to 32 bits");
    }
  }

  if (!errs.empty()) throw ValidationError(std::move(errs));
}

ScenarioConfig apply_scale(ScenarioConfig cfg) {
  const double f = cfg.scale;
  if (f == 1.0) return cfg;
  const auto shrink = [f](double seconds) { return seconds / f; };
  const auto shrink_t = [f](SimTime t) { return from_s(to_s(t) / f); };

  cfg.duration_s = shrink(cfg.duration_s);
  cfg.warmup_s = shrink(cfg.warmup_s);
  cfg.pow.bucket_width_s = shrink(cfg.pow.bucket_width_s);

  cfg.workload.timeout_s = shrink(cfg.workload.timeout_s);
  cfg.workload.service_time_s = shrink(cfg.workload.service_time_s);
  cfg.workload.client_start_stagger_s = shrink(cfg.workload.client_start_stagger_s);
  cfg.workload.think_jitter_s = shrink(cfg.workload.think_jitter_s);

  cfg.server.half_open_timeout_s = shrink(cfg.server.half_open_timeout_s);
  cfg.server.half_open_jitter_s = shrink(cfg.server.half_open_jitter_s);
  cfg.server.cookie_cpu_s = shrink(cfg.server.cookie_cpu_s);
  cfg.server.cookie_cpu_jitter_s = shrink(cfg.server.cookie_cpu_jitter_s);

  const auto scale_link = [&](LinkSpec& link) {
    for (ChannelConfig* ch : {&link.up, &link.down}) {
      ch->bandwidth_bps =
          static_cast<std::uint64_t>(std::llround(static_cast<double>(ch->bandwidth_bps) * f));
      ch->prop_delay = shrink_t(ch->prop_delay);
    }
  };
  for (LanSpec& lan : cfg.lans) {
    scale_link(lan.access);
    scale_link(lan.uplink);
    scale_link(lan.core);
  }
  scale_link(cfg.server.access);
  scale_link(cfg.sink_link);

  for (auto& [name, cls] : cfg.device_classes) cls.hash_rate *= f;

  cfg.defense.advisory_latency_s = shrink(cfg.defense.advisory_latency_s);
  cfg.defense.install_latency_s = shrink(cfg.defense.install_latency_s);
  ControllerParams& p = cfg.defense.controller;
  p.window = shrink_t(p.window);
  p.attacker_hash_rate *= f;
  p.max_installs_per_sec =
      std::max(1, static_cast<int>(std::llround(p.max_installs_per_sec * f)));
  for (auto& [name, budget] : cfg.defense.t_budget_by_class) budget = shrink(budget);

  cfg.attack.rate *= f;
  cfg.attack.start_at = shrink(cfg.attack.start_at);
  if (cfg.attack.stop_at.has_value()) cfg.attack.stop_at = shrink(*cfg.attack.stop_at);
  cfg.attack.attacker_hash_rate *= f;
  cfg.attack.curl_abandon_s = shrink(cfg.attack.curl_abandon_s);

  cfg.scale = 1.0;  // the transform is idempotent once applied
  return cfg;
}

std::string defense_mode_name(DefenseMode mode) {
  switch (mode) {
    case DefenseMode::kNone:
      return "none";
    case DefenseMode::kSynCookies:
      return "syncookies";
    case DefenseMode::kStaticPow:
      return "staticpow";
    case DefenseMode::kAdaptivePow:
      return "adaptive";
  }
  return "unknown";
}

std::string attack_variant_name(AttackVariant variant) {
  switch (variant) {
    case AttackVariant::kNone:
      return "none";
    case AttackVariant::kCurlFlood:
      return "curl";
    case AttackVariant::kCFlood:
      return "cflood";
    case AttackVariant::kCFloodSpoof:
      return "cflood-spoof";
  }
  return "unknown";
}

}  // namespace synpow
