#include "synpow/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace synpow {

void Controller::register_prefix(const Ipv4Prefix& prefix,
                                 const std::string& ingress_switch,
                                 const std::string& device_class) {
  if (device_classes_.count(device_class) == 0) {
    throw std::invalid_argument("unknown device class '" + device_class + "'");
  }
  PrefixState st;
  st.ingress_switch = ingress_switch;
  st.device_class = device_class;
  prefixes_.emplace(prefix, st);
}

double Controller::early_drop_expected(double attacker_hash_rate,
                                       double attack_syn_rate, Difficulty d,
                                       bool naive_model) {
  if (d.bits == 0) return 0.0;  // nothing is filtered without a work requirement
  const double cost = std::ldexp(1.0, static_cast<int>(d.bits));  // 2^d trials/SYN
  if (naive_model) {
    return 1.0 - 1.0 / cost;  // blind nonce guesses pass with prob 2^-d
  }
  // Budget model: the attacker spends its compute solving puzzles, so the
  // fraction of its SYN stream it can cover is hash_rate / (rate * 2^d).
  if (attack_syn_rate <= 0.0) return 1.0;
  if (attacker_hash_rate <= 0.0) return 1.0;
  return 1.0 - std::min(1.0, attacker_hash_rate / (attack_syn_rate * cost));
}

std::optional<Difficulty> Controller::select_difficulty(const DeviceClassInfo& cls,
                                                        double attack_syn_rate) const {
  for (unsigned bits = params_.d_min.bits; bits <= params_.d_max.bits; ++bits) {
    const Difficulty d{static_cast<std::uint8_t>(bits)};
    const double drop = early_drop_expected(params_.attacker_hash_rate,
                                            attack_syn_rate, d,
                                            params_.naive_drop_model);
    if (drop < params_.drop_target) continue;
    const double solve_s = std::ldexp(1.0, static_cast<int>(bits)) / cls.hash_rate;
    if (solve_s > cls.solve_budget_s) {
      return std::nullopt;  // drop target needs more work than devices can afford
    }
    return d;
  }
  return std::nullopt;
}

std::vector<Command> Controller::step(SimTime window_start,
                                      const std::vector<TelemetrySample>& samples) {
  const double window_s = to_s(params_.window);
  const SimTime now = window_start + params_.window;
  std::vector<Command> fresh;

  for (const TelemetrySample& sample : samples) {
    const auto it = prefixes_.find(sample.prefix);
    if (it == prefixes_.end()) continue;
    PrefixState& st = it->second;
    const double rate = static_cast<double>(sample.syn_count) / window_s;

    DecisionRecord rec;
    rec.window_start = window_start;
    rec.prefix = sample.prefix;
    rec.syn_rate = rate;

    if (st.baseline < 0) {
      // First sample seeds the baseline directly: an EWMA started at zero
      // would flag normal traffic as an attack for its entire warm-up.
      st.baseline = rate;
      rec.baseline = st.baseline;
      rec.mode = st.mode;
      decisions_.push_back(rec);
      continue;
    }

    if (st.mode == PrefixMode::kNormal) {
      if (rate > params_.theta * st.baseline) {
        ++st.over_count;
      } else {
        st.over_count = 0;
        // the baseline only learns from calm windows, so an attack cannot
        // drag its own detection threshold upward
        st.baseline = params_.alpha * rate + (1.0 - params_.alpha) * st.baseline;
      }
      if (st.over_count >= params_.tau_detect) {
        const DeviceClassInfo& cls = device_classes_.at(st.device_class);
        const std::optional<Difficulty> selected = select_difficulty(cls, rate);
        // Infeasible demand falls back to the hardest allowed rule: partial
        // filtering beats none even when the drop target is out of reach.
        const Difficulty chosen = selected.value_or(params_.d_max);
        rec.infeasible = !selected.has_value();
        rec.selected = chosen;

        Command cmd;
        cmd.kind = CommandKind::kInstall;
        cmd.switch_name = st.ingress_switch;
        // Spoofed floods draw sources from the whole address space, so the
        // rule must be a catch-all at the ingress switch; source-prefix
        // rules stay available for attributable traffic.
        cmd.prefix = Ipv4Prefix{};
        cmd.scope = sample.prefix;
        cmd.difficulty = chosen;
        cmd.issued_at = now;
        fresh.push_back(cmd);

        st.mode = PrefixMode::kElevated;
        st.installed = chosen;
        st.under_count = 0;
        st.over_count = 0;
      }
    } else {
      if (rate < params_.beta * st.baseline) {
        ++st.under_count;
      } else {
        st.under_count = 0;
      }
      if (st.under_count >= params_.tau_clear) {
        Command cmd;
        cmd.kind = CommandKind::kRetract;
        cmd.switch_name = st.ingress_switch;
        cmd.prefix = Ipv4Prefix{};
        cmd.scope = sample.prefix;
        cmd.issued_at = now;
        fresh.push_back(cmd);

        st.mode = PrefixMode::kNormal;
        st.installed = Difficulty{0};
        st.under_count = 0;
      }
    }

    rec.baseline = st.baseline;
    rec.over_count = st.over_count;
    rec.under_count = st.under_count;
    rec.mode = st.mode;
    decisions_.push_back(rec);
  }

  // Flow-mod budget: installs are capped per second and queue FIFO across
  // windows; retracts always go through.
  std::vector<Command> cleared;
  int install_budget =
      std::max(1, static_cast<int>(std::lround(params_.max_installs_per_sec * window_s)));
  for (Command& cmd : fresh) {
    if (cmd.kind != CommandKind::kInstall) continue;
    deferred_.push_back(std::move(cmd));
  }
  while (!deferred_.empty() && install_budget > 0) {
    Command cmd = std::move(deferred_.front());
    deferred_.pop_front();
    // a deferral can outlive the episode that caused it
    const auto it = prefixes_.find(cmd.scope);
    if (it == prefixes_.end() || it->second.mode != PrefixMode::kElevated) continue;
    cmd.issued_at = now;
    cleared.push_back(std::move(cmd));
    --install_budget;
    ++installs_issued_;
  }
  for (const Command& held : deferred_) {
    for (DecisionRecord& rec : decisions_) {
      if (rec.window_start == window_start && rec.prefix == held.scope) {
        rec.deferred = true;
      }
    }
  }
  for (Command& cmd : fresh) {
    if (cmd.kind != CommandKind::kRetract) continue;
    ++retracts_issued_;
    cleared.push_back(std::move(cmd));
  }
  return cleared;
}

PrefixMode Controller::mode_of(const Ipv4Prefix& prefix) const {
  const auto it = prefixes_.find(prefix);
  if (it == prefixes_.end()) {
    throw std::invalid_argument("prefix not registered: " + prefix.str());
  }
  return it->second.mode;
}

}  // namespace synpow
