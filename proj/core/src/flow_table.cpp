#include "synpow/flow_table.hpp"

namespace synpow {

FlowTable::FlowTable(Difficulty default_difficulty) {
  rules_.push_back(FlowRule{Ipv4Prefix{}, default_difficulty, 0, 0});
}

void FlowTable::install(FlowRule rule) {
  for (std::size_t i = 1; i < rules_.size(); ++i) {
    if (rules_[i].prefix == rule.prefix) {
      rules_[i] = rule;
      return;
    }
  }
  if (installed_count() >= kCapacity) {
    throw TableFull(kCapacity);
  }
  rules_.push_back(rule);
}

bool FlowTable::retract(const Ipv4Prefix& prefix) {
  for (std::size_t i = 1; i < rules_.size(); ++i) {
    if (rules_[i].prefix == prefix) {
      rules_.erase(rules_.begin() + static_cast<std::ptrdiff_t>(i));
      return true;
    }
  }
  return false;
}

const FlowRule& FlowTable::match(std::uint32_t src_ip) const {
  const FlowRule* best = &rules_.front();
  for (const FlowRule& rule : rules_) {
    if (!rule.prefix.contains(src_ip)) continue;
    if (rule.prefix.length > best->prefix.length ||
        (rule.prefix.length == best->prefix.length &&
         (rule.priority > best->priority ||
          (rule.priority == best->priority && rule.installed_at > best->installed_at)))) {
      best = &rule;
    }
  }
  return *best;
}

}  // namespace synpow
