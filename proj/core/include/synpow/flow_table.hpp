#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "synpow/pow.hpp"
#include "synpow/prefix.hpp"
#include "synpow/sim_time.hpp"

namespace synpow {

struct FlowRule {
  Ipv4Prefix prefix;
  Difficulty difficulty{0};
  int priority = 0;
  SimTime installed_at = 0;
};

class TableFull : public std::runtime_error {
 public:
  explicit TableFull(std::size_t capacity)
      : std::runtime_error("flow table capacity " + std::to_string(capacity) +
                           " exhausted") {}
};

// Longest-prefix-match table of difficulty rules. A catch-all default rule
// (0.0.0.0/0, priority 0) is always present and cannot be retracted or
// replaced; an installed 0.0.0.0/0 rule shadows it through the priority /
// recency tie-break until retracted. Installing a rule whose prefix matches
// an existing installed rule replaces that rule in place.
class FlowTable {
 public:
  static constexpr std::size_t kCapacity = 1024;  // installed rules, default excluded

  explicit FlowTable(Difficulty default_difficulty);

  void install(FlowRule rule);               // throws TableFull
  bool retract(const Ipv4Prefix& prefix);    // false (and no-op) if absent or default
  const FlowRule& match(std::uint32_t src_ip) const;
  void set_default_difficulty(Difficulty d) { rules_.front().difficulty = d; }

  std::size_t installed_count() const { return rules_.size() - 1; }
  const std::vector<FlowRule>& rules() const { return rules_; }

 private:
  std::vector<FlowRule> rules_;  // rules_[0] is the default rule
};

}  // namespace synpow
