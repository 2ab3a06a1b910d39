#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "synpow/controller.hpp"
#include "synpow/server.hpp"

namespace synpow {

struct ClientRunMetrics {
  std::string client_id;
  std::string lan;
  double tps = 0;  // successes in the measurement window / window seconds
  std::uint64_t attempts = 0;   // SYNs sent in-window
  std::uint64_t successes = 0;  // responses received in-window
  double mean_solve_s = 0;      // mean puzzle latency per in-window attempt
};

struct SwitchRunMetrics {
  std::uint64_t syns_seen = 0;
  std::uint64_t syns_dropped = 0;
};

struct RunMetrics {
  std::string run_id;
  std::uint64_t seed = 0;
  std::string scenario;
  std::string defense;
  std::string attack;
  std::string phase;  // baseline | unmitigated | overheaded | mitigated
  double window_s = 0;
  std::vector<ClientRunMetrics> clients;  // ordered by client_id
  std::map<std::string, SwitchRunMetrics> switches;
  double early_drop_ratio = 0;  // SYNs dropped at edges / SYNs seen at edges
  std::uint64_t rule_installs = 0;
  std::uint64_t rule_retracts = 0;
  std::uint64_t telemetry_pulls = 0;
  double detection_latency_s = -1;  // attack onset to first applied install
  std::map<std::string, std::uint64_t> link_drops;  // channel label -> drops
  std::uint64_t link_drops_total = 0;
  ServerStats server;
  std::vector<DecisionRecord> decisions;
  std::uint64_t config_digest = 0;  // topology/workload fingerprint for pairing

  double lan_tps(const std::string& lan) const;
  double overall_tps() const;
  std::vector<std::string> lan_names() const;
};

// two-sided 95% Student-t half-width helpers
double student_t975(int df);

struct MeanCi {
  double mean = 0;
  double ci95 = 0;  // half-width; zero when fewer than two samples
  int n = 0;
};

MeanCi mean_ci95(const std::vector<double>& xs);

class MismatchedConfigs : public std::runtime_error {
 public:
  explicit MismatchedConfigs(const std::string& why)
      : std::runtime_error("phase results are not comparable: " + why) {}
};

// one LAN's (or the overall) four-phase summary
struct QuadRow {
  std::string lan;  // LAN name or "overall"
  MeanCi qos_baseline;
  MeanCi qos_unmitigated;
  MeanCi qos_overheaded;
  MeanCi qos_mitigated;
  double efficacy = 0;    // E: mean paired (mitigated - unmitigated)
  double overhead = 0;    // O: mean paired (baseline - overheaded)
  double efficacy_ci95 = 0;
  double overhead_ci95 = 0;
};

struct QuadSummary {
  std::string scenario;
  std::string defense;
  std::vector<QuadRow> rows;  // per LAN plus "overall" last
};

// Runs are paired by position (same derived seed per index across phases),
// so E and O are means of per-seed differences. Throws MismatchedConfigs on
// differing run counts, seeds, or config fingerprints.
QuadSummary compute_quad(const std::vector<RunMetrics>& baseline,
                         const std::vector<RunMetrics>& unmitigated,
                         const std::vector<RunMetrics>& overheaded,
                         const std::vector<RunMetrics>& mitigated);

// weighted tradeoff of efficacy against overhead, z in [0, 1]
inline double utility(double efficacy, double overhead, double z) {
  return z * efficacy - (1.0 - z) * overhead;
}

struct AnalyticRow {
  std::string device;
  double hash_rate = 0;
  int d = 0;
  double t_conn_s = 0;             // expected solve seconds: 2^d / hash_rate
  double ucpu_r02 = 0;             // sustained CPU fraction at 0.2 conn/s
  double ucpu_r1 = 0;              // ... at 1 conn/s
  double ucpu_r5 = 0;              // ... at 5 conn/s
};

struct AnalyticRequest {
  std::string device;
  double hash_rate = 0;
  int d = 0;
};

AnalyticRow analytic_row(const std::string& device, double hash_rate, int d);

// The built-in device/difficulty grid plus any extra requested rows.
std::vector<AnalyticRow> analytic_cost_table(
    const std::vector<AnalyticRequest>& extra = {});

}  // namespace synpow
