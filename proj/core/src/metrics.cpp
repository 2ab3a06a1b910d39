#include "synpow/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace synpow {

double RunMetrics::lan_tps(const std::string& lan) const {
  double sum = 0;
  for (const ClientRunMetrics& c : clients) {
    if (c.lan == lan) sum += c.tps;
  }
  return sum;
}

double RunMetrics::overall_tps() const {
  double sum = 0;
  for (const ClientRunMetrics& c : clients) sum += c.tps;
  return sum;
}

std::vector<std::string> RunMetrics::lan_names() const {
  std::vector<std::string> out;
  for (const ClientRunMetrics& c : clients) {
    if (std::find(out.begin(), out.end(), c.lan) == out.end()) out.push_back(c.lan);
  }
  return out;
}

double student_t975(int df) {
  // two-sided 95% quantiles for df 1..30; beyond that the normal quantile
  // is within 0.7% and run counts never get close anyway
  static constexpr double kTable[31] = {
      0,      12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262,
      2.228,  2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093,
      2.086,  2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045,
      2.042};
  if (df < 1) return 0;
  if (df <= 30) return kTable[df];
  return 1.96;
}

MeanCi mean_ci95(const std::vector<double>& xs) {
  MeanCi out;
  out.n = static_cast<int>(xs.size());
  if (out.n == 0) return out;
  double sum = 0;
  for (double x : xs) sum += x;
  out.mean = sum / out.n;
  if (out.n < 2) return out;
  double ss = 0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  const double sd = std::sqrt(ss / (out.n - 1));
  out.ci95 = student_t975(out.n - 1) * sd / std::sqrt(static_cast<double>(out.n));
  return out;
}

namespace {

void check_comparable(const std::vector<RunMetrics>& a,
                      const std::vector<RunMetrics>& b, const std::string& pa,
                      const std::string& pb) {
  if (a.size() != b.size()) {
    throw MismatchedConfigs(pa + " has " + std::to_string(a.size()) + " runs, " + pb +
                            " has " + std::to_string(b.size()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].seed != b[i].seed) {
      throw MismatchedConfigs("run " + std::to_string(i) + " seeds differ between " +
                              pa + " and " + pb);
    }
    if (a[i].config_digest != b[i].config_digest) {
      throw MismatchedConfigs("run " + std::to_string(i) +
                              " topology/workload fingerprints differ between " + pa +
                              " and " + pb);
    }
  }
}

std::vector<double> tps_series(const std::vector<RunMetrics>& runs,
                               const std::string& lan) {
  std::vector<double> out;
  out.reserve(runs.size());
  for (const RunMetrics& r : runs) {
    out.push_back(lan == "overall" ? r.overall_tps() : r.lan_tps(lan));
  }
  return out;
}

std::vector<double> paired_diff(const std::vector<double>& x,
                                const std::vector<double>& y) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

}  // namespace

QuadSummary compute_quad(const std::vector<RunMetrics>& baseline,
                         const std::vector<RunMetrics>& unmitigated,
                         const std::vector<RunMetrics>& overheaded,
                         const std::vector<RunMetrics>& mitigated) {
  if (baseline.empty()) {
    throw MismatchedConfigs("baseline phase has no runs");
  }
  check_comparable(baseline, unmitigated, "baseline", "unmitigated");
  check_comparable(baseline, overheaded, "baseline", "overheaded");
  check_comparable(baseline, mitigated, "baseline", "mitigated");

  QuadSummary out;
  out.scenario = mitigated.front().scenario;
  out.defense = mitigated.front().defense;

  std::vector<std::string> lans = baseline.front().lan_names();
  lans.push_back("overall");
  for (const std::string& lan : lans) {
    QuadRow row;
    row.lan = lan;
    const auto b = tps_series(baseline, lan);
    const auto u = tps_series(unmitigated, lan);
    const auto o = tps_series(overheaded, lan);
    const auto m = tps_series(mitigated, lan);
    row.qos_baseline = mean_ci95(b);
    row.qos_unmitigated = mean_ci95(u);
    row.qos_overheaded = mean_ci95(o);
    row.qos_mitigated = mean_ci95(m);
    const MeanCi e = mean_ci95(paired_diff(m, u));
    const MeanCi oh = mean_ci95(paired_diff(b, o));
    row.efficacy = e.mean;
    row.efficacy_ci95 = e.ci95;
    row.overhead = oh.mean;
    row.overhead_ci95 = oh.ci95;
    out.rows.push_back(std::move(row));
  }
  return out;
}

AnalyticRow analytic_row(const std::string& device, double hash_rate, int d) {
  AnalyticRow row;
  row.device = device;
  row.hash_rate = hash_rate;
  row.d = d;
  const double trials = std::ldexp(1.0, d);
  row.t_conn_s = trials / hash_rate;
  row.ucpu_r02 = std::min(1.0, 0.2 * trials / hash_rate);
  row.ucpu_r1 = std::min(1.0, 1.0 * trials / hash_rate);
  row.ucpu_r5 = std::min(1.0, 5.0 * trials / hash_rate);
  return row;
}

std::vector<AnalyticRow> analytic_cost_table(const std::vector<AnalyticRequest>& extra) {
  // representative device classes spanning constrained to capable hardware
  static const struct {
    const char* device;
    double hash_rate;
    int d[2];
  } kGrid[] = {
      {"iot_mcu", 1e6, {18, 20}},
      {"rpi4", 3e7, {20, 24}},
      {"phone", 5e7, {22, 24}},
      {"laptop", 2e8, {24, 26}},
  };
  std::vector<AnalyticRow> rows;
  for (const auto& g : kGrid) {
    for (int d : g.d) rows.push_back(analytic_row(g.device, g.hash_rate, d));
  }
  for (const AnalyticRequest& req : extra) {
    rows.push_back(analytic_row(req.device, req.hash_rate, req.d));
  }
  return rows;
}

}  // namespace synpow
