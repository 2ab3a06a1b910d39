#include "synpow/report.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace synpow {

namespace {

std::string chars_or_throw(char* first, const std::to_chars_result& res) {
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(first, res.ptr);
}

}  // namespace

std::string fmt_u64(std::uint64_t v) {
  char buf[24];
  return chars_or_throw(buf, std::to_chars(buf, buf + sizeof(buf), v));
}

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  return chars_or_throw(
      buf, std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed,
                         precision));
}

std::string fmt_double(double v) {
  char buf[64];
  return chars_or_throw(buf, std::to_chars(buf, buf + sizeof(buf), v));
}

std::string per_run_csv(const std::vector<RunMetrics>& runs) {
  std::string out =
      "run_id,seed,scenario,defense,attack,phase,lan,client_id,tps,attempts,"
      "successes,early_drop_ratio,rule_installs,rule_retracts,telemetry_pulls,"
      "detection_latency_s,link_drops_total\n";
  for (const RunMetrics& run : runs) {
    const std::string shared =
        "," + fmt_fixed(run.early_drop_ratio, 6) + "," + fmt_u64(run.rule_installs) +
        "," + fmt_u64(run.rule_retracts) + "," + fmt_u64(run.telemetry_pulls) + "," +
        fmt_fixed(run.detection_latency_s, 6) + "," + fmt_u64(run.link_drops_total);
    for (const ClientRunMetrics& c : run.clients) {
      out += run.run_id + "," + fmt_u64(run.seed) + "," + run.scenario + "," +
             run.defense + "," + run.attack + "," + run.phase + "," + c.lan + "," +
             c.client_id + "," + fmt_fixed(c.tps, 6) + "," + fmt_u64(c.attempts) +
             "," + fmt_u64(c.successes) + shared + "\n";
    }
  }
  return out;
}

std::string summary_csv(const std::vector<QuadSummary>& summaries) {
  std::string out =
      "scenario,defense,lan,qos_baseline,qos_unmitigated,qos_overheaded,"
      "qos_mitigated,E,O,ci95_baseline,ci95_unmitigated,ci95_overheaded,"
      "ci95_mitigated,ci95_E,ci95_O\n";
  for (const QuadSummary& s : summaries) {
    for (const QuadRow& row : s.rows) {
      out += s.scenario + "," + s.defense + "," + row.lan + "," +
             fmt_double(row.qos_baseline.mean) + "," +
             fmt_double(row.qos_unmitigated.mean) + "," +
             fmt_double(row.qos_overheaded.mean) + "," +
             fmt_double(row.qos_mitigated.mean) + "," + fmt_double(row.efficacy) +
             "," + fmt_double(row.overhead) + "," +
             fmt_double(row.qos_baseline.ci95) + "," +
             fmt_double(row.qos_unmitigated.ci95) + "," +
             fmt_double(row.qos_overheaded.ci95) + "," +
             fmt_double(row.qos_mitigated.ci95) + "," +
             fmt_double(row.efficacy_ci95) + "," + fmt_double(row.overhead_ci95) +
             "\n";
    }
  }
  return out;
}

std::string analytic_csv(const std::vector<AnalyticRow>& rows) {
  std::string out = "device,hash_rate,d,t_conn_s,ucpu_r02,ucpu_r1,ucpu_r5\n";
  for (const AnalyticRow& r : rows) {
    out += r.device + "," + fmt_double(r.hash_rate) + "," + fmt_u64(static_cast<std::uint64_t>(r.d)) +
           "," + fmt_double(r.t_conn_s) + "," + fmt_double(r.ucpu_r02) + "," +
           fmt_double(r.ucpu_r1) + "," + fmt_double(r.ucpu_r5) + "\n";
  }
  return out;
}

std::string decisions_csv(const std::vector<RunMetrics>& runs) {
  std::string out =
      "run_id,window_start_s,prefix,syn_rate,baseline,over_count,under_count,"
      "mode,selected_d,infeasible,deferred\n";
  for (const RunMetrics& run : runs) {
    for (const DecisionRecord& d : run.decisions) {
      out += run.run_id + "," + fmt_fixed(to_s(d.window_start), 6) + "," +
             d.prefix.str() + "," + fmt_fixed(d.syn_rate, 6) + "," +
             fmt_fixed(d.baseline, 6) + "," + fmt_u64(static_cast<std::uint64_t>(d.over_count)) +
             "," + fmt_u64(static_cast<std::uint64_t>(d.under_count)) + "," +
             (d.mode == PrefixMode::kNormal ? "normal" : "elevated") + "," +
             (d.selected ? fmt_u64(d.selected->bits) : std::string("-")) + "," +
             (d.infeasible ? "1" : "0") + "," + (d.deferred ? "1" : "0") + "\n";
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace synpow
