// Command-line front end: loads a scenario, runs the requested phase matrix,
// and writes per-run, summary and analytic CSV files.

#include <charconv>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synpow/metrics.hpp"
#include "synpow/network.hpp"
#include "synpow/report.hpp"
#include "synpow/runner.hpp"
#include "synpow/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

synpow::DefenseSpec parse_defense_flag(const std::string& text,
                                       synpow::DefenseSpec base) {
  if (text == "none") {
    base.mode = synpow::DefenseMode::kNone;
  } else if (text == "syncookies") {
    base.mode = synpow::DefenseMode::kSynCookies;
  } else if (text == "adaptive") {
    base.mode = synpow::DefenseMode::kAdaptivePow;
  } else if (text.rfind("staticpow:", 0) == 0) {
    const std::string num = text.substr(10);
    int d = -1;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), d);
    if (ec != std::errc{} || ptr != num.data() + num.size() || d < 0 || d > 32) {
      throw synpow::ValidationError({"--defense: bad difficulty in \"" + text +
                                     "\" (want staticpow:<0..32>)"});
    }
    base.mode = synpow::DefenseMode::kStaticPow;
    base.static_d = synpow::Difficulty{static_cast<std::uint8_t>(d)};
  } else {
    throw synpow::ValidationError(
        {"--defense: unknown mode \"" + text +
         "\" (want none|syncookies|staticpow:<d>|adaptive)"});
  }
  return base;
}

synpow::AttackVariant parse_attack_flag(const std::string& text) {
  if (text == "none") return synpow::AttackVariant::kNone;
  if (text == "curl") return synpow::AttackVariant::kCurlFlood;
  if (text == "cflood") return synpow::AttackVariant::kCFlood;
  if (text == "cflood-spoof") return synpow::AttackVariant::kCFloodSpoof;
  throw synpow::ValidationError({"--attack: unknown variant \"" + text +
                                 "\" (want none|curl|cflood|cflood-spoof)"});
}

std::vector<synpow::AnalyticRequest> build_analytic_extras(
    const std::vector<std::string>& devices, const std::vector<int>& ds) {
  std::vector<synpow::AnalyticRequest> out;
  for (const std::string& spec : devices) {
    const auto colon = spec.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
      throw synpow::ValidationError(
          {"--device: want <name>:<hashes_per_second>, got \"" + spec + "\""});
    }
    const std::string name = spec.substr(0, colon);
    const std::string num = spec.substr(colon + 1);
    double rate = 0;
    try {
      std::size_t used = 0;
      rate = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
      throw synpow::ValidationError(
          {"--device: bad hash rate in \"" + spec + "\""});
    }
    if (!(rate > 0)) {
      throw synpow::ValidationError(
          {"--device: hash rate must be positive in \"" + spec + "\""});
    }
    for (int d : ds) {
      if (d < 0 || d > 32) {
        throw synpow::ValidationError({"--d: difficulty out of range 0..32"});
      }
      out.push_back({name, rate, d});
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Deterministic packet-level simulator for SYN-flood defenses: "
      "proof-of-work SYN admission at edge switches with an adaptive "
      "difficulty controller, plus SYN-cookie and static baselines."};

  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::string phases_text = "all";
  std::optional<std::string> defense_text;
  std::optional<std::string> attack_text;
  std::string out_dir = "out";
  std::optional<double> scale;
  bool emit_analytic = false;
  std::vector<std::string> device_specs;
  std::vector<int> extra_ds;

  app.add_option("--scenario", scenario_path, "Scenario JSON file");
  app.add_option("--seed", seed, "Override the scenario's base seed");
  app.add_option("--runs", runs, "Override the number of paired runs");
  app.add_option("--phases", phases_text,
                 "Comma-separated subset of baseline,unmitigated,overheaded,"
                 "mitigated, or \"all\"");
  app.add_option("--defense", defense_text,
                 "Override defense: none|syncookies|staticpow:<d>|adaptive");
  app.add_option("--attack", attack_text,
                 "Override attack: none|curl|cflood|cflood-spoof");
  app.add_option("--out", out_dir, "Output directory for CSV files");
  app.add_option("--scale", scale,
                 "Time-dilation factor (>1 shortens simulated spans while "
                 "preserving ratios)");
  app.add_flag("--emit-analytic-table", emit_analytic,
               "Write the closed-form device cost table (analytic.csv)");
  app.add_option("--device", device_specs,
                 "Extra analytic device as <name>:<hashes_per_second> "
                 "(repeatable; combined with each --d)");
  app.add_option("--d", extra_ds, "Extra analytic difficulty (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  try {
    std::filesystem::create_directories(out_dir);

    if (emit_analytic) {
      const auto extras = build_analytic_extras(device_specs, extra_ds);
      const std::string path = out_dir + "/analytic.csv";
      synpow::write_text_file(path, synpow::analytic_csv(
                                        synpow::analytic_cost_table(extras)));
      std::cout << "wrote " << path << "\n";
    } else if (!device_specs.empty() || !extra_ds.empty()) {
      throw synpow::ValidationError(
          {"--device/--d only apply together with --emit-analytic-table"});
    }

    if (scenario_path.empty()) {
      if (!emit_analytic) {
        std::cerr << "error: --scenario is required (or use "
                     "--emit-analytic-table alone)\n";
        return kExitValidation;
      }
      return kExitOk;
    }

    synpow::ScenarioConfig cfg = synpow::load_scenario_file(scenario_path);
    if (seed) cfg.seed = *seed;
    if (runs) cfg.runs = *runs;
    if (scale) cfg.scale = *scale;
    if (defense_text) cfg.defense = parse_defense_flag(*defense_text, cfg.defense);
    if (attack_text) cfg.attack.variant = parse_attack_flag(*attack_text);
    const std::vector<synpow::Phase> phases = synpow::parse_phases(phases_text);

    synpow::validate(cfg);
    cfg = synpow::apply_scale(cfg);

    const auto matrix = synpow::run_matrix(cfg, phases);

    std::vector<synpow::RunMetrics> all_runs;
    for (const auto& [phase, phase_runs] : matrix) {
      (void)phase;
      all_runs.insert(all_runs.end(), phase_runs.begin(), phase_runs.end());
    }
    synpow::write_text_file(out_dir + "/per_run.csv",
                            synpow::per_run_csv(all_runs));
    std::cout << "wrote " << out_dir << "/per_run.csv (" << all_runs.size()
              << " runs)\n";
    synpow::write_text_file(out_dir + "/decisions.csv",
                            synpow::decisions_csv(all_runs));
    std::cout << "wrote " << out_dir << "/decisions.csv\n";

    if (matrix.size() == 4) {
      const synpow::QuadSummary quad = synpow::summarize_matrix(matrix);
      synpow::write_text_file(out_dir + "/summary.csv",
                              synpow::summary_csv({quad}));
      std::cout << "wrote " << out_dir << "/summary.csv\n";
      for (const synpow::QuadRow& row : quad.rows) {
        std::cout << "  " << row.lan << ": E=" << synpow::fmt_fixed(row.efficacy, 4)
                  << " O=" << synpow::fmt_fixed(row.overhead, 4) << "\n";
      }
    } else {
      std::cout << "phase subset requested; summary.csv skipped\n";
    }
    return kExitOk;
  } catch (const synpow::ValidationError& e) {
    std::cerr << "validation error:\n";
    for (const std::string& p : e.problems()) std::cerr << "  - " << p << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
