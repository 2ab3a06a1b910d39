#include "synpow/runner.hpp"

#include <sstream>
#include <utility>

#include "synpow/network.hpp"
#include "synpow/rng.hpp"

namespace synpow {

std::string phase_name(Phase phase) {
  switch (phase) {
    case Phase::kBaseline: return "baseline";
    case Phase::kUnmitigated: return "unmitigated";
    case Phase::kOverheaded: return "overheaded";
    case Phase::kMitigated: return "mitigated";
  }
  return "?";
}

std::vector<Phase> parse_phases(const std::string& text) {
  if (text == "all") {
    return {Phase::kBaseline, Phase::kUnmitigated, Phase::kOverheaded,
            Phase::kMitigated};
  }
  std::vector<Phase> out;
  std::vector<std::string> problems;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "baseline") {
      out.push_back(Phase::kBaseline);
    } else if (item == "unmitigated") {
      out.push_back(Phase::kUnmitigated);
    } else if (item == "overheaded") {
      out.push_back(Phase::kOverheaded);
    } else if (item == "mitigated") {
      out.push_back(Phase::kMitigated);
    } else {
      problems.push_back("phases: unknown phase \"" + item + "\"");
    }
  }
  if (out.empty()) problems.push_back("phases: empty phase list");
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return out;
}

std::string defense_label(const DefenseSpec& defense) {
  std::string label = defense_mode_name(defense.mode);
  if (defense.mode == DefenseMode::kStaticPow) {
    label += ":" + std::to_string(static_cast<int>(defense.static_d.bits));
  }
  return label;
}

std::uint64_t run_seed(std::uint64_t scenario_seed, int run_index) {
  return mix64(scenario_seed ^ mix64(static_cast<std::uint64_t>(run_index) + 1));
}

RunMetrics run_one(const ScenarioConfig& cfg, Phase phase, int run_index) {
  const bool defense_active =
      phase == Phase::kOverheaded || phase == Phase::kMitigated;
  const bool attack_active =
      phase == Phase::kUnmitigated || phase == Phase::kMitigated;

  Network net(cfg, defense_active, attack_active, run_seed(cfg.seed, run_index));
  net.run();
  RunMetrics m = net.collect();

  m.seed = run_seed(cfg.seed, run_index);
  m.scenario = cfg.name;
  m.defense = defense_label(cfg.defense);
  m.attack = attack_active ? attack_variant_name(cfg.attack.variant) : "none";
  m.phase = phase_name(phase);
  m.run_id = m.scenario + "-" + m.defense + "-" + m.attack + "-" + m.phase +
             "-r" + std::to_string(run_index);
  return m;
}

std::vector<RunMetrics> run_phase(const ScenarioConfig& cfg, Phase phase) {
  std::vector<RunMetrics> out;
  out.reserve(static_cast<std::size_t>(cfg.runs));
  for (int i = 0; i < cfg.runs; ++i) out.push_back(run_one(cfg, phase, i));
  return out;
}

std::map<Phase, std::vector<RunMetrics>> run_matrix(
    const ScenarioConfig& cfg, const std::vector<Phase>& phases) {
  std::map<Phase, std::vector<RunMetrics>> out;
  for (Phase phase : phases) {
    if (!out.count(phase)) out.emplace(phase, run_phase(cfg, phase));
  }
  return out;
}

QuadSummary summarize_matrix(const std::map<Phase, std::vector<RunMetrics>>& matrix) {
  for (Phase p : {Phase::kBaseline, Phase::kUnmitigated, Phase::kOverheaded,
                  Phase::kMitigated}) {
    if (!matrix.count(p)) {
      throw MismatchedConfigs("missing phase " + phase_name(p));
    }
  }
  return compute_quad(matrix.at(Phase::kBaseline), matrix.at(Phase::kUnmitigated),
                      matrix.at(Phase::kOverheaded), matrix.at(Phase::kMitigated));
}

}  // namespace synpow
