#pragma once

#include <map>
#include <string>
#include <vector>

#include "synpow/metrics.hpp"
#include "synpow/scenario.hpp"

namespace synpow {

// The four-phase experiment matrix: efficacy compares mitigated against
// unmitigated, overhead compares overheaded (defense on, no attack)
// against baseline (nothing on).
enum class Phase : std::uint8_t { kBaseline, kUnmitigated, kOverheaded, kMitigated };

std::string phase_name(Phase phase);

// comma-separated list of phase names, or "all"; throws ValidationError
std::vector<Phase> parse_phases(const std::string& text);

// label for the configured defense as it appears in CSV output
std::string defense_label(const DefenseSpec& defense);

// per-run seed: derived from the scenario seed and run index only, so runs
// pair up across phases and defenses for the same index
std::uint64_t run_seed(std::uint64_t scenario_seed, int run_index);

// Executes one run (scale already applied by the caller via apply_scale).
RunMetrics run_one(const ScenarioConfig& cfg, Phase phase, int run_index);

std::vector<RunMetrics> run_phase(const ScenarioConfig& cfg, Phase phase);

std::map<Phase, std::vector<RunMetrics>> run_matrix(const ScenarioConfig& cfg,
                                                    const std::vector<Phase>& phases);

// compute_quad over a full matrix (requires all four phases present)
QuadSummary summarize_matrix(const std::map<Phase, std::vector<RunMetrics>>& matrix);

}  // namespace synpow
