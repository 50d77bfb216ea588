#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oransim/engine.hpp"

namespace oransim {

struct SweepSpec {
    std::vector<PolicyKind> policies;
    std::vector<int> ue_counts;
    std::vector<std::uint64_t> seeds;
};

// `key = value` scenario file; every key also has a CLI flag / ORANSIM_* env
// override. Unknown keys are errors.
ScenarioConfig parse_scenario_file(const std::string& path);
void apply_scenario_kv(ScenarioConfig& cfg, const std::string& key,
                       const std::string& value, const std::string& where);

struct CellResult {
    RunSummary summary;
    std::vector<UeStats> ue_stats;
    bool ok = false;
    std::string error;
};

inline constexpr const char* kSummaryHeader =
    "policy,n_ues,seed,avg_ue_throughput_mbps,cell_throughput_mbps,avg_delay_ms,jain";
inline constexpr const char* kPerUeHeader =
    "policy,n_ues,seed,ue_id,direction,demand_class,throughput_mbps,mean_delay_ms,"
    "mean_mcs,tti_allocation_pct,mean_symbols";

// Runs every (policy, n_ues, seed) cell, writes summary.csv and per_ue.csv to
// out_dir and prints a summary table. Returns 0 iff all cells completed and
// the built-in sanity checks passed.
int run_experiment(const ScenarioConfig& base, const SweepSpec& sweep,
                   const std::string& out_dir, int jobs, std::ostream& log);

// Canonical experiment set: fig5.csv (throughput vs users), fig6.csv (delay vs
// users under cbr load), fig7_8.csv (7-UE PF per-user DL/UL stats).
int reproduce_figures(const ScenarioConfig& base, const std::string& out_dir, int jobs,
                      std::ostream& log);

// single scenario run with an optional in-process xApp, CSVs per run
int run_single(const ScenarioConfig& cfg, const std::optional<A1Policy>& a1,
               const std::string& out_dir, std::ostream& log);

std::vector<CellResult> run_sweep_cells(const ScenarioConfig& base, const SweepSpec& sweep,
                                        int jobs);

std::string format_csv_value(double v);

}  // namespace oransim
