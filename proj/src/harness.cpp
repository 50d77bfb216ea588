#include "oransim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace oransim {

namespace {

namespace fs = std::filesystem;

double to_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw std::runtime_error(where + ": not a number: '" + v + "'");
    }
}

long long to_int(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (...) {
        throw std::runtime_error(where + ": not an integer: '" + v + "'");
    }
}

}  // namespace

void apply_scenario_kv(ScenarioConfig& cfg, const std::string& key,
                       const std::string& value, const std::string& where) {
    if (key == "bandwidth_hz") cfg.bandwidth_hz = to_double(value, where);
    else if (key == "mu") cfg.mu = static_cast<int>(to_int(value, where));
    else if (key == "carrier_freq_ghz") cfg.carrier_freq_ghz = to_double(value, where);
    else if (key == "n_prb") cfg.n_prb = static_cast<int>(to_int(value, where));
    else if (key == "rbg_size") cfg.rbg_size = static_cast<int>(to_int(value, where));
    else if (key == "tx_power_dbm") cfg.tx_power_dbm = to_double(value, where);
    else if (key == "noise_figure_db") cfg.noise_figure_db = to_double(value, where);
    else if (key == "cell_radius_m") cfg.cell_radius_m = to_double(value, where);
    else if (key == "shadowing_sigma_db") cfg.shadowing_sigma_db = to_double(value, where);
    else if (key == "cqi_backoff_db") cfg.cqi_backoff_db = to_double(value, where);
    else if (key == "n_ues") cfg.n_ues = static_cast<int>(to_int(value, where));
    else if (key == "packet_size_bytes")
        cfg.packet_size_bytes = static_cast<int>(to_int(value, where));
    else if (key == "duration_ttis")
        cfg.duration_ttis = static_cast<std::uint64_t>(to_int(value, where));
    else if (key == "warmup_ttis")
        cfg.warmup_ttis = static_cast<std::uint64_t>(to_int(value, where));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(value, where));
    else if (key == "pf_time_constant")
        cfg.pf_time_constant = static_cast<int>(to_int(value, where));
    else if (key == "report_period_ttis")
        cfg.report_period_ttis = static_cast<int>(to_int(value, where));
    else if (key == "demand_class_override")
        cfg.demand_class_override = static_cast<int>(to_int(value, where));
    else if (key == "cbr_rate_mbps") cfg.traffic.cbr_rate_mbps = to_double(value, where);
    else if (key == "mcs_table_path") cfg.mcs_table_path = value;
    else if (key == "policy") {
        if (!policy_from_name(value, &cfg.policy))
            throw std::runtime_error(where + ": unknown policy '" + value + "'");
    } else if (key == "traffic_mode") {
        if (value == "full_buffer") cfg.traffic.kind = TrafficMode::FullBuffer;
        else if (value == "cbr") cfg.traffic.kind = TrafficMode::Cbr;
        else throw std::runtime_error(where + ": unknown traffic mode '" + value + "'");
    } else if (key == "placement") {
        if (value == "annulus") cfg.placement = Placement::Annulus;
        else if (value == "spread") cfg.placement = Placement::Spread;
        else throw std::runtime_error(where + ": unknown placement '" + value + "'");
    } else {
        throw std::runtime_error(where + ": unknown config key '" + key + "'");
    }
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    ScenarioConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key, eq, value;
        if (!(ls >> key)) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        if (!(ls >> eq >> value) || eq != "=")
            throw std::runtime_error(where + ": expected 'key = value'");
        apply_scenario_kv(cfg, key, value, where);
    }
    return cfg;
}

std::string format_csv_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<CellResult> run_sweep_cells(const ScenarioConfig& base, const SweepSpec& sweep,
                                        int jobs) {
    struct Cell {
        PolicyKind policy;
        int n_ues;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (PolicyKind p : sweep.policies)
        for (int n : sweep.ue_counts)
            for (std::uint64_t s : sweep.seeds) cells.push_back({p, n, s});

    std::vector<CellResult> results(cells.size());
    if (jobs < 1) jobs = 1;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            ScenarioConfig cfg = base;
            cfg.policy = cells[i].policy;
            cfg.n_ues = cells[i].n_ues;
            cfg.seed = cells[i].seed;
            try {
                RunResult r = run(cfg);
                results[i] = {r.summary, std::move(r.ue_stats), true, ""};
            } catch (const std::exception& e) {
                results[i].ok = false;
                results[i].error = e.what();
                results[i].summary.policy = cfg.policy;
                results[i].summary.n_ues = cfg.n_ues;
                results[i].summary.seed = cfg.seed;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

namespace {

void write_summary_row(std::ostream& out, const RunSummary& s) {
    out << policy_name(s.policy) << ',' << s.n_ues << ',' << s.seed << ','
        << format_csv_value(s.avg_ue_throughput_mbps) << ','
        << format_csv_value(s.cell_throughput_mbps) << ','
        << format_csv_value(s.avg_delay_ms) << ',' << format_csv_value(s.jain) << '\n';
}

void write_per_ue_rows(std::ostream& out, const RunSummary& s,
                       const std::vector<UeStats>& stats) {
    for (const auto& u : stats) {
        out << policy_name(s.policy) << ',' << s.n_ues << ',' << s.seed << ',' << u.ue_id
            << ',' << direction_name(u.dir) << ',' << u.demand_class << ','
            << format_csv_value(u.throughput_mbps) << ','
            << format_csv_value(u.mean_delay_ms) << ',' << format_csv_value(u.mean_mcs)
            << ',' << format_csv_value(u.tti_allocation_pct) << ','
            << format_csv_value(u.mean_symbols_per_alloc) << '\n';
    }
}

// per-UE throughput can never beat every flexible symbol at the top MCS
bool capacity_check(const ScenarioConfig& base, const std::vector<CellResult>& results) {
    const double slot_ms = slot_duration_ms(base.mu);
    const double bound =
        kFlexibleSymbols * static_cast<double>(transport_block_bits(28, 1, base.n_prb)) /
        (slot_ms * 1e3);
    for (const auto& r : results) {
        if (!r.ok) continue;
        for (const auto& u : r.ue_stats)
            if (u.throughput_mbps > bound) return false;
    }
    return true;
}

}  // namespace

int run_experiment(const ScenarioConfig& base, const SweepSpec& sweep,
                   const std::string& out_dir, int jobs, std::ostream& log) {
    if (sweep.policies.empty() || sweep.ue_counts.empty() || sweep.seeds.empty()) {
        log << "error: sweep needs at least one policy, UE count, and seed\n";
        return 2;
    }
    fs::create_directories(out_dir);
    const auto results = run_sweep_cells(base, sweep, jobs);

    std::ofstream summary(fs::path(out_dir) / "summary.csv");
    std::ofstream per_ue(fs::path(out_dir) / "per_ue.csv");
    summary << kSummaryHeader << '\n';
    per_ue << kPerUeHeader << '\n';

    int failures = 0;
    for (const auto& r : results) {
        if (!r.ok) {
            ++failures;
            log << "cell failed (policy=" << policy_name(r.summary.policy)
                << " n_ues=" << r.summary.n_ues << " seed=" << r.summary.seed
                << "): " << r.error << '\n';
            continue;
        }
        write_summary_row(summary, r.summary);
        write_per_ue_rows(per_ue, r.summary, r.ue_stats);
    }

    log << "policy  n_ues  seed  avg_ue_mbps  cell_mbps  delay_ms  jain\n";
    for (const auto& r : results) {
        if (!r.ok) continue;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%-6s  %5d  %4llu  %11.3f  %9.3f  %8.3f  %.3f\n",
                      policy_name(r.summary.policy), r.summary.n_ues,
                      static_cast<unsigned long long>(r.summary.seed),
                      r.summary.avg_ue_throughput_mbps, r.summary.cell_throughput_mbps,
                      r.summary.avg_delay_ms, r.summary.jain);
        log << buf;
    }

    if (!capacity_check(base, results)) {
        log << "error: per-UE throughput exceeded the capacity bound\n";
        return 1;
    }
    return failures == 0 ? 0 : 1;
}

int run_single(const ScenarioConfig& cfg, const std::optional<A1Policy>& a1,
               const std::string& out_dir, std::ostream& log) {
    fs::create_directories(out_dir);
    std::unique_ptr<InProcessE2> e2;
    if (a1) e2 = std::make_unique<InProcessE2>(*a1, policy_name(cfg.policy));
    RunResult r = run(cfg, e2.get());

    std::ofstream summary(fs::path(out_dir) / "summary.csv");
    std::ofstream per_ue(fs::path(out_dir) / "per_ue.csv");
    summary << kSummaryHeader << '\n';
    per_ue << kPerUeHeader << '\n';
    write_summary_row(summary, r.summary);
    write_per_ue_rows(per_ue, r.summary, r.ue_stats);

    std::ofstream switches(fs::path(out_dir) / "switches.csv");
    switches << "effective_tti,from,to\n";
    for (const auto& sw : r.switches)
        switches << sw.effective_tti << ',' << policy_name(sw.from) << ','
                 << policy_name(sw.to) << '\n';

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "policy=%s n_ues=%d avg_ue=%.3f Mbps cell=%.3f Mbps delay=%.3f ms "
                  "jain=%.3f switches=%zu\n",
                  policy_name(cfg.policy), cfg.n_ues, r.summary.avg_ue_throughput_mbps,
                  r.summary.cell_throughput_mbps, r.summary.avg_delay_ms, r.summary.jain,
                  r.switches.size());
    log << buf;
    return 0;
}

int reproduce_figures(const ScenarioConfig& base, const std::string& out_dir, int jobs,
                      std::ostream& log) {
    fs::create_directories(out_dir);
    const std::vector<PolicyKind> all_policies{PolicyKind::RoundRobin,
                                               PolicyKind::MaxThroughput,
                                               PolicyKind::ProportionalFair};
    const std::vector<int> ue_counts{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

    // Saturated throughput vs number of users. Every UE carries the top demand
    // class so the cell is loaded from the first user on; with mixed classes
    // the per-UE average would keep rising until the slot fills up.
    ScenarioConfig fig5_cfg = base;
    fig5_cfg.traffic.kind = TrafficMode::FullBuffer;
    fig5_cfg.demand_class_override = 3;
    const auto fig5 = run_sweep_cells(fig5_cfg, {all_policies, ue_counts, seeds}, jobs);

    // delay vs number of users at 60% of single-UE capacity
    ScenarioConfig fig6_cfg = base;
    fig6_cfg.traffic.kind = TrafficMode::Cbr;
    fig6_cfg.demand_class_override = 3;
    const double single_ue_capacity_mbps =
        3.0 * static_cast<double>(transport_block_bits(28, 1, base.n_prb)) /
        (slot_duration_ms(base.mu) * 1e3);
    fig6_cfg.traffic.cbr_rate_mbps = 0.6 * single_ue_capacity_mbps;
    const auto fig6 = run_sweep_cells(fig6_cfg, {all_policies, ue_counts, seeds}, jobs);

    // per-user DL/UL statistics, 7 UEs under PF
    ScenarioConfig fig78_cfg = base;
    fig78_cfg.traffic.kind = TrafficMode::FullBuffer;
    fig78_cfg.policy = PolicyKind::ProportionalFair;
    fig78_cfg.n_ues = 7;
    RunResult fig78 = run(fig78_cfg);

    auto seed_mean = [&](const std::vector<CellResult>& cells, PolicyKind p, int n,
                         auto field) {
        double sum = 0.0;
        int cnt = 0;
        for (const auto& c : cells) {
            if (!c.ok || c.summary.policy != p || c.summary.n_ues != n) continue;
            sum += field(c.summary);
            ++cnt;
        }
        return cnt > 0 ? sum / cnt : 0.0;
    };

    int failures = 0;
    for (const auto& cells : {std::cref(fig5), std::cref(fig6)})
        for (const auto& c : cells.get())
            if (!c.ok) {
                ++failures;
                log << "figure cell failed: " << c.error << '\n';
            }

    {
        std::ofstream f(fs::path(out_dir) / "fig5.csv");
        f << "policy,n_ues,avg_ue_throughput_mbps,cell_throughput_div_n_mbps\n";
        for (PolicyKind p : all_policies)
            for (int n : ue_counts) {
                const double avg = seed_mean(fig5, p, n,
                                             [](const RunSummary& s) {
                                                 return s.avg_ue_throughput_mbps;
                                             });
                const double cell_div_n =
                    seed_mean(fig5, p, n,
                              [](const RunSummary& s) { return s.cell_throughput_mbps; }) /
                    n;
                f << policy_name(p) << ',' << n << ',' << format_csv_value(avg) << ','
                  << format_csv_value(cell_div_n) << '\n';
            }
    }
    {
        std::ofstream f(fs::path(out_dir) / "fig6.csv");
        f << "policy,n_ues,avg_delay_ms\n";
        for (PolicyKind p : all_policies)
            for (int n : ue_counts)
                f << policy_name(p) << ',' << n << ','
                  << format_csv_value(seed_mean(
                         fig6, p, n, [](const RunSummary& s) { return s.avg_delay_ms; }))
                  << '\n';
    }
    {
        std::ofstream f(fs::path(out_dir) / "fig7_8.csv");
        f << "ue_id,direction,demand_class,throughput_mbps,mean_delay_ms,mean_mcs,"
             "tti_allocation_pct,mean_symbols\n";
        for (const auto& u : fig78.ue_stats)
            f << u.ue_id << ',' << direction_name(u.dir) << ',' << u.demand_class << ','
              << format_csv_value(u.throughput_mbps) << ','
              << format_csv_value(u.mean_delay_ms) << ',' << format_csv_value(u.mean_mcs)
              << ',' << format_csv_value(u.tti_allocation_pct) << ','
              << format_csv_value(u.mean_symbols_per_alloc) << '\n';
    }

    log << "figure CSVs written to " << out_dir << '\n';
    return failures == 0 ? 0 : 1;
}

}  // namespace oransim
