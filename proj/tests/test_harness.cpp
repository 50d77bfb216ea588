#include <doctest.h>

#include <stdexcept>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oransim/harness.hpp"

using namespace oransim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& tag) {
    const fs::path p = fs::temp_directory_path() / ("oransim_test_" + tag);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

ScenarioConfig quick_cfg() {
    ScenarioConfig cfg;
    cfg.duration_ttis = 200;
    cfg.warmup_ttis = 20;
    return cfg;
}

}  // namespace

TEST_CASE("csv values use six significant digits") {
    CHECK(format_csv_value(0.0) == "0");
    CHECK(format_csv_value(19.188) == "19.188");
    CHECK(format_csv_value(1.0 / 3.0) == "0.333333");
    CHECK(format_csv_value(123456789.0) == "1.23457e+08");
}

TEST_CASE("scenario files parse into configs") {
    const fs::path dir = temp_dir("cfg");
    const fs::path file = dir / "scenario.cfg";
    {
        std::ofstream out(file);
        out << "# comment line\n"
               "n_ues = 7\n"
               "policy = pf   # trailing comment\n"
               "traffic_mode = cbr\n"
               "cbr_rate_mbps = 11.5\n"
               "placement = spread\n"
               "tx_power_dbm = 0\n"
               "duration_ttis = 500\n";
    }
    const ScenarioConfig cfg = parse_scenario_file(file.string());
    CHECK(cfg.n_ues == 7);
    CHECK(cfg.policy == PolicyKind::ProportionalFair);
    CHECK(cfg.traffic.kind == TrafficMode::Cbr);
    CHECK(cfg.traffic.cbr_rate_mbps == doctest::Approx(11.5));
    CHECK(cfg.placement == Placement::Spread);
    CHECK(cfg.tx_power_dbm == doctest::Approx(0.0));
    CHECK(cfg.duration_ttis == 500);

    SUBCASE("unknown keys are rejected") {
        ScenarioConfig c;
        CHECK_THROWS_WITH_AS(apply_scenario_kv(c, "frobnicate", "1", "here"),
                             doctest::Contains("unknown config key"), std::runtime_error);
    }
    SUBCASE("bad numerics are rejected") {
        ScenarioConfig c;
        CHECK_THROWS_AS(apply_scenario_kv(c, "n_ues", "many", "here"), std::runtime_error);
        CHECK_THROWS_AS(apply_scenario_kv(c, "policy", "edf", "here"), std::runtime_error);
    }
    SUBCASE("missing files are errors") {
        CHECK_THROWS_AS(parse_scenario_file((dir / "absent.cfg").string()),
                        std::runtime_error);
    }
}

TEST_CASE("sweep produces one result per cell") {
    const SweepSpec sweep{
        {PolicyKind::RoundRobin, PolicyKind::MaxThroughput, PolicyKind::ProportionalFair},
        {1, 2},
        {1}};
    const auto results = run_sweep_cells(quick_cfg(), sweep, 2);
    REQUIRE(results.size() == 6);
    for (const auto& r : results) {
        CHECK(r.ok);
        CHECK(r.summary.cell_throughput_mbps > 0.0);
        CHECK(r.ue_stats.size() == static_cast<std::size_t>(2 * r.summary.n_ues));
    }
}

TEST_CASE("run_experiment writes the expected CSVs deterministically") {
    const SweepSpec sweep{{PolicyKind::RoundRobin, PolicyKind::ProportionalFair}, {3}, {1, 2}};
    const fs::path dir_a = temp_dir("exp_a");
    const fs::path dir_b = temp_dir("exp_b");
    std::ostringstream log_a, log_b;
    CHECK(run_experiment(quick_cfg(), sweep, dir_a.string(), 2, log_a) == 0);
    CHECK(run_experiment(quick_cfg(), sweep, dir_b.string(), 1, log_b) == 0);

    const std::string summary = slurp(dir_a / "summary.csv");
    CHECK(summary.rfind(std::string(kSummaryHeader) + "\n", 0) == 0);
    CHECK(std::count(summary.begin(), summary.end(), '\n') == 5);  // header + 4 cells
    const std::string per_ue = slurp(dir_a / "per_ue.csv");
    CHECK(per_ue.rfind(std::string(kPerUeHeader) + "\n", 0) == 0);
    CHECK(std::count(per_ue.begin(), per_ue.end(), '\n') == 1 + 4 * 3 * 2);

    // byte-identical rerun, job count included
    CHECK(summary == slurp(dir_b / "summary.csv"));
    CHECK(per_ue == slurp(dir_b / "per_ue.csv"));

    SUBCASE("empty sweeps are rejected") {
        std::ostringstream log;
        CHECK(run_experiment(quick_cfg(), SweepSpec{}, dir_a.string(), 1, log) == 2);
    }
}

TEST_CASE("run_single writes summary, per-UE, and switch CSVs") {
    const fs::path dir = temp_dir("single");
    std::ostringstream log;
    ScenarioConfig cfg = quick_cfg();
    cfg.n_ues = 4;
    cfg.policy = PolicyKind::MaxThroughput;

    A1Policy a1;
    a1.mode = A1Policy::Mode::Static;
    a1.static_policy = "rr";
    CHECK(run_single(cfg, a1, dir.string(), log) == 0);

    const std::string summary = slurp(dir / "summary.csv");
    CHECK(summary.rfind(std::string(kSummaryHeader) + "\n", 0) == 0);
    const std::string switches = slurp(dir / "switches.csv");
    CHECK(switches.rfind("effective_tti,from,to\n", 0) == 0);
    CHECK(switches.find("mt,rr") != std::string::npos);
    CHECK(log.str().find("switches=1") != std::string::npos);
}
