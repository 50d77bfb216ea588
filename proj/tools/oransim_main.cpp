#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "oransim/e2_socket.hpp"
#include "oransim/engine.hpp"
#include "oransim/harness.hpp"

namespace {

using namespace oransim;

struct CommonOpts {
    std::string config_path;
    std::string policy;
    int ues = 0;
    std::int64_t seed = -1;
    std::int64_t ttis = 0;
    std::string out_dir = "out";
    std::string a1_path;
    std::string e2_socket;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "scenario config file (key = value)")
        ->envname("ORANSIM_CONFIG");
    cmd->add_option("--policy", o.policy, "scheduling policy: rr | mt | pf")
        ->envname("ORANSIM_POLICY");
    cmd->add_option("--ues", o.ues, "number of UEs")->envname("ORANSIM_UES");
    cmd->add_option("--seed", o.seed, "master RNG seed")->envname("ORANSIM_SEED");
    cmd->add_option("--ttis", o.ttis, "experiment duration in TTIs")
        ->envname("ORANSIM_TTIS");
    cmd->add_option("--out", o.out_dir, "output directory")->envname("ORANSIM_OUT");
    cmd->add_option("--a1-policy", o.a1_path, "A1 policy file driving the xApp")
        ->envname("ORANSIM_A1_POLICY");
    cmd->add_option("--e2-socket", o.e2_socket, "host:port for the E2 byte stream")
        ->envname("ORANSIM_E2_SOCKET");
    cmd->add_option("--jobs", o.jobs, "max concurrent sweep cells")
        ->envname("ORANSIM_JOBS");
}

ScenarioConfig build_config(const CommonOpts& o) {
    ScenarioConfig cfg =
        o.config_path.empty() ? ScenarioConfig{} : parse_scenario_file(o.config_path);
    if (!o.policy.empty() && !policy_from_name(o.policy, &cfg.policy))
        throw std::runtime_error("unknown policy: " + o.policy);
    if (o.ues > 0) cfg.n_ues = o.ues;
    if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
    if (o.ttis > 0) cfg.duration_ttis = static_cast<std::uint64_t>(o.ttis);
    const auto errs = cfg.validate();
    if (!errs.empty()) {
        std::ostringstream what;
        what << "invalid configuration:";
        for (const auto& e : errs) what << "\n  - " << e;
        throw std::runtime_error(what.str());
    }
    return cfg;
}

SweepSpec parse_sweep(const std::string& spec) {
    // "rr,mt,pf x 1-10 x seeds 1,2,3"; empty fields fall back to defaults
    SweepSpec s;
    s.policies = {PolicyKind::RoundRobin, PolicyKind::MaxThroughput,
                  PolicyKind::ProportionalFair};
    for (int n = 1; n <= 10; ++n) s.ue_counts.push_back(n);
    s.seeds = {1};
    if (spec.empty() || spec == "default") return s;
    throw std::runtime_error("only the default sweep grid is supported; use repeated "
                             "runs with --policy/--ues/--seed for custom cells");
}

int cmd_run(const CommonOpts& o, bool sweep_requested, const std::string& sweep_spec) {
    ScenarioConfig cfg = build_config(o);

    std::optional<A1Policy> a1;
    if (!o.a1_path.empty()) a1 = A1Policy::load(o.a1_path);

    if (sweep_requested) {
        SweepSpec sweep = parse_sweep(sweep_spec);
        if (o.seed >= 0) sweep.seeds = {static_cast<std::uint64_t>(o.seed)};
        if (o.ues > 0) sweep.ue_counts = {o.ues};
        if (!o.policy.empty()) sweep.policies = {cfg.policy};
        return run_experiment(cfg, sweep, o.out_dir, o.jobs, std::cout);
    }

    if (!o.e2_socket.empty()) {
        std::string host;
        int port = 0;
        if (!parse_socket_address(o.e2_socket, &host, &port))
            throw std::runtime_error("bad --e2-socket address: " + o.e2_socket);
        E2SocketServer server(port);
        std::cout << "E2 endpoint listening on 127.0.0.1:" << server.port()
                  << ", waiting for xApp...\n";
        if (!server.wait_for_client(30000))
            throw std::runtime_error("no xApp connected within 30 s");
        RunResult r = run(cfg, &server);
        std::cout << "run finished: cell=" << r.summary.cell_throughput_mbps
                  << " Mbps, jain=" << r.summary.jain << ", switches=" << r.switches.size()
                  << '\n';
        return 0;
    }

    return run_single(cfg, a1, o.out_dir, std::cout);
}

int cmd_xapp(const CommonOpts& o) {
    if (o.a1_path.empty()) throw std::runtime_error("xapp requires --a1-policy");
    if (o.e2_socket.empty()) throw std::runtime_error("xapp requires --e2-socket");
    std::string host;
    int port = 0;
    if (!parse_socket_address(o.e2_socket, &host, &port))
        throw std::runtime_error("bad --e2-socket address: " + o.e2_socket);

    Xapp xapp(A1Policy::load(o.a1_path), o.policy.empty() ? "rr" : o.policy);
    E2SocketClient client(host, port);
    int line_no = 0;
    while (!client.closed()) {
        auto line = client.read_line(1000);
        if (!line) continue;
        if (auto ctl = xapp.on_line(*line, ++line_no)) client.write_line(*ctl);
    }
    std::cout << "E2 stream closed; active policy: " << xapp.state().active_policy << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-cell 5G NR MAC scheduling simulator with an O-RAN-style "
                 "Near-RT RIC control loop"};
    app.require_subcommand(1);

    CommonOpts run_opts;
    std::string sweep_spec;
    auto* run_cmd = app.add_subcommand("run", "run one scenario or a sweep");
    add_common(run_cmd, run_opts);
    auto* sweep_flag =
        run_cmd->add_option("--sweep", sweep_spec,
                            "run the policy x ue-count sweep grid ('default')")
            ->expected(0, 1);

    CommonOpts fig_opts;
    auto* fig_cmd =
        app.add_subcommand("figures", "reproduce the throughput/delay/per-UE CSV set");
    add_common(fig_cmd, fig_opts);

    CommonOpts xapp_opts;
    auto* xapp_cmd =
        app.add_subcommand("xapp", "standalone xApp: connect to an E2 socket and "
                                   "apply an A1 policy");
    add_common(xapp_cmd, xapp_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed())
            return cmd_run(run_opts, sweep_flag->count() > 0, sweep_spec);
        if (fig_cmd->parsed())
            return reproduce_figures(build_config(fig_opts), fig_opts.out_dir,
                                     fig_opts.jobs, std::cout);
        if (xapp_cmd->parsed()) return cmd_xapp(xapp_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
