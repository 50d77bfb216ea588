#include "oransim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oransim/rng.hpp"

namespace oransim {

std::vector<std::string> ScenarioConfig::validate() const {
    std::vector<std::string> errs;
    if (mu < 0 || mu > 4) errs.push_back("mu must be in [0, 4]");
    if (bandwidth_hz <= 0) errs.push_back("bandwidth_hz must be positive");
    if (n_prb < 1) errs.push_back("n_prb must be at least 1");
    if (rbg_size < 1) errs.push_back("rbg_size must be at least 1");
    if (mu >= 0 && mu <= 4 &&
        n_prb * 12.0 * 15e3 * (1 << mu) > bandwidth_hz)
        errs.push_back("n_prb does not fit in the channel bandwidth");
    if (n_gnb != 1) errs.push_back("exactly one gNB is supported");
    if (n_ues < 1 || n_ues > 64) errs.push_back("n_ues must be in [1, 64]");
    if (packet_size_bytes < 1) errs.push_back("packet_size_bytes must be positive");
    if (duration_ttis < 1) errs.push_back("duration_ttis must be at least 1");
    if (warmup_ttis >= duration_ttis && duration_ttis > 1)
        errs.push_back("warmup_ttis must be smaller than duration_ttis");
    if (cell_radius_m <= 10.0) errs.push_back("cell_radius_m must exceed 10 m");
    if (shadowing_sigma_db < 0) errs.push_back("shadowing_sigma_db must be non-negative");
    if (pf_time_constant < 1) errs.push_back("pf_time_constant must be at least 1");
    if (report_period_ttis < 1) errs.push_back("report_period_ttis must be at least 1");
    if (traffic.kind == TrafficMode::Cbr && traffic.cbr_rate_mbps < 0)
        errs.push_back("cbr_rate_mbps must be non-negative");
    if (demand_class_override < 0 || demand_class_override > 3)
        errs.push_back("demand_class_override must be in [0, 3]");
    return errs;
}

void InProcessE2::to_xapp(const std::string& line) {
    if (auto ctl = xapp_.on_line(line, ++line_no_)) pending_controls_.push_back(*ctl);
}

std::optional<std::string> InProcessE2::from_xapp() {
    if (pending_controls_.empty()) return std::nullopt;
    std::string line = std::move(pending_controls_.front());
    pending_controls_.pop_front();
    return line;
}

SimState setup(const ScenarioConfig& cfg) {
    const auto errs = cfg.validate();
    if (!errs.empty()) {
        std::string what = "invalid scenario config:";
        for (const auto& e : errs) what += "\n  - " + e;
        throw std::invalid_argument(what);
    }

    SimState st;
    st.cfg = cfg;
    st.mcs_table =
        cfg.mcs_table_path.empty() ? McsTable::builtin() : McsTable::load(cfg.mcs_table_path);
    st.slot_ms = slot_duration_ms(cfg.mu);
    st.noise_dbm = noise_power_dbm(cfg.bandwidth_hz, cfg.noise_figure_db);
    st.active_policy = cfg.policy;

    const auto positions = cfg.placement == Placement::Annulus
                               ? place_ues(cfg.n_ues, cfg.cell_radius_m, cfg.seed)
                               : place_ues_spread(cfg.n_ues, 10.0, cfg.cell_radius_m);
    auto profiles = assign_demand_profiles(cfg.n_ues);
    if (cfg.demand_class_override > 0)
        for (auto& p : profiles) p.symbols_per_slot = cfg.demand_class_override;

    RngStream shadow_rng(cfg.seed, "shadowing");
    st.ues.resize(cfg.n_ues);
    for (int i = 0; i < cfg.n_ues; ++i) {
        UeRuntime& ue = st.ues[i];
        ue.position = positions[i];
        ue.shadowing_db = cfg.shadowing_sigma_db > 0
                              ? shadow_rng.normal(0.0, cfg.shadowing_sigma_db)
                              : 0.0;
        const double pl = pathloss_los_db(ue.position.distance(), cfg.carrier_freq_ghz);
        const double snr =
            compute_snr_db(cfg.tx_power_dbm, pl, ue.shadowing_db, st.noise_dbm);
        ue.link = make_link_quality(snr, cfg.cqi_backoff_db, st.mcs_table);
        ue.profile = profiles[i];
        for (Direction d : {Direction::Dl, Direction::Ul}) {
            const int di = d == Direction::Ul ? 1 : 0;
            const double mix = d == Direction::Dl ? ue.profile.direction_mix
                                                  : 1.0 - ue.profile.direction_mix;
            ue.arrivals[di] =
                ArrivalProcess(i, d, cfg.traffic, cfg.packet_size_bytes, 2.0 * mix);
            ue.pf_avg_rate[di] = 1.0;
        }
    }
    return st;
}

namespace {

int dir_index(Direction d) { return d == Direction::Ul ? 1 : 0; }

long long full_buffer_threshold(const SimState& st, const UeRuntime& ue) {
    // one slot's worth of demand at the top MCS keeps every grant usable
    const int top_mcs = st.mcs_table.size() - 1;
    return ue.profile.symbols_per_slot *
           transport_block_bits(top_mcs, 1, st.cfg.n_prb, st.mcs_table);
}

void apply_policy(SimState& st, PolicyKind to, TtiIndex effective) {
    if (st.active_policy == to) return;
    st.switches.push_back({effective, st.active_policy, to});
    st.active_policy = to;
    // stale scheduler state would bias the incoming policy
    st.rr_cursor[0] = RrCursor{};
    st.rr_cursor[1] = RrCursor{};
    for (auto& ue : st.ues) {
        ue.pf_avg_rate[0] = 1.0;
        ue.pf_avg_rate[1] = 1.0;
    }
}

Indication build_report(const SimState& st, TtiIndex from_tti, TtiIndex end_tti) {
    std::vector<DemandProfile> profiles(st.ues.size());
    for (std::size_t i = 0; i < st.ues.size(); ++i) profiles[i] = st.ues[i].profile;
    const auto stats = collect_ue_stats(st.grant_log, st.records, profiles,
                                        static_cast<int>(st.ues.size()), from_tti, end_tti,
                                        st.cfg.mu);
    Indication ind;
    ind.tti = end_tti - 1;
    ind.window_index = from_tti / st.cfg.report_period_ttis;

    std::vector<double> per_ue(st.ues.size(), 0.0);
    double delay_sum = 0.0;
    long long delay_n = 0;
    const double window_ms = static_cast<double>(end_tti - from_tti) * st.slot_ms;
    const double w0 = static_cast<double>(from_tti) * st.slot_ms;
    const double w1 = static_cast<double>(end_tti) * st.slot_ms;
    for (const auto& r : st.records) {
        if (r.t_r_ms <= w0 || r.t_r_ms > w1) continue;
        delay_sum += r.t_r_ms - r.t_t_ms;
        ++delay_n;
    }
    (void)window_ms;
    for (const auto& s : stats) {
        ind.ues.push_back({s.ue_id, s.dir, wire_round(s.throughput_mbps),
                           wire_round(s.mean_delay_ms), wire_round(s.mean_mcs),
                           wire_round(s.tti_allocation_pct)});
        ind.cell_throughput_mbps += s.throughput_mbps;
        per_ue[s.ue_id] += s.throughput_mbps;
    }
    ind.cell_throughput_mbps = wire_round(ind.cell_throughput_mbps);
    ind.mean_delay_ms = wire_round(delay_n > 0 ? delay_sum / delay_n : 0.0);
    double sum = 0.0, sum_sq = 0.0;
    for (double x : per_ue) {
        sum += x;
        sum_sq += x * x;
    }
    ind.jain = wire_round(sum_sq > 0.0 ? sum * sum / (per_ue.size() * sum_sq) : 0.0);
    return ind;
}

}  // namespace

Ack gnb_apply_control(SimState& state, const Control& ctrl) {
    PolicyKind kind;
    if (!policy_from_name(ctrl.policy, &kind))
        return Ack{state.tti, false, 0};
    apply_policy(state, kind, state.tti + 1);
    return Ack{state.tti, true, state.tti + 1};
}

void step_tti(SimState& state) {
    if (state.tti >= state.cfg.duration_ttis)
        throw std::logic_error("stepping past the configured duration");

    const double t_now = static_cast<double>(state.tti) * state.slot_ms;
    const double t_end = t_now + state.slot_ms;

    // (1) traffic arrivals
    for (auto& ue : state.ues) {
        for (int di = 0; di < 2; ++di) {
            const long long threshold = state.cfg.traffic.kind == TrafficMode::FullBuffer
                                            ? full_buffer_threshold(state, ue)
                                            : 0;
            auto packets = ue.arrivals[di].generate(t_now, state.slot_ms, threshold,
                                                    ue.queue[di], &state.next_packet_id);
            for (const auto& p : packets) {
                ue.queue[di].push(p);
                state.bits_enqueued += p.size_bits();
            }
        }
    }

    // (2) TDD split from current queue-implied demand
    double dl_demand = 0.0, ul_demand = 0.0;
    for (const auto& ue : state.ues) {
        if (!ue.link.schedulable) continue;
        if (!ue.queue[0].empty()) dl_demand += ue.profile.symbols_per_slot;
        if (!ue.queue[1].empty()) ul_demand += ue.profile.symbols_per_slot;
    }
    const auto [n_dl, n_ul] = split_flexible_symbols(dl_demand, ul_demand);

    // (3) slot format
    const SlotFormat format = build_slot_format(n_dl, n_ul);

    // (4) allocate under the active policy
    std::vector<SchedulableUe> eligible[2];
    for (std::size_t i = 0; i < state.ues.size(); ++i) {
        const UeRuntime& ue = state.ues[i];
        if (!ue.link.schedulable) continue;
        for (int di = 0; di < 2; ++di) {
            if (ue.queue[di].empty()) continue;
            eligible[di].push_back({static_cast<int>(i), ue.link.mcs,
                                    ue.profile.symbols_per_slot,
                                    ue.queue[di].bits_pending(), ue.pf_avg_rate[di]});
        }
    }
    SchedPolicy policy{state.active_policy, state.cfg.pf_time_constant};
    Allocation alloc = allocate(policy, format, eligible[0], eligible[1],
                                state.rr_cursor[0], state.rr_cursor[1], state.cfg.n_prb,
                                state.mcs_table);
    alloc.tti = state.tti;

    // (5) drain queues by granted transport-block bits
    std::vector<long long> budget(state.ues.size() * 2, 0);
    for (const auto& g : alloc.grants)
        budget[static_cast<std::size_t>(g.ue_id) * 2 + dir_index(g.dir)] += g.tb_bits;
    for (std::size_t i = 0; i < state.ues.size(); ++i) {
        for (int di = 0; di < 2; ++di) {
            const long long b = budget[i * 2 + di];
            if (b <= 0) continue;
            auto res = state.ues[i].queue[di].drain(b, t_end);
            for (const auto& d : res.delivered) {
                state.records.push_back({d.packet.ue_id, d.packet.dir,
                                         d.packet.size_bits(), d.packet.t_created_ms,
                                         d.t_delivered_ms});
                state.bits_delivered += d.packet.size_bits();
            }
        }
    }

    // (6) PF average update for every eligible UE, served or not
    for (int di = 0; di < 2; ++di) {
        for (const auto& s : eligible[di]) {
            pf_update_average(state.ues[s.ue_id].pf_avg_rate[di],
                              budget[static_cast<std::size_t>(s.ue_id) * 2 + di],
                              state.cfg.pf_time_constant);
        }
    }

    // (7) metrics accumulation
    state.grant_log.push_back(std::move(alloc));

    // (8) RIC mailbox: report window boundary, then apply queued controls so
    // they take effect from the next TTI
    if (state.e2) {
        const TtiIndex next = state.tti + 1;
        if (next % state.cfg.report_period_ttis == 0) {
            const TtiIndex from = next - state.cfg.report_period_ttis;
            Indication ind = build_report(state, from, next);
            state.emitted_reports.push_back(ind);
            state.e2->to_xapp(encode_message(E2Message{ind}));
        }
        while (auto line = state.e2->from_xapp()) {
            const E2Message msg = decode_message(*line);
            if (const auto* ctl = std::get_if<Control>(&msg.payload)) {
                const Ack ack = gnb_apply_control(state, *ctl);
                state.e2->to_xapp(encode_message(E2Message{ack}));
            }
        }
    }

    ++state.tti;
}

RunResult run(const ScenarioConfig& cfg, E2Endpoint* e2) {
    SimState st = setup(cfg);
    st.e2 = e2;
    for (TtiIndex t = 0; t < cfg.duration_ttis; ++t) step_tti(st);

    const TtiIndex from = cfg.warmup_ttis < cfg.duration_ttis ? cfg.warmup_ttis : 0;
    std::vector<DemandProfile> profiles(st.ues.size());
    for (std::size_t i = 0; i < st.ues.size(); ++i) profiles[i] = st.ues[i].profile;

    RunResult res;
    res.ue_stats = collect_ue_stats(st.grant_log, st.records, profiles, cfg.n_ues, from,
                                    cfg.duration_ttis, cfg.mu);

    RunSummary& s = res.summary;
    s.policy = cfg.policy;
    s.n_ues = cfg.n_ues;
    s.seed = cfg.seed;
    std::vector<double> per_ue(cfg.n_ues, 0.0);
    for (const auto& u : res.ue_stats) {
        s.cell_throughput_mbps += u.throughput_mbps;
        per_ue[u.ue_id] += u.throughput_mbps;
    }
    s.avg_ue_throughput_mbps = s.cell_throughput_mbps / cfg.n_ues;

    const double w0 = static_cast<double>(from) * st.slot_ms;
    double delay_sum = 0.0;
    long long delay_n = 0;
    for (const auto& r : st.records) {
        if (r.t_r_ms <= w0) continue;
        delay_sum += r.t_r_ms - r.t_t_ms;
        ++delay_n;
    }
    s.avg_delay_ms = delay_n > 0 ? delay_sum / delay_n : 0.0;

    double sum = 0.0, sum_sq = 0.0;
    for (double x : per_ue) {
        sum += x;
        sum_sq += x * x;
    }
    s.jain = sum_sq > 0.0 ? sum * sum / (cfg.n_ues * sum_sq) : 0.0;

    res.grant_log = std::move(st.grant_log);
    res.records = std::move(st.records);
    res.switches = std::move(st.switches);
    res.reports = std::move(st.emitted_reports);
    return res;
}

}  // namespace oransim
