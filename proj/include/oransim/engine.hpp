#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "oransim/channel.hpp"
#include "oransim/frame.hpp"
#include "oransim/metrics.hpp"
#include "oransim/ric.hpp"
#include "oransim/sched.hpp"
#include "oransim/traffic.hpp"

namespace oransim {

enum class Placement : std::uint8_t { Annulus, Spread };

struct ScenarioConfig {
    // carrier / frame
    double bandwidth_hz = 20e6;
    int mu = 2;
    double carrier_freq_ghz = 3.5;
    int n_prb = 24;
    int rbg_size = 2;

    // radio
    double tx_power_dbm = 30.0;
    double noise_figure_db = 5.0;
    double cell_radius_m = 200.0;
    Placement placement = Placement::Annulus;
    double shadowing_sigma_db = 4.0;
    double cqi_backoff_db = 6.0;

    // population / traffic
    int n_gnb = 1;
    int n_ues = 1;
    int packet_size_bytes = 1000;
    TrafficMode traffic;
    int demand_class_override = 0;  // 0 = per-id classes 1..3

    // run
    std::uint64_t duration_ttis = 12000;
    std::uint64_t warmup_ttis = 400;
    std::uint64_t seed = 1;
    PolicyKind policy = PolicyKind::RoundRobin;
    int pf_time_constant = 100;

    // RIC
    int report_period_ttis = 40;

    std::string mcs_table_path;  // empty = built-in table

    // empty when valid, one message per offending field otherwise
    std::vector<std::string> validate() const;
};

// gNB side of the E2 link. Indications and acks go out, controls come in;
// the engine never blocks on the far end.
class E2Endpoint {
public:
    virtual ~E2Endpoint() = default;
    virtual void to_xapp(const std::string& line) = 0;
    virtual std::optional<std::string> from_xapp() = 0;
};

// Runs the xApp synchronously behind the endpoint interface, using the same
// wire encoding as the socket transport.
class InProcessE2 : public E2Endpoint {
public:
    explicit InProcessE2(A1Policy policy, std::string initial_active = "rr")
        : xapp_(std::move(policy), std::move(initial_active)) {}

    void to_xapp(const std::string& line) override;
    std::optional<std::string> from_xapp() override;

    const Xapp& xapp() const { return xapp_; }

private:
    Xapp xapp_;
    std::deque<std::string> pending_controls_;
    int line_no_ = 0;
};

struct PolicySwitchEvent {
    TtiIndex effective_tti = 0;
    PolicyKind from = PolicyKind::RoundRobin;
    PolicyKind to = PolicyKind::RoundRobin;
};

struct UeRuntime {
    UePosition position;
    double shadowing_db = 0.0;
    LinkQuality link;
    DemandProfile profile;
    UeQueue queue[2];            // [Dl, Ul]
    ArrivalProcess arrivals[2];
    double pf_avg_rate[2] = {1.0, 1.0};
};

struct SimState {
    ScenarioConfig cfg;
    McsTable mcs_table;
    double slot_ms = 0.25;
    double noise_dbm = 0.0;
    TtiIndex tti = 0;
    std::vector<UeRuntime> ues;
    PolicyKind active_policy = PolicyKind::RoundRobin;
    RrCursor rr_cursor[2];
    std::uint64_t next_packet_id = 0;

    std::vector<Allocation> grant_log;
    std::vector<PacketRecord> records;
    std::vector<PolicySwitchEvent> switches;
    std::vector<Indication> emitted_reports;

    // conservation bookkeeping
    long long bits_enqueued = 0;
    long long bits_delivered = 0;

    E2Endpoint* e2 = nullptr;
};

struct RunSummary {
    PolicyKind policy = PolicyKind::RoundRobin;
    int n_ues = 0;
    std::uint64_t seed = 0;
    double avg_ue_throughput_mbps = 0.0;
    double cell_throughput_mbps = 0.0;
    double avg_delay_ms = 0.0;
    double jain = 0.0;
};

struct RunResult {
    std::vector<Allocation> grant_log;
    std::vector<PacketRecord> records;
    std::vector<UeStats> ue_stats;
    RunSummary summary;
    std::vector<PolicySwitchEvent> switches;
    std::vector<Indication> reports;
};

SimState setup(const ScenarioConfig& cfg);

void step_tti(SimState& state);

// Apply a decoded Control: the policy takes effect at the next TTI boundary,
// PF averages and RR cursors reset. Unknown policies are rejected unchanged.
Ack gnb_apply_control(SimState& state, const Control& ctrl);

RunResult run(const ScenarioConfig& cfg, E2Endpoint* e2 = nullptr);

}  // namespace oransim
