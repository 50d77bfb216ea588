#pragma once

#include <cstdint>
#include <vector>

#include "oransim/channel.hpp"
#include "oransim/frame.hpp"
#include "oransim/traffic.hpp"

namespace oransim {

enum class PolicyKind : std::uint8_t { RoundRobin, MaxThroughput, ProportionalFair };

const char* policy_name(PolicyKind k);
bool policy_from_name(const std::string& name, PolicyKind* out);

struct SchedPolicy {
    PolicyKind kind = PolicyKind::RoundRobin;
    int pf_time_constant = 100;  // EMA window in TTIs
};

struct SchedulableUe {
    int ue_id = 0;
    int mcs = 0;
    int demand_symbols = 1;      // per-slot cap for this direction
    long long backlog_bits = 0;
    double pf_avg_rate = 1.0;    // bits/TTI exponential average, floored at 1
};

struct Grant {
    int symbol_index = 0;
    int ue_id = 0;
    Direction dir = Direction::Dl;
    int mcs = 0;
    long long tb_bits = 0;
};

struct Allocation {
    TtiIndex tti = 0;
    SlotFormat format;
    std::vector<Grant> grants;
};

// (ue_id, symbols granted) pairs in grant order
using GrantCounts = std::vector<std::pair<int, int>>;

struct RrCursor {
    int last_served = -1;  // ue_id of the last fully-served UE, -1 = none yet
};

// Cyclic by ue_id starting after the cursor; each visited UE gets
// min(demand, remaining) symbols; channel quality is never consulted.
GrantCounts rr_allocate(const std::vector<SchedulableUe>& ues, int n_symbols,
                        RrCursor& cursor);

// Highest MCS first (ties: lower ue_id), each UE filled to its demand.
GrantCounts mt_allocate(const std::vector<SchedulableUe>& ues, int n_symbols);

// One symbol at a time to the argmax of r_i / R_i where r_i is the
// instantaneous full-band rate; symbols granted earlier in the slot raise the
// UE's provisional average so later symbols see updated priorities.
GrantCounts pf_allocate(const std::vector<SchedulableUe>& ues, int n_symbols, int n_prb,
                        int time_constant, const McsTable& table = McsTable::builtin());

// R_i <- (1 - 1/T) R_i + served_bits_i / T for every eligible UE, floored at 1
void pf_update_average(double& avg_rate, long long served_bits, int time_constant);

// Dispatch to the active policy independently for the DL and UL symbol
// budgets of the slot. Callers exclude UEs with cqi 0 or empty backlog.
Allocation allocate(const SchedPolicy& policy, const SlotFormat& format,
                    const std::vector<SchedulableUe>& dl_ues,
                    const std::vector<SchedulableUe>& ul_ues, RrCursor& dl_cursor,
                    RrCursor& ul_cursor, int n_prb,
                    const McsTable& table = McsTable::builtin());

}  // namespace oransim
