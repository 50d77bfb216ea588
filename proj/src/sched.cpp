#include "oransim/sched.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace oransim {

const char* policy_name(PolicyKind k) {
    switch (k) {
        case PolicyKind::RoundRobin: return "rr";
        case PolicyKind::MaxThroughput: return "mt";
        case PolicyKind::ProportionalFair: return "pf";
    }
    return "?";
}

bool policy_from_name(const std::string& name, PolicyKind* out) {
    if (name == "rr") *out = PolicyKind::RoundRobin;
    else if (name == "mt") *out = PolicyKind::MaxThroughput;
    else if (name == "pf") *out = PolicyKind::ProportionalFair;
    else return false;
    return true;
}

namespace {

std::vector<int> ids_sorted_by(const std::vector<SchedulableUe>& ues, bool by_mcs) {
    std::vector<int> idx(ues.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (by_mcs && ues[a].mcs != ues[b].mcs) return ues[a].mcs > ues[b].mcs;
        return ues[a].ue_id < ues[b].ue_id;
    });
    return idx;
}

}  // namespace

GrantCounts rr_allocate(const std::vector<SchedulableUe>& ues, int n_symbols,
                        RrCursor& cursor) {
    if (n_symbols < 0) throw std::domain_error("symbol budget must be non-negative");
    GrantCounts grants;
    if (ues.empty() || n_symbols == 0) return grants;

    const auto order = ids_sorted_by(ues, /*by_mcs=*/false);
    // first UE strictly after the cursor, wrapping
    std::size_t start = 0;
    while (start < order.size() && ues[order[start]].ue_id <= cursor.last_served) ++start;
    if (start == order.size()) start = 0;

    int remaining = n_symbols;
    for (std::size_t k = 0; k < order.size() && remaining > 0; ++k) {
        const SchedulableUe& ue = ues[order[(start + k) % order.size()]];
        const int g = std::min(ue.demand_symbols, remaining);
        if (g <= 0) continue;
        grants.emplace_back(ue.ue_id, g);
        remaining -= g;
        if (g == ue.demand_symbols) cursor.last_served = ue.ue_id;
    }
    return grants;
}

GrantCounts mt_allocate(const std::vector<SchedulableUe>& ues, int n_symbols) {
    if (n_symbols < 0) throw std::domain_error("symbol budget must be non-negative");
    GrantCounts grants;
    int remaining = n_symbols;
    for (int i : ids_sorted_by(ues, /*by_mcs=*/true)) {
        if (remaining <= 0) break;
        const int g = std::min(ues[i].demand_symbols, remaining);
        if (g <= 0) continue;
        grants.emplace_back(ues[i].ue_id, g);
        remaining -= g;
    }
    return grants;
}

GrantCounts pf_allocate(const std::vector<SchedulableUe>& ues, int n_symbols, int n_prb,
                        int time_constant, const McsTable& table) {
    if (n_symbols < 0) throw std::domain_error("symbol budget must be non-negative");
    if (time_constant < 1) throw std::domain_error("PF time constant must be >= 1");

    const std::size_t n = ues.size();
    std::vector<long long> rate(n);
    std::vector<int> served(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        rate[i] = transport_block_bits(ues[i].mcs, 1, n_prb, table);

    const auto order = ids_sorted_by(ues, /*by_mcs=*/false);
    for (int s = 0; s < n_symbols; ++s) {
        int best = -1;
        double best_prio = 0.0;
        for (int i : order) {  // id order makes ties land on the lower ue_id
            if (served[i] >= ues[i].demand_symbols) continue;
            const double provisional =
                ues[i].pf_avg_rate +
                static_cast<double>(served[i]) * static_cast<double>(rate[i]) / time_constant;
            const double prio = static_cast<double>(rate[i]) / provisional;
            if (best < 0 || prio > best_prio) {
                best = i;
                best_prio = prio;
            }
        }
        if (best < 0) break;
        ++served[best];
    }

    GrantCounts grants;
    for (int i : order)
        if (served[i] > 0) grants.emplace_back(ues[i].ue_id, served[i]);
    return grants;
}

void pf_update_average(double& avg_rate, long long served_bits, int time_constant) {
    if (time_constant < 1) throw std::domain_error("PF time constant must be >= 1");
    const double t = static_cast<double>(time_constant);
    avg_rate = (1.0 - 1.0 / t) * avg_rate + static_cast<double>(served_bits) / t;
    if (avg_rate < 1.0) avg_rate = 1.0;
}

namespace {

GrantCounts dispatch(const SchedPolicy& policy, const std::vector<SchedulableUe>& ues,
                     int n_symbols, RrCursor& cursor, int n_prb, const McsTable& table) {
    switch (policy.kind) {
        case PolicyKind::RoundRobin: return rr_allocate(ues, n_symbols, cursor);
        case PolicyKind::MaxThroughput: return mt_allocate(ues, n_symbols);
        case PolicyKind::ProportionalFair:
            return pf_allocate(ues, n_symbols, n_prb, policy.pf_time_constant, table);
    }
    return {};
}

void expand_grants(const GrantCounts& counts, const std::vector<SchedulableUe>& ues,
                   Direction dir, int first_symbol, int n_prb, const McsTable& table,
                   Allocation& out) {
    int sym = first_symbol;
    for (const auto& [ue_id, n] : counts) {
        const auto it = std::find_if(ues.begin(), ues.end(),
                                     [&](const SchedulableUe& u) { return u.ue_id == ue_id; });
        const long long tb = transport_block_bits(it->mcs, 1, n_prb, table);
        for (int k = 0; k < n; ++k)
            out.grants.push_back({sym++, ue_id, dir, it->mcs, tb});
    }
}

}  // namespace

Allocation allocate(const SchedPolicy& policy, const SlotFormat& format,
                    const std::vector<SchedulableUe>& dl_ues,
                    const std::vector<SchedulableUe>& ul_ues, RrCursor& dl_cursor,
                    RrCursor& ul_cursor, int n_prb, const McsTable& table) {
    Allocation alloc;
    alloc.format = format;

    const int n_dl = format.dl_data_symbols();
    const int n_ul = format.ul_data_symbols();

    const GrantCounts dl = dispatch(policy, dl_ues, n_dl, dl_cursor, n_prb, table);
    const GrantCounts ul = dispatch(policy, ul_ues, n_ul, ul_cursor, n_prb, table);

    if (!dl.empty())
        expand_grants(dl, dl_ues, Direction::Dl, format.first_data_symbol(SymbolRole::DlData),
                      n_prb, table, alloc);
    if (!ul.empty())
        expand_grants(ul, ul_ues, Direction::Ul, format.first_data_symbol(SymbolRole::UlData),
                      n_prb, table, alloc);
    return alloc;
}

}  // namespace oransim
