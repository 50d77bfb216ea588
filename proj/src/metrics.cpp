#include "oransim/metrics.hpp"

#include <stdexcept>

#include "oransim/frame.hpp"

namespace oransim {

double throughput_mbps(const std::vector<PacketRecord>& records, double window_ms) {
    if (window_ms <= 0.0) throw std::domain_error("observation window must be positive");
    long long bits = 0;
    for (const auto& r : records) bits += r.size_bits;
    return static_cast<double>(bits) / (window_ms * 1e3);
}

double delay_ms(const PacketRecord& record) {
    if (record.t_r_ms < record.t_t_ms)
        throw std::invalid_argument("packet delivered before it was created");
    return record.t_r_ms - record.t_t_ms;
}

double jain_index(const std::vector<double>& xs) {
    if (xs.empty()) throw std::domain_error("Jain index needs at least one value");
    double sum = 0.0, sum_sq = 0.0;
    for (double x : xs) {
        sum += x;
        sum_sq += x * x;
    }
    if (sum_sq <= 0.0) throw std::domain_error("Jain index undefined for all-zero input");
    return sum * sum / (static_cast<double>(xs.size()) * sum_sq);
}

std::vector<UeStats> collect_ue_stats(const std::vector<Allocation>& allocations,
                                      const std::vector<PacketRecord>& records,
                                      const std::vector<DemandProfile>& profiles, int n_ues,
                                      TtiIndex from_tti, TtiIndex end_tti, int mu) {
    if (end_tti <= from_tti) throw std::domain_error("empty observation window");
    const double slot_ms = slot_duration_ms(mu);
    const double window_ms = static_cast<double>(end_tti - from_tti) * slot_ms;
    const double window_start_ms = static_cast<double>(from_tti) * slot_ms;
    const double window_end_ms = static_cast<double>(end_tti) * slot_ms;
    const auto n_ttis = static_cast<double>(end_tti - from_tti);

    struct Acc {
        long long bits = 0;
        double delay_sum = 0.0;
        long long packets = 0;
        long long mcs_sum = 0;
        long long symbols = 0;
        long long allocated_ttis = 0;
    };
    std::vector<Acc> acc(static_cast<std::size_t>(n_ues) * 2);
    auto slot_of = [&](int ue, Direction d) -> Acc& {
        return acc[static_cast<std::size_t>(ue) * 2 + (d == Direction::Ul ? 1 : 0)];
    };

    for (const auto& alloc : allocations) {
        if (alloc.tti < from_tti || alloc.tti >= end_tti) continue;
        // symbols and MCS per (ue, dir) in this TTI
        std::vector<int> seen(static_cast<std::size_t>(n_ues) * 2, 0);
        for (const auto& g : alloc.grants) {
            Acc& a = slot_of(g.ue_id, g.dir);
            a.symbols += 1;
            a.mcs_sum += g.mcs;
            seen[static_cast<std::size_t>(g.ue_id) * 2 + (g.dir == Direction::Ul ? 1 : 0)] = 1;
        }
        for (std::size_t i = 0; i < seen.size(); ++i) acc[i].allocated_ttis += seen[i];
    }

    // deliveries are stamped at slot end, so the window is open at the start
    // and closed at the end: a record at exactly window_end belongs here
    for (const auto& r : records) {
        if (r.t_r_ms <= window_start_ms || r.t_r_ms > window_end_ms) continue;
        Acc& a = slot_of(r.ue_id, r.dir);
        a.bits += r.size_bits;
        a.delay_sum += delay_ms(r);
        a.packets += 1;
    }

    std::vector<UeStats> out;
    out.reserve(acc.size());
    for (int ue = 0; ue < n_ues; ++ue) {
        for (Direction d : {Direction::Dl, Direction::Ul}) {
            const Acc& a = slot_of(ue, d);
            UeStats s;
            s.ue_id = ue;
            s.dir = d;
            s.demand_class = profiles[ue].symbols_per_slot;
            s.throughput_mbps = static_cast<double>(a.bits) / (window_ms * 1e3);
            s.mean_delay_ms = a.packets > 0 ? a.delay_sum / a.packets : 0.0;
            s.mean_mcs =
                a.symbols > 0 ? static_cast<double>(a.mcs_sum) / a.symbols : 0.0;
            s.tti_allocation_pct = 100.0 * a.allocated_ttis / n_ttis;
            s.mean_symbols_per_alloc =
                a.allocated_ttis > 0 ? static_cast<double>(a.symbols) / a.allocated_ttis : 0.0;
            s.served = a.symbols > 0;
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace oransim
