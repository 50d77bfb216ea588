#pragma once

#include <cstdint>
#include <vector>

#include "oransim/sched.hpp"
#include "oransim/traffic.hpp"

namespace oransim {

struct PacketRecord {
    int ue_id = 0;
    Direction dir = Direction::Dl;
    long long size_bits = 0;
    double t_t_ms = 0.0;  // creation (transmission-request) time
    double t_r_ms = 0.0;  // delivery time
};

// Sum of received bits over the observation window, in Mbps.
double throughput_mbps(const std::vector<PacketRecord>& records, double window_ms);

double delay_ms(const PacketRecord& record);

// (sum x)^2 / (n * sum x^2), in (0, 1]
double jain_index(const std::vector<double>& per_ue_throughputs);

struct UeStats {
    int ue_id = 0;
    Direction dir = Direction::Dl;
    int demand_class = 1;
    double throughput_mbps = 0.0;
    double mean_delay_ms = 0.0;
    double mean_mcs = 0.0;
    double tti_allocation_pct = 0.0;   // % of TTIs with at least one grant
    double mean_symbols_per_alloc = 0.0;
    bool served = false;
};

// Per-(UE, direction) statistics over [from_tti, from_tti + total window). Only
// packet records delivered inside the window count.
std::vector<UeStats> collect_ue_stats(const std::vector<Allocation>& allocations,
                                      const std::vector<PacketRecord>& records,
                                      const std::vector<DemandProfile>& profiles, int n_ues,
                                      TtiIndex from_tti, TtiIndex end_tti, int mu);

}  // namespace oransim
