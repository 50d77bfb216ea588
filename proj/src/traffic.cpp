#include "oransim/traffic.hpp"

#include <stdexcept>

namespace oransim {

std::vector<DemandProfile> assign_demand_profiles(int n_ues) {
    if (n_ues < 1) throw std::domain_error("need at least one UE");
    std::vector<DemandProfile> out(n_ues);
    for (int i = 0; i < n_ues; ++i) out[i].symbols_per_slot = i % 3 + 1;
    return out;
}

void UeQueue::push(const Packet& p) {
    pending_.push_back(p);
    bits_pending_ += p.size_bits();
}

long long UeQueue::bytes_pending() const {
    long long b = 0;
    for (const auto& p : pending_) b += p.size_bytes;
    return b;
}

UeQueue::DrainResult UeQueue::drain(long long budget_bits, double t_now_ms) {
    if (budget_bits < 0) throw std::domain_error("drain budget must be non-negative");
    DrainResult res;
    while (budget_bits > 0 && !pending_.empty()) {
        const Packet& head = pending_.front();
        const long long remaining = head.size_bits() - head_bits_sent_;
        if (budget_bits >= remaining) {
            budget_bits -= remaining;
            res.delivered.push_back({head, t_now_ms});
            bits_pending_ -= head.size_bits();
            pending_.pop_front();
            head_bits_sent_ = 0;
        } else {
            head_bits_sent_ += budget_bits;
            res.partial_bits += budget_bits;
            budget_bits = 0;
        }
    }
    return res;
}

Packet ArrivalProcess::make_packet(double t_now_ms, std::uint64_t* next_packet_id) {
    return Packet{(*next_packet_id)++, packet_size_bytes_, t_now_ms, ue_id_, dir_};
}

std::vector<Packet> ArrivalProcess::generate(double t_now_ms, double slot_ms,
                                             long long min_backlog_bits,
                                             const UeQueue& queue,
                                             std::uint64_t* next_packet_id) {
    std::vector<Packet> out;
    if (mode_.kind == TrafficMode::FullBuffer) {
        long long backlog = queue.bits_pending();
        while (backlog < min_backlog_bits) {
            out.push_back(make_packet(t_now_ms, next_packet_id));
            backlog += out.back().size_bits();
        }
        return out;
    }
    // cbr
    credit_bits_ += mode_.cbr_rate_mbps * rate_scale_ * 1e6 * (slot_ms * 1e-3);
    const double packet_bits = 8.0 * packet_size_bytes_;
    while (credit_bits_ >= packet_bits) {
        credit_bits_ -= packet_bits;
        out.push_back(make_packet(t_now_ms, next_packet_id));
    }
    return out;
}

}  // namespace oransim
