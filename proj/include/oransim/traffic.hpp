#pragma once

#include <cstdint>
#include <deque>
#include <vector>

namespace oransim {

enum class Direction : std::uint8_t { Dl, Ul };

inline const char* direction_name(Direction d) { return d == Direction::Dl ? "DL" : "UL"; }

struct DemandProfile {
    int symbols_per_slot = 1;   // demand class, 1..3
    double direction_mix = 0.5; // fraction of traffic that is DL
};

// class k = ue_id mod 3 + 1, so tests can predict a UE's class without RNG
std::vector<DemandProfile> assign_demand_profiles(int n_ues);

struct Packet {
    std::uint64_t id = 0;
    int size_bytes = 1000;
    double t_created_ms = 0.0;
    int ue_id = 0;
    Direction dir = Direction::Dl;

    long long size_bits() const { return 8ll * size_bytes; }
};

struct DeliveredPacket {
    Packet packet;
    double t_delivered_ms = 0.0;
};

// FIFO byte queue abstracting the RLC buffer. A partially transmitted head
// packet keeps its already-sent bits and completes in a later TTI.
class UeQueue {
public:
    void push(const Packet& p);

    bool empty() const { return pending_.empty(); }
    std::size_t packet_count() const { return pending_.size(); }
    long long bits_pending() const { return bits_pending_ - head_bits_sent_; }
    long long bytes_pending() const;
    long long head_bits_sent() const { return head_bits_sent_; }

    struct DrainResult {
        std::vector<DeliveredPacket> delivered;
        long long partial_bits = 0;  // budget consumed into the still-pending head
    };
    DrainResult drain(long long budget_bits, double t_now_ms);

private:
    std::deque<Packet> pending_;
    long long bits_pending_ = 0;     // gross bits of all queued packets
    long long head_bits_sent_ = 0;
};

struct TrafficMode {
    enum Kind { FullBuffer, Cbr } kind = FullBuffer;
    double cbr_rate_mbps = 0.0;  // per UE per direction at direction_mix 0.5
};

// Arrival generator for one (UE, direction) pair.
class ArrivalProcess {
public:
    ArrivalProcess() = default;
    ArrivalProcess(int ue_id, Direction dir, TrafficMode mode, int packet_size_bytes,
                   double direction_rate_scale)
        : ue_id_(ue_id), dir_(dir), mode_(mode), packet_size_bytes_(packet_size_bytes),
          rate_scale_(direction_rate_scale) {}

    // full_buffer tops the queue up to min_backlog_bits; cbr accrues credit at
    // the configured rate and emits whole packets
    std::vector<Packet> generate(double t_now_ms, double slot_ms, long long min_backlog_bits,
                                 const UeQueue& queue, std::uint64_t* next_packet_id);

private:
    Packet make_packet(double t_now_ms, std::uint64_t* next_packet_id);

    int ue_id_ = 0;
    Direction dir_ = Direction::Dl;
    TrafficMode mode_;
    int packet_size_bytes_ = 1000;
    double rate_scale_ = 1.0;
    double credit_bits_ = 0.0;
};

}  // namespace oransim
