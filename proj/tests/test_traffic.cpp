#include <doctest.h>

#include <stdexcept>

#include "oransim/rng.hpp"
#include "oransim/traffic.hpp"

using namespace oransim;

TEST_CASE("demand profile assignment is modular") {
    auto p3 = assign_demand_profiles(3);
    CHECK(p3[0].symbols_per_slot == 1);
    CHECK(p3[1].symbols_per_slot == 2);
    CHECK(p3[2].symbols_per_slot == 3);

    auto p7 = assign_demand_profiles(7);
    const int expect[7] = {1, 2, 3, 1, 2, 3, 1};
    for (int i = 0; i < 7; ++i) CHECK(p7[i].symbols_per_slot == expect[i]);

    CHECK(assign_demand_profiles(1)[0].symbols_per_slot == 1);
    CHECK_THROWS_AS(assign_demand_profiles(0), std::domain_error);
}

TEST_CASE("queue drain delivers whole packets FIFO") {
    UeQueue q;
    std::uint64_t id = 0;
    q.push(Packet{id++, 1000, 0.0, 0, Direction::Dl});
    q.push(Packet{id++, 1000, 0.0, 0, Direction::Dl});

    SUBCASE("zero budget delivers nothing") {
        auto r = q.drain(0, 1.0);
        CHECK(r.delivered.empty());
        CHECK(r.partial_bits == 0);
        CHECK(q.packet_count() == 2);
    }
    SUBCASE("exactly one packet") {
        auto r = q.drain(8000, 1.0);
        REQUIRE(r.delivered.size() == 1);
        CHECK(r.delivered[0].packet.id == 0);
        CHECK(r.delivered[0].t_delivered_ms == 1.0);
        CHECK(q.packet_count() == 1);
        CHECK(r.partial_bits == 0);
    }
    SUBCASE("partial second packet carries over") {
        auto r = q.drain(12000, 1.0);
        REQUIRE(r.delivered.size() == 1);
        CHECK(r.partial_bits == 4000);
        CHECK(q.head_bits_sent() == 4000);
        // the remaining 4000 bits complete later
        auto r2 = q.drain(4000, 2.0);
        REQUIRE(r2.delivered.size() == 1);
        CHECK(r2.delivered[0].packet.id == 1);
        CHECK(r2.delivered[0].t_delivered_ms == 2.0);
        CHECK(q.empty());
    }
}

TEST_CASE("queue conserves bits under random drains") {
    RngStream rng(11, "traffic-prop");
    UeQueue q;
    std::uint64_t id = 0;
    long long enqueued = 0, delivered = 0;
    std::uint64_t last_id = 0;
    bool first = true;
    for (int step = 0; step < 2000; ++step) {
        const int arrivals = static_cast<int>(rng.next_u64() % 3);
        for (int a = 0; a < arrivals; ++a) {
            Packet p{id++, 1 + static_cast<int>(rng.next_u64() % 1500),
                     static_cast<double>(step), 0, Direction::Dl};
            enqueued += p.size_bits();
            q.push(p);
        }
        auto r = q.drain(static_cast<long long>(rng.next_u64() % 20000),
                         static_cast<double>(step));
        for (const auto& d : r.delivered) {
            delivered += d.packet.size_bits();
            if (!first) CHECK(d.packet.id > last_id);  // FIFO order
            last_id = d.packet.id;
            first = false;
        }
        CHECK(enqueued == delivered + q.bits_pending() + q.head_bits_sent());
    }
}

TEST_CASE("full buffer keeps a slot's demand enqueued") {
    ArrivalProcess gen(0, Direction::Dl, TrafficMode{TrafficMode::FullBuffer, 0.0}, 1000,
                       1.0);
    UeQueue q;
    std::uint64_t id = 0;
    auto pkts = gen.generate(0.0, 0.25, 4797, q, &id);
    for (const auto& p : pkts) q.push(p);
    CHECK(q.bits_pending() >= 4797);
    // after a drain the threshold is restored
    q.drain(4000, 0.25);
    pkts = gen.generate(0.25, 0.25, 4797, q, &id);
    for (const auto& p : pkts) q.push(p);
    CHECK(q.bits_pending() >= 4797);
}

TEST_CASE("cbr arrival pacing") {
    SUBCASE("8 Mbps at mu=2 yields one 1000-byte packet every 4 TTIs") {
        ArrivalProcess gen(0, Direction::Dl, TrafficMode{TrafficMode::Cbr, 8.0}, 1000, 1.0);
        UeQueue q;
        std::uint64_t id = 0;
        int total = 0;
        for (int tti = 0; tti < 16; ++tti) {
            auto pkts = gen.generate(tti * 0.25, 0.25, 0, q, &id);
            total += static_cast<int>(pkts.size());
            if (tti % 4 == 3) CHECK(total == tti / 4 + 1);
        }
        CHECK(total == 4);
    }
    SUBCASE("zero rate never emits") {
        ArrivalProcess gen(0, Direction::Ul, TrafficMode{TrafficMode::Cbr, 0.0}, 1000, 1.0);
        UeQueue q;
        std::uint64_t id = 0;
        for (int tti = 0; tti < 100; ++tti)
            CHECK(gen.generate(tti * 0.25, 0.25, 0, q, &id).empty());
    }
}
