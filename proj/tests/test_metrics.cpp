#include <doctest.h>

#include <stdexcept>

#include "oransim/metrics.hpp"

using namespace oransim;

namespace {

PacketRecord rec(int ue, Direction d, long long bits, double t_t, double t_r) {
    return {ue, d, bits, t_t, t_r};
}

}  // namespace

TEST_CASE("throughput is received bits over the window") {
    std::vector<PacketRecord> rs{rec(0, Direction::Dl, 8000, 0.0, 1.0),
                                 rec(0, Direction::Dl, 8000, 1.0, 2.0),
                                 rec(0, Direction::Dl, 8000, 2.0, 3.0)};
    CHECK(throughput_mbps(rs, 3.0) == doctest::Approx(8.0));
    CHECK(throughput_mbps({}, 5.0) == doctest::Approx(0.0));
    CHECK(throughput_mbps({rec(0, Direction::Ul, 8000, 0.0, 0.5)}, 1.0) ==
          doctest::Approx(8.0));
    CHECK_THROWS_AS(throughput_mbps(rs, 0.0), std::domain_error);
}

TEST_CASE("delay is delivery minus creation") {
    CHECK(delay_ms(rec(0, Direction::Dl, 8000, 5.0, 5.25)) == doctest::Approx(0.25));
    CHECK(delay_ms(rec(0, Direction::Dl, 8000, 7.5, 7.5)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(delay_ms(rec(0, Direction::Dl, 8000, 2.0, 1.0)),
                    std::invalid_argument);

    // mean of delays equals the arithmetic mean
    std::vector<PacketRecord> rs{rec(0, Direction::Dl, 8, 0.0, 1.0),
                                 rec(0, Direction::Dl, 8, 0.0, 3.0)};
    double sum = 0.0;
    for (const auto& r : rs) sum += delay_ms(r);
    CHECK(sum / rs.size() == doctest::Approx(2.0));
}

TEST_CASE("jain index") {
    CHECK(jain_index({3.0, 3.0, 3.0}) == doctest::Approx(1.0));
    CHECK(jain_index({5.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.25));
    CHECK(jain_index({2.0, 4.0}) == doctest::Approx(0.9));
    CHECK_THROWS_AS(jain_index({}), std::domain_error);
    CHECK_THROWS_AS(jain_index({0.0, 0.0}), std::domain_error);
}

TEST_CASE("collect_ue_stats aggregates per UE and direction") {
    const int mu = 2;
    const std::vector<DemandProfile> profiles = assign_demand_profiles(2);

    // UE 0 granted 6 DL symbols at MCS 28 every TTI; UE 1 never granted
    std::vector<Allocation> allocs;
    std::vector<PacketRecord> records;
    const long long per_symbol = transport_block_bits(28, 1, 24);
    for (TtiIndex t = 0; t < 100; ++t) {
        Allocation a;
        a.tti = t;
        a.format = build_slot_format(6, 6);
        for (int s = 0; s < 6; ++s)
            a.grants.push_back({1 + s, 0, Direction::Dl, 28, per_symbol});
        allocs.push_back(a);
        records.push_back(rec(0, Direction::Dl, 6 * per_symbol, t * 0.25, (t + 1) * 0.25));
    }

    const auto stats = collect_ue_stats(allocs, records, profiles, 2, 0, 100, mu);
    REQUIRE(stats.size() == 4);

    const UeStats& ue0_dl = stats[0];
    CHECK(ue0_dl.ue_id == 0);
    CHECK(ue0_dl.dir == Direction::Dl);
    CHECK(ue0_dl.tti_allocation_pct == doctest::Approx(100.0));
    CHECK(ue0_dl.mean_mcs == doctest::Approx(28.0));
    CHECK(ue0_dl.mean_symbols_per_alloc == doctest::Approx(6.0));
    // 6 x 1599 bits each 0.25 ms
    CHECK(ue0_dl.throughput_mbps == doctest::Approx(6 * per_symbol / 250.0));
    CHECK(ue0_dl.throughput_mbps == doctest::Approx(38.376));
    CHECK(ue0_dl.served);

    const UeStats& ue1_dl = stats[2];
    CHECK(ue1_dl.throughput_mbps == doctest::Approx(0.0));
    CHECK(ue1_dl.tti_allocation_pct == doctest::Approx(0.0));
    CHECK(ue1_dl.mean_mcs == doctest::Approx(0.0));
    CHECK_FALSE(ue1_dl.served);

    SUBCASE("per-UE throughputs sum to the cell throughput") {
        double cell = 0.0;
        for (const auto& s : stats) cell += s.throughput_mbps;
        CHECK(cell == doctest::Approx(throughput_mbps(records, 100 * 0.25)));
    }
    SUBCASE("window restriction drops outside records") {
        const auto windowed = collect_ue_stats(allocs, records, profiles, 2, 50, 100, mu);
        CHECK(windowed[0].throughput_mbps == doctest::Approx(38.376));
        CHECK(windowed[0].tti_allocation_pct == doctest::Approx(100.0));
    }
}
