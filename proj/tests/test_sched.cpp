#include <doctest.h>

#include <stdexcept>

#include <map>
#include <numeric>

#include "oransim/rng.hpp"
#include "oransim/sched.hpp"

using namespace oransim;

namespace {

SchedulableUe ue(int id, int mcs, int demand, double avg = 1.0) {
    return {id, mcs, demand, 1'000'000, avg};
}

std::map<int, int> as_map(const GrantCounts& g) {
    std::map<int, int> m;
    for (auto [id, n] : g) m[id] += n;
    return m;
}

int total_symbols(const GrantCounts& g) {
    int t = 0;
    for (auto [id, n] : g) t += n;
    return t;
}

// Independent PF reference: literally replays the argmax-per-symbol rule with
// its own bookkeeping, one candidate scan per symbol.
std::map<int, int> pf_reference(const std::vector<SchedulableUe>& ues, int n_symbols,
                                int n_prb, int time_constant) {
    std::map<int, int> served;  // ue_id -> symbols
    for (const auto& u : ues) served[u.ue_id] = 0;
    for (int s = 0; s < n_symbols; ++s) {
        double best_prio = -1.0;
        int best_id = -1;
        for (const auto& u : ues) {
            if (served[u.ue_id] >= u.demand_symbols) continue;
            const double r =
                static_cast<double>(transport_block_bits(u.mcs, 1, n_prb));
            const double avg_now =
                u.pf_avg_rate + served[u.ue_id] * r / time_constant;
            const double prio = r / avg_now;
            if (prio > best_prio || (prio == best_prio && u.ue_id < best_id)) {
                best_prio = prio;
                best_id = u.ue_id;
            }
        }
        if (best_id < 0) break;
        ++served[best_id];
    }
    std::map<int, int> out;
    for (auto [id, n] : served)
        if (n > 0) out[id] = n;
    return out;
}

}  // namespace

TEST_CASE("rr_allocate cycles by id, channel-blind") {
    std::vector<SchedulableUe> ues{ue(0, 28, 2), ue(1, 4, 2), ue(2, 10, 2)};

    SUBCASE("exact fit") {
        RrCursor cur;
        const auto g = rr_allocate(ues, 6, cur);
        CHECK(as_map(g) == std::map<int, int>{{0, 2}, {1, 2}, {2, 2}});
        CHECK(cur.last_served == 2);
    }
    SUBCASE("cyclic continuation across slots") {
        RrCursor cur;
        const auto g1 = rr_allocate(ues, 4, cur);
        CHECK(as_map(g1) == std::map<int, int>{{0, 2}, {1, 2}});
        CHECK(cur.last_served == 1);
        const auto g2 = rr_allocate(ues, 4, cur);
        CHECK(as_map(g2) == std::map<int, int>{{2, 2}, {0, 2}});
    }
    SUBCASE("three slots of four symbols even out") {
        RrCursor cur;
        std::map<int, int> totals;
        for (int slot = 0; slot < 3; ++slot)
            for (auto [id, n] : rr_allocate(ues, 4, cur)) totals[id] += n;
        CHECK(totals == std::map<int, int>{{0, 4}, {1, 4}, {2, 4}});
    }
}

TEST_CASE("mt_allocate sorts by mcs, ties by id") {
    SUBCASE("fills highest mcs first") {
        std::vector<SchedulableUe> ues{ue(0, 28, 2), ue(1, 10, 2), ue(2, 4, 2)};
        CHECK(as_map(mt_allocate(ues, 4)) == std::map<int, int>{{0, 2}, {1, 2}});
    }
    SUBCASE("equal mcs degenerates to id order") {
        std::vector<SchedulableUe> ues{ue(2, 9, 2), ue(0, 9, 2), ue(1, 9, 2)};
        CHECK(as_map(mt_allocate(ues, 4)) == std::map<int, int>{{0, 2}, {1, 2}});
    }
    SUBCASE("starvation under scarcity") {
        std::vector<SchedulableUe> ues{ue(0, 4, 3), ue(1, 28, 3)};
        CHECK(as_map(mt_allocate(ues, 3)) == std::map<int, int>{{1, 3}});
    }
}

TEST_CASE("pf_allocate follows the rate-over-average priority") {
    SUBCASE("starved UE wins the first symbol") {
        std::vector<SchedulableUe> ues{ue(0, 10, 1, 5.0), ue(1, 10, 1, 1.0)};
        // equal instantaneous rates, R=(5,1): UE 1 has the higher ratio
        const auto g = pf_allocate(ues, 1, 24, 100);
        CHECK(as_map(g) == std::map<int, int>{{1, 1}});
    }
    SUBCASE("identical UEs split the slot") {
        std::vector<SchedulableUe> ues{ue(0, 9, 3, 100.0), ue(1, 9, 3, 100.0)};
        const auto g = pf_allocate(ues, 6, 24, 100);
        CHECK(as_map(g) == std::map<int, int>{{0, 3}, {1, 3}});
    }
    SUBCASE("a low-mcs UE with a tiny average can beat an mt winner") {
        std::vector<SchedulableUe> ues{ue(0, 28, 1, 1e9), ue(1, 4, 1, 1.0)};
        CHECK(as_map(mt_allocate(ues, 1)) == std::map<int, int>{{0, 1}});
        CHECK(as_map(pf_allocate(ues, 1, 24, 100)) == std::map<int, int>{{1, 1}});
    }
}

TEST_CASE("pf matches the brute-force reference on randomized slots") {
    RngStream rng(99, "pf-oracle");
    for (int trial = 0; trial < 1000; ++trial) {
        const int n_ues = 1 + static_cast<int>(rng.next_u64() % 5);
        const int n_symbols = static_cast<int>(rng.next_u64() % 13);
        const int T = 1 + static_cast<int>(rng.next_u64() % 200);
        std::vector<SchedulableUe> ues;
        for (int i = 0; i < n_ues; ++i) {
            const int mcs = static_cast<int>(rng.next_u64() % 29);
            const int demand = 1 + static_cast<int>(rng.next_u64() % 3);
            const double avg = rng.uniform(1.0, 5000.0);
            ues.push_back(ue(i, mcs, demand, avg));
        }
        CHECK(as_map(pf_allocate(ues, n_symbols, 24, T)) ==
              pf_reference(ues, n_symbols, 24, T));
    }
}

namespace {

// Same argmax rule as pf_reference but over raw per-UE rates, so both sides
// of the priority can be scaled together.
std::vector<int> pf_sequence_raw(const std::vector<double>& rates,
                                 const std::vector<double>& avgs,
                                 const std::vector<int>& demands, int n_symbols, int T) {
    std::vector<int> served(rates.size(), 0), sequence;
    for (int s = 0; s < n_symbols; ++s) {
        int best = -1;
        double best_prio = -1.0;
        for (std::size_t i = 0; i < rates.size(); ++i) {
            if (served[i] >= demands[i]) continue;
            const double prio = rates[i] / (avgs[i] + served[i] * rates[i] / T);
            if (best < 0 || prio > best_prio) {
                best = static_cast<int>(i);
                best_prio = prio;
            }
        }
        if (best < 0) break;
        ++served[best];
        sequence.push_back(best);
    }
    return sequence;
}

}  // namespace

TEST_CASE("pf granted sequence is invariant under joint rate/average scaling") {
    RngStream rng(7, "pf-scale");
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 4);
        std::vector<double> rates(n), avgs(n);
        std::vector<int> demands(n);
        for (int i = 0; i < n; ++i) {
            rates[i] = rng.uniform(10.0, 2000.0);
            avgs[i] = rng.uniform(1.0, 1000.0);
            demands[i] = 1 + static_cast<int>(rng.next_u64() % 3);
        }
        const double c = rng.uniform(0.1, 50.0);
        auto scaled_rates = rates;
        auto scaled_avgs = avgs;
        for (int i = 0; i < n; ++i) {
            scaled_rates[i] *= c;
            scaled_avgs[i] *= c;
        }
        CHECK(pf_sequence_raw(rates, avgs, demands, 12, 100) ==
              pf_sequence_raw(scaled_rates, scaled_avgs, demands, 12, 100));
    }
}

TEST_CASE("pf average update") {
    SUBCASE("decays toward the floor when starved") {
        double avg = 1000.0;
        for (int i = 0; i < 3000; ++i) pf_update_average(avg, 0, 100);
        CHECK(avg == doctest::Approx(1.0));
    }
    SUBCASE("converges to a constant service rate") {
        double avg = 1.0;
        for (int i = 0; i < 5000; ++i) pf_update_average(avg, 4797, 100);
        CHECK(avg == doctest::Approx(4797.0).epsilon(1e-3));
    }
    SUBCASE("T=1 tracks the last service exactly") {
        double avg = 123.0;
        pf_update_average(avg, 888, 1);
        CHECK(avg == doctest::Approx(888.0));
    }
}

TEST_CASE("work conservation and demand caps across policies") {
    RngStream rng(3, "conservation");
    for (int trial = 0; trial < 300; ++trial) {
        const int n_ues = 1 + static_cast<int>(rng.next_u64() % 6);
        const int n_symbols = static_cast<int>(rng.next_u64() % 13);
        std::vector<SchedulableUe> ues;
        int total_demand = 0;
        for (int i = 0; i < n_ues; ++i) {
            ues.push_back(ue(i, 1 + static_cast<int>(rng.next_u64() % 28),
                             1 + static_cast<int>(rng.next_u64() % 3),
                             rng.uniform(1.0, 100.0)));
            total_demand += ues.back().demand_symbols;
        }
        RrCursor cur;
        const GrantCounts all[3] = {rr_allocate(ues, n_symbols, cur),
                                    mt_allocate(ues, n_symbols),
                                    pf_allocate(ues, n_symbols, 24, 100)};
        for (const auto& g : all) {
            CHECK(total_symbols(g) == std::min(total_demand, n_symbols));
            for (auto [id, n] : as_map(g)) CHECK(n <= ues[id].demand_symbols);
        }
    }
}

TEST_CASE("allocate dispatches per direction with correct symbol roles") {
    std::vector<SchedulableUe> dl{ue(0, 28, 3)};
    std::vector<SchedulableUe> ul{ue(0, 28, 2), ue(1, 10, 2)};
    RrCursor cd, cu;
    const SlotFormat fmt = build_slot_format(6, 6);
    SchedPolicy pol{PolicyKind::RoundRobin, 100};
    const Allocation a = allocate(pol, fmt, dl, ul, cd, cu, 24);

    int dl_grants = 0, ul_grants = 0;
    std::map<int, bool> symbols_used;
    for (const auto& g : a.grants) {
        CHECK_FALSE(symbols_used[g.symbol_index]);  // distinct symbols
        symbols_used[g.symbol_index] = true;
        const SymbolRole role = fmt.roles[g.symbol_index];
        if (g.dir == Direction::Dl) {
            CHECK(role == SymbolRole::DlData);
            ++dl_grants;
        } else {
            CHECK(role == SymbolRole::UlData);
            ++ul_grants;
        }
        CHECK(g.tb_bits == transport_block_bits(g.mcs, 1, 24));
    }
    CHECK(dl_grants == 3);  // demand cap binds
    CHECK(ul_grants == 4);

    SUBCASE("no eligible UEs means no grants") {
        const Allocation empty =
            allocate(pol, fmt, {}, {}, cd, cu, 24);
        CHECK(empty.grants.empty());
    }
}

TEST_CASE("rr long-run fairness with identical demands") {
    std::vector<SchedulableUe> ues;
    for (int i = 0; i < 5; ++i) ues.push_back(ue(i, 10 + i, 2));
    RrCursor cur;
    std::map<int, int> totals;
    const int slots = 5 * 20;
    for (int s = 0; s < slots; ++s)
        for (auto [id, n] : rr_allocate(ues, 6, cur)) totals[id] += n;
    int lo = 1 << 30, hi = 0;
    for (auto [id, n] : totals) {
        lo = std::min(lo, n);
        hi = std::max(hi, n);
    }
    CHECK(hi - lo <= 2);  // at most one demand quantum apart
}
