#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace oransim {

inline constexpr int kSymbolsPerSlot = 14;
inline constexpr int kFlexibleSymbols = 12;

enum class SymbolRole : std::uint8_t { DlControl, DlData, UlData, UlControl };

struct NumerologyConfig {
    int mu = 2;
    double subcarrier_spacing_khz = 60.0;  // 15 * 2^mu
    int symbols_per_slot = kSymbolsPerSlot;

    static NumerologyConfig from_mu(int mu);
};

using TtiIndex = std::uint64_t;

// The role of each of the 14 OFDM symbols in one slot. Symbol 0 is DL
// control, symbol 13 is UL control, the 12 in between are flexible data
// symbols with a single DL->UL switch point.
struct SlotFormat {
    std::array<SymbolRole, kSymbolsPerSlot> roles{};

    int dl_data_symbols() const;
    int ul_data_symbols() const;
    // first symbol index carrying the given data role, or -1
    int first_data_symbol(SymbolRole role) const;
};

// 2^mu slots in every 1 ms subframe
int slots_per_subframe(int mu);

// slot (= TTI) duration in milliseconds: 1 / 2^mu
double slot_duration_ms(int mu);

double tti_to_time_ms(TtiIndex tti, int mu);

SlotFormat build_slot_format(int n_dl_data, int n_ul_data);

// Partition the 12 flexible symbols proportionally to the two demands,
// rounded to nearest; zero total demand defaults to (6, 6) and any side
// with nonzero demand keeps at least one symbol.
std::pair<int, int> split_flexible_symbols(double dl_demand, double ul_demand);

}  // namespace oransim
