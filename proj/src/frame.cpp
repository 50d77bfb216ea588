#include "oransim/frame.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oransim {

namespace {

void check_mu(int mu) {
    if (mu < 0 || mu > 4)
        throw std::domain_error("numerology mu out of range [0,4]: " + std::to_string(mu));
}

}  // namespace

NumerologyConfig NumerologyConfig::from_mu(int mu) {
    check_mu(mu);
    return NumerologyConfig{mu, 15.0 * static_cast<double>(1 << mu), kSymbolsPerSlot};
}

int SlotFormat::dl_data_symbols() const {
    int n = 0;
    for (auto r : roles) n += (r == SymbolRole::DlData);
    return n;
}

int SlotFormat::ul_data_symbols() const {
    int n = 0;
    for (auto r : roles) n += (r == SymbolRole::UlData);
    return n;
}

int SlotFormat::first_data_symbol(SymbolRole role) const {
    for (int i = 0; i < kSymbolsPerSlot; ++i)
        if (roles[i] == role) return i;
    return -1;
}

int slots_per_subframe(int mu) {
    check_mu(mu);
    return 1 << mu;
}

double slot_duration_ms(int mu) {
    check_mu(mu);
    return 1.0 / static_cast<double>(1 << mu);
}

double tti_to_time_ms(TtiIndex tti, int mu) {
    return static_cast<double>(tti) * slot_duration_ms(mu);
}

SlotFormat build_slot_format(int n_dl_data, int n_ul_data) {
    if (n_dl_data < 0 || n_ul_data < 0 || n_dl_data + n_ul_data != kFlexibleSymbols)
        throw std::invalid_argument("slot format data symbols must sum to 12");
    SlotFormat f;
    f.roles[0] = SymbolRole::DlControl;
    for (int i = 0; i < n_dl_data; ++i) f.roles[1 + i] = SymbolRole::DlData;
    for (int i = 0; i < n_ul_data; ++i) f.roles[1 + n_dl_data + i] = SymbolRole::UlData;
    f.roles[kSymbolsPerSlot - 1] = SymbolRole::UlControl;
    return f;
}

std::pair<int, int> split_flexible_symbols(double dl_demand, double ul_demand) {
    if (dl_demand < 0.0) dl_demand = 0.0;
    if (ul_demand < 0.0) ul_demand = 0.0;
    const double total = dl_demand + ul_demand;
    if (total <= 0.0) return {kFlexibleSymbols / 2, kFlexibleSymbols / 2};

    // round half to even so swapping the demands swaps the split
    int n_dl = static_cast<int>(std::nearbyint(kFlexibleSymbols * dl_demand / total));
    if (n_dl < 0) n_dl = 0;
    if (n_dl > kFlexibleSymbols) n_dl = kFlexibleSymbols;
    int n_ul = kFlexibleSymbols - n_dl;
    // a side with nonzero demand never starves completely
    if (dl_demand > 0.0 && n_dl == 0) {
        n_dl = 1;
        n_ul = kFlexibleSymbols - 1;
    }
    if (ul_demand > 0.0 && n_ul == 0) {
        n_ul = 1;
        n_dl = kFlexibleSymbols - 1;
    }
    return {n_dl, n_ul};
}

}  // namespace oransim
