#include "oransim/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oransim/rng.hpp"

namespace oransim {

namespace {

// TS 38.214 Table 5.1.3.1-1 (64-QAM): index, Qm, code rate x1024, SE
constexpr McsTableEntry kMcs64Qam[] = {
    {0, 2, 120, 0.2344},  {1, 2, 157, 0.3066},  {2, 2, 193, 0.3770},
    {3, 2, 251, 0.4902},  {4, 2, 308, 0.6016},  {5, 2, 379, 0.7402},
    {6, 2, 449, 0.8770},  {7, 2, 526, 1.0273},  {8, 2, 602, 1.1758},
    {9, 2, 679, 1.3262},  {10, 4, 340, 1.3281}, {11, 4, 378, 1.4766},
    {12, 4, 434, 1.6953}, {13, 4, 490, 1.9141}, {14, 4, 553, 2.1602},
    {15, 4, 616, 2.4063}, {16, 4, 658, 2.5703}, {17, 6, 438, 2.5664},
    {18, 6, 466, 2.7305}, {19, 6, 517, 3.0293}, {20, 6, 567, 3.3223},
    {21, 6, 616, 3.6094}, {22, 6, 666, 3.9023}, {23, 6, 719, 4.2129},
    {24, 6, 772, 4.5234}, {25, 6, 822, 4.8164}, {26, 6, 873, 5.1152},
    {27, 6, 910, 5.3320}, {28, 6, 948, 5.5547},
};

// TS 38.214 Table 5.2.2.1-2: spectral efficiency per CQI, CQI 0 = out of range
constexpr double kCqiSe[16] = {
    0.0,    0.1523, 0.2344, 0.3770, 0.6016, 0.8770, 1.1758, 1.4766,
    1.9141, 2.4063, 2.7305, 3.3223, 3.9023, 4.5234, 5.1152, 5.5547,
};

}  // namespace

const McsTable& McsTable::builtin() {
    static const McsTable table = [] {
        McsTable t;
        t.entries_.assign(std::begin(kMcs64Qam), std::end(kMcs64Qam));
        return t;
    }();
    return table;
}

McsTable McsTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open MCS table: " + path);
    McsTable t;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        McsTableEntry e;
        char c1, c2, c3;
        if (!(ls >> e.mcs_index >> c1 >> e.modulation_order >> c2 >> e.code_rate_x1024 >>
              c3 >> e.spectral_efficiency) ||
            c1 != ',' || c2 != ',' || c3 != ',')
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed MCS table record");
        if (e.mcs_index != static_cast<int>(t.entries_.size()))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": MCS indices must be contiguous from 0");
        if (e.modulation_order > 6)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": modulation order above 64-QAM");
        t.entries_.push_back(e);
    }
    if (t.entries_.size() != 29)
        throw std::runtime_error(path + ": expected 29 MCS records, got " +
                                 std::to_string(t.entries_.size()));
    return t;
}

const McsTableEntry& McsTable::at(int mcs_index) const {
    if (mcs_index < 0 || mcs_index >= static_cast<int>(entries_.size()))
        throw std::domain_error("MCS index out of range: " + std::to_string(mcs_index));
    return entries_[mcs_index];
}

double UePosition::distance() const { return std::hypot(x, y); }

std::vector<UePosition> place_ues(int n, double radius_m, std::uint64_t seed) {
    if (n < 1 || n > 64) throw std::domain_error("UE count must be in [1, 64]");
    if (radius_m <= 10.0) throw std::domain_error("cell radius must exceed 10 m");
    RngStream rng(seed, "placement");
    std::vector<UePosition> out;
    out.reserve(n);
    const double r_min = 10.0;
    for (int i = 0; i < n; ++i) {
        // area-uniform radius in the annulus
        const double u = rng.uniform();
        const double r = std::sqrt(r_min * r_min + u * (radius_m * radius_m - r_min * r_min));
        const double theta = rng.uniform(0.0, 6.283185307179586476925286766559);
        out.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
    return out;
}

std::vector<UePosition> place_ues_spread(int n, double r_min_m, double r_max_m) {
    if (n < 1 || n > 64) throw std::domain_error("UE count must be in [1, 64]");
    if (r_max_m < r_min_m) throw std::domain_error("spread range inverted");
    std::vector<UePosition> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double d =
            (n == 1) ? r_min_m : r_min_m + (r_max_m - r_min_m) * i / (n - 1.0);
        out.push_back({d, 0.0});
    }
    return out;
}

double pathloss_los_db(double distance_m, double fc_ghz) {
    if (distance_m < 1.0) throw std::domain_error("pathloss undefined below 1 m");
    return 32.4 + 21.0 * std::log10(distance_m) + 20.0 * std::log10(fc_ghz);
}

double noise_power_dbm(double bandwidth_hz, double noise_figure_db) {
    if (bandwidth_hz <= 0.0) throw std::domain_error("bandwidth must be positive");
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double compute_snr_db(double tx_power_dbm, double pathloss_db, double shadowing_db,
                      double noise_dbm) {
    return tx_power_dbm - pathloss_db - shadowing_db - noise_dbm;
}

double cqi_spectral_efficiency(int cqi) {
    if (cqi < 0 || cqi > 15) throw std::domain_error("CQI out of range [0,15]");
    return kCqiSe[cqi];
}

int snr_to_cqi(double snr_db, double backoff_db) {
    const double capacity = std::log2(1.0 + std::pow(10.0, (snr_db - backoff_db) / 10.0));
    int cqi = 0;
    for (int c = 1; c <= 15; ++c)
        if (kCqiSe[c] <= capacity) cqi = c;
    return cqi;
}

int cqi_to_mcs(int cqi, const McsTable& table) {
    if (cqi < 0 || cqi > 15) throw std::domain_error("CQI out of range [0,15]");
    if (cqi == 0) return 0;
    const double se = kCqiSe[cqi];
    int mcs = 0;
    for (const auto& e : table.entries())
        if (e.spectral_efficiency <= se) mcs = e.mcs_index;
    return mcs;
}

long long transport_block_bits(int mcs, int n_symbols, int n_prb, const McsTable& table) {
    if (n_symbols < 0) throw std::domain_error("symbol count must be non-negative");
    if (n_prb < 1) throw std::domain_error("PRB count must be at least 1");
    if (n_symbols == 0) return 0;
    const double se = table.at(mcs).spectral_efficiency;
    return static_cast<long long>(std::floor(n_symbols * n_prb * 12.0 * se));
}

LinkQuality make_link_quality(double snr_db, double cqi_backoff_db, const McsTable& table) {
    LinkQuality lq;
    lq.snr_db = snr_db;
    lq.cqi = snr_to_cqi(snr_db, cqi_backoff_db);
    lq.mcs = cqi_to_mcs(lq.cqi, table);
    lq.schedulable = lq.cqi > 0;
    return lq;
}

}  // namespace oransim
