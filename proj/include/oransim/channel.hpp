#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oransim {

struct McsTableEntry {
    int mcs_index = 0;
    int modulation_order = 0;   // bits per modulation symbol
    int code_rate_x1024 = 0;    // target code rate * 1024
    double spectral_efficiency = 0.0;  // bits per resource element
};

// TS 38.214 64-QAM MCS index table, MCS 0..28.
class McsTable {
public:
    static const McsTable& builtin();
    static McsTable load(const std::string& path);

    const McsTableEntry& at(int mcs_index) const;
    int size() const { return static_cast<int>(entries_.size()); }
    const std::vector<McsTableEntry>& entries() const { return entries_; }

private:
    std::vector<McsTableEntry> entries_;
};

struct UePosition {
    double x = 0.0;  // meters, gNB at origin
    double y = 0.0;
    double distance() const;
};

struct LinkQuality {
    double snr_db = 0.0;
    int cqi = 0;   // 0..15; 0 = out of range
    int mcs = 0;   // 0..28
    bool schedulable = false;  // false when cqi == 0
};

struct CarrierConfig {
    double bandwidth_hz = 20e6;
    double carrier_freq_ghz = 3.5;
    int n_prb = 24;    // 20 MHz at 60 kHz SCS
    int rbg_size = 2;
    double tx_power_dbm = 30.0;
    double noise_figure_db = 5.0;

    int n_rbg() const { return (n_prb + rbg_size - 1) / rbg_size; }
};

// n positions uniform in the annulus [10 m, radius], deterministic in seed
std::vector<UePosition> place_ues(int n, double radius_m, std::uint64_t seed);

// deterministic even spread of distances over [r_min, r_max] along the x axis
std::vector<UePosition> place_ues_spread(int n, double r_min_m, double r_max_m);

// UMi LOS close-in pathloss: 32.4 + 21 log10(d) + 20 log10(fc)
double pathloss_los_db(double distance_m, double fc_ghz);

// thermal noise floor: -174 dBm/Hz + 10 log10(B) + NF
double noise_power_dbm(double bandwidth_hz, double noise_figure_db);

double compute_snr_db(double tx_power_dbm, double pathloss_db, double shadowing_db,
                      double noise_dbm);

// largest CQI whose required spectral efficiency fits the Shannon capacity at
// (snr - backoff); backoff approximates the BLER operating margin
int snr_to_cqi(double snr_db, double backoff_db = 6.0);

// highest MCS whose spectral efficiency does not exceed the CQI's
int cqi_to_mcs(int cqi, const McsTable& table = McsTable::builtin());

// bits carried by n_symbols full-band symbols at the given MCS
long long transport_block_bits(int mcs, int n_symbols, int n_prb,
                               const McsTable& table = McsTable::builtin());

LinkQuality make_link_quality(double snr_db, double cqi_backoff_db = 6.0,
                              const McsTable& table = McsTable::builtin());

// spectral efficiency required by each CQI index (CQI table 2, 64-QAM ceiling)
double cqi_spectral_efficiency(int cqi);

}  // namespace oransim
