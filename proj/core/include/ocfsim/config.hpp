#ifndef OCFSIM_CONFIG_HPP
#define OCFSIM_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ocfsim {

/// Raised for invalid configuration values, malformed config files and
/// unknown config keys.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

/// Log-distance pathloss parameter set: PL(d) = pl0_db + 10*exponent*log10(d/d0).
/// Distances below ref_distance_m are clamped to ref_distance_m.
struct PathlossParams {
    double pl0_db = 0.0;
    double exponent = 2.0;
    double ref_distance_m = 1.0;
};

/// Full scenario description. Defaults model a single macro cell at
/// (1 km, 1 km) with N small cells dropped in a 0.1 km disc around it.
struct NetworkConfig {
    int n_sbs = 7;                      // N
    int sues_per_sbs = 4;               // L_i
    int n_mues = 10;                    // W
    int total_subchannels = 20;         // |T|
    int subchannels_per_sbs = 4;        // M
    int tdma_slots = 4;
    double subchannel_bandwidth_hz = 180e3;
    double sbs_tx_power_dbm = 20.0;     // total over the M owned subchannels
    double mbs_tx_power_dbm = 35.0;     // total over the subchannels the MBS radiates on
    double p_lim_dbm = 100.0;           // max tolerable coalition power cost
    double noise_dbm = -104.0;
    double mbs_x_km = 1.0;
    double mbs_y_km = 1.0;
    double macro_radius_km = 0.75;      // MUE placement disc
    double sbs_area_radius_km = 0.1;    // SBS placement disc
    double sbs_coverage_m = 20.0;       // SUE placement disc
    double wall_loss_mbs_sue_db = 20.0; // one wall on every MBS->SUE path
    double wall_loss_sbs_sue_db = 0.0;  // one wall on every SBS->SUE path (0 dB = open)
    std::uint64_t seed = 1;

    PathlossParams mbs_pathloss{34.0, 4.0, 1.0};
    PathlossParams sbs_pathloss{34.0, 2.8, 1.0};

    // Broadcast link budget used for the coalition power cost: the power an
    // SBS needs so its farthest coalition partner receives broadcast_target_rx_dbm,
    // capped at broadcast_power_cap_dbm.
    double broadcast_target_rx_dbm = -70.0;
    double broadcast_power_cap_dbm = 60.0;

    bool mbs_all_subchannels = false;   // MBS radiates on all subchannels instead of MUE-occupied ones
    bool absolute_rate = false;         // scale rates by subchannel_bandwidth_hz (bit/s instead of bit/s/Hz)

    /// Throws ConfigError when a field is out of range
    /// (e.g. subchannels_per_sbs > total_subchannels).
    void validate() const;

    double sbs_total_power_mw() const { return dbm_to_mw(sbs_tx_power_dbm); }
    double mbs_total_power_mw() const { return dbm_to_mw(mbs_tx_power_dbm); }
    double noise_mw() const { return dbm_to_mw(noise_dbm); }
    double p_lim_mw() const { return dbm_to_mw(p_lim_dbm); }
};

/// Parses a JSON config file. Every key is optional and falls back to the
/// default above; unknown keys are a hard error.
NetworkConfig load_config(const std::string& path);
NetworkConfig config_from_json_text(const std::string& text);

/// Canonical JSON dump (sorted keys, full field set).
std::string config_to_json_text(const NetworkConfig& cfg);

/// FNV-1a hash of the canonical JSON dump, as 16 hex digits. Embedded in
/// emitted plots so an output can be traced back to its exact inputs.
std::string config_hash(const NetworkConfig& cfg);

} // namespace ocfsim

#endif // OCFSIM_CONFIG_HPP
