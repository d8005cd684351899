#ifndef OCFSIM_CHANNEL_HPP
#define OCFSIM_CHANNEL_HPP

#include <vector>

#include "ocfsim/config.hpp"
#include "ocfsim/topology.hpp"

namespace ocfsim {

/// PL(d) in dB for the log-distance model; d clamped below at the reference
/// distance so the gain stays finite as d -> 0.
double pathloss_db(double distance_m, const PathlossParams& params);

/// Linear power gain 10^(-(PL(d) + wall_count*wall_loss_db)/10).
double link_gain(double distance_m, int wall_count, double wall_loss_db,
                 const PathlossParams& params);

/// Equal split of a total transmit power across the subchannels a node
/// radiates on. Throws ConfigError when active_subchannel_count < 1.
double per_subchannel_power_mw(double total_power_dbm, int active_subchannel_count);

/// All radio quantities the game consumes, decoupled from geometry so tests
/// can hand-set gains. Indexing: SUE u of SBS i is sue_gain[...][i][u].
struct RadioEnvironment {
    int n_sbs = 0;
    int total_subchannels = 0;
    int tdma_slots = 1;
    std::vector<int> sues_per_sbs;                        // L_i
    std::vector<std::vector<int>> initial_subchannels;    // T_i, sorted ascending

    double sbs_power_mw = 0.0;                            // per subchannel, any SBS
    double mbs_power_mw = 0.0;                            // per active MBS subchannel
    std::vector<int> mbs_subchannels;                     // sorted, distinct
    double noise_mw = 0.0;
    double p_lim_mw = 0.0;
    double rate_scale = 1.0;                              // 1 (bit/s/Hz) or bandwidth (bit/s)

    // gain_sbs_sue[j][i][u]: gain from SBS j to SUE u of SBS i
    std::vector<std::vector<std::vector<double>>> gain_sbs_sue;
    // gain_mbs_sue[i][u]: gain from the MBS to SUE u of SBS i
    std::vector<std::vector<double>> gain_mbs_sue;
    // sbs_distance_m[i][j], zero on the diagonal
    std::vector<std::vector<double>> sbs_distance_m;

    // Broadcast link budget for the coalition power cost.
    PathlossParams sbs_pathloss;
    double broadcast_target_rx_dbm = -70.0;
    double broadcast_power_cap_dbm = 60.0;

    bool mbs_active_on(int subchannel) const;

    /// Power (mW) an SBS spends to reach a partner at the given distance:
    /// target receive level plus the SBS-tier pathloss, no walls, capped.
    double broadcast_power_mw(double distance_m) const;

    /// Subchannel of unit m of SBS i.
    int unit_subchannel(int sbs_id, int unit) const {
        return initial_subchannels[sbs_id][unit];
    }
    int units_per_sbs(int sbs_id) const {
        return static_cast<int>(initial_subchannels[sbs_id].size());
    }
};

/// Derives every gain, power and noise figure the game needs from a topology.
RadioEnvironment build_environment(const Topology& topo, const NetworkConfig& cfg);

} // namespace ocfsim

#endif // OCFSIM_CHANNEL_HPP
