#include "ocfsim/channel.hpp"

#include <algorithm>
#include <cmath>

namespace ocfsim {

double pathloss_db(double distance_m, const PathlossParams& params) {
    const double d = std::max(distance_m, params.ref_distance_m);
    return params.pl0_db + 10.0 * params.exponent * std::log10(d / params.ref_distance_m);
}

double link_gain(double distance_m, int wall_count, double wall_loss_db,
                 const PathlossParams& params) {
    const double loss_db = pathloss_db(distance_m, params) + wall_count * wall_loss_db;
    return std::pow(10.0, -loss_db / 10.0);
}

double per_subchannel_power_mw(double total_power_dbm, int active_subchannel_count) {
    if (active_subchannel_count < 1)
        throw ConfigError("per-subchannel power needs at least one active subchannel");
    return dbm_to_mw(total_power_dbm) / active_subchannel_count;
}

bool RadioEnvironment::mbs_active_on(int subchannel) const {
    return std::binary_search(mbs_subchannels.begin(), mbs_subchannels.end(), subchannel);
}

double RadioEnvironment::broadcast_power_mw(double distance_m) const {
    const double dbm = broadcast_target_rx_dbm + pathloss_db(distance_m, sbs_pathloss);
    return dbm_to_mw(std::min(dbm, broadcast_power_cap_dbm));
}

RadioEnvironment build_environment(const Topology& topo, const NetworkConfig& cfg) {
    cfg.validate();
    topo.validate(cfg);

    RadioEnvironment env;
    env.n_sbs = topo.n_sbs();
    env.total_subchannels = cfg.total_subchannels;
    env.tdma_slots = cfg.tdma_slots;
    env.sues_per_sbs.assign(env.n_sbs, cfg.sues_per_sbs);
    env.initial_subchannels.resize(env.n_sbs);
    for (int i = 0; i < env.n_sbs; ++i) env.initial_subchannels[i] = topo.sbs[i].subchannels;

    env.sbs_power_mw = per_subchannel_power_mw(cfg.sbs_tx_power_dbm, cfg.subchannels_per_sbs);

    if (cfg.mbs_all_subchannels) {
        env.mbs_subchannels.resize(cfg.total_subchannels);
        for (int k = 0; k < cfg.total_subchannels; ++k) env.mbs_subchannels[k] = k;
    } else {
        for (const auto& mue : topo.mues) env.mbs_subchannels.push_back(mue.subchannel);
        std::sort(env.mbs_subchannels.begin(), env.mbs_subchannels.end());
        env.mbs_subchannels.erase(
            std::unique(env.mbs_subchannels.begin(), env.mbs_subchannels.end()),
            env.mbs_subchannels.end());
    }
    env.mbs_power_mw = env.mbs_subchannels.empty()
                           ? 0.0
                           : per_subchannel_power_mw(cfg.mbs_tx_power_dbm,
                                                     static_cast<int>(env.mbs_subchannels.size()));

    env.noise_mw = cfg.noise_mw();
    env.p_lim_mw = cfg.p_lim_mw();
    env.rate_scale = cfg.absolute_rate ? cfg.subchannel_bandwidth_hz : 1.0;

    env.gain_sbs_sue.assign(env.n_sbs, {});
    for (int j = 0; j < env.n_sbs; ++j) {
        env.gain_sbs_sue[j].assign(env.n_sbs, {});
        for (int i = 0; i < env.n_sbs; ++i) {
            env.gain_sbs_sue[j][i].resize(cfg.sues_per_sbs);
            for (int u = 0; u < cfg.sues_per_sbs; ++u) {
                const double d = distance_m(topo.sbs[j].position, topo.sbs[i].sues[u]);
                env.gain_sbs_sue[j][i][u] =
                    link_gain(d, 1, cfg.wall_loss_sbs_sue_db, cfg.sbs_pathloss);
            }
        }
    }
    env.gain_mbs_sue.assign(env.n_sbs, {});
    for (int i = 0; i < env.n_sbs; ++i) {
        env.gain_mbs_sue[i].resize(cfg.sues_per_sbs);
        for (int u = 0; u < cfg.sues_per_sbs; ++u) {
            const double d = distance_m(topo.mbs, topo.sbs[i].sues[u]);
            env.gain_mbs_sue[i][u] = link_gain(d, 1, cfg.wall_loss_mbs_sue_db, cfg.mbs_pathloss);
        }
    }
    env.sbs_distance_m.assign(env.n_sbs, std::vector<double>(env.n_sbs, 0.0));
    for (int i = 0; i < env.n_sbs; ++i)
        for (int j = 0; j < env.n_sbs; ++j)
            env.sbs_distance_m[i][j] = distance_m(topo.sbs[i].position, topo.sbs[j].position);

    env.sbs_pathloss = cfg.sbs_pathloss;
    env.broadcast_target_rx_dbm = cfg.broadcast_target_rx_dbm;
    env.broadcast_power_cap_dbm = cfg.broadcast_power_cap_dbm;
    return env;
}

} // namespace ocfsim
