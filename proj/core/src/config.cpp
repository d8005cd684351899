#include "ocfsim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ocfsim {

using nlohmann::json;

void NetworkConfig::validate() const {
    if (n_sbs < 0) throw ConfigError("n_sbs must be >= 0");
    if (n_mues < 0) throw ConfigError("n_mues must be >= 0");
    if (sues_per_sbs < 1) throw ConfigError("sues_per_sbs must be >= 1");
    if (total_subchannels < 1) throw ConfigError("total_subchannels must be >= 1");
    if (subchannels_per_sbs < 1) throw ConfigError("subchannels_per_sbs must be >= 1");
    if (subchannels_per_sbs > total_subchannels)
        throw ConfigError("subchannels_per_sbs exceeds total_subchannels");
    if (tdma_slots < 1) throw ConfigError("tdma_slots must be >= 1");
    if (subchannel_bandwidth_hz <= 0) throw ConfigError("subchannel_bandwidth_hz must be > 0");
    if (macro_radius_km <= 0) throw ConfigError("macro_radius_km must be > 0");
    if (sbs_area_radius_km <= 0) throw ConfigError("sbs_area_radius_km must be > 0");
    if (sbs_coverage_m <= 0) throw ConfigError("sbs_coverage_m must be > 0");
    if (mbs_pathloss.ref_distance_m <= 0 || sbs_pathloss.ref_distance_m <= 0)
        throw ConfigError("pathloss ref_distance_m must be > 0");
}

namespace {

json pathloss_to_json(const PathlossParams& p) {
    return json{{"pl0_db", p.pl0_db}, {"exponent", p.exponent}, {"ref_distance_m", p.ref_distance_m}};
}

PathlossParams pathloss_from_json(const json& j, const std::string& where) {
    PathlossParams p;
    for (const auto& [key, value] : j.items()) {
        if (key == "pl0_db") p.pl0_db = value.get<double>();
        else if (key == "exponent") p.exponent = value.get<double>();
        else if (key == "ref_distance_m") p.ref_distance_m = value.get<double>();
        else throw ConfigError("unknown key '" + where + "." + key + "'");
    }
    return p;
}

json config_to_json(const NetworkConfig& c) {
    json j;
    j["n_sbs"] = c.n_sbs;
    j["sues_per_sbs"] = c.sues_per_sbs;
    j["n_mues"] = c.n_mues;
    j["total_subchannels"] = c.total_subchannels;
    j["subchannels_per_sbs"] = c.subchannels_per_sbs;
    j["tdma_slots"] = c.tdma_slots;
    j["subchannel_bandwidth_hz"] = c.subchannel_bandwidth_hz;
    j["sbs_tx_power_dbm"] = c.sbs_tx_power_dbm;
    j["mbs_tx_power_dbm"] = c.mbs_tx_power_dbm;
    j["p_lim_dbm"] = c.p_lim_dbm;
    j["noise_dbm"] = c.noise_dbm;
    j["mbs_x_km"] = c.mbs_x_km;
    j["mbs_y_km"] = c.mbs_y_km;
    j["macro_radius_km"] = c.macro_radius_km;
    j["sbs_area_radius_km"] = c.sbs_area_radius_km;
    j["sbs_coverage_m"] = c.sbs_coverage_m;
    j["wall_loss_mbs_sue_db"] = c.wall_loss_mbs_sue_db;
    j["wall_loss_sbs_sue_db"] = c.wall_loss_sbs_sue_db;
    j["seed"] = c.seed;
    j["mbs_pathloss"] = pathloss_to_json(c.mbs_pathloss);
    j["sbs_pathloss"] = pathloss_to_json(c.sbs_pathloss);
    j["broadcast_target_rx_dbm"] = c.broadcast_target_rx_dbm;
    j["broadcast_power_cap_dbm"] = c.broadcast_power_cap_dbm;
    j["mbs_all_subchannels"] = c.mbs_all_subchannels;
    j["absolute_rate"] = c.absolute_rate;
    return j;
}

} // namespace

NetworkConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");

    NetworkConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "n_sbs") c.n_sbs = value.get<int>();
            else if (key == "sues_per_sbs") c.sues_per_sbs = value.get<int>();
            else if (key == "n_mues") c.n_mues = value.get<int>();
            else if (key == "total_subchannels") c.total_subchannels = value.get<int>();
            else if (key == "subchannels_per_sbs") c.subchannels_per_sbs = value.get<int>();
            else if (key == "tdma_slots") c.tdma_slots = value.get<int>();
            else if (key == "subchannel_bandwidth_hz") c.subchannel_bandwidth_hz = value.get<double>();
            else if (key == "sbs_tx_power_dbm") c.sbs_tx_power_dbm = value.get<double>();
            else if (key == "mbs_tx_power_dbm") c.mbs_tx_power_dbm = value.get<double>();
            else if (key == "p_lim_dbm") c.p_lim_dbm = value.get<double>();
            else if (key == "noise_dbm") c.noise_dbm = value.get<double>();
            else if (key == "mbs_x_km") c.mbs_x_km = value.get<double>();
            else if (key == "mbs_y_km") c.mbs_y_km = value.get<double>();
            else if (key == "macro_radius_km") c.macro_radius_km = value.get<double>();
            else if (key == "sbs_area_radius_km") c.sbs_area_radius_km = value.get<double>();
            else if (key == "sbs_coverage_m") c.sbs_coverage_m = value.get<double>();
            else if (key == "wall_loss_mbs_sue_db") c.wall_loss_mbs_sue_db = value.get<double>();
            else if (key == "wall_loss_sbs_sue_db") c.wall_loss_sbs_sue_db = value.get<double>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "mbs_pathloss") c.mbs_pathloss = pathloss_from_json(value, "mbs_pathloss");
            else if (key == "sbs_pathloss") c.sbs_pathloss = pathloss_from_json(value, "sbs_pathloss");
            else if (key == "broadcast_target_rx_dbm") c.broadcast_target_rx_dbm = value.get<double>();
            else if (key == "broadcast_power_cap_dbm") c.broadcast_power_cap_dbm = value.get<double>();
            else if (key == "mbs_all_subchannels") c.mbs_all_subchannels = value.get<bool>();
            else if (key == "absolute_rate") c.absolute_rate = value.get<bool>();
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config type error: ") + e.what());
    }
    c.validate();
    return c;
}

NetworkConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const NetworkConfig& cfg) {
    return config_to_json(cfg).dump(2) + "\n";
}

std::string config_hash(const NetworkConfig& cfg) {
    const std::string text = config_to_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace ocfsim
