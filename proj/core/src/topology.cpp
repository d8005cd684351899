#include "ocfsim/topology.hpp"

#include <algorithm>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

namespace ocfsim {

using nlohmann::json;

namespace {

/// Thin wrapper producing platform-independent draws from mt19937_64 (the
/// distributions in <random> are not pinned by the standard, and regression
/// fixtures should not depend on the standard library build).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t bounded(std::uint64_t n) {
        // rejection sampling on the smallest covering power-of-two mask
        std::uint64_t mask = n - 1;
        mask |= mask >> 1; mask |= mask >> 2; mask |= mask >> 4;
        mask |= mask >> 8; mask |= mask >> 16; mask |= mask >> 32;
        std::uint64_t v;
        do { v = gen_() & mask; } while (v >= n);
        return v;
    }

    /// k distinct values from 0..n-1 (partial Fisher-Yates), sorted.
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> deck(n);
        for (int i = 0; i < n; ++i) deck[i] = i;
        for (int i = 0; i < k; ++i) {
            const int j = i + static_cast<int>(bounded(static_cast<std::uint64_t>(n - i)));
            std::swap(deck[i], deck[j]);
        }
        deck.resize(k);
        std::sort(deck.begin(), deck.end());
        return deck;
    }

    Point in_disc(const Point& center, double radius_km) {
        const double r = radius_km * std::sqrt(uniform());
        const double theta = 2.0 * std::numbers::pi * uniform();
        return {center.x_km + r * std::cos(theta), center.y_km + r * std::sin(theta)};
    }

private:
    std::mt19937_64 gen_;
};

} // namespace

Topology generate_topology(const NetworkConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);

    Topology topo;
    topo.mbs = {cfg.mbs_x_km, cfg.mbs_y_km};

    topo.sbs.resize(cfg.n_sbs);
    for (auto& node : topo.sbs) node.position = rng.in_disc(topo.mbs, cfg.sbs_area_radius_km);
    for (auto& node : topo.sbs) {
        node.sues.resize(cfg.sues_per_sbs);
        for (auto& sue : node.sues) sue = rng.in_disc(node.position, cfg.sbs_coverage_m / 1000.0);
    }

    topo.mues.resize(cfg.n_mues);
    for (auto& mue : topo.mues) mue.position = rng.in_disc(topo.mbs, cfg.macro_radius_km);

    for (auto& node : topo.sbs)
        node.subchannels = rng.sample_without_replacement(cfg.total_subchannels, cfg.subchannels_per_sbs);

    // MUE subchannels: distinct while they fit; beyond |T| MUEs the ids are
    // dealt in shuffled rounds so no subchannel is reused before all are used.
    if (cfg.n_mues > 0) {
        std::vector<int> assigned;
        assigned.reserve(cfg.n_mues);
        while (static_cast<int>(assigned.size()) < cfg.n_mues) {
            const int take = std::min(cfg.total_subchannels,
                                      cfg.n_mues - static_cast<int>(assigned.size()));
            std::vector<int> round = rng.sample_without_replacement(cfg.total_subchannels, take);
            // sample_without_replacement sorts; shuffle the round so ties
            // across rounds do not always hit the low ids
            for (int i = static_cast<int>(round.size()) - 1; i > 0; --i)
                std::swap(round[i], round[rng.bounded(static_cast<std::uint64_t>(i + 1))]);
            assigned.insert(assigned.end(), round.begin(), round.end());
        }
        for (int w = 0; w < cfg.n_mues; ++w) topo.mues[w].subchannel = assigned[w];
    }

    return topo;
}

void Topology::validate(const NetworkConfig& cfg) const {
    if (static_cast<int>(sbs.size()) != cfg.n_sbs)
        throw ConfigError("topology: SBS count does not match config");
    if (static_cast<int>(mues.size()) != cfg.n_mues)
        throw ConfigError("topology: MUE count does not match config");
    const double eps = 1e-9;
    for (std::size_t i = 0; i < sbs.size(); ++i) {
        const auto& node = sbs[i];
        if (distance_km(node.position, mbs) > cfg.sbs_area_radius_km + eps)
            throw ConfigError("topology: SBS outside the distribution disc");
        if (static_cast<int>(node.sues.size()) != cfg.sues_per_sbs)
            throw ConfigError("topology: SUE count does not match config");
        for (const auto& sue : node.sues)
            if (distance_m(sue, node.position) > cfg.sbs_coverage_m + eps)
                throw ConfigError("topology: SUE outside its SBS coverage disc");
        if (static_cast<int>(node.subchannels.size()) != cfg.subchannels_per_sbs)
            throw ConfigError("topology: subchannel set size != subchannels_per_sbs");
        std::vector<int> t = node.subchannels;
        if (!std::is_sorted(t.begin(), t.end()) ||
            std::adjacent_find(t.begin(), t.end()) != t.end())
            throw ConfigError("topology: subchannel set must be sorted and distinct");
        for (int k : t)
            if (k < 0 || k >= cfg.total_subchannels)
                throw ConfigError("topology: subchannel id out of range");
    }
    std::vector<int> mue_chs;
    for (const auto& mue : mues) {
        if (distance_km(mue.position, mbs) > cfg.macro_radius_km + eps)
            throw ConfigError("topology: MUE outside the macro disc");
        if (mue.subchannel < 0 || mue.subchannel >= cfg.total_subchannels)
            throw ConfigError("topology: MUE subchannel out of range");
        mue_chs.push_back(mue.subchannel);
    }
    if (cfg.n_mues <= cfg.total_subchannels) {
        std::sort(mue_chs.begin(), mue_chs.end());
        if (std::adjacent_find(mue_chs.begin(), mue_chs.end()) != mue_chs.end())
            throw ConfigError("topology: MUE subchannels must be distinct");
    }
}

namespace {

json point_to_json(const Point& p) { return json{{"x_km", p.x_km}, {"y_km", p.y_km}}; }

Point point_from_json(const json& j) { return {j.at("x_km").get<double>(), j.at("y_km").get<double>()}; }

} // namespace

std::string topology_to_json_text(const Topology& topo) {
    json j;
    j["mbs"] = point_to_json(topo.mbs);
    j["sbs"] = json::array();
    for (std::size_t i = 0; i < topo.sbs.size(); ++i) {
        const auto& node = topo.sbs[i];
        json n;
        n["id"] = i;
        n["position"] = point_to_json(node.position);
        n["subchannels"] = node.subchannels;
        n["sues"] = json::array();
        for (const auto& sue : node.sues) n["sues"].push_back(point_to_json(sue));
        j["sbs"].push_back(std::move(n));
    }
    j["mues"] = json::array();
    for (const auto& mue : topo.mues) {
        json m;
        m["position"] = point_to_json(mue.position);
        m["subchannel"] = mue.subchannel;
        j["mues"].push_back(std::move(m));
    }
    return j.dump(2) + "\n";
}

Topology topology_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("topology parse error: ") + e.what());
    }
    Topology topo;
    try {
        topo.mbs = point_from_json(j.at("mbs"));
        for (const auto& n : j.at("sbs")) {
            SbsNode node;
            node.position = point_from_json(n.at("position"));
            node.subchannels = n.at("subchannels").get<std::vector<int>>();
            for (const auto& s : n.at("sues")) node.sues.push_back(point_from_json(s));
            topo.sbs.push_back(std::move(node));
        }
        for (const auto& m : j.at("mues")) {
            MueNode mue;
            mue.position = point_from_json(m.at("position"));
            mue.subchannel = m.at("subchannel").get<int>();
            topo.mues.push_back(mue);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("topology schema error: ") + e.what());
    }
    return topo;
}

void save_topology(const Topology& topo, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << topology_to_json_text(topo);
}

Topology load_topology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read topology file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return topology_from_json_text(buf.str());
}

} // namespace ocfsim
