#ifndef OCFSIM_TOPOLOGY_HPP
#define OCFSIM_TOPOLOGY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ocfsim/config.hpp"
#include "ocfsim/geometry.hpp"

namespace ocfsim {

struct SbsNode {
    Point position;
    std::vector<Point> sues;          // L_i SUE positions inside the coverage disc
    std::vector<int> subchannels;     // T_i, sorted ascending, size M
};

struct MueNode {
    Point position;
    int subchannel = 0;
};

/// One generated scenario drop: all node positions plus the initial
/// per-SBS subchannel sets. Immutable once generated.
struct Topology {
    Point mbs;
    std::vector<SbsNode> sbs;
    std::vector<MueNode> mues;

    int n_sbs() const { return static_cast<int>(sbs.size()); }

    /// Subchannel bound to unit m of SBS i (units map onto T_i in ascending
    /// subchannel order).
    int unit_subchannel(int sbs_id, int unit) const { return sbs[sbs_id].subchannels[unit]; }

    /// Throws ConfigError when a placement or subchannel invariant is broken
    /// (used on import; generated topologies satisfy these by construction).
    void validate(const NetworkConfig& cfg) const;
};

/// Deterministic uniform drop: SBSs in the distribution disc around the MBS,
/// SUEs in each SBS coverage disc, MUEs in the macro disc, subchannel sets
/// uniform without replacement per SBS. Identical (config, seed) produce
/// identical topologies.
Topology generate_topology(const NetworkConfig& cfg);

std::string topology_to_json_text(const Topology& topo);
Topology topology_from_json_text(const std::string& text);
void save_topology(const Topology& topo, const std::string& path);
Topology load_topology(const std::string& path);

} // namespace ocfsim

#endif // OCFSIM_TOPOLOGY_HPP
