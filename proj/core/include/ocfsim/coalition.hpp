#ifndef OCFSIM_COALITION_HPP
#define OCFSIM_COALITION_HPP

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ocfsim/channel.hpp"

namespace ocfsim {

/// The minimum indivisible resource of an SBS: unit m of SBS i, bound to one
/// subchannel of T_i.
struct UnitRef {
    int sbs = 0;
    int unit = 0;

    auto operator<=>(const UnitRef&) const = default;
};

/// A coalition compared as (support, per-member unit sets): a sorted list of
/// the units inside it. Two coalitions with the same units are the same
/// coalition for history bookkeeping, regardless of container ids.
using CoalitionIdentity = std::vector<UnitRef>;

/// A partial coalition: each member SBS dedicates a subset of its units.
/// The id is a run-scoped container id and stays put as membership changes.
struct PartialCoalition {
    int id = 0;
    std::map<int, std::vector<int>> members; // sbs -> sorted unit indices, nonempty

    bool contains(int sbs_id, int unit) const;
    int unit_count() const;
    int unit_count(int sbs_id) const;
    std::vector<int> support() const;
    CoalitionIdentity identity() const;

    void add_unit(int sbs_id, int unit);
    void remove_unit(int sbs_id, int unit);
};

/// Pooled subchannels of a coalition: the union of the subchannels bound to
/// its units (duplicates contributed by different SBSs collapse).
std::vector<int> resource_pool(const PartialCoalition& coalition, const RadioEnvironment& env);

/// An overlapping coalition structure: every unit of every SBS belongs to
/// exactly one coalition. Coalitions are kept sorted by ascending id.
struct CoalitionStructure {
    std::vector<PartialCoalition> coalitions;
    int next_id = 1;

    const PartialCoalition* find(int id) const;
    PartialCoalition* find(int id);
    int coalition_of(int sbs_id, int unit) const; // coalition id, -1 if absent

    /// Throws std::logic_error naming the violated invariant: unit
    /// conservation (every unit exactly once) or duplicate coalition identity.
    void validate(const RadioEnvironment& env) const;
};

/// One coalition per SBS holding all its units: the noncooperative start state.
CoalitionStructure initial_structure(const RadioEnvironment& env);

/// Per-SBS count of coalitions whose support contains it, reduced to
/// (max, mean). Empty structure yields (0, 0).
std::pair<int, double> coalitions_per_sbs(const CoalitionStructure& structure);

// --- structure file schema (documented in the README) ---
// {"coalitions":[{"id":1,"members":[{"sbs":0,"unit":0,"subchannel":5},...]},...],
//  "history":[{"sbs":0,"unit":0,"coalitions":[[[0,0],[1,2]],...]},...]}  (history optional)

using HistoryKey = UnitRef; // unit == -1 keys whole-SBS history (CF baseline)
using HistoryMap = std::map<HistoryKey, std::set<CoalitionIdentity>>;

std::string structure_to_json_text(const CoalitionStructure& structure,
                                   const RadioEnvironment& env,
                                   const HistoryMap* history = nullptr);
/// Parses a structure file; subchannel fields are checked against the
/// environment's unit binding. Returns the structure and any history block.
std::pair<CoalitionStructure, HistoryMap>
structure_from_json_text(const std::string& text, const RadioEnvironment& env);

void save_structure(const CoalitionStructure& structure, const RadioEnvironment& env,
                    const HistoryMap* history, const std::string& path);
std::pair<CoalitionStructure, HistoryMap> load_structure(const std::string& path,
                                                         const RadioEnvironment& env);

} // namespace ocfsim

#endif // OCFSIM_COALITION_HPP
