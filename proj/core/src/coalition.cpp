#include "ocfsim/coalition.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ocfsim {

using nlohmann::json;

bool PartialCoalition::contains(int sbs_id, int unit) const {
    auto it = members.find(sbs_id);
    if (it == members.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), unit);
}

int PartialCoalition::unit_count() const {
    int n = 0;
    for (const auto& [sbs, units] : members) n += static_cast<int>(units.size());
    return n;
}

int PartialCoalition::unit_count(int sbs_id) const {
    auto it = members.find(sbs_id);
    return it == members.end() ? 0 : static_cast<int>(it->second.size());
}

std::vector<int> PartialCoalition::support() const {
    std::vector<int> out;
    out.reserve(members.size());
    for (const auto& [sbs, units] : members) out.push_back(sbs);
    return out;
}

CoalitionIdentity PartialCoalition::identity() const {
    CoalitionIdentity id;
    id.reserve(unit_count());
    for (const auto& [sbs, units] : members)
        for (int u : units) id.push_back({sbs, u});
    return id; // members map is ordered, unit lists sorted
}

void PartialCoalition::add_unit(int sbs_id, int unit) {
    auto& units = members[sbs_id];
    auto it = std::lower_bound(units.begin(), units.end(), unit);
    if (it != units.end() && *it == unit)
        throw std::logic_error("unit already in coalition");
    units.insert(it, unit);
}

void PartialCoalition::remove_unit(int sbs_id, int unit) {
    auto it = members.find(sbs_id);
    if (it == members.end())
        throw std::logic_error("SBS not in coalition");
    auto& units = it->second;
    auto pos = std::lower_bound(units.begin(), units.end(), unit);
    if (pos == units.end() || *pos != unit)
        throw std::logic_error("unit not in coalition");
    units.erase(pos);
    if (units.empty()) members.erase(it);
}

std::vector<int> resource_pool(const PartialCoalition& coalition, const RadioEnvironment& env) {
    std::vector<int> pool;
    for (const auto& [sbs, units] : coalition.members)
        for (int u : units) pool.push_back(env.unit_subchannel(sbs, u));
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    return pool;
}

const PartialCoalition* CoalitionStructure::find(int id) const {
    for (const auto& c : coalitions)
        if (c.id == id) return &c;
    return nullptr;
}

PartialCoalition* CoalitionStructure::find(int id) {
    for (auto& c : coalitions)
        if (c.id == id) return &c;
    return nullptr;
}

int CoalitionStructure::coalition_of(int sbs_id, int unit) const {
    for (const auto& c : coalitions)
        if (c.contains(sbs_id, unit)) return c.id;
    return -1;
}

void CoalitionStructure::validate(const RadioEnvironment& env) const {
    std::vector<std::vector<int>> seen(env.n_sbs);
    for (int i = 0; i < env.n_sbs; ++i) seen[i].assign(env.units_per_sbs(i), 0);

    std::vector<CoalitionIdentity> identities;
    for (const auto& c : coalitions) {
        if (c.members.empty())
            throw std::logic_error("structure invariant violated: empty coalition");
        for (const auto& [sbs, units] : c.members) {
            if (sbs < 0 || sbs >= env.n_sbs)
                throw std::logic_error("structure invariant violated: unknown SBS id");
            if (units.empty())
                throw std::logic_error("structure invariant violated: member with no units");
            for (int u : units) {
                if (u < 0 || u >= env.units_per_sbs(sbs))
                    throw std::logic_error("structure invariant violated: unit index out of range");
                seen[sbs][u] += 1;
            }
        }
        identities.push_back(c.identity());
    }
    for (int i = 0; i < env.n_sbs; ++i)
        for (int u = 0; u < env.units_per_sbs(i); ++u) {
            if (seen[i][u] == 0)
                throw std::logic_error("unit conservation violated: unit missing from structure");
            if (seen[i][u] > 1)
                throw std::logic_error("unit conservation violated: unit in several coalitions");
        }
    std::sort(identities.begin(), identities.end());
    if (std::adjacent_find(identities.begin(), identities.end()) != identities.end())
        throw std::logic_error("structure invariant violated: duplicate coalition identity");
}

CoalitionStructure initial_structure(const RadioEnvironment& env) {
    CoalitionStructure cs;
    cs.coalitions.reserve(env.n_sbs);
    for (int i = 0; i < env.n_sbs; ++i) {
        PartialCoalition c;
        c.id = cs.next_id++;
        std::vector<int> units(env.units_per_sbs(i));
        for (int u = 0; u < env.units_per_sbs(i); ++u) units[u] = u;
        c.members[i] = std::move(units);
        cs.coalitions.push_back(std::move(c));
    }
    return cs;
}

std::pair<int, double> coalitions_per_sbs(const CoalitionStructure& structure) {
    std::map<int, int> counts;
    for (const auto& c : structure.coalitions)
        for (const auto& [sbs, units] : c.members) counts[sbs] += 1;
    if (counts.empty()) return {0, 0.0};
    int max = 0;
    double sum = 0.0;
    for (const auto& [sbs, n] : counts) {
        max = std::max(max, n);
        sum += n;
    }
    return {max, sum / static_cast<double>(counts.size())};
}

namespace {

json identity_to_json(const CoalitionIdentity& id) {
    json arr = json::array();
    for (const auto& u : id) arr.push_back(json::array({u.sbs, u.unit}));
    return arr;
}

CoalitionIdentity identity_from_json(const json& arr) {
    CoalitionIdentity id;
    for (const auto& pair : arr) id.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
    std::sort(id.begin(), id.end());
    return id;
}

} // namespace

std::string structure_to_json_text(const CoalitionStructure& structure,
                                   const RadioEnvironment& env, const HistoryMap* history) {
    json j;
    j["coalitions"] = json::array();
    for (const auto& c : structure.coalitions) {
        json jc;
        jc["id"] = c.id;
        jc["members"] = json::array();
        for (const auto& [sbs, units] : c.members)
            for (int u : units)
                jc["members"].push_back(
                    json{{"sbs", sbs}, {"unit", u}, {"subchannel", env.unit_subchannel(sbs, u)}});
        j["coalitions"].push_back(std::move(jc));
    }
    if (history != nullptr) {
        j["history"] = json::array();
        for (const auto& [key, identities] : *history) {
            json h;
            h["sbs"] = key.sbs;
            h["unit"] = key.unit;
            h["coalitions"] = json::array();
            for (const auto& id : identities) h["coalitions"].push_back(identity_to_json(id));
            j["history"].push_back(std::move(h));
        }
    }
    return j.dump(2) + "\n";
}

std::pair<CoalitionStructure, HistoryMap>
structure_from_json_text(const std::string& text, const RadioEnvironment& env) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("structure parse error: ") + e.what());
    }
    CoalitionStructure cs;
    HistoryMap history;
    try {
        for (const auto& jc : j.at("coalitions")) {
            PartialCoalition c;
            c.id = jc.at("id").get<int>();
            for (const auto& m : jc.at("members")) {
                const int sbs = m.at("sbs").get<int>();
                const int unit = m.at("unit").get<int>();
                if (m.contains("subchannel")) {
                    if (sbs < 0 || sbs >= env.n_sbs || unit < 0 || unit >= env.units_per_sbs(sbs))
                        throw ConfigError("structure: unit reference out of range");
                    if (m.at("subchannel").get<int>() != env.unit_subchannel(sbs, unit))
                        throw ConfigError("structure: subchannel does not match the unit binding");
                }
                c.members[sbs].push_back(unit);
            }
            for (auto& [sbs, units] : c.members) std::sort(units.begin(), units.end());
            cs.next_id = std::max(cs.next_id, c.id + 1);
            cs.coalitions.push_back(std::move(c));
        }
        std::sort(cs.coalitions.begin(), cs.coalitions.end(),
                  [](const PartialCoalition& a, const PartialCoalition& b) { return a.id < b.id; });
        if (j.contains("history")) {
            for (const auto& h : j.at("history")) {
                HistoryKey key{h.at("sbs").get<int>(), h.at("unit").get<int>()};
                for (const auto& id : h.at("coalitions"))
                    history[key].insert(identity_from_json(id));
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("structure schema error: ") + e.what());
    }
    return {std::move(cs), std::move(history)};
}

void save_structure(const CoalitionStructure& structure, const RadioEnvironment& env,
                    const HistoryMap* history, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << structure_to_json_text(structure, env, history);
}

std::pair<CoalitionStructure, HistoryMap> load_structure(const std::string& path,
                                                         const RadioEnvironment& env) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read structure file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return structure_from_json_text(buf.str(), env);
}

} // namespace ocfsim
