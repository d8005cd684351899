#include "ocfsim/engine.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace ocfsim {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::OCF: return "ocf";
        case Algorithm::CF: return "cf";
        case Algorithm::NONCOOP: return "noncoop";
    }
    return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "ocf") return Algorithm::OCF;
    if (s == "cf") return Algorithm::CF;
    if (s == "noncoop") return Algorithm::NONCOOP;
    throw ConfigError("unknown algorithm '" + s + "' (expected ocf|cf|noncoop)");
}

namespace {

/// Moves `units` (all owned by `sbs`) from their current coalition(s) into
/// the coalition `target_id`, or into a fresh singleton when target_id < 0.
/// Emptied coalitions are dropped. Returns the id of the coalition the units
/// ended up in.
int apply_move(CoalitionStructure& cs, int sbs, const std::vector<int>& units, int target_id) {
    for (int unit : units) {
        const int from = cs.coalition_of(sbs, unit);
        cs.find(from)->remove_unit(sbs, unit);
    }
    cs.coalitions.erase(std::remove_if(cs.coalitions.begin(), cs.coalitions.end(),
                                       [](const PartialCoalition& c) { return c.members.empty(); }),
                        cs.coalitions.end());
    if (target_id < 0) {
        PartialCoalition fresh;
        fresh.id = cs.next_id++;
        fresh.members[sbs] = units;
        std::sort(fresh.members[sbs].begin(), fresh.members[sbs].end());
        cs.coalitions.push_back(std::move(fresh));
        return cs.coalitions.back().id;
    }
    PartialCoalition* target = cs.find(target_id);
    for (int unit : units) target->add_unit(sbs, unit);
    return target_id;
}

bool in_history(const HistoryMap& history, const HistoryKey& key, const CoalitionIdentity& id) {
    auto it = history.find(key);
    return it != history.end() && it->second.count(id) > 0;
}

/// Shared admissibility test for OCF (single unit) and CF (whole SBS)
/// moves. `units` lists the moved units of `sbs`; `target_id` < 0 means the
/// independent move.
MoveDecision check_move(int sbs, const std::vector<int>& units, int target_id,
                        const CoalitionStructure& structure, const Outcome& current,
                        const RadioEnvironment& env, const HistoryMap& history,
                        const HistoryKey& key) {
    MoveDecision d;
    CoalitionStructure candidate = structure;
    const int new_id = apply_move(candidate, sbs, units, target_id);
    const PartialCoalition* formed = candidate.find(new_id);

    if (in_history(history, key, formed->identity())) {
        d.reason = "history: unit already joined this coalition";
        return d;
    }

    Outcome next = evaluate_structure(candidate, env);
    if (!(next.sbs_totals[sbs] > current.sbs_totals[sbs])) {
        d.reason = "owner payoff does not strictly increase";
        return d;
    }
    if (!(next.system_value > current.system_value)) {
        d.reason = "system payoff does not strictly increase";
        return d;
    }
    if (target_id >= 0) {
        double before = 0.0, after = 0.0;
        for (int j : formed->support()) {
            before += current.sbs_totals[j];
            after += next.sbs_totals[j];
        }
        if (after < before) {
            d.reason = "newly formed coalition's summed payoffs decrease";
            return d;
        }
    }
    d.accepted = true;
    d.structure = std::move(candidate);
    d.outcome = std::move(next);
    return d;
}

} // namespace

MoveDecision check_switch(const UnitRef& unit, int target_id, const CoalitionStructure& structure,
                          const Outcome& current, const RadioEnvironment& env,
                          const HistoryMap& history) {
    MoveDecision d;
    const int from = structure.coalition_of(unit.sbs, unit.unit);
    if (from < 0 || structure.find(target_id) == nullptr) {
        d.reason = "unit or target coalition not in structure";
        return d;
    }
    if (from == target_id) {
        d.reason = "target equals the current coalition";
        return d;
    }
    return check_move(unit.sbs, {unit.unit}, target_id, structure, current, env, history, unit);
}

MoveDecision check_independent(const UnitRef& unit, const CoalitionStructure& structure,
                               const Outcome& current, const RadioEnvironment& env,
                               const HistoryMap& history) {
    MoveDecision d;
    const int from = structure.coalition_of(unit.sbs, unit.unit);
    if (from < 0) {
        d.reason = "unit not in structure";
        return d;
    }
    const PartialCoalition* cur = structure.find(from);
    if (cur->unit_count() == 1) {
        d.reason = "unit is already alone in its coalition";
        return d;
    }
    return check_move(unit.sbs, {unit.unit}, -1, structure, current, env, history, unit);
}

MoveDecision check_switch_sbs(int sbs_id, int target_id, const CoalitionStructure& structure,
                              const Outcome& current, const RadioEnvironment& env,
                              const HistoryMap& history) {
    MoveDecision d;
    const int from = structure.coalition_of(sbs_id, 0);
    if (from < 0 || structure.find(target_id) == nullptr) {
        d.reason = "SBS or target coalition not in structure";
        return d;
    }
    if (from == target_id) {
        d.reason = "target equals the current coalition";
        return d;
    }
    std::vector<int> units(env.units_per_sbs(sbs_id));
    for (int u = 0; u < env.units_per_sbs(sbs_id); ++u) units[u] = u;
    return check_move(sbs_id, units, target_id, structure, current, env, history,
                      HistoryKey{sbs_id, -1});
}

MoveDecision check_independent_sbs(int sbs_id, const CoalitionStructure& structure,
                                   const Outcome& current, const RadioEnvironment& env,
                                   const HistoryMap& history) {
    MoveDecision d;
    const int from = structure.coalition_of(sbs_id, 0);
    if (from < 0) {
        d.reason = "SBS not in structure";
        return d;
    }
    if (structure.find(from)->members.size() == 1) {
        d.reason = "SBS is already alone in its coalition";
        return d;
    }
    std::vector<int> units(env.units_per_sbs(sbs_id));
    for (int u = 0; u < env.units_per_sbs(sbs_id); ++u) units[u] = u;
    return check_move(sbs_id, units, -1, structure, current, env, history, HistoryKey{sbs_id, -1});
}

namespace {

struct Mover {
    HistoryKey key;             // (sbs, unit) or (sbs, -1) for CF
    std::vector<int> units;
};

std::vector<Mover> movers_for(const RadioEnvironment& env, bool whole_sbs) {
    std::vector<Mover> out;
    for (int i = 0; i < env.n_sbs; ++i) {
        if (whole_sbs) {
            Mover m{{i, -1}, {}};
            for (int u = 0; u < env.units_per_sbs(i); ++u) m.units.push_back(u);
            out.push_back(std::move(m));
        } else {
            for (int u = 0; u < env.units_per_sbs(i); ++u) out.push_back({{i, u}, {u}});
        }
    }
    return out;
}

/// First admissible move for this mover in canonical order: existing targets
/// by ascending coalition id, then the independent move.
MoveDecision first_admissible(const Mover& mover, const CoalitionStructure& structure,
                              const Outcome& current, const RadioEnvironment& env,
                              const HistoryMap& history, bool whole_sbs, int* target_out) {
    const int sbs = mover.key.sbs;
    const int from = structure.coalition_of(sbs, mover.units.front());
    for (const auto& target : structure.coalitions) {
        if (target.id == from) continue;
        MoveDecision d = whole_sbs
                             ? check_switch_sbs(sbs, target.id, structure, current, env, history)
                             : check_switch({sbs, mover.units.front()}, target.id, structure,
                                            current, env, history);
        if (d.accepted) {
            *target_out = target.id;
            return d;
        }
    }
    MoveDecision d = whole_sbs
                         ? check_independent_sbs(sbs, structure, current, env, history)
                         : check_independent({sbs, mover.units.front()}, structure, current, env,
                                             history);
    if (d.accepted) *target_out = -1;
    return d;
}

RunResult run_formation(const RadioEnvironment& env, const EngineOptions& opts, bool whole_sbs) {
    const auto t0 = std::chrono::steady_clock::now();
    RunResult res;
    res.structure = initial_structure(env);
    res.outcome = evaluate_structure(res.structure, env);

    const std::vector<Mover> movers = movers_for(env, whole_sbs);
    for (const auto& m : movers) {
        const int id = res.structure.coalition_of(m.key.sbs, m.units.front());
        res.history[m.key].insert(res.structure.find(id)->identity());
    }

    long cap = opts.iteration_cap;
    if (cap == 0) {
        long total_units = 0;
        for (int i = 0; i < env.n_sbs; ++i) total_units += env.units_per_sbs(i);
        cap = 10L * total_units * (env.n_sbs + 1);
        cap = std::max(cap, 16L);
    }

    bool moved = true;
    while (moved) {
        moved = false;
        res.trace.scans += 1;
        for (const auto& mover : movers) {
            const auto move_start = std::chrono::steady_clock::now();
            int target = 0;
            MoveDecision d = first_admissible(mover, res.structure, res.outcome, env,
                                              res.history, whole_sbs, &target);
            if (!d.accepted) continue;

            const double previous_value = res.outcome.system_value;
            const int from = res.structure.coalition_of(mover.key.sbs, mover.units.front());
            res.structure = std::move(d.structure);
            res.outcome = std::move(d.outcome);
            res.structure.validate(env);
            if (!(res.outcome.system_value > previous_value))
                throw EngineError("applied move did not increase the system payoff");

            const int landed = res.structure.coalition_of(mover.key.sbs, mover.units.front());
            res.history[mover.key].insert(res.structure.find(landed)->identity());

            MoveRecord rec;
            rec.index = static_cast<int>(res.trace.moves.size()) + 1;
            rec.sbs = mover.key.sbs;
            rec.unit = mover.key.unit;
            rec.kind = target < 0 ? MoveKind::Independent : MoveKind::Switch;
            rec.from_coalition = from;
            rec.to_coalition = landed;
            rec.system_value = res.outcome.system_value;
            if (opts.record_timing) {
                rec.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                              move_start)
                                    .count();
            }
            res.trace.moves.push_back(rec);
            moved = true;

            if (res.trace.iterations() > cap) {
                std::ostringstream os;
                os << "iteration cap " << cap << " exceeded after "
                   << res.trace.iterations() << " applied moves (v=" << res.outcome.system_value
                   << ")";
                throw EngineError(os.str());
            }
        }
    }

    if (auto move = find_admissible_move(res.structure, env, res.history, whole_sbs))
        throw EngineError("terminated on an unstable structure: " + *move);

    res.trace.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace

RunResult run_ocf(const RadioEnvironment& env, const EngineOptions& opts) {
    return run_formation(env, opts, /*whole_sbs=*/false);
}

RunResult run_cf(const RadioEnvironment& env, const EngineOptions& opts) {
    return run_formation(env, opts, /*whole_sbs=*/true);
}

RunResult run_noncooperative(const RadioEnvironment& env) {
    RunResult res;
    res.structure = initial_structure(env);
    res.outcome = evaluate_structure(res.structure, env);
    return res;
}

RunResult run_algorithm(Algorithm algo, const RadioEnvironment& env, const EngineOptions& opts) {
    switch (algo) {
        case Algorithm::OCF: return run_ocf(env, opts);
        case Algorithm::CF: return run_cf(env, opts);
        case Algorithm::NONCOOP: return run_noncooperative(env);
    }
    throw std::logic_error("unreachable");
}

std::optional<std::string> find_admissible_move(const CoalitionStructure& structure,
                                                const RadioEnvironment& env,
                                                const HistoryMap& history, bool whole_sbs_moves) {
    const Outcome current = evaluate_structure(structure, env);
    for (const auto& mover : movers_for(env, whole_sbs_moves)) {
        int target = 0;
        MoveDecision d =
            first_admissible(mover, structure, current, env, history, whole_sbs_moves, &target);
        if (d.accepted) {
            std::ostringstream os;
            os << "sbs " << mover.key.sbs;
            if (mover.key.unit >= 0) os << " unit " << mover.key.unit;
            if (target < 0) os << " can go independent";
            else os << " can switch to coalition " << target;
            return os.str();
        }
    }
    return std::nullopt;
}

} // namespace ocfsim
