#include "ocfsim/value.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ocfsim {

double coalition_power_cost(const PartialCoalition& coalition, const RadioEnvironment& env) {
    const auto support = coalition.support();
    if (support.size() <= 1) return 0.0;
    double total = 0.0;
    for (int i : support) {
        double farthest = 0.0;
        for (int j : support)
            if (j != i) farthest = std::max(farthest, env.sbs_distance_m[i][j]);
        total += env.broadcast_power_mw(farthest);
    }
    return total;
}

std::map<int, double> fairness_shares(const PartialCoalition& coalition) {
    if (coalition.members.empty())
        throw std::invalid_argument("fairness shares need a nonempty support");
    const double total = coalition.unit_count();
    std::map<int, double> shares;
    for (const auto& [sbs, units] : coalition.members)
        shares[sbs] = static_cast<double>(units.size()) / total;
    return shares;
}

namespace {

/// Which SBSs of one coalition transmit on which subchannel and for what
/// fraction of the superframe, read off the TDMA grid.
struct CoalitionActivity {
    int coalition_id = 0;
    struct Entry {
        int subchannel;
        int sbs;
        double duty; // scheduled slots on this subchannel / tdma_slots
    };
    std::vector<Entry> active; // sorted by (subchannel, sbs)

    static CoalitionActivity from_schedule(const CoalitionSchedule& sched) {
        CoalitionActivity a;
        a.coalition_id = sched.coalition_id;
        for (const auto& e : sched.airtime)
            if (e.slots > 0) a.active.push_back({e.subchannel, e.sbs, e.gamma});
        std::sort(a.active.begin(), a.active.end(), [](const Entry& x, const Entry& y) {
            return x.subchannel != y.subchannel ? x.subchannel < y.subchannel : x.sbs < y.sbs;
        });
        std::vector<Entry> merged; // one duty per (subchannel, sbs), summed over SUEs
        for (const auto& e : a.active) {
            if (!merged.empty() && merged.back().subchannel == e.subchannel &&
                merged.back().sbs == e.sbs)
                merged.back().duty += e.duty;
            else
                merged.push_back(e);
        }
        a.active = std::move(merged);
        return a;
    }
};

/// Co-tier interference at SUE u of SBS i on subchannel k: every SBS
/// scheduled on k in a coalition other than `own_id` contributes its
/// per-subchannel power weighted by its duty cycle there (slots are not
/// aligned across coalitions, so the time-averaged power is what the SUE
/// sees). Members of the own coalition never collide on k inside it (TDMA),
/// but a coalition-mate transmitting on k through a third coalition still
/// interferes.
double co_tier_interference(int sbs_i, int sue, int subchannel, int own_id,
                            const std::vector<CoalitionActivity>& activity,
                            const RadioEnvironment& env) {
    double acc = 0.0;
    for (const auto& a : activity) {
        if (a.coalition_id == own_id) continue;
        auto it = std::lower_bound(
            a.active.begin(), a.active.end(), subchannel,
            [](const CoalitionActivity::Entry& e, int k) { return e.subchannel < k; });
        for (; it != a.active.end() && it->subchannel == subchannel; ++it)
            if (it->sbs != sbs_i)
                acc += it->duty * env.sbs_power_mw * env.gain_sbs_sue[it->sbs][sbs_i][sue];
    }
    return acc;
}

double utility_against(const CoalitionSchedule& schedule, int own_id,
                       const std::vector<CoalitionActivity>& activity,
                       const RadioEnvironment& env) {
    double utility = 0.0;
    for (const auto& e : schedule.airtime) {
        if (e.gamma == 0.0) continue;
        const double signal = env.sbs_power_mw * env.gain_sbs_sue[e.sbs][e.sbs][e.sue];
        const double mbs_term = env.mbs_active_on(e.subchannel)
                                    ? env.mbs_power_mw * env.gain_mbs_sue[e.sbs][e.sue]
                                    : 0.0;
        const double co_tier =
            co_tier_interference(e.sbs, e.sue, e.subchannel, own_id, activity, env);
        utility += e.gamma * env.rate_scale *
                   std::log2(1.0 + signal / (env.noise_mw + mbs_term + co_tier));
    }
    return utility;
}

std::vector<CoalitionActivity> structure_activity(const CoalitionStructure& structure,
                                                  const RadioEnvironment& env) {
    std::vector<CoalitionActivity> activity;
    activity.reserve(structure.coalitions.size());
    for (const auto& c : structure.coalitions)
        activity.push_back(CoalitionActivity::from_schedule(build_schedule(c, env)));
    return activity;
}

} // namespace

double coalition_utility(const PartialCoalition& coalition, const CoalitionStructure& structure,
                         const CoalitionSchedule& schedule, const RadioEnvironment& env) {
    if (schedule.coalition_id != coalition.id ||
        schedule.pool != resource_pool(coalition, env))
        throw std::invalid_argument("schedule does not belong to this coalition");
    return utility_against(schedule, coalition.id, structure_activity(structure, env), env);
}

double coalition_value(const PartialCoalition& coalition, const CoalitionStructure& structure,
                       const CoalitionSchedule& schedule, const RadioEnvironment& env) {
    if (coalition.members.empty()) return 0.0;
    if (coalition_power_cost(coalition, env) > env.p_lim_mw) return 0.0;
    return coalition_utility(coalition, structure, schedule, env);
}

Outcome evaluate_structure(const CoalitionStructure& structure, const RadioEnvironment& env) {
    Outcome out;
    out.structure = structure;
    out.sbs_totals.assign(env.n_sbs, 0.0);
    out.coalitions.reserve(structure.coalitions.size());

    std::vector<CoalitionSchedule> schedules;
    schedules.reserve(structure.coalitions.size());
    std::vector<CoalitionActivity> activity;
    activity.reserve(structure.coalitions.size());
    for (const auto& c : structure.coalitions) {
        schedules.push_back(build_schedule(c, env));
        activity.push_back(CoalitionActivity::from_schedule(schedules.back()));
    }

    for (std::size_t ci = 0; ci < structure.coalitions.size(); ++ci) {
        const auto& c = structure.coalitions[ci];
        CoalitionEval eval;
        eval.id = c.id;
        eval.pool = schedules[ci].pool;
        eval.power_cost_mw = coalition_power_cost(c, env);
        eval.utility = utility_against(schedules[ci], c.id, activity, env);
        eval.value = eval.power_cost_mw > env.p_lim_mw ? 0.0 : eval.utility;
        eval.shares = fairness_shares(c);
        for (const auto& [sbs, f] : eval.shares) {
            const double x = f * eval.value;
            eval.payoffs[sbs] = x;
            out.sbs_totals[sbs] += x;
        }
        out.system_value += eval.value;
        out.coalitions.push_back(std::move(eval));
    }
    return out;
}

double sbs_payoff(int sbs_id, const PartialCoalition& coalition,
                  const CoalitionStructure& structure, const RadioEnvironment& env) {
    if (coalition.members.find(sbs_id) == coalition.members.end()) return 0.0;
    const CoalitionSchedule sched = build_schedule(coalition, env);
    const double v = coalition_value(coalition, structure, sched, env);
    return fairness_shares(coalition).at(sbs_id) * v;
}

double total_sbs_payoff(int sbs_id, const CoalitionStructure& structure,
                        const RadioEnvironment& env) {
    return evaluate_structure(structure, env).sbs_totals.at(sbs_id);
}

double structure_value(const CoalitionStructure& structure, const RadioEnvironment& env) {
    return evaluate_structure(structure, env).system_value;
}

} // namespace ocfsim
