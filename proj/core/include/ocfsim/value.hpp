#ifndef OCFSIM_VALUE_HPP
#define OCFSIM_VALUE_HPP

#include <map>
#include <vector>

#include "ocfsim/coalition.hpp"
#include "ocfsim/schedule.hpp"

namespace ocfsim {

/// Power (mW) spent forming a coalition: every member broadcasts to its
/// farthest partner in the support. Single-member coalitions cost nothing.
double coalition_power_cost(const PartialCoalition& coalition, const RadioEnvironment& env);

/// Proportional-fairness shares: f_i = |R_i| / sum_j |R_j| over the support.
/// Throws std::invalid_argument for an empty coalition.
std::map<int, double> fairness_shares(const PartialCoalition& coalition);

/// Sum-rate of a coalition inside a structure. Interference on a pooled
/// subchannel k comes from the MBS (when k is MBS-active) and from every
/// member of every *other* coalition whose pool contains k; members of the
/// own coalition never collide thanks to the TDMA grid. Throws
/// std::invalid_argument when the schedule does not belong to the coalition.
double coalition_utility(const PartialCoalition& coalition, const CoalitionStructure& structure,
                         const CoalitionSchedule& schedule, const RadioEnvironment& env);

/// Utility gated by the power cost: exceeds p_lim -> exactly 0.
double coalition_value(const PartialCoalition& coalition, const CoalitionStructure& structure,
                       const CoalitionSchedule& schedule, const RadioEnvironment& env);

struct CoalitionEval {
    int id = 0;
    std::vector<int> pool;
    double power_cost_mw = 0.0;
    double utility = 0.0;
    double value = 0.0;               // utility or 0 when gated
    std::map<int, double> shares;     // f_i over the support
    std::map<int, double> payoffs;    // x^i = f_i * value
};

/// A structure together with its imputation and derived payoffs.
struct Outcome {
    CoalitionStructure structure;
    std::vector<CoalitionEval> coalitions;    // ordered as structure.coalitions
    std::vector<double> sbs_totals;           // p^i
    double system_value = 0.0;                // v(CS)
};

/// Values every coalition of the structure (schedules built on demand),
/// splits each value by the fairness shares and accumulates per-SBS totals.
Outcome evaluate_structure(const CoalitionStructure& structure, const RadioEnvironment& env);

/// x^i(R, CS): the SBS's share of the coalition value, 0 if it is not in the
/// support.
double sbs_payoff(int sbs_id, const PartialCoalition& coalition,
                  const CoalitionStructure& structure, const RadioEnvironment& env);

/// p^i(CS) and v(CS) convenience accessors over a full evaluation.
double total_sbs_payoff(int sbs_id, const CoalitionStructure& structure,
                        const RadioEnvironment& env);
double structure_value(const CoalitionStructure& structure, const RadioEnvironment& env);

} // namespace ocfsim

#endif // OCFSIM_VALUE_HPP
