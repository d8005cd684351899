#ifndef OCFSIM_SCHEDULE_HPP
#define OCFSIM_SCHEDULE_HPP

#include <string>
#include <vector>

#include "ocfsim/coalition.hpp"

namespace ocfsim {

/// One (subchannel, slot) cell of a coalition's TDMA grid.
struct ScheduleCell {
    int sbs = -1; // -1 = idle
    int sue = -1;
};

/// Aggregated airtime for one (sbs, sue, subchannel) triple.
struct AirtimeEntry {
    int sbs = 0;
    int sue = 0;
    int subchannel = 0;
    int slots = 0;
    double gamma = 0.0; // slots / tdma_slots
};

/// Intra-coalition TDMA schedule over the pooled subchannels. At most one
/// SBS transmits per (subchannel, slot) cell, which removes co-tier
/// interference between coalition members.
struct CoalitionSchedule {
    int coalition_id = 0;
    std::vector<int> pool;  // sorted ascending
    int tdma_slots = 1;
    // grid[pool_index][slot]
    std::vector<std::vector<ScheduleCell>> grid;
    // nonzero-gamma entries, ordered (sbs, sue, subchannel)
    std::vector<AirtimeEntry> airtime;

    int cells_of(int sbs_id) const;
    double gamma(int sbs_id, int sue, int subchannel) const;

    /// Recomputes the airtime table from the grid (used by invariant tests).
    std::vector<AirtimeEntry> recompute_airtime() const;

    /// Per-cell table dump used by the snapshot renderer and fixtures.
    std::string dump() const;
};

/// Builds the TDMA grid realizing the proportional-fairness shares:
///  - a single-member coalition keeps every slot and serves one SUE
///    full-time per pooled subchannel, round-robin over its SUE list in
///    ascending subchannel order (this is also the noncooperative service
///    pattern, so the all-singleton start state is valued identically by
///    the cooperative and noncooperative paths);
///  - with several members, the pool_size*tdma_slots cells are ordered by
///    (subchannel asc, slot asc) and dealt as contiguous runs, member order
///    descending unit count then ascending id, run lengths by largest
///    remainder of f_i*cells; inside a run SUEs cycle round-robin.
CoalitionSchedule build_schedule(const PartialCoalition& coalition, const RadioEnvironment& env);

/// Largest-remainder rounding of shares*total to integers summing to total.
/// Ties on the fractional part go to the earlier entry.
std::vector<int> largest_remainder_quotas(const std::vector<double>& shares, int total);

} // namespace ocfsim

#endif // OCFSIM_SCHEDULE_HPP
