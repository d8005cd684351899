#include "ocfsim/schedule.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ocfsim {

std::vector<int> largest_remainder_quotas(const std::vector<double>& shares, int total) {
    const std::size_t n = shares.size();
    std::vector<int> quota(n);
    std::vector<std::pair<double, std::size_t>> remainder(n);
    int assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double exact = shares[i] * total;
        quota[i] = static_cast<int>(exact);
        remainder[i] = {exact - quota[i], i};
        assigned += quota[i];
    }
    std::stable_sort(remainder.begin(), remainder.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (int r = 0; r < total - assigned; ++r) quota[remainder[r].second] += 1;
    return quota;
}

int CoalitionSchedule::cells_of(int sbs_id) const {
    int n = 0;
    for (const auto& col : grid)
        for (const auto& cell : col)
            if (cell.sbs == sbs_id) ++n;
    return n;
}

double CoalitionSchedule::gamma(int sbs_id, int sue, int subchannel) const {
    for (const auto& e : airtime)
        if (e.sbs == sbs_id && e.sue == sue && e.subchannel == subchannel) return e.gamma;
    return 0.0;
}

std::vector<AirtimeEntry> CoalitionSchedule::recompute_airtime() const {
    std::map<std::tuple<int, int, int>, int> slots;
    for (std::size_t p = 0; p < grid.size(); ++p)
        for (const auto& cell : grid[p])
            if (cell.sbs >= 0) slots[{cell.sbs, cell.sue, pool[p]}] += 1;
    std::vector<AirtimeEntry> out;
    out.reserve(slots.size());
    for (const auto& [key, n] : slots) {
        const auto& [sbs, sue, subchannel] = key;
        out.push_back({sbs, sue, subchannel, n, static_cast<double>(n) / tdma_slots});
    }
    return out;
}

std::string CoalitionSchedule::dump() const {
    std::ostringstream os;
    os << "coalition " << coalition_id << " pool";
    for (int k : pool) os << ' ' << k;
    os << '\n';
    for (std::size_t p = 0; p < grid.size(); ++p) {
        os << "ch " << pool[p] << ':';
        for (const auto& cell : grid[p]) {
            if (cell.sbs < 0) os << " idle";
            else os << ' ' << cell.sbs << '/' << cell.sue;
        }
        os << '\n';
    }
    return os.str();
}

CoalitionSchedule build_schedule(const PartialCoalition& coalition, const RadioEnvironment& env) {
    if (coalition.members.empty())
        throw std::invalid_argument("cannot schedule an empty coalition");

    CoalitionSchedule sched;
    sched.coalition_id = coalition.id;
    sched.pool = resource_pool(coalition, env);
    sched.tdma_slots = env.tdma_slots;
    const int n_pool = static_cast<int>(sched.pool.size());
    sched.grid.assign(n_pool, std::vector<ScheduleCell>(env.tdma_slots));

    if (coalition.members.size() == 1) {
        // Lone member: every pooled subchannel serves one SUE for the whole
        // superframe, keyed to the unit bound to it (unit m -> SUE m mod L).
        // The pattern does not depend on how the SBS's units are grouped
        // into coalitions, and with all units present it is exactly the
        // noncooperative service pattern.
        const int sbs = coalition.members.begin()->first;
        const int n_sues = env.sues_per_sbs[sbs];
        const auto& units = coalition.members.begin()->second;
        for (int p = 0; p < n_pool; ++p) {
            int sue = 0;
            for (int m : units)
                if (env.unit_subchannel(sbs, m) == sched.pool[p]) {
                    sue = m % n_sues;
                    break;
                }
            for (int s = 0; s < env.tdma_slots; ++s) sched.grid[p][s] = {sbs, sue};
        }
    } else {
        // Member order: descending unit count, then ascending id.
        std::vector<int> order = coalition.support();
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            const int ca = coalition.unit_count(a), cb = coalition.unit_count(b);
            return ca != cb ? ca > cb : a < b;
        });
        const int total_units = coalition.unit_count();
        std::vector<double> shares(order.size());
        for (std::size_t m = 0; m < order.size(); ++m)
            shares[m] = static_cast<double>(coalition.unit_count(order[m])) / total_units;
        const int total_cells = n_pool * env.tdma_slots;
        const std::vector<int> quotas = largest_remainder_quotas(shares, total_cells);

        // How many members contributed a unit on each pooled subchannel,
        // and by whom. Each member fills its quota on its own contributed
        // subchannels first (exclusive before shared, ascending id), then on
        // the remaining pool. Pooling disjoint subchannel sets therefore
        // reproduces the standalone service pattern exactly, while shared
        // subchannels end up slot-split between their contributors.
        std::map<int, std::vector<int>> contributed_by; // sbs -> pool indices
        std::vector<int> contributors(n_pool, 0);
        for (const auto& [sbs, units] : coalition.members)
            for (int m : units) {
                const int k = env.unit_subchannel(sbs, m);
                const int p = static_cast<int>(
                    std::lower_bound(sched.pool.begin(), sched.pool.end(), k) -
                    sched.pool.begin());
                contributed_by[sbs].push_back(p);
                contributors[p] += 1;
            }

        std::vector<int> slots_used(n_pool, 0);
        for (std::size_t m = 0; m < order.size(); ++m) {
            const int sbs = order[m];
            const int n_sues = env.sues_per_sbs[sbs];
            const auto& units = coalition.members.at(sbs);
            const auto& own = contributed_by[sbs];

            std::vector<int> preference;
            for (int p : own)
                if (contributors[p] == 1) preference.push_back(p);
            for (int p : own)
                if (contributors[p] > 1) preference.push_back(p);
            for (int p = 0; p < n_pool; ++p)
                if (std::find(own.begin(), own.end(), p) == own.end()) preference.push_back(p);

            // SUE for a cell: on an own subchannel, the SUE keyed to the
            // contributing unit; on spill cells, cycle over the contributed
            // units' SUEs.
            int spill = 0;
            int quota = quotas[m];
            for (int p : preference) {
                while (quota > 0 && slots_used[p] < env.tdma_slots) {
                    int sue;
                    const auto it = std::find(own.begin(), own.end(), p);
                    if (it != own.end()) {
                        sue = units[it - own.begin()] % n_sues;
                    } else {
                        sue = units[spill++ % units.size()] % n_sues;
                    }
                    sched.grid[p][slots_used[p]++] = {sbs, sue};
                    --quota;
                }
                if (quota == 0) break;
            }
        }
    }

    sched.airtime = sched.recompute_airtime();
    return sched;
}

} // namespace ocfsim
