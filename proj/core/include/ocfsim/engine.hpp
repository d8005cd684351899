#ifndef OCFSIM_ENGINE_HPP
#define OCFSIM_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ocfsim/value.hpp"

namespace ocfsim {

/// Raised when a run exceeds its iteration cap (never observed on valid
/// inputs; converts a latent bug into a diagnosable failure instead of a hang).
struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Algorithm { OCF, CF, NONCOOP };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

enum class MoveKind { Switch, Independent };

struct MoveRecord {
    int index = 0;           // 1-based applied-move counter
    int sbs = 0;
    int unit = 0;            // -1 for whole-SBS (CF) moves
    MoveKind kind = MoveKind::Switch;
    int from_coalition = 0;
    int to_coalition = 0;    // id of the target (switch) or the new singleton
    double system_value = 0; // v(CS) after the move
    double elapsed_s = 0.0;  // wall clock spent deciding + applying this move
};

/// Applied moves in order; v(CS) is strictly increasing along them.
struct EngineTrace {
    std::vector<MoveRecord> moves;
    int scans = 0;
    double total_seconds = 0.0;

    int iterations() const { return static_cast<int>(moves.size()); }
};

struct RunResult {
    CoalitionStructure structure;
    Outcome outcome;
    EngineTrace trace;
    HistoryMap history;
};

/// Decision returned by the order checks, with the candidate structure and
/// evaluation when accepted.
struct MoveDecision {
    bool accepted = false;
    std::string reason;           // set when rejected
    CoalitionStructure structure; // candidate (accepted only)
    Outcome outcome;
};

/// Switching order: moving `unit` into coalition `target_id` is admissible
/// iff the owner's total payoff and the system payoff strictly increase, the
/// summed totals over the newly formed coalition's support do not decrease,
/// and the newly formed coalition is not in the unit's history set.
/// `current` must be the evaluation of `structure`.
MoveDecision check_switch(const UnitRef& unit, int target_id,
                          const CoalitionStructure& structure, const Outcome& current,
                          const RadioEnvironment& env, const HistoryMap& history);

/// Independent order: extracting `unit` into a fresh singleton coalition is
/// admissible iff the owner's total payoff and the system payoff strictly
/// increase and the resulting singleton is not in the unit's history set.
/// A unit already alone in its coalition has no such move (no-op).
MoveDecision check_independent(const UnitRef& unit, const CoalitionStructure& structure,
                               const Outcome& current, const RadioEnvironment& env,
                               const HistoryMap& history);

/// Whole-SBS variants used by the CF baseline: all units of the SBS move
/// together, so supports stay disjoint.
MoveDecision check_switch_sbs(int sbs_id, int target_id, const CoalitionStructure& structure,
                              const Outcome& current, const RadioEnvironment& env,
                              const HistoryMap& history);
MoveDecision check_independent_sbs(int sbs_id, const CoalitionStructure& structure,
                                   const Outcome& current, const RadioEnvironment& env,
                                   const HistoryMap& history);

struct EngineOptions {
    long iteration_cap = 0;  // 0 = default 10*N*M*(N+1)
    bool record_timing = true;
};

/// Table-driven overlapping coalition formation: start from the
/// all-singleton structure, scan units in canonical order (SBS asc, unit
/// asc; switch targets by ascending coalition id, then the independent
/// move), apply the first admissible move, and stop when a full scan applies
/// none. The returned structure passed an exhaustive stability re-scan.
RunResult run_ocf(const RadioEnvironment& env, const EngineOptions& opts = {});

/// Same engine restricted to whole-SBS moves: disjoint supports, at most one
/// coalition per SBS.
RunResult run_cf(const RadioEnvironment& env, const EngineOptions& opts = {});

/// Every SBS serves its own subchannels full-time: the valued all-singleton
/// structure with an empty trace.
RunResult run_noncooperative(const RadioEnvironment& env);

RunResult run_algorithm(Algorithm algo, const RadioEnvironment& env,
                        const EngineOptions& opts = {});

/// Exhaustive admissibility scan of a structure: returns a description of
/// the first admissible move, or nullopt when the structure is stable under
/// the given histories. `whole_sbs_moves` selects the CF move set.
std::optional<std::string> find_admissible_move(const CoalitionStructure& structure,
                                                const RadioEnvironment& env,
                                                const HistoryMap& history,
                                                bool whole_sbs_moves);

} // namespace ocfsim

#endif // OCFSIM_ENGINE_HPP
