#ifndef OCFSIM_SWEEP_HPP
#define OCFSIM_SWEEP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ocfsim/engine.hpp"

namespace ocfsim {

enum class SweepParameter {
    NSbs,
    PLimDbm,
    SbsAreaRadiusKm,
    TotalSubchannels,
    WallVariant, // sweeps wall_loss_sbs_sue_db
};

std::string to_string(SweepParameter p);
SweepParameter sweep_parameter_from_string(const std::string& s);

/// A one-parameter sweep: for each (value, replication) one topology is
/// generated (seed = base seed + replication) and every requested algorithm
/// runs on that same topology, so comparisons are paired per seed.
struct SweepSpec {
    SweepParameter parameter = SweepParameter::NSbs;
    std::vector<double> values;
    int replications = 20;
    std::vector<Algorithm> algorithms{Algorithm::OCF, Algorithm::CF, Algorithm::NONCOOP};
    NetworkConfig base_config;
    bool export_traces = false; // per-run trace CSVs next to the results

    void validate() const; // nonempty values, replications >= 1
    NetworkConfig config_for(double value, int replication) const;
};

SweepSpec sweep_spec_from_json_text(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);

/// Everything recorded for one (value, algorithm, seed) run.
struct RunStats {
    std::uint64_t seed = 0;
    double system_payoff = 0.0;
    int iterations = 0;
    std::vector<double> sbs_payoffs;
    int max_coalitions = 0;
    double mean_coalitions = 0.0;
};

struct Aggregate {
    int n = 0;
    double mean = 0.0;
    double stddev = 0.0; // population
};

struct SweepPoint {
    double value = 0.0;
    std::map<Algorithm, std::vector<RunStats>> runs; // index = replication
    std::map<Algorithm, Aggregate> payoff_aggregate;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepPoint> points;
    std::vector<EngineTrace> traces;          // parallel to trace_keys
    std::vector<std::string> trace_keys;      // "<value>_<algorithm>_<seed>"
};

/// Runs the sweep; points and replications execute as independent parallel
/// tasks, results keyed by (value, replication) so aggregation is
/// deterministic. `threads` 0 = hardware concurrency.
SweepResult sweep(const SweepSpec& spec, int threads = 0);

/// Empirical CDF over all per-SBS total payoffs pooled across seeds at one
/// sweep point. Throws std::invalid_argument when there is no data.
struct CdfTable {
    std::vector<double> payoff; // sorted
    std::vector<double> cdf;    // rank/n
    double mean = 0.0;
};
CdfTable payoff_cdf(const SweepPoint& point, Algorithm algo);

Aggregate aggregate(const std::vector<double>& values);

// --- persistence (CSV schemas documented in the README) ---
std::string results_csv(const SweepResult& result);
std::string payoffs_csv(const SweepResult& result);
std::string summary_csv(const SweepResult& result);
std::string cdf_csv(const CdfTable& table);
std::string trace_csv(const EngineTrace& trace);

/// Writes results/payoffs/summary CSVs, per-figure SVG plots and a JSON
/// summary (config echo + code version) into out_dir.
void write_sweep_outputs(const SweepResult& result, const std::string& out_dir);

} // namespace ocfsim

#endif // OCFSIM_SWEEP_HPP
