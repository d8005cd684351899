#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ocfsim/csv.hpp"
#include "ocfsim/engine.hpp"
#include "ocfsim/svg.hpp"
#include "ocfsim/sweep.hpp"
#include "ocfsim/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ocfsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;  // bad flags, unreadable/invalid config or input files
constexpr int kExitEngine = 2; // a run aborted (iteration cap, internal invariant)

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::string algorithm = "ocf";
    bool absolute_rate = false;
    bool mbs_all_subchannels = false;
    std::string topology_path; // reuse a saved topology instead of generating
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_algorithm = true) {
    cmd->add_option("--config", opts.config_path, "JSON config file (defaults when omitted)");
    cmd->add_option("--seed", opts.seed, "override the config seed");
    cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    if (with_algorithm)
        cmd->add_option("--algorithm", opts.algorithm, "ocf|cf|noncoop")->capture_default_str();
    cmd->add_flag("--absolute-rate", opts.absolute_rate,
                  "report rates in bit/s (scaled by the subchannel bandwidth)");
    cmd->add_flag("--mbs-all-subchannels", opts.mbs_all_subchannels,
                  "MBS interferes on every subchannel, not only MUE-occupied ones");
    cmd->add_option("--topology", opts.topology_path, "reuse a saved topology file");
}

NetworkConfig resolve_config(const CommonOpts& opts) {
    NetworkConfig cfg = opts.config_path.empty() ? NetworkConfig{} : load_config(opts.config_path);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.absolute_rate) cfg.absolute_rate = true;
    if (opts.mbs_all_subchannels) cfg.mbs_all_subchannels = true;
    cfg.validate();
    return cfg;
}

Topology resolve_topology(const CommonOpts& opts, const NetworkConfig& cfg) {
    if (!opts.topology_path.empty()) {
        Topology topo = load_topology(opts.topology_path);
        topo.validate(cfg);
        return topo;
    }
    return generate_topology(cfg);
}

std::string run_provenance(const NetworkConfig& cfg, Algorithm algo) {
    std::ostringstream os;
    os << "config_hash=" << config_hash(cfg) << " seed=" << cfg.seed << " algorithm="
       << to_string(algo) << " generator=ocfsim-" << kVersion;
    return os.str();
}

void write_outcome_json(const std::string& path, const RunResult& run,
                        const NetworkConfig& cfg, Algorithm algo) {
    nlohmann::json j;
    j["generator"] = std::string("ocfsim-") + kVersion;
    j["algorithm"] = to_string(algo);
    j["seed"] = cfg.seed;
    j["config"] = nlohmann::json::parse(config_to_json_text(cfg));
    j["system_value"] = run.outcome.system_value;
    j["iterations"] = run.trace.iterations();
    j["sbs_totals"] = run.outcome.sbs_totals;
    j["coalitions"] = nlohmann::json::array();
    for (const auto& eval : run.outcome.coalitions) {
        nlohmann::json jc;
        jc["id"] = eval.id;
        jc["pool"] = eval.pool;
        jc["power_cost_mw"] = eval.power_cost_mw;
        jc["utility"] = eval.utility;
        jc["value"] = eval.value;
        nlohmann::json shares = nlohmann::json::object();
        nlohmann::json payoffs = nlohmann::json::object();
        for (const auto& [sbs, f] : eval.shares) shares[std::to_string(sbs)] = f;
        for (const auto& [sbs, x] : eval.payoffs) payoffs[std::to_string(sbs)] = x;
        jc["shares"] = std::move(shares);
        jc["payoffs"] = std::move(payoffs);
        j["coalitions"].push_back(std::move(jc));
    }
    write_file(path, j.dump(2) + "\n");
}

int cmd_run(const CommonOpts& opts, bool snapshot_only) {
    const NetworkConfig cfg = resolve_config(opts);
    const Algorithm algo = algorithm_from_string(opts.algorithm);
    const Topology topo = resolve_topology(opts, cfg);
    const RadioEnvironment env = build_environment(topo, cfg);

    const RunResult run = run_algorithm(algo, env);
    const auto [max_coal, mean_coal] = coalitions_per_sbs(run.structure);

    fs::create_directories(opts.out_dir);
    const std::string prov = run_provenance(cfg, algo);
    write_snapshot(opts.out_dir + "/snapshot.svg", topo, run.structure, prov);
    if (!snapshot_only) {
        save_topology(topo, opts.out_dir + "/topology.json");
        save_structure(run.structure, env, &run.history, opts.out_dir + "/structure.json");
        write_outcome_json(opts.out_dir + "/outcome.json", run, cfg, algo);
        write_file(opts.out_dir + "/trace.csv", trace_csv(run.trace));
    }

    std::cout << "system_payoff=" << format_double(run.outcome.system_value) << '\n'
              << "iterations=" << run.trace.iterations() << '\n'
              << "max_coalitions_per_sbs=" << max_coal << '\n'
              << "mean_coalitions_per_sbs=" << format_double(mean_coal) << '\n';
    return kExitOk;
}

int cmd_snapshot(const CommonOpts& opts, const std::string& structure_path) {
    const NetworkConfig cfg = resolve_config(opts);
    if (!structure_path.empty()) {
        if (opts.topology_path.empty())
            throw ConfigError("snapshot from a structure file also needs --topology");
        const Topology topo = resolve_topology(opts, cfg);
        const RadioEnvironment env = build_environment(topo, cfg);
        const auto [structure, history] = load_structure(structure_path, env);
        structure.validate(env);
        fs::create_directories(opts.out_dir);
        std::ostringstream prov;
        prov << "config_hash=" << config_hash(cfg) << " structure=" << structure_path
             << " generator=ocfsim-" << kVersion;
        write_snapshot(opts.out_dir + "/snapshot.svg", topo, structure, prov.str());
        std::cout << "snapshot=" << opts.out_dir << "/snapshot.svg\n";
        return kExitOk;
    }
    return cmd_run(opts, /*snapshot_only=*/true);
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir, int threads) {
    const SweepSpec spec = load_sweep_spec(spec_path);
    const SweepResult result = sweep(spec, threads);
    write_sweep_outputs(result, out_dir);
    std::cout << "points=" << result.points.size() << '\n'
              << "replications=" << spec.replications << '\n'
              << "out=" << out_dir << '\n';
    return kExitOk;
}

int cmd_validate(const CommonOpts& opts, const std::string& structure_path) {
    const NetworkConfig cfg = resolve_config(opts);
    if (opts.topology_path.empty())
        throw ConfigError("validate needs --topology");
    const Topology topo = resolve_topology(opts, cfg);
    const RadioEnvironment env = build_environment(topo, cfg);
    const auto [structure, history] = load_structure(structure_path, env);

    try {
        structure.validate(env);
    } catch (const std::exception& e) {
        std::cout << "invalid: " << e.what() << '\n';
        return kExitUsage;
    }
    const Algorithm algo = algorithm_from_string(opts.algorithm);
    if (auto move = find_admissible_move(structure, env, history,
                                         /*whole_sbs_moves=*/algo == Algorithm::CF)) {
        std::cout << "unstable: " << *move << '\n';
        return kExitUsage;
    }
    std::cout << "valid and stable\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-tier small-cell interference simulator: cooperative coalition"
                 " formation over shared OFDMA subchannels"};
    app.set_version_flag("--version", std::string("ocfsim ") + kVersion);
    app.require_subcommand(1);

    CommonOpts run_opts, snap_opts, val_opts;
    std::string sweep_spec_path, sweep_out = ".", snap_structure, val_structure;
    int sweep_threads = 0;

    auto* run = app.add_subcommand("run", "run one algorithm on one topology");
    add_common(run, run_opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep from a spec file");
    sweep_cmd->add_option("--spec", sweep_spec_path, "sweep spec JSON")->required();
    sweep_cmd->add_option("--out", sweep_out, "output directory")->capture_default_str();
    sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0 = all cores)");

    auto* validate = app.add_subcommand("validate", "check a structure file: invariants + stability");
    add_common(validate, val_opts);
    validate->add_option("--structure", val_structure, "structure JSON")->required();

    auto* snapshot = app.add_subcommand("snapshot", "render a coalition-structure scene SVG");
    add_common(snapshot, snap_opts);
    snapshot->add_option("--structure", snap_structure,
                         "render this structure file instead of running");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(run_opts, false);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_spec_path, sweep_out, sweep_threads);
        if (validate->parsed()) return cmd_validate(val_opts, val_structure);
        if (snapshot->parsed()) return cmd_snapshot(snap_opts, snap_structure);
    } catch (const EngineError& e) {
        std::cerr << "engine error: " << e.what() << '\n';
        return kExitEngine;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
