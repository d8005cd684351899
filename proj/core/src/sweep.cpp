#include "ocfsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ocfsim/csv.hpp"
#include "ocfsim/svg.hpp"
#include "ocfsim/version.hpp"

namespace ocfsim {

using nlohmann::json;

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::NSbs: return "n_sbs";
        case SweepParameter::PLimDbm: return "p_lim_dbm";
        case SweepParameter::SbsAreaRadiusKm: return "sbs_area_radius_km";
        case SweepParameter::TotalSubchannels: return "total_subchannels";
        case SweepParameter::WallVariant: return "wall_variant";
    }
    return "?";
}

SweepParameter sweep_parameter_from_string(const std::string& s) {
    if (s == "n_sbs") return SweepParameter::NSbs;
    if (s == "p_lim_dbm") return SweepParameter::PLimDbm;
    if (s == "sbs_area_radius_km") return SweepParameter::SbsAreaRadiusKm;
    if (s == "total_subchannels") return SweepParameter::TotalSubchannels;
    if (s == "wall_variant") return SweepParameter::WallVariant;
    throw ConfigError("unknown sweep parameter '" + s + "'");
}

void SweepSpec::validate() const {
    if (values.empty()) throw ConfigError("sweep: value list must not be empty");
    if (replications < 1) throw ConfigError("sweep: replications must be >= 1");
    if (algorithms.empty()) throw ConfigError("sweep: algorithm list must not be empty");
    base_config.validate();
    for (double v : values) config_for(v, 0); // each point must yield a valid config
}

NetworkConfig SweepSpec::config_for(double value, int replication) const {
    NetworkConfig cfg = base_config;
    switch (parameter) {
        case SweepParameter::NSbs: cfg.n_sbs = static_cast<int>(value); break;
        case SweepParameter::PLimDbm: cfg.p_lim_dbm = value; break;
        case SweepParameter::SbsAreaRadiusKm: cfg.sbs_area_radius_km = value; break;
        case SweepParameter::TotalSubchannels: cfg.total_subchannels = static_cast<int>(value); break;
        case SweepParameter::WallVariant: cfg.wall_loss_sbs_sue_db = value; break;
    }
    cfg.seed = base_config.seed + static_cast<std::uint64_t>(replication);
    cfg.validate();
    return cfg;
}

SweepSpec sweep_spec_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("sweep spec parse error: ") + e.what());
    }
    SweepSpec spec;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "parameter") spec.parameter = sweep_parameter_from_string(value.get<std::string>());
            else if (key == "values") spec.values = value.get<std::vector<double>>();
            else if (key == "replications") spec.replications = value.get<int>();
            else if (key == "algorithms") {
                spec.algorithms.clear();
                for (const auto& a : value)
                    spec.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
            } else if (key == "base_config") {
                spec.base_config = config_from_json_text(value.dump());
            } else if (key == "export_traces") {
                spec.export_traces = value.get<bool>();
            } else {
                throw ConfigError("unknown sweep spec key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("sweep spec type error: ") + e.what());
    }
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
    return sweep_spec_from_json_text(read_file(path));
}

Aggregate aggregate(const std::vector<double>& values) {
    Aggregate a;
    a.n = static_cast<int>(values.size());
    if (a.n == 0) return a;
    double sum = 0.0;
    for (double v : values) sum += v;
    a.mean = sum / a.n;
    double sq = 0.0;
    for (double v : values) sq += (v - a.mean) * (v - a.mean);
    a.stddev = std::sqrt(sq / a.n);
    return a;
}

namespace {

RunStats stats_from_run(const RunResult& run, std::uint64_t seed) {
    RunStats st;
    st.seed = seed;
    st.system_payoff = run.outcome.system_value;
    st.iterations = run.trace.iterations();
    st.sbs_payoffs = run.outcome.sbs_totals;
    const auto [mx, mean] = coalitions_per_sbs(run.structure);
    st.max_coalitions = mx;
    st.mean_coalitions = mean;
    return st;
}

std::string trace_key(double value, Algorithm algo, std::uint64_t seed) {
    std::ostringstream os;
    os << format_double(value) << '_' << to_string(algo) << '_' << seed;
    return os.str();
}

} // namespace

SweepResult sweep(const SweepSpec& spec, int threads) {
    spec.validate();
    SweepResult result;
    result.spec = spec;
    result.points.resize(spec.values.size());

    struct Task {
        std::size_t point;
        int replication;
    };
    std::vector<Task> tasks;
    for (std::size_t p = 0; p < spec.values.size(); ++p) {
        result.points[p].value = spec.values[p];
        for (const auto algo : spec.algorithms)
            result.points[p].runs[algo].resize(spec.replications);
        for (int r = 0; r < spec.replications; ++r) tasks.push_back({p, r});
    }

    struct TraceSlot {
        std::string key;
        EngineTrace trace;
    };
    std::vector<std::vector<TraceSlot>> trace_slots(tasks.size());

    auto run_task = [&](std::size_t t) {
        const auto [p, r] = tasks[t];
        const NetworkConfig cfg = spec.config_for(spec.values[p], r);
        const Topology topo = generate_topology(cfg);
        const RadioEnvironment env = build_environment(topo, cfg);
        for (const auto algo : spec.algorithms) {
            try {
                RunResult run = run_algorithm(algo, env);
                result.points[p].runs[algo][r] = stats_from_run(run, cfg.seed);
                if (spec.export_traces && algo != Algorithm::NONCOOP)
                    trace_slots[t].push_back({trace_key(spec.values[p], algo, cfg.seed),
                                              std::move(run.trace)});
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "sweep point " << to_string(spec.parameter) << '='
                   << format_double(spec.values[p]) << " seed " << cfg.seed << " ("
                   << to_string(algo) << "): " << e.what();
                throw EngineError(os.str());
            }
        }
    };

    unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, tasks.size() == 0 ? 1 : tasks.size());
    if (n_threads <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < n_threads; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t t = next.fetch_add(1);
                    if (t >= tasks.size()) return;
                    try {
                        run_task(t);
                    } catch (...) {
                        std::lock_guard lk(error_mutex);
                        if (!error) error = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    for (auto& slots : trace_slots)
        for (auto& s : slots) {
            result.trace_keys.push_back(std::move(s.key));
            result.traces.push_back(std::move(s.trace));
        }

    for (auto& point : result.points) {
        for (const auto algo : spec.algorithms) {
            std::vector<double> payoffs;
            for (const auto& st : point.runs[algo]) payoffs.push_back(st.system_payoff);
            point.payoff_aggregate[algo] = aggregate(payoffs);
        }
    }
    return result;
}

CdfTable payoff_cdf(const SweepPoint& point, Algorithm algo) {
    auto it = point.runs.find(algo);
    if (it == point.runs.end() || it->second.empty())
        throw std::invalid_argument("payoff_cdf: no runs for this algorithm");
    CdfTable t;
    for (const auto& st : it->second)
        for (double p : st.sbs_payoffs) t.payoff.push_back(p);
    if (t.payoff.empty()) throw std::invalid_argument("payoff_cdf: no per-SBS payoffs");
    std::sort(t.payoff.begin(), t.payoff.end());
    const double n = static_cast<double>(t.payoff.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < t.payoff.size(); ++i) {
        t.cdf.push_back(static_cast<double>(i + 1) / n);
        sum += t.payoff[i];
    }
    t.mean = sum / n;
    return t;
}

std::string results_csv(const SweepResult& result) {
    CsvTable t;
    t.header = {to_string(result.spec.parameter), "algorithm",        "seed",
                "system_payoff",                  "iterations",       "max_coalitions_per_sbs",
                "mean_coalitions_per_sbs"};
    for (const auto& point : result.points)
        for (const auto algo : result.spec.algorithms)
            for (const auto& st : point.runs.at(algo))
                t.rows.push_back({format_double(point.value), to_string(algo),
                                  std::to_string(st.seed), format_double(st.system_payoff),
                                  std::to_string(st.iterations), std::to_string(st.max_coalitions),
                                  format_double(st.mean_coalitions)});
    return t.serialize();
}

std::string payoffs_csv(const SweepResult& result) {
    CsvTable t;
    t.header = {to_string(result.spec.parameter), "algorithm", "seed", "sbs", "payoff"};
    for (const auto& point : result.points)
        for (const auto algo : result.spec.algorithms)
            for (const auto& st : point.runs.at(algo))
                for (std::size_t i = 0; i < st.sbs_payoffs.size(); ++i)
                    t.rows.push_back({format_double(point.value), to_string(algo),
                                      std::to_string(st.seed), std::to_string(i),
                                      format_double(st.sbs_payoffs[i])});
    return t.serialize();
}

std::string summary_csv(const SweepResult& result) {
    CsvTable t;
    t.header = {to_string(result.spec.parameter),
                "algorithm",
                "n_seeds",
                "mean_payoff",
                "stddev_payoff",
                "mean_iterations",
                "mean_max_coalitions",
                "mean_mean_coalitions"};
    for (const auto& point : result.points) {
        for (const auto algo : result.spec.algorithms) {
            const auto& runs = point.runs.at(algo);
            std::vector<double> iters, mx, mean_c;
            for (const auto& st : runs) {
                iters.push_back(st.iterations);
                mx.push_back(st.max_coalitions);
                mean_c.push_back(st.mean_coalitions);
            }
            const auto& agg = point.payoff_aggregate.at(algo);
            t.rows.push_back({format_double(point.value), to_string(algo),
                              std::to_string(agg.n), format_double(agg.mean),
                              format_double(agg.stddev), format_double(aggregate(iters).mean),
                              format_double(aggregate(mx).mean),
                              format_double(aggregate(mean_c).mean)});
        }
    }
    return t.serialize();
}

std::string cdf_csv(const CdfTable& table) {
    CsvTable t;
    t.header = {"payoff", "cdf"};
    for (std::size_t i = 0; i < table.payoff.size(); ++i)
        t.rows.push_back({format_double(table.payoff[i]), format_double(table.cdf[i])});
    return t.serialize();
}

std::string trace_csv(const EngineTrace& trace) {
    CsvTable t;
    t.header = {"iteration", "sbs", "unit", "move", "from_coalition", "to_coalition",
                "system_payoff"};
    for (const auto& m : trace.moves)
        t.rows.push_back({std::to_string(m.index), std::to_string(m.sbs), std::to_string(m.unit),
                          m.kind == MoveKind::Switch ? "switch" : "independent",
                          std::to_string(m.from_coalition), std::to_string(m.to_coalition),
                          format_double(m.system_value)});
    return t.serialize();
}

namespace {

std::string provenance_line(const SweepSpec& spec) {
    std::ostringstream os;
    os << "config_hash=" << config_hash(spec.base_config) << " seeds=" << spec.base_config.seed
       << ".." << spec.base_config.seed + static_cast<std::uint64_t>(spec.replications - 1)
       << " generator=ocfsim-" << kVersion;
    return os.str();
}

} // namespace

void write_sweep_outputs(const SweepResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const auto& spec = result.spec;
    const std::string param = to_string(spec.parameter);
    const std::string prov = provenance_line(spec);

    write_file(out_dir + "/results.csv", results_csv(result));
    write_file(out_dir + "/payoffs.csv", payoffs_csv(result));
    write_file(out_dir + "/summary.csv", summary_csv(result));

    // mean system payoff vs swept value, one series per algorithm
    PlotSpec payoff_plot;
    payoff_plot.title = "System payoff vs " + param;
    payoff_plot.x_label = param;
    payoff_plot.y_label = "system payoff";
    payoff_plot.provenance = prov;
    for (const auto algo : spec.algorithms) {
        PlotSeries s;
        s.label = to_string(algo);
        for (const auto& point : result.points) {
            s.x.push_back(point.value);
            s.y.push_back(point.payoff_aggregate.at(algo).mean);
        }
        payoff_plot.series.push_back(std::move(s));
    }
    write_plot(out_dir + "/payoff_vs_" + param + ".svg", payoff_plot);

    // coalitions per SBS (max and mean across seeds) for formation algorithms
    PlotSpec coal_plot;
    coal_plot.title = "Coalitions per SBS vs " + param;
    coal_plot.x_label = param;
    coal_plot.y_label = "coalitions per SBS";
    coal_plot.provenance = prov;
    for (const auto algo : spec.algorithms) {
        if (algo == Algorithm::NONCOOP) continue;
        PlotSeries mx{to_string(algo) + " max", {}, {}, false};
        PlotSeries mean{to_string(algo) + " mean", {}, {}, false};
        for (const auto& point : result.points) {
            std::vector<double> maxes, means;
            for (const auto& st : point.runs.at(algo)) {
                maxes.push_back(st.max_coalitions);
                means.push_back(st.mean_coalitions);
            }
            mx.x.push_back(point.value);
            mx.y.push_back(aggregate(maxes).mean);
            mean.x.push_back(point.value);
            mean.y.push_back(aggregate(means).mean);
        }
        coal_plot.series.push_back(std::move(mx));
        coal_plot.series.push_back(std::move(mean));
    }
    if (!coal_plot.series.empty())
        write_plot(out_dir + "/coalitions_vs_" + param + ".svg", coal_plot);

    // per-SBS payoff CDF at the last sweep point
    if (!result.points.empty()) {
        const auto& last = result.points.back();
        PlotSpec cdf_plot;
        cdf_plot.title = "Per-SBS payoff CDF (" + param + "=" + format_double(last.value) + ")";
        cdf_plot.x_label = "individual payoff";
        cdf_plot.y_label = "CDF";
        cdf_plot.provenance = prov;
        for (const auto algo : spec.algorithms) {
            const CdfTable table = payoff_cdf(last, algo);
            write_file(out_dir + "/cdf_" + to_string(algo) + ".csv", cdf_csv(table));
            PlotSeries s;
            s.label = to_string(algo) + " (mean " + format_double(table.mean) + ")";
            s.step = true;
            s.x = table.payoff;
            s.y = table.cdf;
            cdf_plot.series.push_back(std::move(s));
        }
        write_plot(out_dir + "/payoff_cdf.svg", cdf_plot);
    }

    // convergence traces when requested
    if (spec.export_traces && !result.traces.empty()) {
        PlotSpec trace_plot;
        trace_plot.title = "System payoff vs iteration";
        trace_plot.x_label = "iteration";
        trace_plot.y_label = "system payoff";
        trace_plot.provenance = prov;
        for (std::size_t i = 0; i < result.traces.size(); ++i) {
            write_file(out_dir + "/trace_" + result.trace_keys[i] + ".csv",
                       trace_csv(result.traces[i]));
            PlotSeries s;
            s.label = result.trace_keys[i];
            for (const auto& m : result.traces[i].moves) {
                s.x.push_back(m.index);
                s.y.push_back(m.system_value);
            }
            if (!s.x.empty()) trace_plot.series.push_back(std::move(s));
        }
        if (!trace_plot.series.empty()) write_plot(out_dir + "/trace_convergence.svg", trace_plot);
    }

    // machine-readable summary: config echo + aggregates + code version
    json j;
    j["generator"] = std::string("ocfsim-") + kVersion;
    j["parameter"] = param;
    j["replications"] = spec.replications;
    j["config_hash"] = config_hash(spec.base_config);
    j["base_config"] = json::parse(config_to_json_text(spec.base_config));
    j["points"] = json::array();
    for (const auto& point : result.points) {
        json jp;
        jp["value"] = point.value;
        for (const auto algo : spec.algorithms) {
            const auto& agg = point.payoff_aggregate.at(algo);
            jp[to_string(algo)] = {{"mean", agg.mean}, {"stddev", agg.stddev}, {"n", agg.n}};
        }
        j["points"].push_back(std::move(jp));
    }
    write_file(out_dir + "/summary.json", j.dump(2) + "\n");
}

} // namespace ocfsim
