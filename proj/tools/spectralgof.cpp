// spectralgof command-line tool.
//
//   spectralgof spectrum <file>
//   spectralgof sgof --observed <file> (--model <spec> | --fitted-dir <dir>)
//                    [--null gnm|gnp|regular|weight-shuffle | --null-dir <dir>]
//                    [--nsim N] [--seed S] [--mode explore|publish] [--out dir]
//   spectralgof simulate --model <spec> --count N --seed S --out <dir>
//   spectralgof sweep --observed <file> --config <json> --out <dir>
//   spectralgof plot-errors --observed <file> --model <spec> --null <kind> --out <file.svg>
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "spectralgof/spectralgof.hpp"

namespace fs = std::filesystem;
using namespace spectralgof;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

/// Seed streams under the user seed.
constexpr std::uint64_t kFittedStream = 0;
constexpr std::uint64_t kNullStream = 1;
constexpr std::uint64_t kFreshNullStream = 2;

struct LoadOptions {
    std::string merge = "error";
    bool largest_scc = false;

    io::ParseOptions parse() const {
        io::ParseOptions o;
        o.duplicates = merge == "sum" ? io::DuplicatePolicy::sum : io::DuplicatePolicy::error;
        return o;
    }
};

void add_load_options(CLI::App* cmd, LoadOptions& opts) {
    cmd->add_option("--merge-duplicates", opts.merge, "Duplicate edges: error (default) or sum")
        ->check(CLI::IsMember({"error", "sum"}));
    cmd->add_flag("--largest-scc", opts.largest_scc,
                  "Directed inputs: restrict every graph to its largest strongly connected component");
}

std::size_t default_nsim(const std::string& mode) {
    return mode == "publish" ? kPublishSimulations : kExploreSimulations;
}

io::ParsedGraph load(const std::string& path, const LoadOptions& opts) {
    auto g = io::load_graph(path, opts.parse());
    if (opts.largest_scc)
        if (auto* d = std::get_if<DirectedGraph>(&g)) return largest_strong_component(*d);
    return g;
}

ModelSpec model_for_observed(const std::string& text, std::size_t observed_nodes, const LoadOptions& opts) {
    ModelSpec spec = io::parse_model_spec(text, opts.parse());
    if (spec.n == 0) spec.n = observed_nodes;
    if (spec.n != observed_nodes)
        throw DataError("model generates " + std::to_string(spec.n) + " nodes but the observed graph has " +
                        std::to_string(observed_nodes));
    validate(spec);
    return spec;
}

std::vector<NormalizedSpectrum> directed_spectra(const std::vector<DirectedGraph>& graphs, std::size_t nodes,
                                                 const std::string& role) {
    if (graphs.empty()) throw DataError(role + " ensemble is empty");
    for (std::size_t k = 0; k < graphs.size(); ++k)
        if (graphs[k].node_count() != nodes)
            throw DataError(role + " ensemble member " + std::to_string(k) + " has " +
                            std::to_string(graphs[k].node_count()) + " nodes; observed graph has " +
                            std::to_string(nodes));
    std::vector<NormalizedSpectrum> out(graphs.size());
    parallel_for(graphs.size(), [&](std::size_t k) { out[k] = normalize_spectrum(directed_spectrum(graphs[k])); });
    return out;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
    std::string file;
    LoadOptions load;
};

int run_spectrum(const SpectrumArgs& a) {
    const auto g = load(a.file, a.load);
    Spectrum s;
    bool directed = false;
    if (const auto* d = std::get_if<DirectedGraph>(&g)) {
        s = directed_spectrum(*d);
        directed = true;
    } else {
        s = laplacian_spectrum(std::get<Graph>(g));
    }
    std::optional<NormalizedSpectrum> norm;
    if (s.sum() > 0.0) norm = normalize_spectrum(s);
    std::cout << io::spectrum_to_json(s, norm, directed).dump(2) << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

struct SgofArgs {
    std::string observed;
    std::string model;
    std::string fitted_dir;
    std::string null_kind = "gnm";
    std::string null_dir;
    std::optional<std::size_t> nsim;
    std::uint64_t seed = 1;
    std::string mode = "explore";
    std::string out;
    bool fresh_null_band = false;
    bool record_timing = false;
    LoadOptions load;
};

struct SgofRun {
    NormalizedSpectrum observed;
    std::vector<NormalizedSpectrum> fitted;
    std::vector<NormalizedSpectrum> null;
    SgofReport report;
    io::Json observed_info;
};

SgofRun compute_run(const SgofArgs& a) {
    const std::size_t nsim = a.nsim.value_or(default_nsim(a.mode));
    if (nsim == 0) throw ParameterError("--nsim must be at least 1");
    const auto parsed = load(a.observed, a.load);
    SgofRun run;
    EnsembleProvenance fitted_info, null_info;
    std::vector<NormalizedSpectrum> fresh;

    if (const auto* dg = std::get_if<DirectedGraph>(&parsed)) {
        if (a.fitted_dir.empty() || a.null_dir.empty())
            throw ParameterError("directed observed graphs need both --fitted-dir and --null-dir "
                                 "(no directed null model is defined)");
        const std::size_t n = dg->node_count();
        run.observed = normalize_spectrum(directed_spectrum(*dg));
        auto load_dir = [&](const std::string& dir) {
            auto graphs = io::ingest_directed_ensemble_dir(dir, a.load.parse());
            if (a.load.largest_scc)
                for (auto& g : graphs) g = largest_strong_component(g);
            return graphs;
        };
        run.fitted = directed_spectra(load_dir(a.fitted_dir), n, "fitted");
        run.null = directed_spectra(load_dir(a.null_dir), n, "null");
        fitted_info.source = "dir:" + a.fitted_dir;
        null_info.source = "dir:" + a.null_dir;
        run.observed_info = {{"file", a.observed}, {"nodes", n}, {"edges", dg->arc_count()}, {"directed", true},
                             {"largest_scc", a.load.largest_scc}};
    } else {
        const auto& g = std::get<Graph>(parsed);
        const std::size_t n = g.node_count();
        run.observed = observed_spectrum(g);
        if (!a.model.empty()) {
            const ModelSpec spec = model_for_observed(a.model, n, a.load);
            const auto seed = derive_seed(a.seed, kFittedStream);
            run.fitted = ensemble_spectra(generate_ensemble(spec, nsim, seed), n, "fitted");
            fitted_info = {"model", spec, seed};
        } else {
            run.fitted = ensemble_spectra(io::ingest_ensemble_dir(a.fitted_dir, a.load.parse()), n, "fitted");
            fitted_info.source = "dir:" + a.fitted_dir;
        }
        if (!a.null_dir.empty()) {
            run.null = ensemble_spectra(io::ingest_ensemble_dir(a.null_dir, a.load.parse()), n, "null");
            null_info.source = "dir:" + a.null_dir;
        } else {
            const ModelSpec spec = null_for(g, parse_null_kind(a.null_kind));
            const auto seed = derive_seed(a.seed, kNullStream);
            run.null = ensemble_spectra(generate_ensemble(spec, nsim, seed), n, "null");
            null_info = {"model", spec, seed};
            if (a.fresh_null_band)
                fresh = ensemble_spectra(generate_ensemble(spec, nsim, derive_seed(a.seed, kFreshNullStream)), n,
                                         "null");
        }
        run.observed_info = {{"file", a.observed}, {"nodes", n}, {"edges", g.edge_count()}, {"directed", false},
                             {"largest_scc", false}};
    }
    if (a.fresh_null_band && fresh.empty())
        throw ParameterError("--fresh-null-band needs a generated null model (not --null-dir or directed input)");

    run.report = compute_sgof(run.observed, run.fitted, run.null, fresh);
    run.report.fitted = fitted_info;
    run.report.null = null_info;
    return run;
}

ErrorDecomposition decomposition_of(const SgofRun& run) {
    return error_decomposition(run.observed, representative_spectrum(run.observed, run.null),
                               representative_spectrum(run.observed, run.fitted));
}

int run_sgof(const SgofArgs& a) {
    const auto start = std::chrono::steady_clock::now();
    const SgofRun run = compute_run(a);
    auto j = io::report_to_json(run.report);
    j["mode"] = a.mode;
    j["user_seed"] = a.seed;
    j["null_kind"] = a.null_dir.empty() ? io::Json(a.null_kind) : io::Json(nullptr);
    j["observed"] = run.observed_info;
    if (a.record_timing)
        j["wall_clock_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string report = j.dump(2) + "\n";
    if (a.out.empty()) {
        std::cout << report;
        return kOk;
    }
    const fs::path out(a.out);
    const auto decomposition = decomposition_of(run);
    io::write_text_file(out / "report.json", report);
    io::write_text_file(out / "decomposition.csv", io::decomposition_to_csv(decomposition));
    io::write_text_file(out / "errors.svg", io::emit_error_plot(decomposition));
    std::cout << "SGOF " << run.report.sgof_mean << " (" << run.report.fitted_band.low << ", "
              << run.report.fitted_band.high << ")  null band (" << run.report.null_band.low << ", "
              << run.report.null_band.high << ")\n";
    return kOk;
}

int run_plot_errors(SgofArgs a, const std::string& out) {
    a.out.clear();
    const SgofRun run = compute_run(a);
    io::write_text_file(out, io::emit_error_plot(decomposition_of(run)));
    return kOk;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::string model;
    std::size_t count = 0;
    std::uint64_t seed = 1;
    std::string out;
    LoadOptions load;
};

int run_simulate(const SimulateArgs& a) {
    ModelSpec spec = io::parse_model_spec(a.model, a.load.parse());
    if (spec.n == 0) throw ParameterError("--model must set the node count, e.g. gnm:n=100,m=250");
    validate(spec);
    const auto graphs = generate_ensemble(spec, a.count, a.seed);
    io::write_ensemble_dir(a.out, graphs);
    std::cerr << "wrote " << graphs.size() << " graphs to " << a.out << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    std::string observed;
    std::string config;
    std::string out;
    LoadOptions load;
};

int run_sweep_cmd(const SweepArgs& a) {
    const auto parsed = load(a.observed, a.load);
    const auto* g = std::get_if<Graph>(&parsed);
    if (!g) throw ParameterError("sweep needs an undirected observed graph");
    io::Json cfg_json;
    try {
        cfg_json = io::Json::parse(io::read_text_file(a.config));
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(a.config + ": " + e.what());
    }
    const auto cfg = io::sweep_config_from_json(cfg_json, a.load.parse());
    const ModelSpec null_spec = null_for(*g, cfg.null_kind);
    const SweepResult result = run_sweep(*g, cfg.grid, null_spec);

    const fs::path out(a.out);
    io::write_text_file(out / "sweep.csv", io::emit_grid_csv(result));
    auto j = io::sweep_to_json(result);
    j["family"] = family_name(cfg.grid.base.family);
    j["null_kind"] = null_kind_name(cfg.null_kind);
    io::write_text_file(out / "sweep.json", j.dump(2) + "\n");
    if (result.axes.size() == 2) io::write_text_file(out / "heatmap.svg", io::emit_heatmap(result));

    const auto& best = result.best();
    std::cout << "best cell:";
    for (std::size_t i = 0; i < result.axes.size(); ++i)
        std::cout << " " << result.axes[i].name << "=" << io::axis_value_text(best.values[i]);
    std::cout << "  SGOF " << best.report->sgof_mean << "\n";
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral goodness of fit for network models"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    SpectrumArgs spectrum_args;
    auto* spectrum = app.add_subcommand("spectrum", "Print the Laplacian spectrum of an edge-list file as JSON");
    spectrum->add_option("file", spectrum_args.file, "Edge-list file")->required();
    add_load_options(spectrum, spectrum_args.load);

    SgofArgs sgof_args;
    auto* sgof = app.add_subcommand("sgof", "Compute SGOF of a fitted model against a null model");
    sgof->add_option("--observed", sgof_args.observed, "Observed edge-list file")->required();
    auto* model_opt = sgof->add_option("--model", sgof_args.model, "Fitted model, family:key=value,...");
    auto* fdir_opt = sgof->add_option("--fitted-dir", sgof_args.fitted_dir, "Directory of fitted-model edge lists");
    model_opt->excludes(fdir_opt);
    auto* null_opt = sgof->add_option("--null", sgof_args.null_kind, "Null model: gnm (default), gnp, regular, weight-shuffle")
                         ->check(CLI::IsMember({"gnm", "gnp", "regular", "weight-shuffle"}));
    auto* ndir_opt = sgof->add_option("--null-dir", sgof_args.null_dir, "Directory of null-model edge lists");
    null_opt->excludes(ndir_opt);
    sgof->add_option("--nsim", sgof_args.nsim, "Simulations per ensemble (default 100 explore / 1000 publish)");
    sgof->add_option("--seed", sgof_args.seed, "Base seed");
    sgof->add_option("--mode", sgof_args.mode, "explore or publish")->check(CLI::IsMember({"explore", "publish"}));
    sgof->add_option("--out", sgof_args.out, "Output directory (report.json, decomposition.csv, errors.svg)");
    sgof->add_flag("--fresh-null-band", sgof_args.fresh_null_band,
                   "Compute the null band from a second, independent null ensemble");
    sgof->add_flag("--record-timing", sgof_args.record_timing, "Add wall-clock seconds to the report");
    add_load_options(sgof, sgof_args.load);

    SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Write an ensemble of generated graphs as edge lists");
    simulate->add_option("--model", sim_args.model, "Model, family:n=...,key=value,...")->required();
    simulate->add_option("--count", sim_args.count, "Number of graphs")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim_args.seed, "Base seed")->required();
    simulate->add_option("--out", sim_args.out, "Output directory")->required();
    add_load_options(simulate, sim_args.load);

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Grid search over model parameters with SGOF as the objective");
    sweep->add_option("--observed", sweep_args.observed, "Observed edge-list file")->required();
    sweep->add_option("--config", sweep_args.config, "Sweep configuration JSON")->required();
    sweep->add_option("--out", sweep_args.out, "Output directory (sweep.csv, sweep.json, heatmap.svg)")->required();
    add_load_options(sweep, sweep_args.load);

    SgofArgs plot_args;
    std::string plot_out;
    auto* plot = app.add_subcommand("plot-errors", "Write the explained/remaining/new error plot as SVG");
    plot->add_option("--observed", plot_args.observed, "Observed edge-list file")->required();
    plot->add_option("--model", plot_args.model, "Fitted model, family:key=value,...")->required();
    plot->add_option("--null", plot_args.null_kind, "Null model kind")
        ->required()
        ->check(CLI::IsMember({"gnm", "gnp", "regular", "weight-shuffle"}));
    plot->add_option("--nsim", plot_args.nsim, "Simulations per ensemble");
    plot->add_option("--seed", plot_args.seed, "Base seed");
    plot->add_option("--mode", plot_args.mode, "explore or publish")->check(CLI::IsMember({"explore", "publish"}));
    plot->add_option("--out", plot_out, "Output SVG file")->required();
    add_load_options(plot, plot_args.load);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*spectrum) return run_spectrum(spectrum_args);
        if (*sgof) {
            if (sgof_args.model.empty() && sgof_args.fitted_dir.empty())
                throw ParameterError("sgof needs --model or --fitted-dir");
            return run_sgof(sgof_args);
        }
        if (*simulate) return run_simulate(sim_args);
        if (*sweep) return run_sweep_cmd(sweep_args);
        if (*plot) return run_plot_errors(plot_args, plot_out);
    } catch (const ParameterError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
