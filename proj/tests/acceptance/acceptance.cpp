// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "../oracles.hpp"
#include "spectralgof/spectralgof.hpp"

using namespace spectralgof;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

ModelSpec model(Family f, std::size_t n, std::map<std::string, double> params = {}) {
    ModelSpec s;
    s.family = f;
    s.n = n;
    s.params = std::move(params);
    return s;
}

// Mirrors the CLI: fitted ensemble on stream 0, null on stream 1.
SgofReport sgof_run(const Graph& observed, const ModelSpec& fitted, std::size_t n_sim, std::uint64_t seed) {
    const auto f = generate_ensemble(fitted, n_sim, derive_seed(seed, 0));
    const auto z = generate_ensemble(null_for(observed, NullKind::gnm), n_sim, derive_seed(seed, 1));
    return compute_sgof(observed, f, z);
}

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome ac1() {
    double worst = 0.0;
    double slowest = 0.0;
    auto timed = [&](auto&& body) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    };
    timed([&] {
        const auto s = laplacian_spectrum(generate(model(Family::star, 100), 0));
        for (std::size_t i = 0; i < 100; ++i)
            worst = std::max(worst, std::abs(s.values[i] - (i == 0 ? 0.0 : i == 99 ? 100.0 : 1.0)));
    });
    for (std::size_t n : {2u, 5u, 20u, 100u})
        timed([&] {
            const auto s = laplacian_spectrum(generate(model(Family::gnm, n, {{"m", double(n * (n - 1) / 2)}}), 0));
            for (std::size_t i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(s.values[i] - (i == 0 ? 0.0 : double(n))));
        });
    for (std::size_t n : {3u, 10u, 100u})
        timed([&] {
            DirectedGraph g(n);
            for (std::size_t i = 0; i < n; ++i) g.add_arc(i, (i + 1) % n);
            const auto s = directed_spectrum(g);
            std::vector<double> expected;
            for (std::size_t k = 0; k < n; ++k) expected.push_back(1.0 - std::cos(2.0 * std::numbers::pi * double(k) / double(n)));
            std::sort(expected.begin(), expected.end());
            for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(s.values[i] - expected[i]));
        });
    return {worst <= 1e-8 && slowest < 1.0, fmt("max abs error %.2e, slowest case %.3f s", worst, slowest)};
}

Outcome ac2() {
    Rng rng(2024);
    double worst = 0.0;
    int zero_mismatch = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 20 + rng.uniform_index(181);
        const double p = 0.02 + 0.48 * rng.uniform01();
        const Graph g = generate(model(Family::gnp, n, {{"p", p}}), derive_seed(2, t));
        const auto s = laplacian_spectrum(g);
        const double tw = total_weight(g);
        if (tw > 0) worst = std::max(worst, std::abs(s.sum() - tw) / tw);
        if (count_zero_eigenvalues(s) != connected_components(g)) ++zero_mismatch;
    }
    return {worst <= 1e-8 && zero_mismatch == 0,
            fmt("max relative trace error %.2e, zero-count mismatches %d/200", worst, zero_mismatch)};
}

Outcome ac3() {
    const auto r = sgof_run(generate(model(Family::star, 100), 0), model(Family::star, 100), 100, 1);
    return {r.sgof_mean == 1.0 && r.fitted_band.low == 1.0 && r.fitted_band.high == 1.0,
            fmt("sgof %.17g, fitted band (%.17g, %.17g)", r.sgof_mean, r.fitted_band.low, r.fitted_band.high)};
}

Outcome ac4() {
    const auto spec = model(Family::gnm, 100, {{"m", 250}});
    double total = 0.0;
    int inside = 0;
    for (int r = 0; r < 50; ++r) {
        const Graph obs = generate(spec, derive_seed(4000, r));
        const auto rep = sgof_run(obs, spec, kExploreSimulations, derive_seed(4001, r));
        total += rep.sgof_mean;
        if (rep.null_band.contains(rep.sgof_mean)) ++inside;
    }
    const double m = total / 50.0;
    return {m >= -0.05 && m <= 0.05 && inside >= 45, fmt("mean sgof %.4f, inside own null band %d/50", m, inside)};
}

Outcome ac5() {
    int negative = 0;
    double worst = -1e300;
    for (int r = 0; r < 20; ++r) {
        const Graph obs = generate(model(Family::gnm, 100, {{"m", 250}}), derive_seed(5000, r));
        const double s = sgof_run(obs, model(Family::star, 100), kExploreSimulations, derive_seed(5001, r)).sgof_mean;
        if (s < 0) ++negative;
        worst = std::max(worst, s);
    }
    return {negative == 20, fmt("negative in %d/20 runs, largest sgof %.3f", negative, worst)};
}

Outcome ac6() {
    int narrower = 0;
    const Graph star = generate(model(Family::star, 100), 0);
    for (int r = 0; r < 20; ++r) {
        const Graph random = generate(model(Family::gnm, 100, {{"m", 99}}), derive_seed(6000, r));
        const auto a = sgof_run(star, model(Family::star, 100), kPublishSimulations, derive_seed(6001, r));
        const auto b = sgof_run(random, model(Family::gnm, 100, {{"m", 99}}), kPublishSimulations, derive_seed(6002, r));
        if (a.null_band.width() < b.null_band.width()) ++narrower;
    }
    return {narrower >= 18, fmt("star null band narrower in %d/20 repetitions", narrower)};
}

Outcome ac7() {
    int hits = 0;
    std::string winners;
    for (int r = 0; r < 20; ++r) {
        const Graph obs = generate(model(Family::random_walk_growth, 150, {{"k", 4}, {"l", 2}}), derive_seed(777, r));
        SweepGrid grid;
        grid.base.family = Family::random_walk_growth;
        grid.axes = {{"k", {2.0, 3.0, 4.0, 5.0, 6.0}}, {"l", {1.0, 2.0, 3.0}}};
        grid.n_sim = 100;
        grid.seed = derive_seed(1234, r);
        const auto res = run_sweep(obs, grid, null_for(obs, NullKind::gnm));
        const double k = std::get<double>(res.best().values[0]), l = std::get<double>(res.best().values[1]);
        if (k == 4 && l == 2) ++hits;
        winners += fmt(" (%g,%g)", k, l);
    }
    return {hits >= 12, fmt("best cell (4,2) in %d/20; winners:", hits) + winners};
}

Outcome ac8() {
    Graph k5(5);
    for (std::size_t u = 0; u < 5; ++u)
        for (std::size_t v = u + 1; v < 5; ++v) k5.add_edge(u, v);
    const auto got = directed_spectrum(reciprocal_digraph(k5)).values;
    const auto expected = oracle::normalized_laplacian_eigenvalues(k5);
    double spec_err = 0.0;
    for (std::size_t i = 0; i < 5; ++i) spec_err = std::max(spec_err, std::abs(got[i] - expected[i]));

    Rng rng(88);
    double residual = 0.0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 3 + rng.uniform_index(60);
        DirectedGraph g(n);
        for (std::size_t i = 0; i < n; ++i) g.add_arc(i, (i + 1) % n, 0.5 + rng.uniform01());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j && j != (i + 1) % n && rng.bernoulli(0.08)) g.add_arc(i, j, 0.5 + rng.uniform01());
        const Matrix p = transition_matrix(g);
        const auto phi = perron_vector(p);
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += phi[i] * p(i, j);
            residual = std::max(residual, std::abs(s - phi[j]));
        }
    }
    return {spec_err <= 1e-8 && residual < 1e-10,
            fmt("K5 spectrum error %.2e, worst stationarity residual %.2e", spec_err, residual)};
}

Outcome ac9(const std::string& cli, const fs::path& work) {
    fs::remove_all(work);
    fs::create_directories(work);
    const Graph obs = generate(model(Family::preferential_attachment, 60, {{"m_edges", 2}}), 9);
    io::write_text_file(work / "observed.edges", io::write_edge_list(obs));
    for (const char* run : {"a", "b"}) {
        const std::string cmd = "\"" + cli + "\" sgof --observed \"" + (work / "observed.edges").string() +
                                "\" --model preferential_attachment:m_edges=2 --nsim 50 --seed 7 --out \"" +
                                (work / run).string() + "\" > \"" + (work / run).string() + ".log\" 2>&1";
        if (std::system(cmd.c_str()) != 0) return {false, "cli run failed: " + cmd};
    }
    int compared = 0;
    for (const char* file : {"report.json", "errors.svg", "decomposition.csv"}) {
        const auto a = io::read_text_file(work / "a" / file), b = io::read_text_file(work / "b" / file);
        if (a != b) return {false, std::string(file) + " differs between runs"};
        ++compared;
    }
    return {true, fmt("%d artifacts byte-identical across two runs", compared)};
}

Outcome ac10() {
    std::size_t graphs = 0;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 5; ++n) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
            Graph g(n);
            for (std::size_t b = 0; b < pairs.size(); ++b)
                if (mask >> b & 1) g.add_edge(pairs[b].first, pairs[b].second);
            const auto l = build_laplacian(g);
            const auto got = laplacian_spectrum(l).values;
            const auto expected = oracle::bisection_eigenvalues(l.matrix(), 1e-11);
            for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(got[i] - expected[i]));
            ++graphs;
        }
    }
    return {worst <= 1e-6, fmt("%zu graphs, max abs error %.2e", graphs, worst)};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectralgof acceptance gate"};
    std::string cli;
    std::string workdir = "acceptance_work";
    std::vector<int> only;
    app.add_option("--cli", cli, "path to the spectralgof executable")->required();
    app.add_option("--workdir", workdir, "scratch directory");
    app.add_option("--only", only, "run only these criterion numbers");
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        int id;
        const char* name;
        double limit_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "analytic spectra", 10.0, ac1},
        {2, "eigenvalue sum equals total weight", 30.0, ac2},
        {3, "perfect fit", 10.0, ac3},
        {4, "null self-consistency", 300.0, ac4},
        {5, "negative sgof", 60.0, ac5},
        {6, "null band width ordering", 300.0, ac6},
        {7, "sweep self-recovery", 900.0, ac7},
        {8, "directed correctness", 30.0, ac8},
        {9, "determinism", 120.0, [&] { return ac9(cli, fs::path(workdir) / "determinism"); }},
        {10, "small-n oracle", 120.0, ac10},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_seconds) {
            o.pass = false;
            o.detail += fmt(" [over time limit %.0f s]", c.limit_seconds);
        }
        if (!o.pass) ++failures;
        std::printf("[%s] AC%d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
