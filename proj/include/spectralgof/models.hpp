#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "spectralgof/errors.hpp"
#include "spectralgof/graph.hpp"
#include "spectralgof/parallel.hpp"
#include "spectralgof/rng.hpp"

namespace spectralgof {

enum class Family {
    gnp,
    gnm,
    degree_regular,
    weight_shuffle,
    preferential_attachment,
    random_walk_growth,
    star,
    fixed_graph,
};

inline constexpr std::array<std::pair<Family, std::string_view>, 8> kFamilyNames{{
    {Family::gnp, "gnp"},
    {Family::gnm, "gnm"},
    {Family::degree_regular, "degree_regular"},
    {Family::weight_shuffle, "weight_shuffle"},
    {Family::preferential_attachment, "preferential_attachment"},
    {Family::random_walk_growth, "random_walk_growth"},
    {Family::star, "star"},
    {Family::fixed_graph, "fixed_graph"},
}};

inline std::string_view family_name(Family f) {
    for (const auto& [fam, name] : kFamilyNames)
        if (fam == f) return name;
    return "unknown";
}

inline Family parse_family(std::string_view name) {
    for (const auto& [fam, n] : kFamilyNames)
        if (n == name) return fam;
    throw ParameterError("unknown model family '" + std::string(name) + "'");
}

/// Parameter names each family accepts (required and optional).
inline std::vector<std::string_view> family_parameters(Family f) {
    switch (f) {
    case Family::gnp: return {"p"};
    case Family::gnm: return {"m"};
    case Family::degree_regular: return {"d", "max_restarts"};
    case Family::weight_shuffle: return {};
    case Family::preferential_attachment: return {"m_edges"};
    case Family::random_walk_growth: return {"k", "l", "poisson", "seed_size", "max_attempts"};
    case Family::star: return {};
    case Family::fixed_graph: return {};
    }
    return {};
}

/// A named generator plus its parameters.
struct ModelSpec {
    Family family = Family::gnm;
    std::size_t n = 0;
    std::map<std::string, double> params;
    /// Weight multiset for weight_shuffle.
    std::vector<double> weights;
    /// Graph returned verbatim by fixed_graph.
    std::shared_ptr<const Graph> graph;
    /// Where `graph` was loaded from, if anywhere (reporting only).
    std::string graph_source;

    bool has(const std::string& key) const { return params.contains(key); }

    double param(const std::string& key) const {
        auto it = params.find(key);
        if (it == params.end())
            throw ParameterError(std::string(family_name(family)) + ": missing parameter '" + key + "'");
        return it->second;
    }

    double param_or(const std::string& key, double fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    }

    /// Non-negative integer parameter.
    std::uint64_t count(const std::string& key) const { return checked_count(key, param(key)); }
    std::uint64_t count_or(const std::string& key, std::uint64_t fallback) const {
        auto it = params.find(key);
        return it == params.end() ? fallback : checked_count(key, it->second);
    }

private:
    std::uint64_t checked_count(const std::string& key, double v) const {
        if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15)
            throw ParameterError(std::string(family_name(family)) + ": parameter '" + key +
                                 "' must be a non-negative integer");
        return static_cast<std::uint64_t>(v);
    }
};

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

/// Checks family-specific parameter completeness and feasibility.
inline void validate(const ModelSpec& spec) {
    const std::string fam(family_name(spec.family));
    if (spec.n == 0) throw ParameterError(fam + ": node count n must be positive");
    const std::uint64_t n = spec.n;
    switch (spec.family) {
    case Family::gnp: {
        const double p = spec.param("p");
        if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("gnp: p must lie in [0, 1]");
        break;
    }
    case Family::gnm:
        if (spec.count("m") > pair_count(n))
            throw ParameterError("gnm: m = " + std::to_string(spec.count("m")) + " exceeds C(n,2) = " +
                                 std::to_string(pair_count(n)));
        break;
    case Family::degree_regular: {
        const auto d = spec.count("d");
        if (d >= n && !(d == 0 && n == 1))
            throw ParameterError("degree_regular: degree d must be less than n");
        if ((n * d) % 2 != 0) throw ParameterError("degree_regular: n*d must be even");
        if (spec.count_or("max_restarts", 10000) == 0)
            throw ParameterError("degree_regular: max_restarts must be positive");
        break;
    }
    case Family::weight_shuffle:
        if (spec.weights.size() > pair_count(n))
            throw ParameterError("weight_shuffle: more weights than node pairs");
        for (double w : spec.weights)
            if (!(w > 0.0) || !std::isfinite(w))
                throw ParameterError("weight_shuffle: weights must be finite and positive");
        break;
    case Family::preferential_attachment: {
        const auto m = spec.count("m_edges");
        if (m == 0) throw ParameterError("preferential_attachment: m_edges must be at least 1");
        if (m > n) throw ParameterError("preferential_attachment: m_edges must not exceed n");
        break;
    }
    case Family::random_walk_growth: {
        if (spec.count("k") == 0) throw ParameterError("random_walk_growth: k must be at least 1");
        spec.count("l");
        const auto poisson = spec.count_or("poisson", 0);
        if (poisson > 1) throw ParameterError("random_walk_growth: poisson must be 0 or 1");
        if (spec.has("seed_size") && spec.count("seed_size") < 2)
            throw ParameterError("random_walk_growth: seed_size must be at least 2");
        if (spec.count_or("max_attempts", 100) == 0)
            throw ParameterError("random_walk_growth: max_attempts must be positive");
        break;
    }
    case Family::star: break;
    case Family::fixed_graph:
        if (!spec.graph) throw ParameterError("fixed_graph: no graph supplied");
        if (spec.graph->node_count() != spec.n)
            throw ParameterError("fixed_graph: graph has " + std::to_string(spec.graph->node_count()) +
                                 " nodes but spec declares n = " + std::to_string(spec.n));
        break;
    }
}

namespace detail {

/// Unranks a pair index in [0, C(n,2)) to (u, v) with u < v, row-major over u.
inline std::pair<std::size_t, std::size_t> unrank_pair(std::uint64_t idx, std::uint64_t n) {
    std::uint64_t u = 0;
    std::uint64_t row = n - 1;
    while (idx >= row) {
        idx -= row;
        ++u;
        --row;
    }
    return {static_cast<std::size_t>(u), static_cast<std::size_t>(u + 1 + idx)};
}

/// m distinct pair indices chosen uniformly (Floyd's algorithm), sorted.
inline std::vector<std::uint64_t> sample_pairs(std::uint64_t n, std::uint64_t m, Rng& rng) {
    const std::uint64_t total = pair_count(n);
    std::set<std::uint64_t> chosen;
    for (std::uint64_t j = total - m; j < total; ++j) {
        const std::uint64_t t = rng.uniform_index(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

inline Graph gnm_topology(std::size_t n, std::uint64_t m, Rng& rng) {
    Graph g(n);
    for (std::uint64_t idx : sample_pairs(n, m, rng)) {
        auto [u, v] = unrank_pair(idx, n);
        g.add_edge(u, v);
    }
    return g;
}

inline Graph clique(Graph g, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j) g.add_edge(i, j);
    return g;
}

inline Graph generate_gnp(const ModelSpec& spec, Rng& rng) {
    const double p = spec.param("p");
    Graph g(spec.n);
    for (std::size_t u = 0; u < spec.n; ++u)
        for (std::size_t v = u + 1; v < spec.n; ++v)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

inline Graph generate_degree_regular(const ModelSpec& spec, Rng& rng) {
    const std::size_t n = spec.n;
    const auto d = static_cast<std::size_t>(spec.count("d"));
    const auto max_restarts = spec.count_or("max_restarts", 10000);
    std::vector<std::size_t> stubs;
    stubs.reserve(n * d);
    for (std::size_t i = 0; i < n; ++i) stubs.insert(stubs.end(), d, i);

    std::unordered_set<std::uint64_t> seen;
    for (std::uint64_t attempt = 0; attempt < max_restarts; ++attempt) {
        rng.shuffle(std::span<std::size_t>(stubs));
        seen.clear();
        bool simple = true;
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
            std::size_t a = stubs[i], b = stubs[i + 1];
            if (a == b) { simple = false; break; }
            if (a > b) std::swap(a, b);
            if (!seen.insert(static_cast<std::uint64_t>(a) * n + b).second) { simple = false; break; }
        }
        if (!simple) continue;
        Graph g(n);
        for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) g.add_edge(stubs[i], stubs[i + 1]);
        return g;
    }
    throw DataError("degree_regular: no simple pairing found after " + std::to_string(max_restarts) +
                    " restarts (n=" + std::to_string(n) + ", d=" + std::to_string(d) + ")");
}

inline Graph generate_weight_shuffle(const ModelSpec& spec, Rng& rng) {
    const Graph topo = gnm_topology(spec.n, spec.weights.size(), rng);
    std::vector<double> weights = spec.weights;
    rng.shuffle(std::span<double>(weights));
    Graph g(spec.n);
    std::size_t i = 0;
    for (const Edge& e : topo.edges()) g.add_edge(e.u, e.v, weights[i++]);
    return g;
}

inline Graph generate_preferential_attachment(const ModelSpec& spec, Rng& rng) {
    const std::size_t n = spec.n;
    const auto m = static_cast<std::size_t>(spec.count("m_edges"));
    Graph g = clique(Graph(n), m);
    // Each edge endpoint appears once, so a uniform draw is degree-proportional.
    std::vector<std::size_t> endpoints;
    for (const Edge& e : g.edges()) {
        endpoints.push_back(e.u);
        endpoints.push_back(e.v);
    }
    std::vector<std::size_t> targets;
    for (std::size_t node = m; node < n; ++node) {
        targets.clear();
        while (targets.size() < m) {
            const std::size_t t = endpoints.empty()
                                      ? static_cast<std::size_t>(rng.uniform_index(node))
                                      : endpoints[rng.uniform_index(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (std::size_t t : targets) {
            g.add_edge(t, node);
            endpoints.push_back(t);
            endpoints.push_back(node);
        }
    }
    return g;
}

inline Graph generate_random_walk_growth(const ModelSpec& spec, Rng& rng) {
    const std::size_t n = spec.n;
    const auto k = spec.count("k");
    const auto walk_length = spec.count("l");
    const bool poisson = spec.count_or("poisson", 0) == 1;
    const auto max_attempts = spec.count_or("max_attempts", 100);
    const auto seed_size =
        std::min<std::size_t>(n, static_cast<std::size_t>(spec.count_or("seed_size", std::max<std::uint64_t>(3, k + 1))));

    Graph g = clique(Graph(n), seed_size);
    std::vector<std::vector<std::size_t>> adj = g.adjacency();
    std::vector<std::size_t> targets;
    for (std::size_t node = seed_size; node < n; ++node) {
        std::uint64_t edges = k;
        if (poisson) {
            do edges = rng.poisson(static_cast<double>(k));
            while (edges == 0);
        }
        const auto entry = static_cast<std::size_t>(rng.uniform_index(node));
        targets.clear();
        for (std::uint64_t e = 0; e < edges; ++e) {
            for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
                std::size_t at = entry;
                for (std::uint64_t step = 0; step < walk_length && !adj[at].empty(); ++step)
                    at = adj[at][rng.uniform_index(adj[at].size())];
                if (std::find(targets.begin(), targets.end(), at) == targets.end()) {
                    targets.push_back(at);
                    break;
                }
            }
        }
        for (std::size_t t : targets) {
            g.add_edge(t, node);
            adj[t].push_back(node);
            adj[node].push_back(t);
        }
    }
    return g;
}

inline Graph generate_star(const ModelSpec& spec) {
    Graph g(spec.n);
    for (std::size_t i = 1; i < spec.n; ++i) g.add_edge(0, i);
    return g;
}

} // namespace detail

/// One draw from the model. Deterministic in (spec, seed).
inline Graph generate(const ModelSpec& spec, std::uint64_t seed) {
    validate(spec);
    Rng rng(seed);
    switch (spec.family) {
    case Family::gnp: return detail::generate_gnp(spec, rng);
    case Family::gnm: return detail::gnm_topology(spec.n, spec.count("m"), rng);
    case Family::degree_regular: return detail::generate_degree_regular(spec, rng);
    case Family::weight_shuffle: return detail::generate_weight_shuffle(spec, rng);
    case Family::preferential_attachment: return detail::generate_preferential_attachment(spec, rng);
    case Family::random_walk_growth: return detail::generate_random_walk_growth(spec, rng);
    case Family::star: return detail::generate_star(spec);
    case Family::fixed_graph: return *spec.graph;
    }
    throw ParameterError("unknown model family");
}

/// n_sim independent draws; member k uses derive_seed(seed, k).
inline std::vector<Graph> generate_ensemble(const ModelSpec& spec, std::size_t n_sim, std::uint64_t seed) {
    if (n_sim == 0) throw ParameterError("ensemble size must be at least 1");
    validate(spec);
    std::vector<std::optional<Graph>> slots(n_sim);
    parallel_for(n_sim, [&](std::size_t k) { slots[k].emplace(generate(spec, derive_seed(seed, k))); });
    std::vector<Graph> out;
    out.reserve(n_sim);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

enum class NullKind { gnm, gnp, degree_regular, weight_shuffle };

inline std::string_view null_kind_name(NullKind k) {
    switch (k) {
    case NullKind::gnm: return "gnm";
    case NullKind::gnp: return "gnp";
    case NullKind::degree_regular: return "regular";
    case NullKind::weight_shuffle: return "weight-shuffle";
    }
    return "unknown";
}

inline NullKind parse_null_kind(std::string_view s) {
    if (s == "gnm") return NullKind::gnm;
    if (s == "gnp") return NullKind::gnp;
    if (s == "regular" || s == "degree_regular") return NullKind::degree_regular;
    if (s == "weight-shuffle" || s == "weight_shuffle") return NullKind::weight_shuffle;
    throw ParameterError("unknown null model '" + std::string(s) +
                         "' (expected gnm, gnp, regular or weight-shuffle)");
}

/// Maximum-entropy null model matched to the observed graph.
inline ModelSpec null_for(const Graph& observed, NullKind kind) {
    if (observed.edge_count() == 0) throw DataError("observed graph has no edges");
    ModelSpec spec;
    spec.n = observed.node_count();
    const auto m = static_cast<double>(observed.edge_count());
    const auto n = static_cast<double>(observed.node_count());
    switch (kind) {
    case NullKind::gnm:
        spec.family = Family::gnm;
        spec.params["m"] = m;
        break;
    case NullKind::gnp:
        spec.family = Family::gnp;
        spec.params["p"] = 2.0 * m / (n * (n - 1.0));
        break;
    case NullKind::degree_regular: {
        std::vector<std::size_t> deg(observed.node_count(), 0);
        for (const Edge& e : observed.edges()) {
            ++deg[e.u];
            ++deg[e.v];
        }
        if (std::adjacent_find(deg.begin(), deg.end(), std::not_equal_to<>()) != deg.end())
            throw DataError("degree-regular null requested but the observed graph is not regular");
        spec.family = Family::degree_regular;
        spec.params["d"] = static_cast<double>(deg.front());
        break;
    }
    case NullKind::weight_shuffle:
        spec.family = Family::weight_shuffle;
        for (const Edge& e : observed.edges()) spec.weights.push_back(e.w);
        std::sort(spec.weights.begin(), spec.weights.end());
        break;
    }
    return spec;
}

} // namespace spectralgof
