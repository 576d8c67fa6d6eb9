#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "spectralgof/errors.hpp"
#include "spectralgof/graph.hpp"
#include "spectralgof/matrix.hpp"
#include "spectralgof/spectral.hpp"

namespace spectralgof {

struct Arc {
    std::size_t from = 0;
    std::size_t to = 0;
    double w = 1.0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// Weighted digraph without self-loops; each ordered pair at most once.
class DirectedGraph {
public:
    explicit DirectedGraph(std::size_t n) : n_(n) {
        if (n == 0) throw DataError("graph must have at least one node");
    }

    void add_arc(std::size_t from, std::size_t to, double w = 1.0) {
        if (from >= n_ || to >= n_)
            throw DataError("arc (" + std::to_string(from) + ", " + std::to_string(to) +
                            ") references a node outside 0.." + std::to_string(n_ - 1));
        if (from == to) throw DataError("self-loop on node " + std::to_string(from));
        if (!(w > 0.0) || !std::isfinite(w))
            throw DataError("arc weight must be finite and strictly positive");
        if (!keys_.insert(static_cast<std::uint64_t>(from) * n_ + to).second)
            throw DataError("duplicate arc (" + std::to_string(from) + ", " + std::to_string(to) + ")");
        arcs_.push_back({from, to, w});
    }

    bool has_arc(std::size_t from, std::size_t to) const {
        return keys_.contains(static_cast<std::uint64_t>(from) * n_ + to);
    }

    std::size_t node_count() const noexcept { return n_; }
    std::size_t arc_count() const noexcept { return arcs_.size(); }
    std::span<const Arc> arcs() const noexcept { return arcs_; }

    const std::vector<std::string>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> labels) {
        if (!labels.empty() && labels.size() != n_)
            throw DataError("label table size does not match node count");
        labels_ = std::move(labels);
    }

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.n_ == b.n_ && a.arcs_ == b.arcs_ && a.labels_ == b.labels_;
    }

private:
    std::size_t n_;
    std::vector<Arc> arcs_;
    std::unordered_set<std::uint64_t> keys_;
    std::vector<std::string> labels_;
};

/// Digraph with every undirected edge replaced by a reciprocal arc pair.
inline DirectedGraph reciprocal_digraph(const Graph& g) {
    DirectedGraph d(g.node_count());
    for (const Edge& e : g.edges()) {
        d.add_arc(e.u, e.v, e.w);
        d.add_arc(e.v, e.u, e.w);
    }
    return d;
}

/// Row-normalized adjacency: P(i,j) = A_ij / sum_k A_ik.
inline Matrix transition_matrix(const DirectedGraph& g) {
    const std::size_t n = g.node_count();
    Matrix p(n);
    std::vector<double> out(n, 0.0);
    for (const Arc& a : g.arcs()) {
        p(a.from, a.to) = a.w;
        out[a.from] += a.w;
    }
    std::string dangling;
    for (std::size_t i = 0; i < n; ++i)
        if (out[i] == 0.0) dangling += (dangling.empty() ? "" : ", ") + std::to_string(i);
    if (!dangling.empty())
        throw DataError("nodes with zero out-degree (dangling): " + dangling);
    for (std::size_t i = 0; i < n; ++i)
        for (double& x : p.row(i)) x /= out[i];
    return p;
}

/// Strongly connected components of the positive-entry pattern of a square
/// matrix (Kosaraju, iterative). Returns component id per node; ids are
/// assigned in order of discovery on the reverse pass.
inline std::vector<std::size_t> strong_components(const Matrix& pattern, std::size_t& count) {
    const std::size_t n = pattern.size();
    std::vector<std::vector<std::size_t>> fwd(n), rev(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && pattern(i, j) > 0.0) {
                fwd[i].push_back(j);
                rev[j].push_back(i);
            }

    std::vector<std::size_t> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        stack.push_back({s, 0});
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < fwd[node].size()) {
                const std::size_t t = fwd[node][next++];
                if (!seen[t]) {
                    seen[t] = 1;
                    stack.push_back({t, 0});
                }
            } else {
                order.push_back(node);
                stack.pop_back();
            }
        }
    }

    constexpr auto kUnassigned = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(n, kUnassigned);
    count = 0;
    std::vector<std::size_t> work;
    for (std::size_t idx = n; idx-- > 0;) {
        const std::size_t s = order[idx];
        if (comp[s] != kUnassigned) continue;
        comp[s] = count;
        work.push_back(s);
        while (!work.empty()) {
            const std::size_t v = work.back();
            work.pop_back();
            for (std::size_t t : rev[v])
                if (comp[t] == kUnassigned) {
                    comp[t] = count;
                    work.push_back(t);
                }
        }
        ++count;
    }
    return comp;
}

inline Matrix arc_pattern(const DirectedGraph& g) {
    Matrix m(g.node_count());
    for (const Arc& a : g.arcs()) m(a.from, a.to) = a.w;
    return m;
}

inline bool is_strongly_connected(const DirectedGraph& g) {
    std::size_t count = 0;
    strong_components(arc_pattern(g), count);
    return count == 1;
}

/// Subgraph induced by the largest strongly connected component (ties go to
/// the component containing the lowest node index). Node order and labels
/// are preserved.
inline DirectedGraph largest_strong_component(const DirectedGraph& g) {
    std::size_t count = 0;
    const auto comp = strong_components(arc_pattern(g), count);
    std::vector<std::size_t> size(count, 0), first(count, g.node_count());
    for (std::size_t v = 0; v < g.node_count(); ++v) {
        ++size[comp[v]];
        first[comp[v]] = std::min(first[comp[v]], v);
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < count; ++c)
        if (size[c] > size[best] || (size[c] == size[best] && first[c] < first[best])) best = c;

    constexpr auto kDropped = static_cast<std::size_t>(-1);
    std::vector<std::size_t> remap(g.node_count(), kDropped);
    std::vector<std::string> labels;
    std::size_t next = 0;
    for (std::size_t v = 0; v < g.node_count(); ++v)
        if (comp[v] == best) {
            remap[v] = next++;
            if (!g.labels().empty()) labels.push_back(g.labels()[v]);
        }
    DirectedGraph out(next);
    for (const Arc& a : g.arcs())
        if (remap[a.from] != kDropped && remap[a.to] != kDropped)
            out.add_arc(remap[a.from], remap[a.to], a.w);
    out.set_labels(std::move(labels));
    return out;
}

inline constexpr double kPerronTolerance = 1e-12;
inline constexpr std::size_t kPerronMaxIterations = 100000;

/// Stationary distribution of a row-stochastic matrix by power iteration on
/// the lazy chain (P + I)/2, which has the same fixed point but converges
/// for periodic chains too.
inline std::vector<double> perron_vector(const Matrix& p) {
    const std::size_t n = p.size();
    std::size_t count = 0;
    strong_components(p, count);
    if (count != 1)
        throw DataError("transition matrix is not strongly connected (" + std::to_string(count) +
                        " strongly connected components); use the largest component instead");

    std::vector<double> phi(n, 1.0 / static_cast<double>(n)), next(n);
    for (std::size_t it = 0; it < kPerronMaxIterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double w = 0.5 * phi[i];
            if (w == 0.0) continue;
            auto row = p.row(i);
            for (std::size_t j = 0; j < n; ++j) next[j] += w * row[j];
            next[i] += w;
        }
        double total = 0.0;
        for (double x : next) total += x;
        double delta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            next[j] /= total;
            delta = std::max(delta, std::abs(next[j] - phi[j]));
        }
        phi.swap(next);
        if (delta < kPerronTolerance) return phi;
    }
    throw NumericalError("Perron vector power iteration did not converge within " +
                         std::to_string(kPerronMaxIterations) + " iterations");
}

/// Symmetrized directed Laplacian
///   L = I - (Phi^1/2 P Phi^-1/2 + Phi^-1/2 P^T Phi^1/2) / 2
/// where Phi = diag(perron_vector(P)). Requires strong connectivity.
inline LaplacianMatrix directed_laplacian(const DirectedGraph& g) {
    const Matrix p = transition_matrix(g);
    const auto phi = perron_vector(p);
    const std::size_t n = g.node_count();
    std::vector<double> root(n);
    for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(phi[i]);

    Matrix l(n);
    for (std::size_t i = 0; i < n; ++i) {
        l(i, i) = 1.0 - p(i, i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = -0.5 * (root[i] * p(i, j) / root[j] + root[j] * p(j, i) / root[i]);
            l(i, j) = v;
            l(j, i) = v;
        }
    }
    return LaplacianMatrix(std::move(l));
}

inline Spectrum directed_spectrum(const DirectedGraph& g) {
    return laplacian_spectrum(directed_laplacian(g));
}

} // namespace spectralgof
