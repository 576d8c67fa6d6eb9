#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "spectralgof/errors.hpp"
#include "spectralgof/matrix.hpp"

namespace spectralgof {

/// Undirected weighted edge. Stored with u < v.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double w = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected weighted graph on nodes 0..n-1.
///
/// Every edge joins two distinct nodes, each unordered pair appears at most
/// once and every weight is strictly positive. Edges keep insertion order so
/// that serialization and generation are reproducible.
class Graph {
public:
    explicit Graph(std::size_t n) : n_(n) {
        if (n == 0) throw DataError("graph must have at least one node");
    }

    Graph(std::size_t n, std::span<const Edge> edges) : Graph(n) {
        edges_.reserve(edges.size());
        for (const Edge& e : edges) add_edge(e.u, e.v, e.w);
    }

    void add_edge(std::size_t u, std::size_t v, double w = 1.0) {
        if (u >= n_ || v >= n_)
            throw DataError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") references a node outside 0.." + std::to_string(n_ - 1));
        if (u == v) throw DataError("self-loop on node " + std::to_string(u));
        if (!(w > 0.0) || !std::isfinite(w))
            throw DataError("edge weight must be finite and strictly positive");
        if (u > v) std::swap(u, v);
        if (!keys_.insert(key(u, v)).second)
            throw DataError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        edges_.push_back({u, v, w});
    }

    bool has_edge(std::size_t u, std::size_t v) const {
        if (u > v) std::swap(u, v);
        return keys_.contains(key(u, v));
    }

    std::size_t node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    /// External node labels, indexed by node. Empty when nodes are
    /// addressed by index only.
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<std::string> labels) {
        if (!labels.empty() && labels.size() != n_)
            throw DataError("label table size does not match node count");
        labels_ = std::move(labels);
    }

    std::vector<double> degrees() const {
        std::vector<double> d(n_, 0.0);
        for (const Edge& e : edges_) {
            d[e.u] += e.w;
            d[e.v] += e.w;
        }
        return d;
    }

    std::vector<std::vector<std::size_t>> adjacency() const {
        std::vector<std::vector<std::size_t>> adj(n_);
        for (const Edge& e : edges_) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        return adj;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
    }

private:
    std::uint64_t key(std::size_t u, std::size_t v) const noexcept {
        return static_cast<std::uint64_t>(u) * n_ + v;
    }

    std::size_t n_;
    std::vector<Edge> edges_;
    std::unordered_set<std::uint64_t> keys_;
    std::vector<std::string> labels_;
};

/// Symmetric matrix produced by a Laplacian construction. For the
/// combinatorial Laplacian every row sums to zero; the directed
/// (symmetrized) Laplacian shares the type but not that property.
class LaplacianMatrix {
public:
    LaplacianMatrix() = default;
    explicit LaplacianMatrix(Matrix m) : m_(std::move(m)) {}

    std::size_t size() const noexcept { return m_.size(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }
    const Matrix& matrix() const noexcept { return m_; }

    double trace() const noexcept {
        double t = 0.0;
        for (std::size_t i = 0; i < size(); ++i) t += m_(i, i);
        return t;
    }

private:
    Matrix m_;
};

/// L = D - A for an undirected weighted graph.
inline LaplacianMatrix build_laplacian(const Graph& g) {
    Matrix m(g.node_count());
    for (const Edge& e : g.edges()) {
        m(e.u, e.v) = -e.w;
        m(e.v, e.u) = -e.w;
        m(e.u, e.u) += e.w;
        m(e.v, e.v) += e.w;
    }
    return LaplacianMatrix(std::move(m));
}

/// Sum over all ordered pairs of A_uv, i.e. twice the undirected weight.
inline double total_weight(const Graph& g) {
    double s = 0.0;
    for (const Edge& e : g.edges()) s += e.w;
    return 2.0 * s;
}

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[std::max(a, b)] = std::min(a, b);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace detail

inline std::size_t connected_components(const Graph& g) {
    detail::DisjointSets sets(g.node_count());
    std::size_t count = g.node_count();
    for (const Edge& e : g.edges())
        if (sets.unite(e.u, e.v)) --count;
    return count;
}

} // namespace spectralgof
