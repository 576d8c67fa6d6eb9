#pragma once

// Test-only reference computations, deliberately independent of the
// library's Householder/QL eigensolver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "spectralgof/graph.hpp"
#include "spectralgof/matrix.hpp"

namespace oracle {

/// Number of eigenvalues of symmetric `a` strictly below x, by Sylvester's
/// law of inertia: factor a - xI = P L D L^T P^T with Bunch-Parlett pivoting
/// and count the negative eigenvalues of the block-diagonal D. The 2x2 pivots
/// keep the count exact when a leading minor vanishes at a non-eigenvalue.
inline std::size_t count_below(const spectralgof::Matrix& a, double x) {
    const std::size_t n = a.size();
    std::vector<double> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = a(i, j) - (i == j ? x : 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return m[i * n + j]; };
    const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;

    std::vector<std::size_t> active(n);
    for (std::size_t i = 0; i < n; ++i) active[i] = i;
    std::size_t negatives = 0;
    while (!active.empty()) {
        std::size_t p = active[0], r = active[0], s = active[0];
        double diag = 0.0, off = 0.0;
        for (std::size_t ii = 0; ii < active.size(); ++ii) {
            const std::size_t i = active[ii];
            if (std::abs(at(i, i)) > diag) diag = std::abs(at(i, i)), p = i;
            for (std::size_t jj = ii + 1; jj < active.size(); ++jj) {
                const std::size_t j = active[jj];
                if (std::abs(at(i, j)) > off) off = std::abs(at(i, j)), r = i, s = j;
            }
        }
        if (diag == 0.0 && off == 0.0) break; // remaining block is zero: no negatives
        if (diag >= alpha * off) {
            const double d = at(p, p);
            if (d < 0) ++negatives;
            std::erase(active, p);
            for (std::size_t i : active)
                for (std::size_t j : active) at(i, j) -= at(i, p) * at(p, j) / d;
        } else {
            // |a_rs| dominates both diagonals, so det < 0: one negative, one positive.
            const double arr = at(r, r), ass = at(s, s), ars = at(r, s);
            const double det = arr * ass - ars * ars;
            ++negatives;
            std::erase(active, r);
            std::erase(active, s);
            for (std::size_t i : active)
                for (std::size_t j : active)
                    at(i, j) -= (at(i, r) * (ass * at(r, j) - ars * at(s, j)) +
                                 at(i, s) * (arr * at(s, j) - ars * at(r, j))) / det;
        }
    }
    return negatives;
}

/// All eigenvalues of a symmetric matrix by bisection on count_below,
/// ascending, to absolute width `tol`.
inline std::vector<double> bisection_eigenvalues(const spectralgof::Matrix& a, double tol = 1e-10) {
    const std::size_t n = a.size();
    double radius = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j) r += std::abs(a(i, j));
        radius = std::max(radius, r);
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < n; ++k) {
        double lo = -radius - 1.0, hi = radius + 1.0;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(a, mid) > k)
                hi = mid;
            else
                lo = mid;
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

/// Eigenvalues of the symmetric normalized Laplacian I - D^-1/2 A D^-1/2 of
/// an undirected graph without isolated nodes.
inline std::vector<double> normalized_laplacian_eigenvalues(const spectralgof::Graph& g) {
    const std::size_t n = g.node_count();
    const auto deg = g.degrees();
    spectralgof::Matrix m = spectralgof::Matrix::identity(n);
    for (const auto& e : g.edges()) {
        const double v = -e.w / std::sqrt(deg[e.u] * deg[e.v]);
        m(e.u, e.v) = v;
        m(e.v, e.u) = v;
    }
    return bisection_eigenvalues(m, 1e-12);
}

/// Brute-force type-7 quantile straight from the definition.
inline double quantile_type7(std::vector<double> xs, double q) {
    std::sort(xs.begin(), xs.end());
    const double rank = q * static_cast<double>(xs.size() - 1) + 1.0;
    const auto below = static_cast<std::size_t>(rank);
    if (below >= xs.size()) return xs.back();
    return xs[below - 1] + (rank - static_cast<double>(below)) * (xs[below] - xs[below - 1]);
}

} // namespace oracle
