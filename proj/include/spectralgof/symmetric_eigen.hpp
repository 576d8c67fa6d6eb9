#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "spectralgof/errors.hpp"
#include "spectralgof/matrix.hpp"

namespace spectralgof {

/// Maximum implicit QL sweeps spent on any single eigenvalue.
inline constexpr int kMaxQlSweeps = 30;

/// Symmetric tridiagonal matrix: diagonal d, off-diagonal e where e[i]
/// couples rows i and i+1 (e.back() is unused and kept at zero).
struct Tridiagonal {
    std::vector<double> diagonal;
    std::vector<double> offdiagonal;
};

/// Householder reduction of a symmetric matrix to tridiagonal form.
/// Only the lower triangle plus diagonal of the input is referenced via the
/// working copy; no transformation matrix is accumulated.
inline Tridiagonal householder_tridiagonalize(Matrix a) {
    const std::size_t n = a.size();
    Tridiagonal t{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    if (n == 0) return t;

    std::vector<double> v(n), p(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t lo = k + 1;
        double scale = 0.0;
        for (std::size_t i = lo; i < n; ++i) scale += std::abs(a(i, k));
        t.diagonal[k] = a(k, k);
        if (scale == 0.0) {
            t.offdiagonal[k] = 0.0;
            continue;
        }
        // Scaled column avoids overflow/underflow in the norm.
        double norm2 = 0.0;
        for (std::size_t i = lo; i < n; ++i) {
            v[i] = a(i, k) / scale;
            norm2 += v[i] * v[i];
        }
        const double norm = std::sqrt(norm2);
        const double alpha = v[lo] > 0 ? -norm : norm;
        v[lo] -= alpha;
        const double vtv = norm2 - 2.0 * alpha * (v[lo] + alpha) + alpha * alpha;
        t.offdiagonal[k] = alpha * scale;
        if (vtv == 0.0) continue;
        const double beta = 2.0 / vtv;

        // p = beta * A' v over the trailing block (lower triangle is authoritative).
        for (std::size_t i = lo; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = lo; j <= i; ++j) s += a(i, j) * v[j];
            for (std::size_t j = i + 1; j < n; ++j) s += a(j, i) * v[j];
            p[i] = beta * s;
        }
        double vtp = 0.0;
        for (std::size_t i = lo; i < n; ++i) vtp += v[i] * p[i];
        const double kappa = 0.5 * beta * vtp;
        for (std::size_t i = lo; i < n; ++i) p[i] -= kappa * v[i];
        for (std::size_t i = lo; i < n; ++i) {
            auto row = a.row(i);
            const double vi = v[i], pi = p[i];
            for (std::size_t j = lo; j <= i; ++j) row[j] -= vi * p[j] + pi * v[j];
        }
    }
    if (n >= 2) {
        t.diagonal[n - 2] = a(n - 2, n - 2);
        t.offdiagonal[n - 2] = a(n - 1, n - 2);
    }
    t.diagonal[n - 1] = a(n - 1, n - 1);
    t.offdiagonal[n - 1] = 0.0;
    return t;
}

/// Eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL.
/// Throws NumericalError if an eigenvalue needs more than kMaxQlSweeps sweeps.
/// Result is unsorted.
inline std::vector<double> tridiagonal_eigenvalues(Tridiagonal t) {
    auto& d = t.diagonal;
    auto& e = t.offdiagonal;
    const std::size_t n = d.size();
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // Absolute deflation floor. The relative test alone never fires when
    // both neighbouring diagonal entries are exactly zero (isolated nodes).
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(d[i]) + std::abs(e[i]));
    const double floor = eps * norm;

    for (std::size_t l = 0; l < n; ++l) {
        int sweeps = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor) break;
            }
            if (m == l) break;
            if (sweeps++ == kMaxQlSweeps)
                throw NumericalError("symmetric eigensolver failed to converge for eigenvalue " +
                                     std::to_string(l));
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool deflated = false;
            for (std::size_t i = m; i-- > l;) {
                const double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (deflated) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
    return d;
}

/// All eigenvalues of a dense symmetric matrix, ascending.
inline std::vector<double> symmetric_eigenvalues(const Matrix& a) {
    auto values = tridiagonal_eigenvalues(householder_tridiagonalize(a));
    std::sort(values.begin(), values.end());
    return values;
}

} // namespace spectralgof
