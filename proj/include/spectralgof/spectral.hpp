#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "spectralgof/errors.hpp"
#include "spectralgof/graph.hpp"
#include "spectralgof/symmetric_eigen.hpp"

namespace spectralgof {

/// Laplacian eigenvalues in ascending order.
struct Spectrum {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double sum() const noexcept { return std::accumulate(values.begin(), values.end(), 0.0); }
    friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Spectrum divided by its sum; ascending and summing to one.
struct NormalizedSpectrum {
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    friend bool operator==(const NormalizedSpectrum&, const NormalizedSpectrum&) = default;
};

inline Spectrum laplacian_spectrum(const LaplacianMatrix& m) {
    return Spectrum{symmetric_eigenvalues(m.matrix())};
}

inline Spectrum laplacian_spectrum(const Graph& g) { return laplacian_spectrum(build_laplacian(g)); }

/// Tolerance for treating an eigenvalue as zero: n * 1e-12 * max(|lambda|),
/// with 1 substituted when every eigenvalue is zero. Used for invariant
/// checks only; spectra are never modified with it.
inline double zero_tolerance(const Spectrum& s) {
    double largest = 0.0;
    for (double v : s.values) largest = std::max(largest, std::abs(v));
    if (largest == 0.0) largest = 1.0;
    return static_cast<double>(s.size()) * 1e-12 * largest;
}

inline std::size_t count_zero_eigenvalues(const Spectrum& s) {
    const double tol = zero_tolerance(s);
    return static_cast<std::size_t>(
        std::count_if(s.values.begin(), s.values.end(), [tol](double v) { return v < tol; }));
}

inline NormalizedSpectrum normalize_spectrum(const Spectrum& s) {
    const double total = s.sum();
    if (!(total > 0.0))
        throw DataError("cannot normalize spectrum: eigenvalues sum to zero (graph has no edges)");
    NormalizedSpectrum out;
    out.values.reserve(s.size());
    for (double v : s.values) out.values.push_back(v / total);
    return out;
}

/// Euclidean spectral distance between two normalized spectra, paired by rank.
inline double esd(const NormalizedSpectrum& a, const NormalizedSpectrum& b) {
    if (a.size() != b.size())
        throw DataError("spectrum length mismatch: " + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + " (models must generate graphs with the "
                        "observed node count)");
    double ss = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        ss += d * d;
    }
    return std::sqrt(ss);
}

/// ESD from obs to every member of sims, in member order.
inline std::vector<double> esd_sample(const NormalizedSpectrum& obs,
                                      std::span<const NormalizedSpectrum> sims) {
    std::vector<double> out;
    out.reserve(sims.size());
    for (const auto& s : sims) out.push_back(esd(obs, s));
    return out;
}

inline double mean(std::span<const double> xs) {
    if (xs.empty()) throw DataError("empty ensemble");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Sample quantile with linear interpolation between order statistics at
/// (1-based) rank q(N-1)+1.
inline double quantile(std::span<const double> xs, double q) {
    if (xs.empty()) throw DataError("empty ensemble");
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile probability must lie in [0, 1]");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline double mean_esd(const NormalizedSpectrum& obs, std::span<const NormalizedSpectrum> sims) {
    if (sims.empty()) throw DataError("empty ensemble");
    return mean(esd_sample(obs, sims));
}

inline double esd_quantile(const NormalizedSpectrum& obs, std::span<const NormalizedSpectrum> sims,
                           double q) {
    if (sims.empty()) throw DataError("empty ensemble");
    return quantile(esd_sample(obs, sims), q);
}

} // namespace spectralgof
