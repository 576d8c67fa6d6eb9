#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectralgof/errors.hpp"
#include "spectralgof/graph.hpp"
#include "spectralgof/models.hpp"
#include "spectralgof/parallel.hpp"
#include "spectralgof/spectral.hpp"

namespace spectralgof {

/// Ensemble sizes recommended for exploratory work and for published results.
inline constexpr std::size_t kExploreSimulations = 100;
inline constexpr std::size_t kPublishSimulations = 1000;

/// SGOF interval. `low` comes from the 95th ESD percentile, `high` from
/// the 5th, because SGOF decreases as ESD grows.
struct Band {
    double low = 0.0;
    double high = 0.0;

    double width() const noexcept { return high - low; }
    bool contains(double x) const noexcept { return low <= x && x <= high; }
    friend bool operator==(const Band&, const Band&) = default;
};

/// Where an ensemble came from; informational only.
struct EnsembleProvenance {
    std::string source;
    std::optional<ModelSpec> model;
    std::optional<std::uint64_t> seed;
};

struct SgofReport {
    double sgof_mean = 0.0;
    Band fitted_band;
    Band null_band;
    double mean_esd_fitted = 0.0;
    double mean_esd_null = 0.0;
    std::size_t n_sim_fitted = 0;
    std::size_t n_sim_null = 0;
    /// True when the null band was computed from a second, independent
    /// null ensemble instead of the one that sets the denominator.
    bool fresh_null_band = false;
    EnsembleProvenance fitted;
    EnsembleProvenance null;
};

/// Normalized spectra of every ensemble member, in member order. `role`
/// names the ensemble in diagnostics.
inline std::vector<NormalizedSpectrum> ensemble_spectra(std::span<const Graph> graphs,
                                                        std::size_t expected_nodes,
                                                        const std::string& role) {
    if (graphs.empty()) throw DataError(role + " ensemble is empty");
    for (std::size_t k = 0; k < graphs.size(); ++k) {
        if (graphs[k].node_count() != expected_nodes)
            throw DataError(role + " ensemble member " + std::to_string(k) + " has " +
                            std::to_string(graphs[k].node_count()) + " nodes; observed graph has " +
                            std::to_string(expected_nodes));
        if (graphs[k].edge_count() == 0)
            throw DataError(role + " ensemble member " + std::to_string(k) +
                            " has no edges; its spectrum cannot be normalized");
    }
    std::vector<NormalizedSpectrum> out(graphs.size());
    parallel_for(graphs.size(),
                 [&](std::size_t k) { out[k] = normalize_spectrum(laplacian_spectrum(graphs[k])); });
    return out;
}

inline NormalizedSpectrum observed_spectrum(const Graph& observed) {
    if (observed.edge_count() == 0) throw DataError("observed graph has no edges");
    return normalize_spectrum(laplacian_spectrum(observed));
}

/// SGOF from precomputed normalized spectra. `null_band_sample`, when
/// given, supplies the numerator ESDs of the null band; otherwise the
/// denominator ensemble is reused.
inline SgofReport compute_sgof(const NormalizedSpectrum& observed,
                               std::span<const NormalizedSpectrum> fitted,
                               std::span<const NormalizedSpectrum> null,
                               std::span<const NormalizedSpectrum> null_band_sample = {}) {
    if (fitted.empty()) throw DataError("fitted ensemble is empty");
    if (null.empty()) throw DataError("null ensemble is empty");
    const auto fitted_esd = esd_sample(observed, fitted);
    const auto null_esd = esd_sample(observed, null);

    SgofReport r;
    r.n_sim_fitted = fitted.size();
    r.n_sim_null = null.size();
    r.mean_esd_fitted = mean(fitted_esd);
    r.mean_esd_null = mean(null_esd);
    if (!(r.mean_esd_null > 0.0))
        throw NumericalError("null ensemble reproduces the observed spectrum exactly; SGOF is undefined");

    const double denom = r.mean_esd_null;
    r.sgof_mean = 1.0 - r.mean_esd_fitted / denom;
    r.fitted_band = {1.0 - quantile(fitted_esd, 0.95) / denom, 1.0 - quantile(fitted_esd, 0.05) / denom};

    std::vector<double> band_esd = null_esd;
    if (!null_band_sample.empty()) {
        band_esd = esd_sample(observed, null_band_sample);
        r.fresh_null_band = true;
    }
    r.null_band = {1.0 - quantile(band_esd, 0.95) / denom, 1.0 - quantile(band_esd, 0.05) / denom};
    return r;
}

/// SGOF of a fitted ensemble against a null ensemble for an observed graph.
inline SgofReport compute_sgof(const Graph& observed, std::span<const Graph> fitted,
                               std::span<const Graph> null) {
    const auto obs = observed_spectrum(observed);
    const auto f = ensemble_spectra(fitted, observed.node_count(), "fitted");
    const auto z = ensemble_spectra(null, observed.node_count(), "null");
    return compute_sgof(obs, f, z);
}

/// Index of the member whose ESD to obs is closest to the ensemble mean
/// ESD; ties go to the lowest index.
inline std::size_t representative_index(const NormalizedSpectrum& obs,
                                        std::span<const NormalizedSpectrum> sims) {
    if (sims.empty()) throw DataError("empty ensemble");
    const auto sample = esd_sample(obs, sims);
    const double m = mean(sample);
    std::size_t best = 0;
    for (std::size_t k = 1; k < sample.size(); ++k)
        if (std::abs(sample[k] - m) < std::abs(sample[best] - m)) best = k;
    return best;
}

inline NormalizedSpectrum representative_spectrum(const NormalizedSpectrum& obs,
                                                  std::span<const NormalizedSpectrum> sims) {
    return sims[representative_index(obs, sims)];
}

/// Per-eigenvalue split of fitted-model error relative to the null.
struct ErrorComponents {
    double observed = 0.0;
    double null = 0.0;
    double fitted = 0.0;
    double explained = 0.0;
    double remaining = 0.0;
    double new_error = 0.0;
};

struct ErrorDecomposition {
    std::vector<ErrorComponents> rows;

    std::size_t size() const noexcept { return rows.size(); }
};

/// Classifies one index. With o observed, u null, f fitted:
///   f between u and o  -> explained |u-f|, remaining |f-o|
///   f past o (opposite side from u) -> explained |u-o|, new |f-o|
///   f past u (away from o) -> remaining |u-o|, new |f-o| - |u-o|
inline ErrorComponents decompose_error(double o, double u, double f) {
    ErrorComponents c{o, u, f, 0.0, 0.0, 0.0};
    const double lo = std::min(u, o), hi = std::max(u, o);
    if (f >= lo && f <= hi) {
        c.explained = std::abs(u - f);
        c.remaining = std::abs(f - o);
    } else if ((f - o) * (u - o) <= 0.0) {
        c.explained = std::abs(u - o);
        c.new_error = std::abs(f - o);
    } else {
        c.remaining = std::abs(u - o);
        c.new_error = std::abs(f - o) - std::abs(u - o);
    }
    return c;
}

inline ErrorDecomposition error_decomposition(const NormalizedSpectrum& obs,
                                              const NormalizedSpectrum& null_repr,
                                              const NormalizedSpectrum& fitted_repr) {
    if (obs.size() != null_repr.size() || obs.size() != fitted_repr.size())
        throw DataError("error decomposition needs spectra of equal length");
    ErrorDecomposition d;
    d.rows.reserve(obs.size());
    for (std::size_t i = 0; i < obs.size(); ++i)
        d.rows.push_back(decompose_error(obs.values[i], null_repr.values[i], fitted_repr.values[i]));
    return d;
}

} // namespace spectralgof
