#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spectralgof/errors.hpp"
#include "spectralgof/graph.hpp"
#include "spectralgof/models.hpp"
#include "spectralgof/rng.hpp"
#include "spectralgof/sgof.hpp"

namespace spectralgof {

/// A swept parameter value. Numeric for ordinary parameters; the special
/// axis name "family" takes family names.
using AxisValue = std::variant<double, std::string>;

struct SweepAxis {
    std::string name;
    std::vector<AxisValue> values;
};

inline constexpr const char* kFamilyAxis = "family";

struct SweepGrid {
    /// Family and fixed parameters shared by every cell. n = 0 means
    /// "use the observed node count".
    ModelSpec base;
    std::vector<SweepAxis> axes;
    std::size_t n_sim = kExploreSimulations;
    std::uint64_t seed = 1;

    std::size_t cell_count() const {
        std::size_t c = 1;
        for (const auto& a : axes) c *= a.values.size();
        return c;
    }

    /// Per-axis value indices of a cell, row-major (last axis fastest).
    std::vector<std::size_t> coordinates(std::size_t cell) const {
        std::vector<std::size_t> idx(axes.size());
        for (std::size_t a = axes.size(); a-- > 0;) {
            idx[a] = cell % axes[a].values.size();
            cell /= axes[a].values.size();
        }
        return idx;
    }
};

struct SweepCell {
    std::vector<AxisValue> values;
    std::optional<SgofReport> report;
    std::string error;

    bool ok() const noexcept { return report.has_value(); }
};

struct SweepResult {
    std::vector<SweepAxis> axes;
    std::vector<SweepCell> cells;
    std::size_t best_cell = 0;
    std::size_t n_sim = 0;
    std::uint64_t seed = 0;
    /// One null ensemble is drawn per sweep and shared by every cell.
    bool shared_null = true;
    EnsembleProvenance null;

    const SweepCell& best() const { return cells.at(best_cell); }
};

// Every cell draws from the same seed (common random numbers), so cells
// differ through their parameters rather than through sampling luck.
inline std::uint64_t sweep_cell_seed(std::uint64_t base) { return derive_seed(base, 0); }

inline std::uint64_t sweep_null_seed(std::uint64_t base) { return derive_seed(base, ~std::uint64_t{0}); }

inline void validate_grid(const SweepGrid& grid) {
    if (grid.axes.empty()) throw ParameterError("sweep grid needs at least one axis");
    if (grid.n_sim == 0) throw ParameterError("sweep n_sim must be at least 1");
    for (const auto& axis : grid.axes) {
        if (axis.values.empty()) throw ParameterError("sweep axis '" + axis.name + "' has no values");
        const bool family_axis = axis.name == kFamilyAxis;
        for (const auto& v : axis.values) {
            if (family_axis && !std::holds_alternative<std::string>(v))
                throw ParameterError("sweep axis 'family' takes family names");
            if (!family_axis && !std::holds_alternative<double>(v))
                throw ParameterError("sweep axis '" + axis.name + "' takes numeric values");
            if (family_axis) parse_family(std::get<std::string>(v));
        }
    }
}

/// Model of one cell: the grid base with that cell's axis values applied.
inline ModelSpec cell_spec(const SweepGrid& grid, std::size_t cell, std::size_t observed_nodes) {
    ModelSpec spec = grid.base;
    if (spec.n == 0) spec.n = observed_nodes;
    const auto idx = grid.coordinates(cell);
    for (std::size_t a = 0; a < grid.axes.size(); ++a) {
        const auto& v = grid.axes[a].values[idx[a]];
        if (grid.axes[a].name == kFamilyAxis)
            spec.family = parse_family(std::get<std::string>(v));
        else
            spec.params[grid.axes[a].name] = std::get<double>(v);
    }
    return spec;
}

/// Exhaustive SGOF evaluation over a parameter grid. Cell failures are
/// recorded in the cell and skipped for best-cell selection.
inline SweepResult run_sweep(const Graph& observed, const SweepGrid& grid, const ModelSpec& null_spec) {
    validate_grid(grid);
    const auto obs = observed_spectrum(observed);

    SweepResult result;
    result.axes = grid.axes;
    result.n_sim = grid.n_sim;
    result.seed = grid.seed;
    const std::uint64_t null_seed = sweep_null_seed(grid.seed);
    const auto null_spectra = ensemble_spectra(generate_ensemble(null_spec, grid.n_sim, null_seed),
                                               observed.node_count(), "null");
    result.null = {"model", null_spec, null_seed};

    const std::size_t cells = grid.cell_count();
    result.cells.resize(cells);
    std::optional<std::size_t> best;
    for (std::size_t c = 0; c < cells; ++c) {
        SweepCell& cell = result.cells[c];
        const auto idx = grid.coordinates(c);
        for (std::size_t a = 0; a < grid.axes.size(); ++a) cell.values.push_back(grid.axes[a].values[idx[a]]);
        try {
            const ModelSpec spec = cell_spec(grid, c, observed.node_count());
            const std::uint64_t seed = sweep_cell_seed(grid.seed);
            const auto fitted = ensemble_spectra(generate_ensemble(spec, grid.n_sim, seed),
                                                 observed.node_count(), "fitted");
            SgofReport report = compute_sgof(obs, fitted, null_spectra);
            report.fitted = {"model", spec, seed};
            report.null = result.null;
            cell.report = std::move(report);
        } catch (const std::exception& e) {
            cell.error = e.what();
            continue;
        }
        if (!best || cell.report->sgof_mean > result.cells[*best].report->sgof_mean) best = c;
    }
    if (!best) throw DataError("every sweep cell failed; first error: " + result.cells.front().error);
    result.best_cell = *best;
    return result;
}

} // namespace spectralgof
