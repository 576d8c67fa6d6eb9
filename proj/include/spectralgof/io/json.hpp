#pragma once

// JSON and CSV forms of model specs, SGOF reports and sweep results.
// Documents carry "schema" and "schema_version" fields matching the files
// under schemas/.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spectralgof/errors.hpp"
#include "spectralgof/io/edge_list.hpp"
#include "spectralgof/models.hpp"
#include "spectralgof/sgof.hpp"
#include "spectralgof/spectral.hpp"
#include "spectralgof/sweep.hpp"
#include "spectralgof/version.hpp"

namespace spectralgof::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Model specs

/// Parses `family:key=value,key=value`. The key `n` sets the node count;
/// for fixed_graph the key `file` names an edge-list file to load.
/// Unknown keys are rejected.
inline ModelSpec parse_model_spec(std::string_view text, const ParseOptions& opts = {}) {
    ModelSpec spec;
    const auto colon = text.find(':');
    spec.family = parse_family(text.substr(0, colon));
    if (colon == std::string_view::npos) return spec;

    const auto allowed = family_parameters(spec.family);
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos)
            throw ParameterError("model parameter '" + std::string(item) + "' is not key=value");
        const std::string key(item.substr(0, eq));
        const std::string_view value = item.substr(eq + 1);

        if (spec.family == Family::fixed_graph && key == "file") {
            auto g = load_graph(std::string(value), opts);
            auto* und = std::get_if<Graph>(&g);
            if (!und) throw DataError("fixed_graph file '" + std::string(value) + "' is directed");
            spec.n = und->node_count();
            spec.graph = std::make_shared<const Graph>(std::move(*und));
            spec.graph_source = std::string(value);
            continue;
        }
        const auto parsed = detail::parse_real(value);
        if (!parsed) throw ParameterError("model parameter '" + key + "' has non-numeric value '" + std::string(value) + "'");
        if (key == "n") {
            if (!(*parsed >= 1.0) || *parsed != static_cast<double>(static_cast<std::size_t>(*parsed)))
                throw ParameterError("model parameter n must be a positive integer");
            spec.n = static_cast<std::size_t>(*parsed);
            continue;
        }
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ParameterError(std::string(family_name(spec.family)) + " does not take parameter '" + key + "'");
        spec.params[key] = *parsed;
    }
    return spec;
}

inline std::string format_model_spec(const ModelSpec& spec) {
    std::string out(family_name(spec.family));
    std::vector<std::string> items;
    if (spec.n) items.push_back("n=" + std::to_string(spec.n));
    for (const auto& [k, v] : spec.params) items.push_back(k + "=" + detail::format_real(v));
    if (!spec.graph_source.empty()) items.push_back("file=" + spec.graph_source);
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? "," : ":") + items[i];
    return out;
}

inline Json model_spec_to_json(const ModelSpec& spec) {
    Json j;
    j["family"] = family_name(spec.family);
    j["n"] = spec.n;
    j["params"] = Json::object();
    for (const auto& [k, v] : spec.params) j["params"][k] = v;
    if (spec.family == Family::weight_shuffle) j["weights"] = spec.weights;
    if (spec.family == Family::fixed_graph) {
        Json g;
        g["nodes"] = spec.graph ? spec.graph->node_count() : 0;
        g["edges"] = spec.graph ? spec.graph->edge_count() : 0;
        g["file"] = spec.graph_source.empty() ? Json(nullptr) : Json(spec.graph_source);
        j["graph"] = g;
    }
    return j;
}

inline ModelSpec model_spec_from_json(const Json& j, const ParseOptions& opts = {}) {
    try {
        ModelSpec spec;
        spec.family = parse_family(j.at("family").get<std::string>());
        if (j.contains("n")) spec.n = j.at("n").get<std::size_t>();
        const auto allowed = family_parameters(spec.family);
        if (j.contains("params"))
            for (const auto& [k, v] : j.at("params").items()) {
                if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                    throw ParameterError(std::string(family_name(spec.family)) + " does not take parameter '" + k + "'");
                spec.params[k] = v.get<double>();
            }
        if (j.contains("weights")) spec.weights = j.at("weights").get<std::vector<double>>();
        if (j.contains("graph") && j["graph"].contains("file") && j["graph"]["file"].is_string()) {
            const auto file = j["graph"]["file"].get<std::string>();
            auto parsed = load_graph(file, opts);
            auto* g = std::get_if<Graph>(&parsed);
            if (!g) throw DataError("fixed_graph file '" + file + "' is directed");
            if (spec.n == 0) spec.n = g->node_count();
            spec.graph = std::make_shared<const Graph>(std::move(*g));
            spec.graph_source = file;
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("invalid model spec JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Spectra

inline Json spectrum_to_json(const Spectrum& s, std::optional<NormalizedSpectrum> normalized, bool directed) {
    Json j;
    j["schema"] = "spectralgof/spectrum";
    j["schema_version"] = kSchemaVersion;
    j["toolkit_version"] = kVersion;
    j["laplacian"] = directed ? "directed" : "combinatorial";
    j["nodes"] = s.size();
    j["spectrum"] = s.values;
    j["normalized"] = normalized ? Json(normalized->values) : Json(nullptr);
    return j;
}

// ---------------------------------------------------------------------------
// Reports

inline Json provenance_to_json(const EnsembleProvenance& p, std::size_t n_sim) {
    Json j;
    j["n_sim"] = n_sim;
    j["source"] = p.source;
    j["seed"] = p.seed ? Json(*p.seed) : Json(nullptr);
    j["model"] = p.model ? model_spec_to_json(*p.model) : Json(nullptr);
    return j;
}

inline Json band_to_json(const Band& b) { return Json{{"low", b.low}, {"high", b.high}}; }

/// SgofReport as JSON. Band convention: `low` is SGOF at the 95th ESD
/// percentile, `high` at the 5th.
inline Json report_to_json(const SgofReport& r) {
    Json j;
    j["schema"] = "spectralgof/sgof-report";
    j["schema_version"] = kSchemaVersion;
    j["toolkit_version"] = kVersion;
    j["sgof"] = Json{{"mean", r.sgof_mean},
                     {"fitted_band", band_to_json(r.fitted_band)},
                     {"null_band", band_to_json(r.null_band)}};
    j["mean_esd_fitted"] = r.mean_esd_fitted;
    j["mean_esd_null"] = r.mean_esd_null;
    j["fresh_null_band"] = r.fresh_null_band;
    j["fitted"] = provenance_to_json(r.fitted, r.n_sim_fitted);
    j["null"] = provenance_to_json(r.null, r.n_sim_null);
    return j;
}

inline std::string decomposition_to_csv(const ErrorDecomposition& d) {
    std::string out = "index,observed,null,fitted,explained,remaining,new\n";
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto& r = d.rows[i];
        out += std::to_string(i + 1);
        for (double v : {r.observed, r.null, r.fitted, r.explained, r.remaining, r.new_error})
            out += "," + detail::format_real(v);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sweeps

inline std::string axis_value_text(const AxisValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    return detail::format_real(std::get<double>(v));
}

inline Json axis_value_to_json(const AxisValue& v) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    return std::get<double>(v);
}

struct SweepConfig {
    SweepGrid grid;
    NullKind null_kind = NullKind::gnm;
};

/// Sweep configuration document:
///   {"family": "...", "params": {...}, "n": optional,
///    "axes": [{"name": "k", "values": [...]}, ...],
///    "n_sim": optional, "mode": "explore"|"publish", "seed": 1, "null": "gnm"}
inline SweepConfig sweep_config_from_json(const Json& j, const ParseOptions& opts = {}) {
    try {
        SweepConfig cfg;
        Json model{{"family", j.at("family")}};
        if (j.contains("params")) model["params"] = j["params"];
        if (j.contains("n")) model["n"] = j["n"];
        if (j.contains("weights")) model["weights"] = j["weights"];
        if (j.contains("graph")) model["graph"] = j["graph"];
        cfg.grid.base = model_spec_from_json(model, opts);

        for (const auto& a : j.at("axes")) {
            SweepAxis axis;
            axis.name = a.at("name").get<std::string>();
            for (const auto& v : a.at("values")) {
                if (v.is_string())
                    axis.values.emplace_back(v.get<std::string>());
                else
                    axis.values.emplace_back(v.get<double>());
            }
            cfg.grid.axes.push_back(std::move(axis));
        }
        const std::string mode = j.value("mode", "explore");
        if (mode != "explore" && mode != "publish") throw ParameterError("sweep mode must be explore or publish");
        cfg.grid.n_sim = j.contains("n_sim") ? j["n_sim"].get<std::size_t>()
                                             : (mode == "publish" ? kPublishSimulations : kExploreSimulations);
        cfg.grid.seed = j.value("seed", std::uint64_t{1});
        cfg.null_kind = parse_null_kind(j.value("null", std::string("gnm")));
        validate_grid(cfg.grid);
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("invalid sweep config: ") + e.what());
    }
}

inline Json sweep_to_json(const SweepResult& r) {
    Json j;
    j["schema"] = "spectralgof/sweep-result";
    j["schema_version"] = kSchemaVersion;
    j["toolkit_version"] = kVersion;
    j["n_sim"] = r.n_sim;
    j["seed"] = r.seed;
    j["shared_null"] = r.shared_null;
    j["null"] = provenance_to_json(r.null, r.n_sim);
    Json axes = Json::array();
    for (const auto& a : r.axes) {
        Json vals = Json::array();
        for (const auto& v : a.values) vals.push_back(axis_value_to_json(v));
        axes.push_back(Json{{"name", a.name}, {"values", vals}});
    }
    j["axes"] = axes;
    Json cells = Json::array();
    for (std::size_t c = 0; c < r.cells.size(); ++c) {
        const auto& cell = r.cells[c];
        Json jc;
        jc["index"] = c;
        Json vals = Json::array();
        for (const auto& v : cell.values) vals.push_back(axis_value_to_json(v));
        jc["values"] = vals;
        jc["status"] = cell.ok() ? "ok" : "error";
        if (cell.ok()) {
            jc["sgof_mean"] = cell.report->sgof_mean;
            jc["fitted_band"] = band_to_json(cell.report->fitted_band);
            jc["null_band"] = band_to_json(cell.report->null_band);
            jc["mean_esd_fitted"] = cell.report->mean_esd_fitted;
            jc["mean_esd_null"] = cell.report->mean_esd_null;
            jc["seed"] = cell.report->fitted.seed ? Json(*cell.report->fitted.seed) : Json(nullptr);
        } else {
            jc["error"] = cell.error;
        }
        cells.push_back(jc);
    }
    j["cells"] = cells;
    j["best_cell"] = r.best_cell;
    return j;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

/// One row per cell in row-major order: axis values, sgof_mean,
/// band_low, band_high (fitted band), status, message.
inline std::string emit_grid_csv(const SweepResult& r) {
    std::string out;
    for (const auto& a : r.axes) out += detail::csv_field(a.name) + ",";
    out += "sgof_mean,band_low,band_high,status,message\n";
    for (const auto& cell : r.cells) {
        for (const auto& v : cell.values) out += detail::csv_field(axis_value_text(v)) + ",";
        if (cell.ok()) {
            out += detail::format_real(cell.report->sgof_mean) + "," +
                   detail::format_real(cell.report->fitted_band.low) + "," +
                   detail::format_real(cell.report->fitted_band.high) + ",ok,\n";
        } else {
            out += ",,,error," + detail::csv_field(cell.error) + "\n";
        }
    }
    return out;
}

} // namespace spectralgof::io
