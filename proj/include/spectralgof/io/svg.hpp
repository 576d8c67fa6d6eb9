#pragma once

// Standalone SVG documents for the error-decomposition plot and the sweep
// heatmap. Every graphical element carries data-* attributes with the
// underlying values so the output can be checked without rendering.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <string_view>

#include "spectralgof/errors.hpp"
#include "spectralgof/io/json.hpp"
#include "spectralgof/sgof.hpp"
#include "spectralgof/sweep.hpp"

namespace spectralgof::io {

namespace svg {

inline constexpr const char* kExplainedColor = "#8fd18f";
inline constexpr const char* kRemainingColor = "#3b6fc4";
inline constexpr const char* kNewColor = "#d6402f";
inline constexpr const char* kObservedColor = "#111111";
inline constexpr const char* kNullColor = "#e08a1e";

/// Heatmap colour scale endpoints (linear interpolation per RGB channel).
inline constexpr int kLowRgb[3] = {255, 247, 188};
inline constexpr int kHighRgb[3] = {8, 48, 107};

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string header(double width, double height) {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           num(width) + "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " + num(height) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n<rect x=\"0\" y=\"0\" width=\"" + num(width) +
           "\" height=\"" + num(height) + "\" fill=\"#ffffff\"/>\n";
}

inline std::string text(double x, double y, std::string_view body, std::string_view extra = "") {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\"" + (extra.empty() ? "" : " ") + std::string(extra) +
           ">" + escape(body) + "</text>\n";
}

inline std::string heat_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    char buf[8];
    int c[3];
    for (int i = 0; i < 3; ++i) c[i] = static_cast<int>(std::lround(kLowRgb[i] + t * (kHighRgb[i] - kLowRgb[i])));
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf;
}

inline double sign_toward(double from, double to, double fallback_to) {
    if (to != from) return to > from ? 1.0 : -1.0;
    return fallback_to >= from ? 1.0 : -1.0;
}

} // namespace svg

/// Error plot: observed and representative-null spectra as points, and per
/// eigenvalue a group of three bars spanning explained (green), remaining
/// (blue) and new (red) error in normalized-eigenvalue units.
inline std::string emit_error_plot(const ErrorDecomposition& d) {
    const double width = 900, height = 520;
    const double left = 80, right = 170, top = 40, bottom = 60;
    const double pw = width - left - right, ph = height - top - bottom;
    const std::size_t n = d.size();

    double ymax = 0.0;
    for (const auto& r : d.rows) ymax = std::max({ymax, r.observed, r.null, r.fitted});
    if (ymax <= 0.0) ymax = 1.0;
    ymax *= 1.05;
    const double slot = n ? pw / static_cast<double>(n) : pw;
    auto xc = [&](std::size_t i) { return left + (static_cast<double>(i) + 0.5) * slot; };
    auto yc = [&](double v) { return top + ph - (v / ymax) * ph; };
    const double bar_w = std::max(0.5, slot * 0.6);

    std::string s = svg::header(width, height);
    s += svg::text(left, 24, "Spectral error decomposition", "font-size=\"15\"");
    s += "<line x1=\"" + svg::num(left) + "\" y1=\"" + svg::num(top + ph) + "\" x2=\"" + svg::num(left + pw) +
         "\" y2=\"" + svg::num(top + ph) + "\" stroke=\"#000000\"/>\n";
    s += "<line x1=\"" + svg::num(left) + "\" y1=\"" + svg::num(top) + "\" x2=\"" + svg::num(left) + "\" y2=\"" +
         svg::num(top + ph) + "\" stroke=\"#000000\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double v = ymax * t / 4.0;
        char lbl[32];
        std::snprintf(lbl, sizeof lbl, "%.4g", v);
        s += svg::text(left - 8, yc(v) + 4, lbl, "text-anchor=\"end\"");
    }
    for (std::size_t i : {std::size_t{0}, n / 2, n ? n - 1 : 0})
        if (i < n) s += svg::text(xc(i), top + ph + 18, std::to_string(i + 1), "text-anchor=\"middle\"");
    s += svg::text(left + pw / 2, height - 16, "Eigenvalue index", "text-anchor=\"middle\"");
    s += svg::text(22, top + ph / 2, "Normalized eigenvalue",
                   "text-anchor=\"middle\" transform=\"rotate(-90 22 " + svg::num(top + ph / 2) + ")\"");

    auto bar = [&](const char* cls, const char* color, double lo, double hi, double value, std::size_t i) {
        if (lo > hi) std::swap(lo, hi);
        return "  <rect class=\"" + std::string(cls) + "\" x=\"" + svg::num(xc(i) - bar_w / 2) + "\" y=\"" +
               svg::num(yc(hi)) + "\" width=\"" + svg::num(bar_w) + "\" height=\"" + svg::num(yc(lo) - yc(hi)) +
               "\" fill=\"" + color + "\" data-value=\"" + detail::format_real(value) + "\"/>\n";
    };

    s += "<g class=\"bars\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = d.rows[i];
        const double toward_null = svg::sign_toward(r.observed, r.null, r.fitted);
        const double toward_fit = svg::sign_toward(r.observed, r.fitted, r.null);
        s += "<g class=\"bar-group\" data-index=\"" + std::to_string(i + 1) + "\">\n";
        s += bar("explained", svg::kExplainedColor, r.null - toward_null * r.explained, r.null, r.explained, i);
        s += bar("remaining", svg::kRemainingColor, r.observed, r.observed + toward_null * r.remaining, r.remaining, i);
        s += bar("new", svg::kNewColor, r.fitted - toward_fit * r.new_error, r.fitted, r.new_error, i);
        s += "</g>\n";
    }
    s += "</g>\n<g class=\"points\">\n";
    const double radius = std::clamp(slot * 0.3, 1.2, 4.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = d.rows[i];
        s += "  <circle class=\"observed\" cx=\"" + svg::num(xc(i)) + "\" cy=\"" + svg::num(yc(r.observed)) +
             "\" r=\"" + svg::num(radius) + "\" fill=\"" + svg::kObservedColor + "\"/>\n";
        s += "  <circle class=\"null\" cx=\"" + svg::num(xc(i)) + "\" cy=\"" + svg::num(yc(r.null)) + "\" r=\"" +
             svg::num(radius) + "\" fill=\"none\" stroke=\"" + svg::kNullColor + "\"/>\n";
    }
    s += "</g>\n<g class=\"legend\">\n";
    const double lx = left + pw + 20;
    struct Item {
        const char* label;
        const char* color;
        bool point;
    };
    const Item items[] = {{"Observed", svg::kObservedColor, true},
                          {"Null (representative)", svg::kNullColor, true},
                          {"Explained error", svg::kExplainedColor, false},
                          {"Remaining error", svg::kRemainingColor, false},
                          {"New error", svg::kNewColor, false}};
    double ly = top + 10;
    for (const auto& it : items) {
        if (it.point)
            s += "  <circle cx=\"" + svg::num(lx + 6) + "\" cy=\"" + svg::num(ly) + "\" r=\"4\" fill=\"" + it.color +
                 "\"/>\n";
        else
            s += "  <rect x=\"" + svg::num(lx) + "\" y=\"" + svg::num(ly - 6) + "\" width=\"12\" height=\"12\" fill=\"" +
                 it.color + "\"/>\n";
        s += "  " + svg::text(lx + 18, ly + 4, it.label);
        ly += 20;
    }
    s += "</g>\n</svg>\n";
    return s;
}

/// Heatmap of sgof_mean over a two-axis sweep: rows follow the first axis,
/// columns the second. Colours interpolate linearly from the minimum to the
/// maximum SGOF among successful cells; the best cell is outlined.
inline std::string emit_heatmap(const SweepResult& r) {
    if (r.axes.size() != 2)
        throw ParameterError("heatmap needs exactly two sweep axes, got " + std::to_string(r.axes.size()));
    const std::size_t rows = r.axes[0].values.size(), cols = r.axes[1].values.size();
    const double cell = 64, left = 110, top = 60;
    const double width = left + cols * cell + 140, height = top + rows * cell + 70;

    double lo = INFINITY, hi = -INFINITY;
    for (const auto& c : r.cells)
        if (c.ok()) {
            lo = std::min(lo, c.report->sgof_mean);
            hi = std::max(hi, c.report->sgof_mean);
        }
    auto scale = [&](double v) { return hi > lo ? (v - lo) / (hi - lo) : 0.5; };

    std::string s = svg::header(width, height);
    s += svg::text(left, 28, "SGOF by parameter value", "font-size=\"15\"");
    s += "<g class=\"cells\">\n";
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            const auto& c = r.cells[i * cols + j];
            const double x = left + j * cell, y = top + i * cell;
            if (c.ok()) {
                const double v = c.report->sgof_mean;
                s += "  <rect class=\"cell\" data-row=\"" + std::to_string(i) + "\" data-col=\"" + std::to_string(j) +
                     "\" data-sgof=\"" + detail::format_real(v) + "\" x=\"" + svg::num(x) + "\" y=\"" + svg::num(y) +
                     "\" width=\"" + svg::num(cell) + "\" height=\"" + svg::num(cell) + "\" fill=\"" +
                     svg::heat_color(scale(v)) + "\"/>\n";
                char lbl[32];
                std::snprintf(lbl, sizeof lbl, "%.3f", v);
                s += "  " + svg::text(x + cell / 2, y + cell / 2 + 4, lbl,
                                      std::string("text-anchor=\"middle\" fill=\"") +
                                          (scale(v) > 0.55 ? "#ffffff" : "#000000") + "\"");
            } else {
                s += "  <rect class=\"cell failed\" data-row=\"" + std::to_string(i) + "\" data-col=\"" +
                     std::to_string(j) + "\" x=\"" + svg::num(x) + "\" y=\"" + svg::num(y) + "\" width=\"" +
                     svg::num(cell) + "\" height=\"" + svg::num(cell) + "\" fill=\"#cccccc\"/>\n";
                s += "  " + svg::text(x + cell / 2, y + cell / 2 + 4, "error", "text-anchor=\"middle\"");
            }
        }
    s += "</g>\n";
    const std::size_t bi = r.best_cell / cols, bj = r.best_cell % cols;
    s += "<rect class=\"best-cell\" data-row=\"" + std::to_string(bi) + "\" data-col=\"" + std::to_string(bj) +
         "\" x=\"" + svg::num(left + bj * cell + 1.5) + "\" y=\"" + svg::num(top + bi * cell + 1.5) + "\" width=\"" +
         svg::num(cell - 3) + "\" height=\"" + svg::num(cell - 3) + "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"3\"/>\n";

    for (std::size_t i = 0; i < rows; ++i)
        s += svg::text(left - 8, top + i * cell + cell / 2 + 4, axis_value_text(r.axes[0].values[i]),
                       "text-anchor=\"end\"");
    for (std::size_t j = 0; j < cols; ++j)
        s += svg::text(left + j * cell + cell / 2, top + rows * cell + 18, axis_value_text(r.axes[1].values[j]),
                       "text-anchor=\"middle\"");
    s += svg::text(left + cols * cell / 2, top + rows * cell + 44, r.axes[1].name, "text-anchor=\"middle\"");
    s += svg::text(24, top + rows * cell / 2, r.axes[0].name,
                   "text-anchor=\"middle\" transform=\"rotate(-90 24 " + svg::num(top + rows * cell / 2) + ")\"");

    const double bx = left + cols * cell + 40, bh = rows * cell;
    s += "<defs><linearGradient id=\"sgof-scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
         "<stop offset=\"0\" stop-color=\"" + svg::heat_color(0) + "\"/><stop offset=\"1\" stop-color=\"" +
         svg::heat_color(1) + "\"/></linearGradient></defs>\n";
    s += "<g class=\"colorbar\">\n  <rect x=\"" + svg::num(bx) + "\" y=\"" + svg::num(top) + "\" width=\"18\" height=\"" +
         svg::num(bh) + "\" fill=\"url(#sgof-scale)\" stroke=\"#000000\"/>\n";
    char lbl[32];
    std::snprintf(lbl, sizeof lbl, "%.3f", std::isfinite(hi) ? hi : 0.0);
    s += "  " + svg::text(bx + 24, top + 10, lbl);
    std::snprintf(lbl, sizeof lbl, "%.3f", std::isfinite(lo) ? lo : 0.0);
    s += "  " + svg::text(bx + 24, top + bh, lbl);
    s += "  " + svg::text(bx, top - 10, "SGOF");
    s += "</g>\n</svg>\n";
    return s;
}

} // namespace spectralgof::io
