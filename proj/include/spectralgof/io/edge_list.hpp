#pragma once

// Edge-list text format:
//
//   # comment (anywhere on a line)
//   *directed          optional header: arcs instead of undirected edges
//   *n <count>         optional header: declares the node count; node tokens
//                      are then integer indices in [0, count)
//   u v [w]            one edge per line, weight defaults to 1
//
// Headers must precede the first edge. Without `*n`, node tokens are
// arbitrary labels mapped to indices in order of first appearance.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "spectralgof/directed.hpp"
#include "spectralgof/errors.hpp"
#include "spectralgof/graph.hpp"

namespace spectralgof::io {

enum class DuplicatePolicy { error, sum };

struct ParseOptions {
    DuplicatePolicy duplicates = DuplicatePolicy::error;
};

using ParsedGraph = std::variant<Graph, DirectedGraph>;

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::optional<std::size_t> parse_index(std::string_view tok) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) return std::nullopt;
    return v;
}

inline std::optional<double> parse_real(std::string_view tok) {
    std::string s(tok);
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

inline std::string format_real(double w) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", w);
    return buf;
}

inline DataError line_error(std::size_t line, const std::string& what) {
    return DataError("line " + std::to_string(line) + ": " + what);
}

} // namespace detail

/// Parses edge-list text into an undirected or (with `*directed`) directed graph.
inline ParsedGraph parse_edge_list(std::string_view text, const ParseOptions& opts = {}) {
    bool directed = false;
    std::optional<std::size_t> declared_n;
    bool seen_edge = false;

    std::unordered_map<std::string, std::size_t> label_index;
    std::vector<std::string> labels;
    struct Raw {
        std::size_t u, v;
        double w;
    };
    std::vector<Raw> raw;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> where;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        const auto tok = detail::split_ws(line);
        if (tok.empty()) {
            if (eol == text.size()) break;
            continue;
        }

        if (tok[0].front() == '*') {
            if (seen_edge) throw detail::line_error(line_no, "header lines must precede all edges");
            if (tok[0] == "*directed" && tok.size() == 1) {
                directed = true;
            } else if (tok[0] == "*n" && tok.size() == 2) {
                const auto n = detail::parse_index(tok[1]);
                if (!n || *n == 0) throw detail::line_error(line_no, "node count must be a positive integer");
                declared_n = *n;
            } else {
                throw detail::line_error(line_no, "unknown header '" + std::string(tok[0]) + "'");
            }
            continue;
        }

        if (tok.size() != 2 && tok.size() != 3)
            throw detail::line_error(line_no, "expected 'u v [w]', found " + std::to_string(tok.size()) + " fields");
        seen_edge = true;
        std::size_t ends[2];
        for (int k = 0; k < 2; ++k) {
            if (declared_n) {
                const auto idx = detail::parse_index(tok[k]);
                if (!idx || *idx >= *declared_n)
                    throw detail::line_error(line_no, "node '" + std::string(tok[k]) +
                                                          "' is not an index in [0, " +
                                                          std::to_string(*declared_n) + ")");
                ends[k] = *idx;
            } else {
                auto [it, fresh] = label_index.try_emplace(std::string(tok[k]), labels.size());
                if (fresh) labels.emplace_back(tok[k]);
                ends[k] = it->second;
            }
        }
        double w = 1.0;
        if (tok.size() == 3) {
            const auto parsed = detail::parse_real(tok[2]);
            if (!parsed || !(*parsed > 0.0) || !std::isfinite(*parsed))
                throw detail::line_error(line_no, "weight '" + std::string(tok[2]) +
                                                      "' is not a finite positive number");
            w = *parsed;
        }
        if (ends[0] == ends[1]) throw detail::line_error(line_no, "self-loop on node '" + std::string(tok[0]) + "'");

        auto key = directed ? std::pair{ends[0], ends[1]}
                            : std::pair{std::min(ends[0], ends[1]), std::max(ends[0], ends[1])};
        if (auto it = where.find(key); it != where.end()) {
            if (opts.duplicates == DuplicatePolicy::error)
                throw detail::line_error(line_no, "duplicate edge " + std::string(tok[0]) + " " +
                                                      std::string(tok[1]));
            raw[it->second].w += w;
            continue;
        }
        where.emplace(key, raw.size());
        raw.push_back({ends[0], ends[1], w});
    }

    const std::size_t n = declared_n ? *declared_n : labels.size();
    if (n == 0) throw DataError("edge list declares no nodes");
    if (directed) {
        DirectedGraph g(n);
        for (const Raw& r : raw) g.add_arc(r.u, r.v, r.w);
        if (!declared_n) g.set_labels(std::move(labels));
        return g;
    }
    Graph g(n);
    for (const Raw& r : raw) g.add_edge(r.u, r.v, r.w);
    if (!declared_n) g.set_labels(std::move(labels));
    return g;
}

inline Graph parse_undirected(std::string_view text, const ParseOptions& opts = {}) {
    auto parsed = parse_edge_list(text, opts);
    if (auto* g = std::get_if<Graph>(&parsed)) return std::move(*g);
    throw DataError("expected an undirected edge list but found a '*directed' header");
}

namespace detail {

template <class G, class Fn>
std::string write_list(const G& g, bool directed, std::size_t item_count, Fn&& items) {
    std::vector<char> used(g.node_count(), 0);
    items([&](std::size_t a, std::size_t b, double) { used[a] = used[b] = 1; });
    const bool by_label =
        !g.labels().empty() && std::all_of(used.begin(), used.end(), [](char c) { return c != 0; });

    std::string out;
    out.reserve(item_count * 12 + 32);
    if (directed) out += "*directed\n";
    if (!by_label) out += "*n " + std::to_string(g.node_count()) + "\n";
    items([&](std::size_t a, std::size_t b, double w) {
        out += by_label ? g.labels()[a] : std::to_string(a);
        out += ' ';
        out += by_label ? g.labels()[b] : std::to_string(b);
        if (w != 1.0) {
            out += ' ';
            out += format_real(w);
        }
        out += '\n';
    });
    return out;
}

} // namespace detail

/// Serializes a graph so that parse_edge_list reproduces it exactly. Labels
/// are written when every node is covered by an edge; otherwise indices are
/// written under a `*n` header.
inline std::string write_edge_list(const Graph& g) {
    return detail::write_list(g, false, g.edge_count(), [&](auto&& emit) {
        for (const Edge& e : g.edges()) emit(e.u, e.v, e.w);
    });
}

inline std::string write_edge_list(const DirectedGraph& g) {
    return detail::write_list(g, true, g.arc_count(), [&](auto&& emit) {
        for (const Arc& a : g.arcs()) emit(a.from, a.to, a.w);
    });
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw DataError("failed writing '" + path.string() + "'");
}

inline ParsedGraph load_graph(const std::filesystem::path& path, const ParseOptions& opts = {}) {
    try {
        return parse_edge_list(read_text_file(path), opts);
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

struct EnsembleFiles {
    std::vector<std::filesystem::path> files;
    std::vector<ParsedGraph> graphs;
};

/// Parses every regular, non-hidden file of a directory in lexicographic
/// filename order. All members must agree on node count and orientation.
inline EnsembleFiles load_ensemble_dir(const std::filesystem::path& dir, const ParseOptions& opts = {}) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec)) throw DataError("'" + dir.string() + "' is not a directory");
    EnsembleFiles out;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().filename().string().starts_with('.')) continue;
        out.files.push_back(entry.path());
    }
    std::sort(out.files.begin(), out.files.end(),
              [](const auto& a, const auto& b) { return a.filename().string() < b.filename().string(); });
    if (out.files.empty()) throw DataError("ensemble directory '" + dir.string() + "' is empty");

    auto nodes = [](const ParsedGraph& g) {
        return std::visit([](const auto& x) { return x.node_count(); }, g);
    };
    for (const auto& f : out.files) {
        out.graphs.push_back(load_graph(f, opts));
        const auto& first = out.graphs.front();
        const auto& last = out.graphs.back();
        if (nodes(last) != nodes(first))
            throw DataError("node-count mismatch in ensemble: '" + out.files.front().filename().string() +
                            "' has " + std::to_string(nodes(first)) + " nodes but '" +
                            f.filename().string() + "' has " + std::to_string(nodes(last)));
        if (last.index() != first.index())
            throw DataError("ensemble mixes directed and undirected files: '" + f.filename().string() + "'");
    }
    return out;
}

inline std::vector<Graph> ingest_ensemble_dir(const std::filesystem::path& dir, const ParseOptions& opts = {}) {
    auto files = load_ensemble_dir(dir, opts);
    std::vector<Graph> out;
    for (std::size_t i = 0; i < files.graphs.size(); ++i) {
        auto* g = std::get_if<Graph>(&files.graphs[i]);
        if (!g) throw DataError("'" + files.files[i].string() + "' is directed; expected undirected graphs");
        out.push_back(std::move(*g));
    }
    return out;
}

inline std::vector<DirectedGraph> ingest_directed_ensemble_dir(const std::filesystem::path& dir,
                                                               const ParseOptions& opts = {}) {
    auto files = load_ensemble_dir(dir, opts);
    std::vector<DirectedGraph> out;
    for (std::size_t i = 0; i < files.graphs.size(); ++i) {
        auto* g = std::get_if<DirectedGraph>(&files.graphs[i]);
        if (!g) throw DataError("'" + files.files[i].string() + "' lacks a '*directed' header");
        out.push_back(std::move(*g));
    }
    return out;
}

/// File name of ensemble member k: zero-padded so lexicographic order is
/// member order.
inline std::string ensemble_file_name(std::size_t k, std::size_t count) {
    const std::size_t width = std::max<std::size_t>(5, std::to_string(count > 0 ? count - 1 : 0).size());
    std::string digits = std::to_string(k);
    return "sim_" + std::string(width - std::min(width, digits.size()), '0') + digits + ".edges";
}

template <class G>
void write_ensemble_dir(const std::filesystem::path& dir, const std::vector<G>& graphs) {
    std::filesystem::create_directories(dir);
    for (std::size_t k = 0; k < graphs.size(); ++k)
        write_text_file(dir / ensemble_file_name(k, graphs.size()), write_edge_list(graphs[k]));
}

} // namespace spectralgof::io
