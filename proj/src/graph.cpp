#include "vcbsp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

namespace vcbsp {

namespace {

// Splits a line into whitespace-separated tokens, up to a small fixed count.
int tokenize(std::string_view line, std::string_view* out, int max_tokens) {
    int n = 0;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (n == max_tokens) return n + 1;  // too many tokens
        out[n++] = line.substr(start, i - start);
    }
    return n;
}

double parse_weight(std::string_view tok, const std::string& where) {
    double w = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(w))
        throw ParseError(where + ": bad edge weight '" + std::string(tok) + "'");
    if (w < 0.0) throw ParseError(where + ": negative edge weight not allowed");
    return w;
}

}  // namespace

std::optional<std::size_t> Graph::index_of(const VertexId& id) const {
    auto it = std::lower_bound(verts_.begin(), verts_.end(), id,
                               [](const GraphVertex& v, const VertexId& key) { return v.id < key; });
    if (it == verts_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - verts_.begin());
}

Graph Graph::build(std::span<const EdgeInput> edges, bool directed, bool weighted) {
    std::map<VertexId, std::vector<Edge>> adj;
    for (const EdgeInput& e : edges) {
        adj[e.src].push_back(Edge{e.dst, e.weight});
        if (directed) {
            adj.try_emplace(e.dst);  // materialize target-only vertices
        } else {
            adj[e.dst].push_back(Edge{e.src, e.weight});
        }
    }
    Graph g;
    g.directed_ = directed;
    g.weighted_ = weighted;
    g.verts_.reserve(adj.size());
    for (auto& [id, out] : adj) {
        g.entries_ += out.size();
        g.verts_.push_back(GraphVertex{id, std::move(out)});
    }
    return g;
}

Graph load_edge_list(const std::filesystem::path& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open graph file: " + path.string());

    std::vector<EdgeInput> edges;
    std::string line;
    std::size_t lineno = 0;
    std::string_view tok[3];
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv(line);
        auto first = sv.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;
        if (sv[first] == '#') continue;

        const std::string where = path.string() + ":" + std::to_string(lineno);
        int n = tokenize(sv, tok, 3);
        if (n > 3) throw ParseError(where + ": too many fields");
        if (n < 2) throw ParseError(where + ": expected 'src dst [weight]'");
        if (n == 3 && !opts.weighted)
            throw ParseError(where + ": weight given but graph is not weighted");
        if (n == 2 && opts.weighted) throw ParseError(where + ": missing edge weight");

        EdgeInput e;
        try {
            e.src = VertexId::parse(tok[0], opts.pair_ids);
            e.dst = VertexId::parse(tok[1], opts.pair_ids);
        } catch (const ParseError& pe) {
            throw ParseError(where + ": " + pe.what());
        }
        e.weight = opts.weighted ? parse_weight(tok[2], where) : 1.0;
        edges.push_back(e);
    }
    return Graph::build(edges, opts.directed, opts.weighted);
}

void write_edge_list(const std::filesystem::path& path, std::span<const EdgeInput> edges,
                     bool weighted, const std::string& header_comment) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write graph file: " + path.string());
    if (!header_comment.empty()) out << "# " << header_comment << "\n";
    char buf[64];
    for (const EdgeInput& e : edges) {
        out << e.src.str() << ' ' << e.dst.str();
        if (weighted) {
            std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
            out << ' ' << buf;
        }
        out << '\n';
    }
    if (!out) throw Error("write failed: " + path.string());
}

DegreeStats degree_stats(const Graph& g) {
    if (g.vertex_count() == 0) throw Error("degree_stats: empty graph (average degree undefined)");
    DegreeStats s;
    s.n = g.vertex_count();
    s.m = g.edge_entries();
    s.deg_avg = static_cast<double>(s.m) / static_cast<double>(s.n);
    for (const auto& v : g.vertices()) s.deg_max = std::max(s.deg_max, v.out_edges.size());
    return s;
}

}  // namespace vcbsp
