#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vcbsp/vertex_id.hpp"

namespace vcbsp {

struct Edge {
    VertexId target;
    double weight = 1.0;  // meaningful only when the graph is weighted
};

struct GraphVertex {
    VertexId id;
    std::vector<Edge> out_edges;  // load order, never reordered
};

struct EdgeInput {
    VertexId src;
    VertexId dst;
    double weight = 1.0;
};

struct LoadOptions {
    bool directed = true;
    bool weighted = false;
    bool pair_ids = false;
};

struct DegreeStats {
    std::size_t n = 0;        // vertex count
    std::size_t m = 0;        // directed adjacency entries
    double deg_avg = 0.0;     // m / n
    std::size_t deg_max = 0;  // max out-degree
};

// Immutable in-memory graph: vertices sorted by id, adjacency in load order.
// Vertices that appear only as edge targets are materialized with an empty
// adjacency list.
class Graph {
public:
    Graph() = default;

    bool directed() const { return directed_; }
    bool weighted() const { return weighted_; }
    std::size_t vertex_count() const { return verts_.size(); }
    std::size_t edge_entries() const { return entries_; }
    const std::vector<GraphVertex>& vertices() const { return verts_; }

    std::optional<std::size_t> index_of(const VertexId& id) const;
    bool contains(const VertexId& id) const { return index_of(id).has_value(); }

    // Builds a graph from raw edges; for undirected graphs every edge is
    // recorded in both endpoints' adjacency lists.
    static Graph build(std::span<const EdgeInput> edges, bool directed, bool weighted);

private:
    bool directed_ = true;
    bool weighted_ = false;
    std::size_t entries_ = 0;
    std::vector<GraphVertex> verts_;
};

// Edge-list text loader. Lines are "src dst [weight]", whitespace separated;
// '#' starts a comment line; pair ids are written "a:b". Errors name the
// offending line number.
Graph load_edge_list(const std::filesystem::path& path, const LoadOptions& opts);

// Writes edges in the same text format (weights only when weighted=true).
void write_edge_list(const std::filesystem::path& path, std::span<const EdgeInput> edges,
                     bool weighted, const std::string& header_comment = {});

// Throws on an empty graph (average degree undefined).
DegreeStats degree_stats(const Graph& g);

}  // namespace vcbsp
