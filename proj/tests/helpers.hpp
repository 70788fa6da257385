#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "vcbsp/generator.hpp"
#include "vcbsp/graph.hpp"

namespace testutil {

using vcbsp::EdgeInput;
using vcbsp::Graph;
using vcbsp::VertexId;

inline std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "vcbsp_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_file(const std::string& name, const std::string& contents) {
    auto path = temp_dir() / name;
    std::ofstream out(path);
    out << contents;
    return path;
}

inline EdgeInput e(std::int64_t a, std::int64_t b, double w = 1.0) {
    return EdgeInput{VertexId::of(a), VertexId::of(b), w};
}

inline Graph graph_of(const std::vector<EdgeInput>& edges, bool directed, bool weighted = false) {
    return Graph::build(edges, directed, weighted);
}

// Undirected random graph as raw edges (may contain parallel edges).
inline std::vector<EdgeInput> random_edges(std::uint64_t n, std::uint64_t m, std::uint64_t seed,
                                           bool weighted = false) {
    std::mt19937_64 rng(seed);
    std::vector<EdgeInput> edges;
    edges.reserve(m);
    while (edges.size() < m) {
        auto u = vcbsp::bounded(rng, n);
        auto v = vcbsp::bounded(rng, n);
        if (u == v) continue;
        double w = weighted ? vcbsp::uniform01(rng) : 1.0;
        edges.push_back(e(static_cast<std::int64_t>(u), static_cast<std::int64_t>(v), w));
    }
    return edges;
}

}  // namespace testutil
