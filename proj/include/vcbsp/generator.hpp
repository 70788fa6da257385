#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vcbsp/graph.hpp"

namespace vcbsp {

enum class GraphKind { Random, Powerlaw, Star, Path };

struct GenConfig {
    GraphKind kind = GraphKind::Random;
    std::uint64_t n = 0;
    double deg_avg = 8.0;      // random: out-degree per vertex
    double exponent = 2.0;     // powerlaw: P(d >= x) ~ (min_deg/x)^(exponent-1)
    std::uint64_t min_deg = 2; // powerlaw
    bool weighted = false;     // uniform (0,1] weights
    std::uint64_t seed = 1;
};

GraphKind parse_graph_kind(const std::string& name);

// All generators are byte-deterministic for a given config (the engine itself
// is deterministic; seeds only matter here).
std::vector<EdgeInput> generate(const GenConfig& cfg);

// Test fixture: spanning tree plus extra random edges, connected by
// construction, ~deg_avg adjacency entries per vertex when loaded undirected.
std::vector<EdgeInput> generate_connected(std::uint64_t n, double deg_avg, std::uint64_t seed,
                                          bool weighted = false);

// Uniform integer in [0, n) from raw engine output (unbiased by rejection);
// std::uniform_int_distribution is not stable across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n);
double uniform01(std::mt19937_64& rng);  // in (0, 1]

}  // namespace vcbsp
