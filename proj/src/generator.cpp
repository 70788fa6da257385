#include "vcbsp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace vcbsp {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw Error("bounded: n must be > 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

GraphKind parse_graph_kind(const std::string& name) {
    if (name == "random") return GraphKind::Random;
    if (name == "powerlaw") return GraphKind::Powerlaw;
    if (name == "star") return GraphKind::Star;
    if (name == "path") return GraphKind::Path;
    throw ParseError("unknown graph kind '" + name + "' (random|powerlaw|star|path)");
}

namespace {

// d distinct targets in [0, n) excluding self. Switches from rejection to
// partial Fisher-Yates when d is a large fraction of n.
std::vector<std::uint64_t> sample_targets(std::mt19937_64& rng, std::uint64_t n, std::uint64_t self,
                                          std::uint64_t d) {
    d = std::min(d, n - 1);
    std::vector<std::uint64_t> out;
    out.reserve(d);
    if (d * 8 < n) {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(d * 2);
        while (out.size() < d) {
            std::uint64_t t = bounded(rng, n);
            if (t == self || !seen.insert(t).second) continue;
            out.push_back(t);
        }
    } else {
        std::vector<std::uint64_t> pool(n - 1);
        std::uint64_t v = 0;
        for (std::uint64_t i = 0; i < n; ++i)
            if (i != self) pool[v++] = i;
        for (std::uint64_t i = 0; i < d; ++i) {
            std::uint64_t j = i + bounded(rng, pool.size() - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
    }
    return out;
}

void add_weights(std::vector<EdgeInput>& edges, std::mt19937_64& rng) {
    for (auto& e : edges) e.weight = uniform01(rng);
}

}  // namespace

std::vector<EdgeInput> generate(const GenConfig& cfg) {
    if (cfg.n == 0) throw Error("generate: n must be > 0");
    std::mt19937_64 rng(cfg.seed);
    std::vector<EdgeInput> edges;
    switch (cfg.kind) {
        case GraphKind::Random: {
            if (cfg.deg_avg < 0.0) throw Error("generate: deg_avg must be >= 0");
            auto base = static_cast<std::uint64_t>(cfg.deg_avg);
            auto extra =
                static_cast<std::uint64_t>(std::llround((cfg.deg_avg - static_cast<double>(base)) *
                                                        static_cast<double>(cfg.n)));
            edges.reserve(static_cast<std::size_t>(cfg.deg_avg * static_cast<double>(cfg.n)) + 1);
            for (std::uint64_t v = 0; v < cfg.n; ++v) {
                std::uint64_t d = base + (v < extra ? 1 : 0);
                for (std::uint64_t t : sample_targets(rng, cfg.n, v, d))
                    edges.push_back({VertexId::of(static_cast<std::int64_t>(v)),
                                     VertexId::of(static_cast<std::int64_t>(t))});
            }
            break;
        }
        case GraphKind::Powerlaw: {
            if (cfg.exponent <= 1.0) throw Error("generate: powerlaw exponent must be > 1");
            if (cfg.min_deg == 0) throw Error("generate: powerlaw min_deg must be >= 1");
            for (std::uint64_t v = 0; v < cfg.n; ++v) {
                double u = uniform01(rng);
                double dd = static_cast<double>(cfg.min_deg) *
                            std::pow(u, -1.0 / (cfg.exponent - 1.0));
                auto d = static_cast<std::uint64_t>(std::min(dd, static_cast<double>(cfg.n - 1)));
                for (std::uint64_t t : sample_targets(rng, cfg.n, v, d))
                    edges.push_back({VertexId::of(static_cast<std::int64_t>(v)),
                                     VertexId::of(static_cast<std::int64_t>(t))});
            }
            break;
        }
        case GraphKind::Star: {
            edges.reserve(cfg.n > 0 ? cfg.n - 1 : 0);
            for (std::uint64_t i = 1; i < cfg.n; ++i)
                edges.push_back({VertexId::of(0), VertexId::of(static_cast<std::int64_t>(i))});
            break;
        }
        case GraphKind::Path: {
            edges.reserve(cfg.n > 0 ? cfg.n - 1 : 0);
            for (std::uint64_t i = 0; i + 1 < cfg.n; ++i)
                edges.push_back({VertexId::of(static_cast<std::int64_t>(i)),
                                 VertexId::of(static_cast<std::int64_t>(i + 1))});
            break;
        }
    }
    if (cfg.weighted) add_weights(edges, rng);
    return edges;
}

std::vector<EdgeInput> generate_connected(std::uint64_t n, double deg_avg, std::uint64_t seed,
                                          bool weighted) {
    if (n == 0) throw Error("generate_connected: n must be > 0");
    std::mt19937_64 rng(seed);
    std::vector<EdgeInput> edges;
    for (std::uint64_t v = 1; v < n; ++v)
        edges.push_back({VertexId::of(static_cast<std::int64_t>(v)),
                         VertexId::of(static_cast<std::int64_t>(bounded(rng, v)))});
    auto want = static_cast<std::uint64_t>(std::llround(deg_avg * static_cast<double>(n) / 2.0));
    while (edges.size() < want) {
        std::uint64_t u = bounded(rng, n);
        std::uint64_t v = bounded(rng, n);
        if (u == v) continue;
        edges.push_back({VertexId::of(static_cast<std::int64_t>(u)),
                         VertexId::of(static_cast<std::int64_t>(v))});
    }
    if (weighted) add_weights(edges, rng);
    return edges;
}

}  // namespace vcbsp
