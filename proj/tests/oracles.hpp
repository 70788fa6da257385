#pragma once

// Independent single-process oracles the engine is checked against. These
// deliberately avoid the engine/channel code paths.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "vcbsp/algorithms/attribute_broadcast.hpp"
#include "vcbsp/algorithms/pagerank.hpp"
#include "vcbsp/graph.hpp"

namespace oracle {

using vcbsp::Graph;
using vcbsp::VertexId;

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

// Component labeling: every vertex mapped to the smallest id in its component.
inline std::map<VertexId, VertexId> cc_minima(const Graph& g) {
    const auto& vs = g.vertices();
    UnionFind uf(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (const auto& e : vs[i].out_edges) uf.unite(i, *g.index_of(e.target));
    std::vector<VertexId> min_of(vs.size());
    std::vector<bool> seen(vs.size(), false);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::size_t r = uf.find(i);
        if (!seen[r] || vs[i].id < min_of[r]) {
            min_of[r] = vs[i].id;  // vertices are sorted by id, so first hit is min
            seen[r] = true;
        }
    }
    std::map<VertexId, VertexId> out;
    for (std::size_t i = 0; i < vs.size(); ++i) out[vs[i].id] = min_of[uf.find(i)];
    return out;
}

inline std::map<VertexId, std::optional<double>> dijkstra(const Graph& g, VertexId source) {
    const auto& vs = g.vertices();
    std::vector<double> dist(vs.size(), std::numeric_limits<double>::infinity());
    std::vector<bool> done(vs.size(), false);
    auto src = g.index_of(source);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    if (src) {
        dist[*src] = 0.0;
        pq.emplace(0.0, *src);
    }
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        for (const auto& e : vs[u].out_edges) {
            std::size_t v = *g.index_of(e.target);
            double nd = d + e.weight;
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.emplace(nd, v);
            }
        }
    }
    std::map<VertexId, std::optional<double>> out;
    for (std::size_t i = 0; i < vs.size(); ++i)
        out[vs[i].id] = done[i] ? std::optional<double>(dist[i]) : std::nullopt;
    return out;
}

// Kruskal with rank (weight, min endpoint, max endpoint) — the same strict
// total order the engine uses for picking edges.
struct KruskalResult {
    std::vector<std::tuple<VertexId, VertexId, double>> edges;  // sorted (u, v, w)
    double total_weight = 0.0;
};

inline KruskalResult kruskal(const Graph& g) {
    const auto& vs = g.vertices();
    struct E {
        double w;
        VertexId a, b;
        std::size_t ia, ib;
    };
    std::vector<E> edges;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (const auto& e : vs[i].out_edges) {
            if (e.target == vs[i].id) continue;
            VertexId a = std::min(vs[i].id, e.target);
            VertexId b = std::max(vs[i].id, e.target);
            if (vs[i].id == a)  // count each undirected edge once
                edges.push_back({e.weight, a, b, i, *g.index_of(e.target)});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const E& x, const E& y) {
        if (x.w != y.w) return x.w < y.w;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    UnionFind uf(vs.size());
    KruskalResult out;
    for (const E& e : edges) {
        if (uf.unite(e.ia, e.ib)) {
            out.edges.emplace_back(e.a, e.b, e.w);
            out.total_weight += e.w;
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

// Single-process run of the engine's PageRank recurrence (same 52-bit fixed
// point, same convergence/aggregator timing), without any engine machinery.
struct PageRankRef {
    std::map<VertexId, double> pr;
    int supersteps = 0;
};

inline PageRankRef pagerank_reference(const Graph& g, double epsilon, int iterations = 0) {
    constexpr std::int64_t S = vcbsp::PageRankProgram::kScale;
    const auto& vs = g.vertices();
    const auto n = static_cast<std::int64_t>(vs.size());
    const std::int64_t base = (3 * S) / (20 * n);
    const auto eps_scaled =
        static_cast<std::int64_t>(std::llround(epsilon * static_cast<double>(S)));
    const bool fixed = iterations > 0;

    std::vector<std::vector<std::size_t>> in(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (const auto& e : vs[i].out_edges) in[*g.index_of(e.target)].push_back(i);

    std::vector<std::int64_t> pr(vs.size(), S / n), share(vs.size(), 0);
    auto update_share = [&] {
        for (std::size_t i = 0; i < vs.size(); ++i) {
            auto d = static_cast<std::int64_t>(vs[i].out_edges.size());
            share[i] = d > 0 ? pr[i] / d : 0;
        }
    };
    update_share();  // superstep 1
    bool flag = false;
    int s = 1;
    for (;;) {
        ++s;
        if (!fixed && flag) break;
        bool all_small = true;
        std::vector<std::int64_t> next(vs.size());
        for (std::size_t i = 0; i < vs.size(); ++i) {
            std::int64_t sum = 0;
            for (std::size_t u : in[i])
                if (!vs[u].out_edges.empty()) sum += share[u];
            next[i] = base + (sum * 17) / 20;
            if (std::llabs(next[i] - pr[i]) >= eps_scaled) all_small = false;
        }
        pr = std::move(next);
        if (fixed) {
            if (s > iterations) break;
        } else {
            flag = all_small;
        }
        update_share();
    }
    PageRankRef out;
    out.supersteps = s;
    for (std::size_t i = 0; i < vs.size(); ++i)
        out.pr[vs[i].id] = static_cast<double>(pr[i]) / static_cast<double>(S);
    return out;
}

// Direct decorated-adjacency construction.
inline std::map<VertexId, std::vector<std::pair<VertexId, std::uint32_t>>> attrbcast_reference(
    const Graph& g) {
    std::map<VertexId, std::vector<std::pair<VertexId, std::uint32_t>>> out;
    for (const auto& v : g.vertices()) {
        auto& dec = out[v.id];
        dec.reserve(v.out_edges.size());
        for (const auto& e : v.out_edges) dec.emplace_back(e.target, vcbsp::attr_of(e.target));
    }
    return out;
}

}  // namespace oracle
