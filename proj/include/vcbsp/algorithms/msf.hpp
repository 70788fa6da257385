#pragma once

#include <algorithm>
#include <cstdint>
#include <tuple>
#include <vector>

#include "vcbsp/algorithms/common.hpp"

namespace vcbsp {

// Minimum spanning forest. Each iteration: (1) every component picks its
// minimum-weight outgoing edge (candidates flow subvertex -> supervertex under
// the min combiner), the picked edges forming conjoined trees whose 2-cycle
// resolves to the smaller-id supervertex; (2) pointer jumping collapses every
// component onto its supervertex; (3) vertices refresh their neighbors'
// component ids and prune intra-component edges.
//
// Edges stay distributed at their original endpoints throughout (the
// storing-edges-at-subvertices layout), so supervertices only ever see one
// candidate per worker and subvertices learn their merged supervertex by a
// single request to the old one.
//
// Edge ranks are (weight, min endpoint, max endpoint): a strict total order,
// so picks are unique and match a Kruskal run with the same tie-break.

struct MsfCand {
    double w = 0.0;
    VertexId a, b;  // original endpoints, a < b
    VertexId tgt;   // target component id
    bool operator==(const MsfCand&) const = default;
};

inline bool msf_rank_less(double w1, const VertexId& a1, const VertexId& b1, double w2,
                          const VertexId& a2, const VertexId& b2) {
    if (w1 != w2) return w1 < w2;
    if (a1 != a2) return a1 < a2;
    return b1 < b2;
}

struct MsfEdgeSlot {
    VertexId to;
    double w = 0.0;
    VertexId d_to;  // component of `to` as of the last prune
};

struct MsfValue {
    VertexId d;
    std::vector<MsfEdgeSlot> edges;
    std::vector<std::tuple<VertexId, VertexId, double>> picked;  // declared MSF edges
    MsfCand pick;
    bool participating = false;
    std::uint8_t mode = 0;
};

class MsfProgram {
public:
    using Value = MsfValue;
    using Message = MsfCand;
    using Respond = VertexId;

    enum Mode : std::uint8_t { kPick = 0, kApply, kDetect, kJump, kRelabel, kPrune };

    void compute(VertexState<Value>& v, std::span<const Message> msgs, Context<MsfProgram>& ctx) {
        auto& st = v.value;
        switch (st.mode) {
            case kPick: {
                if (ctx.superstep() == 1) {
                    st.d = v.id;
                    st.edges.reserve(v.out_edges.size());
                    for (const Edge& e : v.out_edges)
                        if (e.target != v.id) st.edges.push_back({e.target, e.weight, e.target});
                } else if (ctx.read_aggregate<std::int64_t>("msf.edges") == 0) {
                    ctx.vote_to_halt();
                    return;
                }
                if (!st.edges.empty()) {
                    const MsfEdgeSlot* best = &st.edges.front();
                    for (const MsfEdgeSlot& s : st.edges) {
                        auto [a1, b1] = endpoints(v.id, s.to);
                        auto [a2, b2] = endpoints(v.id, best->to);
                        if (msf_rank_less(s.w, a1, b1, best->w, a2, b2)) best = &s;
                    }
                    auto [a, b] = endpoints(v.id, best->to);
                    ctx.send(st.d, MsfCand{best->w, a, b, best->d_to});
                }
                st.mode = kApply;
                break;
            }
            case kApply: {  // supervertices adopt their component's pick as pointer
                st.participating = !msgs.empty();
                if (st.participating) {
                    st.pick = msgs.front();
                    for (const Message& m : msgs)
                        if (msf_rank_less(m.w, m.a, m.b, st.pick.w, st.pick.a, st.pick.b)) st.pick = m;
                    st.d = st.pick.tgt;
                    ctx.request(st.d);
                }
                st.mode = kDetect;
                break;
            }
            case kDetect: {  // resolve conjoined-tree cycles, declare picked edges
                if (st.participating) {
                    VertexId r = ctx.get_resp(st.d);
                    if (r == v.id) {
                        VertexId peer = st.d;
                        if (v.id < peer) {
                            st.d = v.id;  // supervertex; owns the shared pick
                            st.picked.emplace_back(st.pick.a, st.pick.b, st.pick.w);
                        } else {
                            st.d = peer;
                        }
                    } else {
                        st.picked.emplace_back(st.pick.a, st.pick.b, st.pick.w);
                        st.d = r;
                    }
                    ctx.aggregate<bool>("msf.jump_done", false);
                    ctx.request(st.d);
                }
                st.mode = kJump;
                break;
            }
            case kJump: {
                if (ctx.read_aggregate<bool>("msf.jump_done")) {
                    ctx.request(st.d);  // fetch final supervertex from the old one
                    st.mode = kRelabel;
                } else if (st.participating) {
                    VertexId r = ctx.get_resp(st.d);
                    ctx.aggregate<bool>("msf.jump_done", r == st.d);
                    if (r != st.d) st.d = r;
                    ctx.request(st.d);
                }
                break;
            }
            case kRelabel: {
                st.d = ctx.get_resp(st.d);
                for (const MsfEdgeSlot& s : st.edges) ctx.request(s.to);
                st.mode = kPrune;
                break;
            }
            case kPrune: {
                std::vector<MsfEdgeSlot> keep;
                keep.reserve(st.edges.size());
                for (MsfEdgeSlot& s : st.edges) {
                    VertexId nd = ctx.get_resp(s.to);
                    if (nd != st.d) {
                        s.d_to = nd;
                        keep.push_back(s);
                    }
                }
                st.edges = std::move(keep);
                ctx.aggregate<std::int64_t>("msf.edges", static_cast<std::int64_t>(st.edges.size()));
                st.mode = kPick;
                break;
            }
        }
    }

    Respond respond(const VertexState<Value>& v, int) const { return v.value.d; }

    Message combine(const Message& x, const Message& y) const {
        return msf_rank_less(x.w, x.a, x.b, y.w, y.a, y.b) ? x : y;
    }

    void register_aggregators(AggregatorRegistry& r) const {
        r.add<bool>("msf.jump_done", true, agg::land());
        r.add<std::int64_t>("msf.edges", 0, agg::sum<std::int64_t>());
    }

private:
    static std::pair<VertexId, VertexId> endpoints(const VertexId& u, const VertexId& w) {
        return u < w ? std::make_pair(u, w) : std::make_pair(w, u);
    }
};

struct MsfOutcome {
    std::vector<std::tuple<VertexId, VertexId, double>> edges;  // sorted (u, v, w)
    double total_weight = 0.0;
    int supersteps = 0;
    RunStats stats;
    ChannelAudit audit;
};

inline MsfOutcome run_msf(const Graph& g, const AlgoOptions& opts) {
    if (g.directed()) throw Error("msf requires an undirected graph");
    if (!g.weighted()) throw Error("msf requires a weighted graph");
    if (!opts.reqresp) throw Error("msf requires the request-respond channel (reqresp on)");
    auto r = run_engine(g, MsfProgram{}, opts.engine_config());
    MsfOutcome out;
    for (auto& [id, st] : r.values)
        for (auto& e : st.picked) out.edges.push_back(e);
    std::sort(out.edges.begin(), out.edges.end(),
              [](const auto& x, const auto& y) {
                  if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
                  if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) < std::get<1>(y);
                  return std::get<2>(x) < std::get<2>(y);
              });
    for (const auto& [u, w_, wt] : out.edges) out.total_weight += wt;
    out.supersteps = r.supersteps;
    out.stats = std::move(r.stats);
    out.audit = std::move(r.audit);
    return out;
}

}  // namespace vcbsp
