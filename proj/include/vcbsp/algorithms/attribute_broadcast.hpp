#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vcbsp/algorithms/common.hpp"

namespace vcbsp {

// Attribute broadcast: decorate each vertex's adjacency list with the targets'
// attribute values, Gamma^(v) = {<u, a(u)> : u in Gamma_out(v)}. Two variants:
// a pull over the request-respond channel (2 supersteps) and the hand-rolled
// message-passing version (3 supersteps: request, serve, collect).

// Deterministic per-vertex attribute for fixtures: the id hashed to 32 bits.
inline std::uint32_t attr_of(const VertexId& id) {
    return static_cast<std::uint32_t>(id.hash() & 0xffffffffULL);
}

struct AttrBcastValue {
    std::uint32_t attr = 0;
    std::vector<std::pair<VertexId, std::uint32_t>> decorated;  // adjacency order
};

struct AttrBcastReqProgram {
    using Value = AttrBcastValue;
    using Message = std::uint32_t;  // never sent
    using Respond = std::uint32_t;

    void compute(VertexState<Value>& v, std::span<const Message>, Context<AttrBcastReqProgram>& ctx) {
        if (ctx.superstep() == 1) {
            v.value.attr = attr_of(v.id);
            for (const Edge& e : v.out_edges) ctx.request(e.target);
            return;  // stay active to read responses
        }
        v.value.decorated.reserve(v.out_edges.size());
        for (const Edge& e : v.out_edges)
            v.value.decorated.emplace_back(e.target, ctx.get_resp(e.target));
        ctx.vote_to_halt();
    }

    Respond respond(const VertexState<Value>& v, int) const { return v.value.attr; }
};

struct AttrBcastMsg {
    VertexId vid;
    std::uint32_t attr = 0;
};

struct AttrBcastMsgProgram {
    using Value = AttrBcastValue;
    using Message = AttrBcastMsg;
    using Respond = NoRespond;

    void compute(VertexState<Value>& v, std::span<const Message> msgs, Context<AttrBcastMsgProgram>& ctx) {
        switch (ctx.superstep()) {
            case 1:
                v.value.attr = attr_of(v.id);
                for (const Edge& e : v.out_edges) ctx.send(e.target, Message{v.id, 0});
                break;
            case 2:
                for (const Message& m : msgs) ctx.send(m.vid, Message{v.id, v.value.attr});
                break;
            default: {
                std::unordered_map<VertexId, std::uint32_t> got;
                got.reserve(msgs.size());
                for (const Message& m : msgs) got.emplace(m.vid, m.attr);
                v.value.decorated.reserve(v.out_edges.size());
                for (const Edge& e : v.out_edges)
                    v.value.decorated.emplace_back(e.target, got.at(e.target));
                break;
            }
        }
        ctx.vote_to_halt();
    }
};

inline RunResult<AttrBcastReqProgram> run_attrbcast_req(const Graph& g, const AlgoOptions& opts) {
    return run_engine(g, AttrBcastReqProgram{}, opts.engine_config());
}

inline RunResult<AttrBcastMsgProgram> run_attrbcast_msg(const Graph& g, const AlgoOptions& opts) {
    return run_engine(g, AttrBcastMsgProgram{}, opts.engine_config());
}

}  // namespace vcbsp
