#pragma once

#include <algorithm>

#include "vcbsp/algorithms/common.hpp"

namespace vcbsp {

// Connected components on an undirected graph: every vertex repeatedly
// broadcasts the smallest id it has seen. Converges in O(diameter) supersteps
// to min(v) = smallest id in v's component.
struct HashMinProgram {
    using Value = VertexId;
    using Message = VertexId;
    using Respond = NoRespond;

    void compute(VertexState<Value>& v, std::span<const Message> msgs, Context<HashMinProgram>& ctx) {
        if (ctx.superstep() == 1) {
            v.value = v.id;
            ctx.broadcast(v.value);
            ctx.vote_to_halt();
            return;
        }
        VertexId best = *std::min_element(msgs.begin(), msgs.end());
        if (best < v.value) {
            v.value = best;
            ctx.broadcast(best);
        }
        ctx.vote_to_halt();
    }

    Message combine(const Message& a, const Message& b) const { return std::min(a, b); }
};

inline RunResult<HashMinProgram> run_hashmin(const Graph& g, const AlgoOptions& opts) {
    if (g.directed()) throw Error("hashmin requires an undirected graph");
    return run_engine(g, HashMinProgram{}, opts.engine_config());
}

}  // namespace vcbsp
