#pragma once

#include <algorithm>

#include "vcbsp/algorithms/common.hpp"

namespace vcbsp {

// Single-source shortest paths with non-negative edge weights. Distances ride
// on broadcast with a relay that adds the edge length: sender-side on Ch_msg,
// receiver-side at mirrors. Unreached vertices keep a dedicated state rather
// than a numeric sentinel.
struct SsspValue {
    double dist = 0.0;
    bool reached = false;
};

class SsspProgram {
public:
    using Value = SsspValue;
    using Message = double;
    using Respond = NoRespond;

    explicit SsspProgram(VertexId source) : source_(source) {}

    void compute(VertexState<Value>& v, std::span<const Message> msgs, Context<SsspProgram>& ctx) {
        if (ctx.superstep() == 1) {
            if (v.id == source_) {
                v.value = {0.0, true};
                ctx.broadcast(0.0);
            }
            ctx.vote_to_halt();
            return;
        }
        double best = *std::min_element(msgs.begin(), msgs.end());
        if (!v.value.reached || best < v.value.dist) {
            v.value = {best, true};
            ctx.broadcast(best);
        }
        ctx.vote_to_halt();
    }

    Message combine(const Message& a, const Message& b) const { return std::min(a, b); }
    Message relay(const Edge& e, const Message& m) const { return m + e.weight; }

private:
    VertexId source_;
};

inline RunResult<SsspProgram> run_sssp(const Graph& g, VertexId source, const AlgoOptions& opts) {
    if (!g.weighted()) throw Error("sssp requires a weighted graph");
    if (!g.contains(source)) throw Error("sssp: source vertex " + source.str() + " not in graph");
    return run_engine(g, SsspProgram(source), opts.engine_config());
}

}  // namespace vcbsp
