#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>

#include "vcbsp/algorithms/common.hpp"

namespace vcbsp {

// PageRank over the recurrence pr(v) = 0.15/|V| + 0.85 * sum of incoming
// pr(u)/d_out(u). Ranks and messages are kept in 52-bit fixed point: integer
// addition commutes exactly, so the results are bit-identical regardless of
// combining, mirroring, worker count, or delivery order. Dangling vertices
// keep their mass (the recurrence as written; no redistribution).
struct PageRankValue {
    std::int64_t pr = 0;
};

class PageRankProgram {
public:
    using Value = PageRankValue;
    using Message = std::int64_t;
    using Respond = NoRespond;

    static constexpr std::int64_t kScale = std::int64_t(1) << 52;

    // Terminate once every vertex changes by less than epsilon.
    static PageRankProgram with_epsilon(double epsilon) {
        PageRankProgram p;
        p.fixed_ = false;
        p.eps_scaled_ = static_cast<std::int64_t>(std::llround(epsilon * static_cast<double>(kScale)));
        return p;
    }
    // Run a fixed number of value-propagation supersteps (no convergence check).
    static PageRankProgram with_iterations(int iterations) {
        PageRankProgram p;
        p.fixed_ = true;
        p.iterations_ = iterations;
        return p;
    }

    void compute(VertexState<Value>& v, std::span<const Message> msgs, Context<PageRankProgram>& ctx) {
        const auto n = static_cast<std::int64_t>(ctx.num_vertices());
        if (ctx.superstep() == 1) {
            v.value.pr = kScale / n;
            if (!fixed_) ctx.aggregate<bool>("pr.converged", false);
            distribute(v, ctx);
            return;
        }
        if (!fixed_ && ctx.read_aggregate<bool>("pr.converged")) {
            ctx.vote_to_halt();
            return;
        }
        std::int64_t sum = 0;
        for (Message m : msgs) sum += m;
        std::int64_t next = (3 * kScale) / (20 * n) + (sum * 17) / 20;
        std::int64_t delta = std::llabs(next - v.value.pr);
        v.value.pr = next;
        if (fixed_) {
            if (ctx.superstep() <= iterations_)
                distribute(v, ctx);
            else
                ctx.vote_to_halt();
        } else {
            ctx.aggregate<bool>("pr.converged", delta < eps_scaled_);
            distribute(v, ctx);
        }
    }

    Message combine(const Message& a, const Message& b) const { return a + b; }

    void register_aggregators(AggregatorRegistry& r) const {
        if (!fixed_) r.add<bool>("pr.converged", true, agg::land());
    }

    static double to_double(const PageRankValue& v) {
        return static_cast<double>(v.pr) / static_cast<double>(kScale);
    }

private:
    void distribute(const VertexState<Value>& v, Context<PageRankProgram>& ctx) {
        auto d = static_cast<std::int64_t>(v.out_edges.size());
        if (d > 0) ctx.broadcast(v.value.pr / d);
    }

    bool fixed_ = false;
    int iterations_ = 0;
    std::int64_t eps_scaled_ = 0;
};

struct PageRankOptions {
    double epsilon = 0.01;
    int iterations = 0;  // > 0: fixed-superstep mode, epsilon ignored
};

inline RunResult<PageRankProgram> run_pagerank(const Graph& g, const AlgoOptions& opts,
                                               const PageRankOptions& pr = {}) {
    auto program = pr.iterations > 0 ? PageRankProgram::with_iterations(pr.iterations)
                                     : PageRankProgram::with_epsilon(pr.epsilon);
    return run_engine(g, program, opts.engine_config());
}

}  // namespace vcbsp
