#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "vcbsp/algorithms/common.hpp"

namespace vcbsp {

// Connected components in O(log |V|) rounds via parent pointers D[v]:
// each round performs (1) tree hooking of roots, (2) star hooking, and
// (3) shortcutting D[v] = D[D[v]], with hooking restricted to strictly
// smaller targets so D converges to the minimum id of the component.
//
// Star detection is the standard pointer-machine check: a vertex whose
// grandparent differs from its parent poisons the grandparent, and every
// vertex then adopts its grandparent's cleared/uncleared flag.
//
// Pointer fetches (D[D[v]], star flags) go through the request-respond
// channel; with reqresp off each fetch becomes an explicit three-superstep
// request/serve/consume exchange (period 11 instead of 7 supersteps/round).

struct SvValue {
    VertexId d;
    VertexId gp2;           // grandparent after tree hooking
    bool star_self = false;
    bool flag0 = false;     // self check && not poisoned; served via respond()
    bool star = false;
    bool window_changed = false;
    // manual-variant scratch
    VertexId cand, cand2;
    bool has_cand = false, has_cand2 = false;
};

struct SvResp {
    VertexId d;
    bool flag0 = false;
};

class SvReqProgram {
public:
    using Value = SvValue;
    using Message = VertexId;
    using Respond = SvResp;

    static constexpr int kPeriod = 7;

    void compute(VertexState<Value>& v, std::span<const Message> msgs, Context<SvReqProgram>& ctx) {
        auto& st = v.value;
        switch ((ctx.superstep() - 1) % kPeriod) {
            case 0: {  // apply star hooks; global termination check
                if (ctx.superstep() == 1) st.d = v.id;
                if (!msgs.empty()) {
                    VertexId m = *std::min_element(msgs.begin(), msgs.end());
                    if (st.d == v.id && m < st.d) {
                        st.d = m;
                        st.window_changed = true;
                    }
                }
                if (ctx.superstep() > 1 && ctx.read_aggregate<bool>("sv.allstar") &&
                    !ctx.read_aggregate<bool>("sv.changed")) {
                    ctx.vote_to_halt();
                    return;
                }
                ctx.request(st.d);
                break;
            }
            case 1: {  // shortcut, then share D with neighbors
                VertexId nd = ctx.get_resp(st.d).d;
                if (nd != st.d) {
                    st.d = nd;
                    st.window_changed = true;
                }
                ctx.broadcast(st.d);
                ctx.request(st.d);
                break;
            }
            case 2: {  // tree hooking: offer the best neighbor root to a root parent
                VertexId gp = ctx.get_resp(st.d).d;
                if (!msgs.empty()) {
                    VertexId cand = *std::min_element(msgs.begin(), msgs.end());
                    if (gp == st.d && cand < st.d) ctx.send(st.d, cand);
                }
                break;
            }
            case 3: {  // roots apply hooks; refetch grandparent
                if (!msgs.empty()) {
                    VertexId m = *std::min_element(msgs.begin(), msgs.end());
                    if (st.d == v.id && m < st.d) {
                        st.d = m;
                        st.window_changed = true;
                    }
                }
                ctx.request(st.d);
                break;
            }
            case 4: {  // star check: poison broken grandparents
                st.gp2 = ctx.get_resp(st.d).d;
                st.star_self = (st.gp2 == st.d);
                if (!st.star_self) ctx.send(st.gp2, v.id);
                break;
            }
            case 5: {  // settle own flag; share post-hook D; fetch grandparent flag
                st.flag0 = st.star_self && msgs.empty();
                ctx.broadcast(st.d);
                ctx.request(st.gp2);
                break;
            }
            case 6: {  // star hooking + round accounting
                st.star = ctx.get_resp(st.gp2).flag0;
                bool sent_hook = false;
                if (st.star && !msgs.empty()) {
                    VertexId cand = *std::min_element(msgs.begin(), msgs.end());
                    if (cand < st.gp2) {
                        ctx.send(st.d, cand);
                        sent_hook = true;
                    }
                }
                ctx.aggregate<bool>("sv.allstar", st.star);
                ctx.aggregate<bool>("sv.changed", st.window_changed || sent_hook);
                st.window_changed = false;
                break;
            }
        }
    }

    Respond respond(const VertexState<Value>& v, int) const { return {v.value.d, v.value.flag0}; }
    Message combine(const Message& a, const Message& b) const { return std::min(a, b); }

    void register_aggregators(AggregatorRegistry& r) const {
        r.add<bool>("sv.allstar", true, agg::land());
        r.add<bool>("sv.changed", false, agg::lor());
    }
};

// Hand-rolled variant: every pointer fetch is coded as send-request /
// serve / consume. Requester identities must survive, so no combiner.
struct SvMsg {
    enum Tag : std::uint8_t { kReq = 0, kData = 1, kBcast = 2, kHook = 3, kPoison = 4 };
    std::uint8_t tag = kReq;
    VertexId val;
    bool flag = false;
};

class SvMsgProgram {
public:
    using Value = SvValue;
    using Message = SvMsg;
    using Respond = NoRespond;

    static constexpr int kPeriod = 11;

    void compute(VertexState<Value>& v, std::span<const Message> msgs, Context<SvMsgProgram>& ctx) {
        auto& st = v.value;
        switch ((ctx.superstep() - 1) % kPeriod) {
            case 0: {
                if (ctx.superstep() == 1) st.d = v.id;
                if (VertexId m; min_tagged(msgs, SvMsg::kHook, m)) {
                    if (st.d == v.id && m < st.d) {
                        st.d = m;
                        st.window_changed = true;
                    }
                }
                if (ctx.superstep() > 1 && ctx.read_aggregate<bool>("sv.allstar") &&
                    !ctx.read_aggregate<bool>("sv.changed")) {
                    ctx.vote_to_halt();
                    return;
                }
                ctx.send(st.d, SvMsg{SvMsg::kReq, v.id, false});
                break;
            }
            case 1:
                serve(v, msgs, ctx);
                break;
            case 2: {
                VertexId nd = data_value(msgs).val;
                if (nd != st.d) {
                    st.d = nd;
                    st.window_changed = true;
                }
                ctx.broadcast(SvMsg{SvMsg::kBcast, st.d, false});
                ctx.send(st.d, SvMsg{SvMsg::kReq, v.id, false});
                break;
            }
            case 3:
                st.has_cand = min_tagged(msgs, SvMsg::kBcast, st.cand);
                serve(v, msgs, ctx);
                break;
            case 4: {
                VertexId gp = data_value(msgs).val;
                if (st.has_cand && gp == st.d && st.cand < st.d)
                    ctx.send(st.d, SvMsg{SvMsg::kHook, st.cand, false});
                break;
            }
            case 5: {
                if (VertexId m; min_tagged(msgs, SvMsg::kHook, m)) {
                    if (st.d == v.id && m < st.d) {
                        st.d = m;
                        st.window_changed = true;
                    }
                }
                ctx.send(st.d, SvMsg{SvMsg::kReq, v.id, false});
                break;
            }
            case 6:
                serve(v, msgs, ctx);
                break;
            case 7: {
                st.gp2 = data_value(msgs).val;
                st.star_self = (st.gp2 == st.d);
                if (!st.star_self) ctx.send(st.gp2, SvMsg{SvMsg::kPoison, v.id, false});
                ctx.broadcast(SvMsg{SvMsg::kBcast, st.d, false});
                break;
            }
            case 8: {
                bool poisoned = false;
                for (const Message& m : msgs) poisoned |= (m.tag == SvMsg::kPoison);
                st.flag0 = st.star_self && !poisoned;
                st.has_cand2 = min_tagged(msgs, SvMsg::kBcast, st.cand2);
                ctx.send(st.gp2, SvMsg{SvMsg::kReq, v.id, false});
                break;
            }
            case 9:
                serve(v, msgs, ctx);
                break;
            case 10: {
                st.star = data_value(msgs).flag;
                bool sent_hook = false;
                if (st.star && st.has_cand2 && st.cand2 < st.gp2) {
                    ctx.send(st.d, SvMsg{SvMsg::kHook, st.cand2, false});
                    sent_hook = true;
                }
                ctx.aggregate<bool>("sv.allstar", st.star);
                ctx.aggregate<bool>("sv.changed", st.window_changed || sent_hook);
                st.window_changed = false;
                break;
            }
        }
    }

    void register_aggregators(AggregatorRegistry& r) const {
        r.add<bool>("sv.allstar", true, agg::land());
        r.add<bool>("sv.changed", false, agg::lor());
    }

private:
    static bool min_tagged(std::span<const SvMsg> msgs, std::uint8_t tag, VertexId& out) {
        bool found = false;
        for (const SvMsg& m : msgs) {
            if (m.tag != tag) continue;
            if (!found || m.val < out) out = m.val;
            found = true;
        }
        return found;
    }

    static const SvMsg& data_value(std::span<const SvMsg> msgs) {
        for (const SvMsg& m : msgs)
            if (m.tag == SvMsg::kData) return m;
        throw Error("sv: expected a data reply this superstep");
    }

    void serve(const VertexState<Value>& v, std::span<const SvMsg> msgs, Context<SvMsgProgram>& ctx) {
        for (const SvMsg& m : msgs)
            if (m.tag == SvMsg::kReq) ctx.send(m.val, SvMsg{SvMsg::kData, v.value.d, v.value.flag0});
    }
};

struct SvOutcome {
    std::vector<std::pair<VertexId, VertexId>> component;  // (vertex, min id of its CC)
    int supersteps = 0;
    int rounds = 0;
    RunStats stats;
    ChannelAudit audit;
};

inline SvOutcome run_sv(const Graph& g, const AlgoOptions& opts) {
    if (g.directed()) throw Error("sv requires an undirected graph");
    SvOutcome out;
    if (opts.reqresp) {
        auto r = run_engine(g, SvReqProgram{}, opts.engine_config());
        for (auto& [id, st] : r.values) out.component.emplace_back(id, st.d);
        out.supersteps = r.supersteps;
        out.rounds = (r.supersteps - 1) / SvReqProgram::kPeriod;
        out.stats = std::move(r.stats);
        out.audit = std::move(r.audit);
    } else {
        auto r = run_engine(g, SvMsgProgram{}, opts.engine_config());
        for (auto& [id, st] : r.values) out.component.emplace_back(id, st.d);
        out.supersteps = r.supersteps;
        out.rounds = (r.supersteps - 1) / SvMsgProgram::kPeriod;
        out.stats = std::move(r.stats);
        out.audit = std::move(r.audit);
    }
    return out;
}

}  // namespace vcbsp
