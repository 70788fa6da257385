#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <exception>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "vcbsp/aggregator.hpp"
#include "vcbsp/channels.hpp"
#include "vcbsp/error.hpp"
#include "vcbsp/graph.hpp"
#include "vcbsp/stats.hpp"

namespace vcbsp {

template <typename ValueT>
struct VertexState {
    VertexId id;
    std::vector<Edge> out_edges;
    ValueT value{};
    bool active = true;
};

// Respond type for programs that never touch the request-respond channel.
struct NoRespond {};

enum class MirrorMode { Off, Fixed, Auto };
enum class UnknownTarget { Error, DropWarn };

struct EngineConfig {
    int workers = 4;
    int threads = 1;                 // <=0: one per worker, capped by hardware
    bool combiner = true;            // honor the program's combine() when defined
    MirrorMode mirror_mode = MirrorMode::Off;
    double mirror_threshold = 0.0;   // used when mirror_mode == Fixed
    int max_supersteps = 10000;
    UnknownTarget unknown_target = UnknownTarget::Error;
    bool check_bounds = true;        // per-vertex message bound instrumentation
    bool combiner_check = false;     // validate combine() on observed payloads
    std::uint64_t shuffle_seed = 0;  // nonzero: deterministically shuffle inboxes
    bool audit = false;              // record raw channel contents (tests only)
};

struct SuperstepLimitError : Error {
    SuperstepLimitError(const std::string& msg, RunStats partial)
        : Error(msg), stats(std::move(partial)) {}
    RunStats stats;
};

// ---- program feature detection --------------------------------------------

template <typename P>
concept HasCombine = requires(const P& p, const typename P::Message& a,
                              const typename P::Message& b) {
    { p.combine(a, b) } -> std::same_as<typename P::Message>;
};

template <typename P>
concept HasRelay = requires(const P& p, const Edge& e, const typename P::Message& m) {
    { p.relay(e, m) } -> std::same_as<typename P::Message>;
};

template <typename P>
concept HasRespond = requires(const P& p, const VertexState<typename P::Value>& v, int s) {
    { p.respond(v, s) } -> std::same_as<typename P::Respond>;
};

template <typename P>
concept HasAggregators = requires(const P& p, AggregatorRegistry& r) {
    p.register_aggregators(r);
};

namespace detail {

inline void parallel_for(int tasks, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || tasks <= 1) {
        for (int i = 0; i < tasks; ++i) fn(i);
        return;
    }
    int nt = std::min(threads, tasks);
    std::mutex mu;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < tasks; i += nt) fn(i);
            } catch (...) {
                std::scoped_lock lk(mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

template <typename P>
struct WorkerState {
    using Value = typename P::Value;
    using Message = typename P::Message;
    using Respond = typename P::Respond;

    int index = 0;
    std::vector<VertexState<Value>> verts;  // ascending id
    std::unordered_map<VertexId, std::uint32_t> t_in;

    std::vector<std::vector<Message>> inbox_cur, inbox_next;  // per local vertex

    // Ch_msg: per-destination outgoing buffers and their flushed wire batches.
    std::vector<std::vector<std::pair<VertexId, Message>>> out_msg;
    std::vector<std::vector<std::pair<VertexId, Message>>> wire_msg;

    // Ch_mir: broadcast payloads per destination worker (entry for the home
    // worker itself carries the local fan-out, which is not wire traffic).
    std::vector<std::vector<std::pair<VertexId, Message>>> out_mir;
    // Fan-out lists hosted on this worker: mirrored vertex -> local targets.
    std::unordered_map<VertexId, std::vector<std::pair<std::uint32_t, double>>> mirror_fanout;
    // For resident mirrored vertices: remote workers holding a mirror (sorted).
    std::unordered_map<VertexId, std::vector<int>> mirror_sites;

    // Ch_req.
    std::vector<std::unordered_set<VertexId>> req_set;   // per destination, deduping
    std::vector<std::vector<VertexId>> wire_req;         // flushed, sorted
    std::vector<std::map<VertexId, Respond>> resp_out;   // per destination, keyed by responder
    std::unordered_map<VertexId, Respond> resp_table;    // readable this superstep
    std::unordered_map<VertexId, Respond> resp_table_next;
    std::unordered_map<std::uint32_t, Respond> respond_cache;  // local idx -> value

    // Instrumentation scratch (reset each superstep).
    std::unordered_map<VertexId, std::uint64_t> bcast_wire;
    std::unordered_map<VertexId, std::uint64_t> req_calls;
    std::uint64_t t3_checked = 0, t3_violations = 0;
    std::uint64_t t3_best_l = 0, t3_best_wire = 0;
    VertexId t3_best_id;

    WorkerCounters cur;
    std::uint64_t computed = 0;
    bool warned_drop = false;

    std::vector<std::pair<std::string, std::unique_ptr<AggregatorBase>>> agg_partial;
};

template <typename P>
struct Shared {
    const P* program = nullptr;
    const EngineConfig* cfg = nullptr;
    int workers = 0;
    std::uint64_t n_total = 0;
    int superstep = 0;
    const std::vector<std::pair<std::string, std::unique_ptr<AggregatorBase>>>* readable = nullptr;
};

}  // namespace detail

// Per-worker view handed to compute(); all channel operations go through here.
template <typename P>
class Context {
public:
    using Value = typename P::Value;
    using Message = typename P::Message;
    using Respond = typename P::Respond;

    int superstep() const { return sh_->superstep; }
    int worker() const { return ws_->index; }
    int num_workers() const { return sh_->workers; }
    std::uint64_t num_vertices() const { return sh_->n_total; }

    void vote_to_halt() { ws_->verts[cur_].active = false; }

    // Point send through Ch_msg; no relay is applied.
    void send(const VertexId& tgt, Message m) {
        int p = partition(tgt, sh_->workers);
        ws_->out_msg[static_cast<std::size_t>(p)].emplace_back(tgt, std::move(m));
        ++ws_->cur.msg_sent;
        if (p == ws_->index) ++ws_->cur.msg_local;
    }

    // Send along a concrete out-edge; relay() is applied on the sender side.
    void send_along(const Edge& e, Message m) {
        if constexpr (HasRelay<P>) m = sh_->program->relay(e, m);
        send(e.target, std::move(m));
    }

    // Delivers one payload to every out-neighbor. High-degree vertices route
    // through their mirrors (relay applied at the receiver); everything else
    // falls back to per-edge Ch_msg sends (relay applied here).
    void broadcast(const Message& m) {
        auto& v = ws_->verts[cur_];
        std::uint64_t wire = 0;
        auto sites = ws_->mirror_sites.find(v.id);
        if (sites != ws_->mirror_sites.end()) {
            for (int w : sites->second)
                ws_->out_mir[static_cast<std::size_t>(w)].emplace_back(v.id, m);
            if (ws_->mirror_fanout.contains(v.id))
                ws_->out_mir[static_cast<std::size_t>(ws_->index)].emplace_back(v.id, m);
            wire = sites->second.size();
            ws_->cur.mir_sent += wire;
        } else {
            for (const Edge& e : v.out_edges) {
                Message mm = m;
                if constexpr (HasRelay<P>) mm = sh_->program->relay(e, mm);
                int p = partition(e.target, sh_->workers);
                ws_->out_msg[static_cast<std::size_t>(p)].emplace_back(e.target, std::move(mm));
                ++ws_->cur.msg_sent;
                if (p == ws_->index)
                    ++ws_->cur.msg_local;
                else
                    ++wire;
            }
        }
        if (sh_->cfg->check_bounds) ws_->bcast_wire[v.id] += wire;
    }

    // Asks vertex u for its respond() value; readable next superstep via
    // get_resp(). Duplicate requests from one worker collapse to one entry.
    void request(const VertexId& u) {
        static_assert(HasRespond<P>, "program must define respond() to use request()");
        ws_->req_set[static_cast<std::size_t>(partition(u, sh_->workers))].insert(u);
        if (sh_->cfg->check_bounds) ++ws_->req_calls[u];
    }

    // Pushes this vertex's respond() value toward v's worker without a request
    // exchange. Deduplicated per (responder, destination worker).
    void respond_to(const VertexId& v) {
        static_assert(HasRespond<P>, "program must define respond() to use respond_to()");
        auto [it, fresh] = ws_->respond_cache.try_emplace(cur_);
        if (fresh) it->second = sh_->program->respond(ws_->verts[cur_], sh_->superstep);
        int p = partition(v, sh_->workers);
        ws_->resp_out[static_cast<std::size_t>(p)].try_emplace(ws_->verts[cur_].id, it->second);
    }

    bool has_resp(const VertexId& u) const { return ws_->resp_table.contains(u); }

    const Respond& get_resp(const VertexId& u) const {
        auto it = ws_->resp_table.find(u);
        if (it == ws_->resp_table.end())
            throw Error("get_resp: no response recorded for vertex " + u.str() +
                        " (not requested or responded last superstep)");
        return it->second;
    }

    template <typename T>
    void aggregate(const std::string& name, const T& v) {
        for (auto& [n, ptr] : ws_->agg_partial) {
            if (n == name) {
                auto* a = dynamic_cast<Aggregator<T>*>(ptr.get());
                if (!a) throw Error("aggregator '" + name + "': type mismatch");
                a->add(v);
                return;
            }
        }
        throw Error("unknown aggregator '" + name + "'");
    }

    template <typename T>
    const T& read_aggregate(const std::string& name) const {
        for (const auto& [n, ptr] : *sh_->readable) {
            if (n == name) {
                const auto* a = dynamic_cast<const Aggregator<T>*>(ptr.get());
                if (!a) throw Error("aggregator '" + name + "': type mismatch");
                return a->get();
            }
        }
        throw Error("unknown aggregator '" + name + "'");
    }

private:
    template <typename Q>
    friend class Engine;

    detail::WorkerState<P>* ws_ = nullptr;
    const detail::Shared<P>* sh_ = nullptr;
    std::uint32_t cur_ = 0;
};

template <typename P>
struct RunResult {
    std::vector<std::pair<VertexId, typename P::Value>> values;  // ascending id
    RunStats stats;
    ChannelAudit audit;
    int supersteps = 0;
};

template <typename P>
class Engine {
public:
    using Value = typename P::Value;
    using Message = typename P::Message;
    using Respond = typename P::Respond;

    Engine(const Graph& g, P program, EngineConfig cfg)
        : program_(std::move(program)), cfg_(cfg) {
        if (cfg_.workers < 1) throw Error("engine: worker count must be >= 1");
        if (cfg_.max_supersteps < 1) throw Error("engine: max_supersteps must be >= 1");
        const int M = cfg_.workers;
        threads_ = cfg_.threads > 0
                       ? std::min(cfg_.threads, M)
                       : std::min(M, static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));

        if constexpr (HasAggregators<P>) program_.register_aggregators(registry_);

        workers_.resize(static_cast<std::size_t>(M));
        for (int w = 0; w < M; ++w) {
            auto& ws = workers_[static_cast<std::size_t>(w)];
            ws.index = w;
            ws.out_msg.resize(static_cast<std::size_t>(M));
            ws.wire_msg.resize(static_cast<std::size_t>(M));
            ws.out_mir.resize(static_cast<std::size_t>(M));
            ws.req_set.resize(static_cast<std::size_t>(M));
            ws.wire_req.resize(static_cast<std::size_t>(M));
            ws.resp_out.resize(static_cast<std::size_t>(M));
            for (const auto& [name, proto] : registry_.defs())
                ws.agg_partial.emplace_back(name, proto->clone_identity());
        }
        for (const auto& gv : g.vertices()) {
            auto& ws = workers_[static_cast<std::size_t>(partition(gv.id, M))];
            ws.verts.push_back(VertexState<Value>{gv.id, gv.out_edges, Value{}, true});
        }
        for (auto& ws : workers_) {
            ws.t_in.reserve(ws.verts.size());
            for (std::uint32_t i = 0; i < ws.verts.size(); ++i) ws.t_in.emplace(ws.verts[i].id, i);
            ws.inbox_cur.resize(ws.verts.size());
            ws.inbox_next.resize(ws.verts.size());
        }

        for (const auto& [name, proto] : registry_.defs())
            readable_.emplace_back(name, proto->clone_identity());

        shared_.program = &program_;
        shared_.cfg = &cfg_;
        shared_.workers = M;
        shared_.n_total = g.vertex_count();
        shared_.readable = &readable_;

        stats_.workers = M;
        build_mirrors(g);
    }

    RunResult<P> run() {
        RunResult<P> out;
        if (shared_.n_total == 0) {
            out.stats = stats_;
            return out;
        }
        const int M = cfg_.workers;
        int final_superstep = 0;
        for (int s = 1;; ++s) {
            shared_.superstep = s;
            SuperstepRow row;
            row.superstep = s;
            row.workers.resize(static_cast<std::size_t>(M));

            detail::parallel_for(M, threads_, [&](int w) { compute_phase(w); });
            barrier(s);

            for (int w = 0; w < M; ++w) {
                row.workers[static_cast<std::size_t>(w)] = workers_[static_cast<std::size_t>(w)].cur;
                row.active_vertices += workers_[static_cast<std::size_t>(w)].computed;
            }
            collect_bound_rows(row);
            stats_.supersteps.push_back(row);

            std::uint64_t active = 0, traffic = 0, pending = 0;
            for (const auto& ws : workers_) {
                for (const auto& v : ws.verts) active += v.active ? 1 : 0;
                traffic += ws.cur.delivered + ws.cur.mir_forwarded;
                pending += ws.resp_table.size();
            }
            if (active == 0 && traffic == 0 && pending == 0) {
                final_superstep = s;
                break;
            }
            if (s >= cfg_.max_supersteps)
                throw SuperstepLimitError(
                    "superstep limit (" + std::to_string(cfg_.max_supersteps) + ") exceeded", stats_);
        }

        out.supersteps = final_superstep;
        out.stats = stats_;
        out.audit = std::move(audit_);
        out.values.reserve(shared_.n_total);
        for (auto& ws : workers_)
            for (auto& v : ws.verts) out.values.emplace_back(v.id, std::move(v.value));
        std::sort(out.values.begin(), out.values.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

private:
    void build_mirrors(const Graph& g) {
        const int M = cfg_.workers;
        double tau = std::numeric_limits<double>::infinity();
        switch (cfg_.mirror_mode) {
            case MirrorMode::Off:
                stats_.mirror.mode = "off";
                break;
            case MirrorMode::Fixed:
                if (cfg_.mirror_threshold < 0.0) throw Error("mirror threshold must be >= 0");
                tau = cfg_.mirror_threshold;
                stats_.mirror.mode = "fixed";
                break;
            case MirrorMode::Auto:
                stats_.mirror.mode = "auto";
                if (g.vertex_count() > 0) tau = compute_threshold(M, degree_stats(g).deg_avg);
                break;
        }
        stats_.mirror.threshold = tau;
        if (!std::isfinite(tau)) return;

        for (auto& home : workers_) {
            for (std::uint32_t i = 0; i < home.verts.size(); ++i) {
                const auto& v = home.verts[i];
                if (static_cast<double>(v.out_edges.size()) < tau) continue;
                std::map<int, std::vector<std::pair<VertexId, double>>> groups;
                for (const Edge& e : v.out_edges)
                    groups[partition(e.target, M)].emplace_back(e.target, e.weight);
                std::vector<int> sites;
                for (auto& [w, members] : groups) {
                    auto& host = workers_[static_cast<std::size_t>(w)];
                    auto& fan = host.mirror_fanout[v.id];
                    fan.reserve(members.size());
                    for (auto& [tgt, weight] : members) fan.emplace_back(host.t_in.at(tgt), weight);
                    if (w != home.index) sites.push_back(w);
                }
                home.mirror_sites.emplace(v.id, std::move(sites));
                ++stats_.mirror.mirrored_vertices;
                const auto remote = home.mirror_sites.at(v.id).size();
                stats_.mirror.mirror_sites += remote;
                stats_.mirror.setup_messages += remote;
            }
        }
    }

    void compute_phase(int w) {
        auto& ws = workers_[static_cast<std::size_t>(w)];
        ws.cur = WorkerCounters{};
        ws.computed = 0;
        ws.bcast_wire.clear();
        ws.req_calls.clear();
        ws.respond_cache.clear();
        ws.t3_checked = ws.t3_violations = 0;
        ws.t3_best_l = ws.t3_best_wire = 0;
        ws.t3_best_id = VertexId{};

        Context<P> ctx;
        ctx.ws_ = &ws;
        ctx.sh_ = &shared_;
        for (std::uint32_t i = 0; i < ws.verts.size(); ++i) {
            if (!ws.verts[i].active) continue;
            ++ws.computed;
            ctx.cur_ = i;
            program_.compute(ws.verts[i], std::span<const Message>(ws.inbox_cur[i]), ctx);
        }
        for (auto& box : ws.inbox_cur) box.clear();
    }

    void flush_msg(int w) {
        auto& ws = workers_[static_cast<std::size_t>(w)];
        const int M = cfg_.workers;
        for (int j = 0; j < M; ++j) {
            auto& buf = ws.out_msg[static_cast<std::size_t>(j)];
            if (cfg_.audit) {
                auto& slot = audit_.rows.back().msg[static_cast<std::size_t>(w)][static_cast<std::size_t>(j)];
                slot.pre_targets.reserve(buf.size());
                for (const auto& [tgt, m] : buf) slot.pre_targets.push_back(tgt);
            }
            if constexpr (HasCombine<P>) {
                if (cfg_.combiner) {
                    buf = combine_batch(std::move(buf),
                                        [this](const Message& a, const Message& b) {
                                            return program_.combine(a, b);
                                        },
                                        ws.cur.combined_away, cfg_.combiner_check);
                }
            }
            if (j != w) ws.cur.msg_wire += buf.size();
            if (cfg_.audit)
                audit_.rows.back().msg[static_cast<std::size_t>(w)][static_cast<std::size_t>(j)].wire =
                    buf.size();
            ws.wire_msg[static_cast<std::size_t>(j)] = std::move(buf);
            buf.clear();
        }
    }

    void deliver(int j, int superstep) {
        auto& dst = workers_[static_cast<std::size_t>(j)];
        const int M = cfg_.workers;
        for (int i = 0; i < M; ++i) {
            auto& batch = workers_[static_cast<std::size_t>(i)].wire_msg[static_cast<std::size_t>(j)];
            for (auto& [tgt, m] : batch) {
                auto it = dst.t_in.find(tgt);
                if (it == dst.t_in.end()) {
                    if (cfg_.unknown_target == UnknownTarget::Error)
                        throw Error("message sent to non-existent vertex " + tgt.str());
                    ++dst.cur.dropped;
                    if (!dst.warned_drop) {
                        std::cerr << "vcbsp: warning: dropping message(s) to non-existent vertex "
                                  << tgt.str() << "\n";
                        dst.warned_drop = true;
                    }
                    continue;
                }
                dst.inbox_next[it->second].push_back(std::move(m));
                dst.verts[it->second].active = true;
                ++dst.cur.delivered;
            }
        }
        for (int i = 0; i < M; ++i) {
            auto& batch = workers_[static_cast<std::size_t>(i)].out_mir[static_cast<std::size_t>(j)];
            for (const auto& [vid, m] : batch) {
                const auto& fan = dst.mirror_fanout.at(vid);
                for (const auto& [idx, weight] : fan) {
                    Message mm = m;
                    if constexpr (HasRelay<P>)
                        mm = program_.relay(Edge{dst.verts[idx].id, weight}, mm);
                    dst.inbox_next[idx].push_back(std::move(mm));
                    dst.verts[idx].active = true;
                    ++dst.cur.mir_forwarded;
                }
            }
        }
        if (cfg_.shuffle_seed != 0) {
            for (std::uint32_t i = 0; i < dst.verts.size(); ++i) {
                auto& box = dst.inbox_next[i];
                if (box.size() < 2) continue;
                std::mt19937_64 rng(cfg_.shuffle_seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(superstep)) ^
                                    dst.verts[i].id.hash());
                for (std::size_t k = box.size() - 1; k > 0; --k)
                    std::swap(box[k], box[rng() % (k + 1)]);
            }
        }
    }

    void flush_requests(int w) {
        auto& ws = workers_[static_cast<std::size_t>(w)];
        const int M = cfg_.workers;
        for (int k = 0; k < M; ++k) {
            auto& set = ws.req_set[static_cast<std::size_t>(k)];
            auto& vec = ws.wire_req[static_cast<std::size_t>(k)];
            vec.assign(set.begin(), set.end());
            std::sort(vec.begin(), vec.end());
            set.clear();
            if (k == w)
                ws.cur.req_local += vec.size();
            else
                ws.cur.req_sent += vec.size();
            if (cfg_.audit)
                audit_.rows.back().requests[static_cast<std::size_t>(w)][static_cast<std::size_t>(k)] = vec;
        }
        if (cfg_.audit) audit_.rows.back().request_calls[static_cast<std::size_t>(w)] = ws.req_calls;
    }

    void respond_phase(int d, int superstep) {
        if constexpr (HasRespond<P>) {
            auto& home = workers_[static_cast<std::size_t>(d)];
            const int M = cfg_.workers;
            for (int j = 0; j < M; ++j) {
                for (const VertexId& u : workers_[static_cast<std::size_t>(j)].wire_req[static_cast<std::size_t>(d)]) {
                    auto it = home.t_in.find(u);
                    if (it == home.t_in.end())
                        throw Error("respond(): requested vertex " + u.str() + " does not exist");
                    auto [cit, fresh] = home.respond_cache.try_emplace(it->second);
                    if (fresh) cit->second = program_.respond(home.verts[it->second], superstep);
                    home.resp_out[static_cast<std::size_t>(j)].try_emplace(u, cit->second);
                }
            }
            if (cfg_.check_bounds) {
                // requester count per resident vertex, over all workers
                std::unordered_map<VertexId, std::uint64_t> requesters;
                for (const auto& src : workers_)
                    for (const auto& [u, c] : src.req_calls)
                        if (partition(u, M) == d) requesters[u] += c;
                std::unordered_map<VertexId, std::uint64_t> wire_req;
                for (int j = 0; j < M; ++j) {
                    if (j == d) continue;
                    for (const VertexId& u : workers_[static_cast<std::size_t>(j)].wire_req[static_cast<std::size_t>(d)])
                        ++wire_req[u];
                }
                for (const auto& [u, l] : requesters) {
                    auto wit = wire_req.find(u);
                    std::uint64_t wr = wit == wire_req.end() ? 0 : wit->second;
                    std::uint64_t cap = std::min<std::uint64_t>(static_cast<std::uint64_t>(M), l);
                    ++home.t3_checked;
                    if (2 * wr > 2 * cap) ++home.t3_violations;
                    if (l > home.t3_best_l || (l == home.t3_best_l && l > 0 && u < home.t3_best_id)) {
                        home.t3_best_l = l;
                        home.t3_best_wire = 2 * wr;
                        home.t3_best_id = u;
                    }
                }
            }
            for (int j = 0; j < M; ++j) {
                auto sz = home.resp_out[static_cast<std::size_t>(j)].size();
                if (j == d)
                    home.cur.resp_local += sz;
                else
                    home.cur.resp_sent += sz;
            }
        }
    }

    void build_resp_tables(int k) {
        if constexpr (HasRespond<P>) {
            auto& rk = workers_[static_cast<std::size_t>(k)];
            rk.resp_table_next.clear();
            for (const auto& src : workers_)
                for (const auto& [rid, val] : src.resp_out[static_cast<std::size_t>(k)])
                    rk.resp_table_next.emplace(rid, val);
        }
    }

    void barrier(int s) {
        const int M = cfg_.workers;
        if (cfg_.audit) {
            ChannelAudit::Row arow;
            arow.superstep = s;
            arow.msg.assign(static_cast<std::size_t>(M), std::vector<ChannelAudit::PairMsgs>(static_cast<std::size_t>(M)));
            arow.requests.assign(static_cast<std::size_t>(M),
                                 std::vector<std::vector<VertexId>>(static_cast<std::size_t>(M)));
            arow.request_calls.resize(static_cast<std::size_t>(M));
            arow.broadcast_wire.resize(static_cast<std::size_t>(M));
            audit_.rows.push_back(std::move(arow));
        }

        detail::parallel_for(M, threads_, [&](int w) { flush_msg(w); });
        detail::parallel_for(M, threads_, [&](int j) { deliver(j, s); });
        detail::parallel_for(M, threads_, [&](int w) {
            auto& ws = workers_[static_cast<std::size_t>(w)];
            for (auto& b : ws.wire_msg) b.clear();
            for (auto& b : ws.out_mir) b.clear();
        });

        detail::parallel_for(M, threads_, [&](int w) { flush_requests(w); });
        detail::parallel_for(M, threads_, [&](int d) { respond_phase(d, s); });
        detail::parallel_for(M, threads_, [&](int k) { build_resp_tables(k); });
        detail::parallel_for(M, threads_, [&](int w) {
            auto& ws = workers_[static_cast<std::size_t>(w)];
            for (auto& v : ws.wire_req) v.clear();
            for (auto& m : ws.resp_out) m.clear();
            ws.resp_table = std::move(ws.resp_table_next);
            ws.resp_table_next.clear();
        });

        for (std::size_t a = 0; a < readable_.size(); ++a) {
            auto merged = registry_.defs()[a].second->clone_identity();
            for (auto& ws : workers_) {
                merged->merge_from(*ws.agg_partial[a].second);
                ws.agg_partial[a].second->reset();
            }
            readable_[a].second = std::move(merged);
        }

        detail::parallel_for(M, threads_, [&](int w) {
            auto& ws = workers_[static_cast<std::size_t>(w)];
            std::swap(ws.inbox_cur, ws.inbox_next);
        });
    }

    void collect_bound_rows(SuperstepRow& row) {
        if (!cfg_.check_bounds) return;
        const int M = cfg_.workers;
        for (auto& ws : workers_) {
            for (const auto& [vid, wire] : ws.bcast_wire) {
                std::uint64_t d = ws.verts[ws.t_in.at(vid)].out_edges.size();
                std::uint64_t cap = std::min<std::uint64_t>(static_cast<std::uint64_t>(M), d);
                ++row.t1_checked;
                if (wire > cap) ++row.t1_violations;
                if (cfg_.audit)
                    audit_.rows.back().broadcast_wire[static_cast<std::size_t>(ws.index)][vid] = {wire, cap};
            }
            row.t3_checked += ws.t3_checked;
            row.t3_violations += ws.t3_violations;
            if (ws.t3_best_l > row.t3_max_requesters) {
                row.t3_max_requesters = ws.t3_best_l;
                row.t3_wire_at_max = ws.t3_best_wire;
            }
        }
    }

    P program_;
    EngineConfig cfg_;
    int threads_ = 1;
    AggregatorRegistry registry_;
    std::vector<std::pair<std::string, std::unique_ptr<AggregatorBase>>> readable_;
    std::vector<detail::WorkerState<P>> workers_;
    detail::Shared<P> shared_;
    RunStats stats_;
    ChannelAudit audit_;
};

template <typename P>
RunResult<P> run_engine(const Graph& g, P program, const EngineConfig& cfg) {
    Engine<P> engine(g, std::move(program), cfg);
    return engine.run();
}

}  // namespace vcbsp
