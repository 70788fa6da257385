#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "vcbsp/vertex_id.hpp"

namespace vcbsp {

// Per-worker, per-superstep channel counters. "sent" follows Pregel semantics
// (every send counts, local or not); the wire subset is tracked separately and
// is what the message-bound checks are evaluated over.
struct WorkerCounters {
    std::uint64_t msg_sent = 0;       // point messages emitted (incl. local)
    std::uint64_t msg_local = 0;      // subset of msg_sent staying on this worker
    std::uint64_t msg_wire = 0;       // post-combine batch entries shipped to other workers
    std::uint64_t combined_away = 0;  // messages removed by sender-side combining
    std::uint64_t mir_sent = 0;       // broadcast messages to remote mirrors (wire)
    std::uint64_t mir_forwarded = 0;  // local fan-out performed by mirrors hosted here
    std::uint64_t req_sent = 0;       // wire request-set entries
    std::uint64_t req_local = 0;      // request-set entries resolved on this worker
    std::uint64_t resp_sent = 0;      // wire response-set entries
    std::uint64_t resp_local = 0;     // response-set entries staying local
    std::uint64_t delivered = 0;      // point messages appended to incoming buffers here
    std::uint64_t dropped = 0;        // messages to unknown vertices (drop-with-warning mode)

    std::uint64_t sent_total() const { return msg_sent + mir_sent; }
    std::uint64_t wire_total() const { return msg_wire + mir_sent + req_sent + resp_sent; }

    WorkerCounters& operator+=(const WorkerCounters& o) {
        msg_sent += o.msg_sent;
        msg_local += o.msg_local;
        msg_wire += o.msg_wire;
        combined_away += o.combined_away;
        mir_sent += o.mir_sent;
        mir_forwarded += o.mir_forwarded;
        req_sent += o.req_sent;
        req_local += o.req_local;
        resp_sent += o.resp_sent;
        resp_local += o.resp_local;
        delivered += o.delivered;
        dropped += o.dropped;
        return *this;
    }
};

struct SuperstepRow {
    int superstep = 0;
    std::uint64_t active_vertices = 0;  // vertices that ran compute() this superstep
    std::vector<WorkerCounters> workers;

    // Broadcast bound (min{M, d(v)} per broadcasting vertex).
    std::uint64_t t1_checked = 0;
    std::uint64_t t1_violations = 0;
    // Request-respond bound (2*min{M, requesters} per requested vertex).
    std::uint64_t t3_checked = 0;
    std::uint64_t t3_violations = 0;
    std::uint64_t t3_max_requesters = 0;   // largest requester count of any vertex
    std::uint64_t t3_wire_at_max = 0;      // wire requests+responses for that vertex
};

struct MirrorInfo {
    std::string mode = "off";          // off | fixed | auto
    double threshold = 0.0;            // resolved tau (inf when off)
    std::uint64_t mirrored_vertices = 0;
    std::uint64_t mirror_sites = 0;    // remote (vertex, worker) mirror pairs
    std::uint64_t setup_messages = 0;  // preprocessing cost, excluded from run counters
};

struct RunStats {
    int workers = 0;
    MirrorInfo mirror;
    std::vector<SuperstepRow> supersteps;

    WorkerCounters worker_total(int w) const {
        WorkerCounters t;
        for (const auto& row : supersteps) t += row.workers[static_cast<std::size_t>(w)];
        return t;
    }
    WorkerCounters grand_total() const {
        WorkerCounters t;
        for (int w = 0; w < workers; ++w) t += worker_total(w);
        return t;
    }
    std::uint64_t t1_violations() const {
        std::uint64_t v = 0;
        for (const auto& row : supersteps) v += row.t1_violations;
        return v;
    }
    std::uint64_t t1_checked() const {
        std::uint64_t v = 0;
        for (const auto& row : supersteps) v += row.t1_checked;
        return v;
    }
    std::uint64_t t3_violations() const {
        std::uint64_t v = 0;
        for (const auto& row : supersteps) v += row.t3_violations;
        return v;
    }
    std::uint64_t t3_checked() const {
        std::uint64_t v = 0;
        for (const auto& row : supersteps) v += row.t3_checked;
        return v;
    }
};

// Raw per-pair channel contents, recorded only when EngineConfig::audit is on.
// Tests use this to replay combining and deduplication with brute-force oracles.
struct ChannelAudit {
    struct PairMsgs {
        std::vector<VertexId> pre_targets;  // Ch_msg targets before combining
        std::uint64_t wire = 0;             // batch entries after combining
    };
    struct Row {
        int superstep = 0;
        // indexed [src][dst]
        std::vector<std::vector<PairMsgs>> msg;
        std::vector<std::vector<std::vector<VertexId>>> requests;  // deduped, sorted
        // per source worker: request() call counts per target vertex
        std::vector<std::unordered_map<VertexId, std::uint64_t>> request_calls;
        // per home worker: broadcast wire messages and cap per broadcasting vertex
        std::vector<std::unordered_map<VertexId, std::pair<std::uint64_t, std::uint64_t>>> broadcast_wire;
    };
    std::vector<Row> rows;
};

}  // namespace vcbsp
