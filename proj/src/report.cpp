#include "vcbsp/report.hpp"

#include <cmath>
#include <fstream>

#include "vcbsp/metrics.hpp"

namespace vcbsp {

namespace {

nlohmann::json counters_json(const WorkerCounters& c) {
    return {
        {"msg_sent", c.msg_sent},     {"msg_local", c.msg_local},
        {"msg_wire", c.msg_wire},     {"combined_away", c.combined_away},
        {"mir_sent", c.mir_sent},     {"mir_forwarded", c.mir_forwarded},
        {"req_sent", c.req_sent},     {"req_local", c.req_local},
        {"resp_sent", c.resp_sent},   {"resp_local", c.resp_local},
        {"delivered", c.delivered},   {"dropped", c.dropped},
    };
}

}  // namespace

nlohmann::json make_report(const ReportMeta& meta, const RunStats& stats, int supersteps,
                           const nlohmann::json& algorithm_info) {
    nlohmann::json j;
    j["schema"] = "vcbsp-report-v1";
    j["algorithm"] = meta.algorithm;
    j["graph"] = meta.graph;
    j["n"] = meta.n;
    j["m"] = meta.m;
    j["workers"] = meta.workers;
    j["threads"] = meta.threads;
    j["combiner"] = meta.combiner;
    if (meta.reqresp.has_value()) j["reqresp"] = *meta.reqresp;
    j["seed"] = meta.seed;
    j["supersteps"] = supersteps;

    j["mirror"] = {
        {"mode", stats.mirror.mode},
        {"threshold", std::isfinite(stats.mirror.threshold)
                          ? nlohmann::json(stats.mirror.threshold)
                          : nlohmann::json("inf")},
        {"mirrored_vertices", stats.mirror.mirrored_vertices},
        {"mirror_sites", stats.mirror.mirror_sites},
        {"setup_messages", stats.mirror.setup_messages},
    };

    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : stats.supersteps) {
        nlohmann::json workers = nlohmann::json::array();
        for (const auto& c : row.workers) workers.push_back(counters_json(c));
        rows.push_back({
            {"superstep", row.superstep},
            {"active_vertices", row.active_vertices},
            {"workers", std::move(workers)},
            {"t1_checked", row.t1_checked},
            {"t1_violations", row.t1_violations},
            {"t3_checked", row.t3_checked},
            {"t3_violations", row.t3_violations},
            {"t3_max_requesters", row.t3_max_requesters},
            {"t3_wire_at_max", row.t3_wire_at_max},
        });
    }
    j["per_superstep"] = std::move(rows);

    auto sent = per_worker_sent(stats);
    auto wire = per_worker_wire(stats);
    j["totals"] = {
        {"per_worker_sent", sent},
        {"per_worker_wire", wire},
        {"all", counters_json(stats.grand_total())},
    };
    j["bounds"] = {
        {"t1_checked", stats.t1_checked()},
        {"t1_violations", stats.t1_violations()},
        {"t3_checked", stats.t3_checked()},
        {"t3_violations", stats.t3_violations()},
    };
    auto imb = imbalance(sent);
    j["imbalance"] = {{"sent_max_mean", imb.max_mean}, {"sent_cv", imb.cv}};
    if (!algorithm_info.is_null() && !algorithm_info.empty()) j["algorithm_info"] = algorithm_info;
    return j;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write report: " + path.string());
    out << j.dump(2) << "\n";
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace vcbsp
