#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "vcbsp/stats.hpp"

namespace vcbsp {

struct ReportMeta {
    std::string algorithm;
    std::string graph;  // path, or "<memory>" for in-process fixtures
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    int workers = 0;
    int threads = 0;
    bool combiner = true;
    std::optional<bool> reqresp;  // absent when the algorithm has one variant
    std::uint64_t seed = 0;
};

// Stable, timestamp-free JSON run report (schema "vcbsp-report-v1"): identical
// configs produce byte-identical reports.
nlohmann::json make_report(const ReportMeta& meta, const RunStats& stats, int supersteps,
                           const nlohmann::json& algorithm_info = nlohmann::json::object());

void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace vcbsp
