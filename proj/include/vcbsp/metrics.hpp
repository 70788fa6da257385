#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vcbsp/engine.hpp"
#include "vcbsp/stats.hpp"

namespace vcbsp {

// Per-worker totals over a whole run. "sent" counts every message emission
// (Pregel semantics, local included); "wire" counts only cross-worker traffic
// on all three channels.
std::vector<std::uint64_t> per_worker_sent(const RunStats& stats);
std::vector<std::uint64_t> per_worker_wire(const RunStats& stats);

struct Imbalance {
    double max_mean = 0.0;  // max / mean
    double cv = 0.0;        // population stddev / mean
};

// Errors on an empty vector; an all-zero vector is defined as (1.0, 0.0).
Imbalance imbalance(std::span<const std::uint64_t> totals);

// One mirroring-threshold setting of a sweep. label is what the user asked
// for ("10", "inf", "auto"); value is the resolved tau.
struct TauSpec {
    std::string label;
    MirrorMode mode = MirrorMode::Off;
    double value = 0.0;
};

// Accepts a number, "inf"/"off", or "auto".
TauSpec parse_tau(const std::string& text);

struct SweepRow {
    std::string tau_label;
    double tau = 0.0;  // resolved threshold (inf when mirroring is off)
    std::uint64_t total_wire = 0;
    std::uint64_t total_sent = 0;
    std::uint64_t max_worker_wire = 0;
    std::uint64_t max_worker_sent = 0;
    int supersteps = 0;
};

// Runs the provided runner once per threshold, in order. The runner returns
// (stats, supersteps) for the given mirroring setting.
using SweepRunner = std::function<std::pair<RunStats, int>(MirrorMode, double)>;
std::vector<SweepRow> sweep_thresholds(std::span<const TauSpec> taus, const SweepRunner& runner);

// CSV schema v1:
//   tau,tau_value,total_wire,total_sent,max_worker_wire,max_worker_sent,supersteps
void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows);

}  // namespace vcbsp
