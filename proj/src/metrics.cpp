#include "vcbsp/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace vcbsp {

std::vector<std::uint64_t> per_worker_sent(const RunStats& stats) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(stats.workers), 0);
    for (int w = 0; w < stats.workers; ++w) out[static_cast<std::size_t>(w)] = stats.worker_total(w).sent_total();
    return out;
}

std::vector<std::uint64_t> per_worker_wire(const RunStats& stats) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(stats.workers), 0);
    for (int w = 0; w < stats.workers; ++w) out[static_cast<std::size_t>(w)] = stats.worker_total(w).wire_total();
    return out;
}

Imbalance imbalance(std::span<const std::uint64_t> totals) {
    if (totals.empty()) throw Error("imbalance: empty vector");
    long double sum = 0.0L;
    std::uint64_t mx = 0;
    for (auto v : totals) {
        sum += static_cast<long double>(v);
        mx = std::max(mx, v);
    }
    if (sum == 0.0L) return Imbalance{1.0, 0.0};
    long double mean = sum / static_cast<long double>(totals.size());
    long double var = 0.0L;
    for (auto v : totals) {
        long double d = static_cast<long double>(v) - mean;
        var += d * d;
    }
    var /= static_cast<long double>(totals.size());
    return Imbalance{static_cast<double>(static_cast<long double>(mx) / mean),
                     static_cast<double>(std::sqrt(static_cast<double>(var)) / static_cast<double>(mean))};
}

TauSpec parse_tau(const std::string& text) {
    TauSpec t;
    t.label = text;
    if (text == "inf" || text == "off") {
        t.mode = MirrorMode::Off;
        t.value = std::numeric_limits<double>::infinity();
        return t;
    }
    if (text == "auto") {
        t.mode = MirrorMode::Auto;
        return t;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !(v >= 0.0))
        throw ParseError("bad mirror threshold '" + text + "' (number, 'auto', 'inf' or 'off')");
    t.mode = MirrorMode::Fixed;
    t.value = v;
    return t;
}

std::vector<SweepRow> sweep_thresholds(std::span<const TauSpec> taus, const SweepRunner& runner) {
    std::vector<SweepRow> rows;
    rows.reserve(taus.size());
    for (const TauSpec& t : taus) {
        auto [stats, supersteps] = runner(t.mode, t.value);
        SweepRow row;
        row.tau_label = t.label;
        row.tau = stats.mirror.threshold;
        row.supersteps = supersteps;
        auto wire = per_worker_wire(stats);
        auto sent = per_worker_sent(stats);
        for (auto v : wire) {
            row.total_wire += v;
            row.max_worker_wire = std::max(row.max_worker_wire, v);
        }
        for (auto v : sent) {
            row.total_sent += v;
            row.max_worker_sent = std::max(row.max_worker_sent, v);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_sweep_csv(const std::filesystem::path& path, std::span<const SweepRow> rows) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write csv: " + path.string());
    out << "tau,tau_value,total_wire,total_sent,max_worker_wire,max_worker_sent,supersteps\n";
    char buf[64];
    for (const SweepRow& r : rows) {
        if (std::isfinite(r.tau)) {
            std::snprintf(buf, sizeof(buf), "%.17g", r.tau);
        } else {
            std::snprintf(buf, sizeof(buf), "inf");
        }
        out << r.tau_label << ',' << buf << ',' << r.total_wire << ',' << r.total_sent << ','
            << r.max_worker_wire << ',' << r.max_worker_sent << ',' << r.supersteps << '\n';
    }
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace vcbsp
