#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "vcbsp/error.hpp"
#include "vcbsp/vertex_id.hpp"

namespace vcbsp {

// Degree threshold above which mirroring a vertex pays off under the
// random-neighbor cost model: workers * e^(deg_avg / workers).
inline double compute_threshold(int workers, double deg_avg) {
    if (workers < 1) throw Error("compute_threshold: worker count must be >= 1");
    if (deg_avg < 0.0) throw Error("compute_threshold: negative average degree");
    return static_cast<double>(workers) * std::exp(deg_avg / static_cast<double>(workers));
}

// Sender-side combining of one outgoing buffer: entries are grouped (sorted)
// by target id and each group is folded left-to-right into a single message.
// The stable sort keeps per-target insertion order, so folding a group gives
// bitwise the same value a receiver-side left fold over the uncombined batch
// would produce.
//
// When `check` is set and the message type is equality comparable, each group
// is refolded in reverse and from a rotated start; a mismatch means the
// combiner is not commutative/associative for the payloads actually seen.
template <typename Message, typename Combine>
std::vector<std::pair<VertexId, Message>> combine_batch(
    std::vector<std::pair<VertexId, Message>> buf, Combine&& combine,
    std::uint64_t& combined_away, bool check = false) {
    if (buf.size() <= 1) return buf;
    std::stable_sort(buf.begin(), buf.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<VertexId, Message>> out;
    std::size_t i = 0;
    while (i < buf.size()) {
        std::size_t j = i + 1;
        Message acc = buf[i].second;
        while (j < buf.size() && buf[j].first == buf[i].first) {
            acc = combine(acc, buf[j].second);
            ++j;
        }
        if constexpr (std::equality_comparable<Message>) {
            if (check && j - i > 1) {
                Message rev = buf[j - 1].second;
                for (std::size_t k = j - 1; k > i; --k) rev = combine(rev, buf[k - 1].second);
                Message rot = buf[j - 1].second;
                for (std::size_t k = i; k + 1 < j; ++k) rot = combine(rot, buf[k].second);
                if (!(rev == acc) || !(rot == acc))
                    throw Error("combiner is not commutative/associative on observed payloads (target " +
                                buf[i].first.str() + ")");
            }
        }
        combined_away += (j - i) - 1;
        out.emplace_back(buf[i].first, std::move(acc));
        i = j;
    }
    return out;
}

}  // namespace vcbsp
