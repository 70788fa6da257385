#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "vcbsp/error.hpp"

namespace vcbsp {

// Vertex identifier. Two kinds are supported: a plain 64-bit integer, and an
// ordered pair of 64-bit integers (handy when vertices of a derived graph
// correspond to edges of the original one). A graph uses one kind throughout.
class VertexId {
public:
    constexpr VertexId() = default;

    static constexpr VertexId of(std::int64_t v) { return VertexId(false, v, 0); }
    static constexpr VertexId of_pair(std::int64_t a, std::int64_t b) { return VertexId(true, a, b); }

    constexpr bool is_pair() const { return pair_; }
    constexpr std::int64_t value() const { return a_; }
    constexpr std::int64_t first() const { return a_; }
    constexpr std::int64_t second() const { return b_; }

    // Stable mixed hash, identical across runs and platforms.
    std::uint64_t hash() const {
        std::uint64_t h = mix64(static_cast<std::uint64_t>(a_));
        if (pair_) h = mix64(h ^ (static_cast<std::uint64_t>(b_) + 0x9e3779b97f4a7c15ULL));
        return h;
    }

    friend constexpr auto operator<=>(const VertexId&, const VertexId&) = default;

    std::string str() const {
        if (!pair_) return std::to_string(a_);
        return std::to_string(a_) + ":" + std::to_string(b_);
    }

    // Parses "123" (int kind) or "a:b" (pair kind). Throws ParseError on junk.
    static VertexId parse(std::string_view tok, bool pair_kind);

private:
    constexpr VertexId(bool pair, std::int64_t a, std::int64_t b) : pair_(pair), a_(a), b_(b) {}

    static constexpr std::uint64_t mix64(std::uint64_t x) {
        // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    bool pair_ = false;
    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
};

// Hash partitioning: maps a vertex id to a worker index in [0, workers).
// Integer ids use the value itself (mod workers); pair ids use the mixed hash.
inline int partition(const VertexId& id, int workers) {
    if (workers < 1) throw Error("partition: worker count must be >= 1");
    std::uint64_t key = id.is_pair() ? id.hash() : static_cast<std::uint64_t>(id.value());
    return static_cast<int>(key % static_cast<std::uint64_t>(workers));
}

}  // namespace vcbsp

template <>
struct std::hash<vcbsp::VertexId> {
    std::size_t operator()(const vcbsp::VertexId& id) const noexcept {
        return static_cast<std::size_t>(id.hash());
    }
};
