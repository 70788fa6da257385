#include "vcbsp/vertex_id.hpp"

#include <charconv>

namespace vcbsp {

namespace {

std::int64_t parse_i64(std::string_view tok) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError("bad vertex id token '" + std::string(tok) + "'");
    return v;
}

}  // namespace

VertexId VertexId::parse(std::string_view tok, bool pair_kind) {
    if (!pair_kind) return VertexId::of(parse_i64(tok));
    auto colon = tok.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size())
        throw ParseError("bad pair vertex id token '" + std::string(tok) + "' (expected a:b)");
    return VertexId::of_pair(parse_i64(tok.substr(0, colon)), parse_i64(tok.substr(colon + 1)));
}

}  // namespace vcbsp
