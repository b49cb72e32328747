#ifndef FLAGCERT_DETAIL_SMALL_GRAPH_HPP
#define FLAGCERT_DETAIL_SMALL_GRAPH_HPP

#include <array>
#include <cstdint>
#include <span>

#include "flagcert/graph.hpp"

namespace flagcert::detail {

// Adjacency masks of a graph on at most 8 vertices.
using SmallAdjacency = std::array<std::uint16_t, kMaxCanonicalOrder>;

// Masks of g restricted to `order`, vertex order[a] becoming a.
SmallAdjacency small_adjacency(const Graph& g, std::span<const int> order);

// Minimal column-major upper-triangle code over orderings that keep vertices
// 0..fixed-1 in place.
std::uint64_t min_code(const SmallAdjacency& adj, int n, int fixed);

}  // namespace flagcert::detail

#endif  // FLAGCERT_DETAIL_SMALL_GRAPH_HPP
