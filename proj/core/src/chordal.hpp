#pragma once

#include <span>

#include "csf/vertex_set.hpp"

namespace csf::detail {

// Maximum cardinality search with lowest-index tie-breaking. Writes the visit order into
// `order` (size n) and returns whether the graph is chordal, using the Tarjan–Yannakakis
// zero-fill-in test on the reverse order. Aborts the search at the first violation.
bool max_cardinality_search(std::span<const VertexSet> adj, std::span<int> order);

}  // namespace csf::detail
