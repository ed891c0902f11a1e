#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "csf/graph.hpp"

namespace csf {

struct EnumerationLimits {
  // 7 vertices = 2^21 edge sets. Anything above kMaxCodedVertices is rejected regardless.
  int max_vertices = 7;
};

// Visits every decomposable labelled graph on n vertices once, in ascending edge_code order.
// Throws CapacityError if n exceeds the limit, DomainError if n < 1.
void for_each_decomposable(int n,
                           const std::function<void(std::uint64_t code, const DecomposableGraph&)>& visit,
                           EnumerationLimits limits = {});

std::vector<DecomposableGraph> enumerate_decomposable(int n, EnumerationLimits limits = {});
// Edge codes only, ascending.
std::vector<std::uint64_t> decomposable_codes(int n, EnumerationLimits limits = {});

// Count without materialising graphs. The code range is split across `workers` threads
// (0 = hardware concurrency); the result does not depend on the split.
std::uint64_t count_decomposable(int n, EnumerationLimits limits = {}, unsigned workers = 0);

}  // namespace csf
