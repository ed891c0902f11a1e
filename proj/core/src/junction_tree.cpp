#include "csf/junction_tree.hpp"

#include <string>

#include "csf/error.hpp"

namespace csf {

PluperfectOrder pluperfect_order(std::vector<VertexSet> clique_list, std::optional<std::size_t> first) {
  PluperfectOrder out;
  const std::size_t count = clique_list.size();
  if (count == 0) return out;
  const std::size_t start = first.value_or(0);
  if (start >= count) {
    throw PreconditionError("first clique index " + std::to_string(start) + " out of range (" +
                            std::to_string(count) + " cliques)");
  }

  // Prim's algorithm on the clique intersection graph, weights |C_i ∩ C_k|. best[k] is the
  // largest intersection of clique k with any visited clique, parent[k] the earliest position
  // in the order achieving it.
  std::vector<bool> visited(count, false);
  std::vector<int> best(count, -1);
  std::vector<std::size_t> parent(count, 0);

  auto visit = [&](std::size_t k, std::size_t position) {
    visited[k] = true;
    for (std::size_t other = 0; other < count; ++other) {
      if (visited[other]) continue;
      const int w = (clique_list[other] & clique_list[k]).size();
      if (w > best[other]) {
        best[other] = w;
        parent[other] = position;
      }
    }
  };

  out.cliques.reserve(count);
  out.links.reserve(count - 1);
  out.cliques.push_back(clique_list[start]);
  visit(start, 0);

  for (std::size_t step = 1; step < count; ++step) {
    std::size_t chosen = count;
    for (std::size_t k = 0; k < count; ++k) {
      if (!visited[k] && (chosen == count || best[k] > best[chosen])) chosen = k;
    }
    const std::size_t h = parent[chosen];
    out.links.push_back({h, clique_list[chosen] & out.cliques[h]});
    out.cliques.push_back(clique_list[chosen]);
    visit(chosen, step);
  }
  return out;
}

PluperfectOrder pluperfect_order(const DecomposableGraph& g, std::optional<std::size_t> first) {
  return pluperfect_order(cliques(g), first);
}

SeparatorMultiset separator_multiset(const PluperfectOrder& order) {
  SeparatorMultiset out;
  for (const auto& link : order.links) ++out[link.separator];
  return out;
}

CliqueSeparatorCensus census(const DecomposableGraph& g) {
  CliqueSeparatorCensus c;
  c.cliques = cliques(g);
  c.separators = separator_multiset(pluperfect_order(c.cliques));
  return c;
}

}  // namespace csf
