#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "csf/graph.hpp"

namespace csf {

// Link joining clique j (j >= 1) to an earlier clique through its separator.
struct JunctionLink {
  std::size_t parent = 0;  // h(j) < j
  VertexSet separator;     // C_j ∩ (C_0 ∪ ... ∪ C_{j-1}), a subset of C_parent
};

// Ordered cliques C_0..C_{J-1} with links for every clique after the first: a junction tree
// built by repeatedly attaching the available clique that creates the largest separator.
struct PluperfectOrder {
  std::vector<VertexSet> cliques;
  std::vector<JunctionLink> links;  // links[j - 1] belongs to cliques[j]

  std::size_t size() const { return cliques.size(); }
};

// first indexes into cliques(g); defaults to 0. Ties (equal separator size) go to the earliest
// clique in cliques(g) order, parents to the earliest visited clique containing the separator.
PluperfectOrder pluperfect_order(const DecomposableGraph& g, std::optional<std::size_t> first = {});
// Same construction from a precomputed clique list.
PluperfectOrder pluperfect_order(std::vector<VertexSet> clique_list, std::optional<std::size_t> first = {});

using SeparatorMultiset = std::map<VertexSet, int>;

// Counts ν_S of each separator, including the empty separator joining components.
SeparatorMultiset separator_multiset(const PluperfectOrder& order);

// Cliques plus separator multiset of a decomposable graph, in one pass.
struct CliqueSeparatorCensus {
  std::vector<VertexSet> cliques;
  SeparatorMultiset separators;
};
CliqueSeparatorCensus census(const DecomposableGraph& g);

}  // namespace csf
