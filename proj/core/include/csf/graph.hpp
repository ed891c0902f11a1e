#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "csf/vertex_set.hpp"

namespace csf {

using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1, adjacency stored as one VertexSet per vertex.
// No self-loops; symmetric by construction.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph from_edges(int n, std::span<const Edge> edges);
  static Graph from_edges(int n, std::initializer_list<Edge> edges);
  static Graph complete(int n);
  // Graph on n vertices that is complete on each listed set and has no other edges.
  static Graph from_cliques(int n, std::span<const VertexSet> sets);
  static Graph from_cliques(int n, std::initializer_list<VertexSet> sets);

  int n() const { return n_; }
  VertexSet vertices() const { return VertexSet::full(n_); }
  VertexSet neighbours(int v) const { return adj_[v]; }
  bool has_edge(int u, int v) const { return adj_[u].contains(v); }
  int edge_count() const;
  // Edges (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  void toggle_edge(int u, int v);

  bool operator==(const Graph&) const = default;

 private:
  void check_pair(int u, int v) const;

  int n_ = 0;
  std::vector<VertexSet> adj_;
};

// Bit index of the pair (u, v), u < v, in lexicographic pair order (0,1),(0,2),...,(1,2),...
int pair_index(int n, int u, int v);
inline constexpr int kMaxCodedVertices = 11;  // 55 pairs fit in 64 bits
// Edge set packed into an integer using pair_index(); requires n <= kMaxCodedVertices.
std::uint64_t edge_code(const Graph& g);
Graph graph_from_code(int n, std::uint64_t code);
// Mask of all pair bits whose endpoints both lie in a; code & mask is the code of the induced subgraph.
std::uint64_t pair_mask(int n, VertexSet a);

// A graph known to be decomposable (chordal), carrying its certificate: a maximum
// cardinality search visit order whose reverse is a perfect elimination ordering.
class DecomposableGraph {
 public:
  // Throws PreconditionError if g is not chordal.
  explicit DecomposableGraph(Graph g);
  static std::optional<DecomposableGraph> try_from(Graph g);

  const Graph& graph() const { return graph_; }
  int n() const { return graph_.n(); }
  // Maximum cardinality search visit order (ties to lowest index).
  const std::vector<int>& search_order() const { return order_; }
  std::vector<int> elimination_order() const;

  bool operator==(const DecomposableGraph& o) const { return graph_ == o.graph_; }

 private:
  DecomposableGraph(Graph g, std::vector<int> order) : graph_(std::move(g)), order_(std::move(order)) {}

  Graph graph_;
  std::vector<int> order_;
};

bool is_decomposable(const Graph& g);

// True iff every pair in a is joined. Throws DomainError if a is not a subset of the vertices.
bool is_complete(const Graph& g, VertexSet a);

// Subgraph induced on a, keeping the original vertex indices (vertices outside a become isolated).
Graph induced_subgraph(const Graph& g, VertexSet a);
DecomposableGraph induced_subgraph(const DecomposableGraph& g, VertexSet a);

// Maximal complete sets, in the order maximum cardinality search discovers them.
std::vector<VertexSet> cliques(const DecomposableGraph& g);

// True iff a ∩ b is complete and separates a∖b from b∖a. Throws PreconditionError unless a ∪ b = V.
bool is_decomposition(const Graph& g, VertexSet a, VertexSet b);
// is_decomposition(g, a, b) and a ∩ b is a maximal complete set of the induced graph on a.
bool in_U_star(const Graph& g, VertexSet a, VertexSet b);
// is_decomposition(g, a, b) and a ∩ b is a clique of g itself.
bool in_U_plus(const Graph& g, VertexSet a, VertexSet b);

// Whether the vertices are connected (the single-vertex graph counts as connected).
bool is_connected(const Graph& g);

}  // namespace csf
