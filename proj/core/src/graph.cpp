#include "csf/graph.hpp"

#include <algorithm>
#include <string>

#include "chordal.hpp"
#include "csf/error.hpp"

namespace csf {

namespace {

void check_vertex_count(int n) {
  if (n < 0 || n > kMaxVertices) {
    throw CapacityError("vertex count " + std::to_string(n) + " outside 0.." + std::to_string(kMaxVertices));
  }
}

void check_subset(const Graph& g, VertexSet a) {
  if (!a.is_subset_of(g.vertices())) {
    throw DomainError("vertex set {" + a.to_string() + "} not within 0.." + std::to_string(g.n() - 1));
  }
}

}  // namespace

Graph::Graph(int n) : n_(n) {
  check_vertex_count(n);
  adj_.assign(static_cast<std::size_t>(n), VertexSet{});
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph Graph::from_edges(int n, std::initializer_list<Edge> edges) {
  return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int v = 0; v < n; ++v) {
    g.adj_[v] = g.vertices();
    g.adj_[v].erase(v);
  }
  return g;
}

Graph Graph::from_cliques(int n, std::span<const VertexSet> sets) {
  Graph g(n);
  for (VertexSet s : sets) {
    check_subset(g, s);
    for (int v : s) {
      VertexSet others = s;
      others.erase(v);
      g.adj_[v] |= others;
    }
  }
  return g;
}

Graph Graph::from_cliques(int n, std::initializer_list<VertexSet> sets) {
  return from_cliques(n, std::span<const VertexSet>(sets.begin(), sets.size()));
}

int Graph::edge_count() const {
  int twice = 0;
  for (VertexSet s : adj_) twice += s.size();
  return twice / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for (int v : adj_[u]) {
      if (v > u) out.emplace_back(u, v);
    }
  }
  return out;
}

void Graph::check_pair(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for n=" +
                      std::to_string(n_));
  }
  if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
}

void Graph::add_edge(int u, int v) {
  check_pair(u, v);
  adj_[u].insert(v);
  adj_[v].insert(u);
}

void Graph::remove_edge(int u, int v) {
  check_pair(u, v);
  adj_[u].erase(v);
  adj_[v].erase(u);
}

void Graph::toggle_edge(int u, int v) {
  check_pair(u, v);
  if (adj_[u].contains(v)) {
    remove_edge(u, v);
  } else {
    add_edge(u, v);
  }
}

int pair_index(int n, int u, int v) {
  if (u > v) std::swap(u, v);
  // pairs (0,*) come first: n-1 of them, then n-2 for row 1, ...
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

std::uint64_t edge_code(const Graph& g) {
  if (g.n() > kMaxCodedVertices) {
    throw CapacityError("edge codes need n <= " + std::to_string(kMaxCodedVertices));
  }
  std::uint64_t code = 0;
  for (auto [u, v] : g.edges()) code |= std::uint64_t{1} << pair_index(g.n(), u, v);
  return code;
}

Graph graph_from_code(int n, std::uint64_t code) {
  if (n > kMaxCodedVertices) {
    throw CapacityError("edge codes need n <= " + std::to_string(kMaxCodedVertices));
  }
  Graph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if ((code >> bit) & 1U) g.add_edge(u, v);
    }
  }
  if (bit < 64 && (code >> bit) != 0) throw DomainError("edge code has bits beyond the pair count");
  return g;
}

std::uint64_t pair_mask(int n, VertexSet a) {
  std::uint64_t mask = 0;
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if (a.contains(u) && a.contains(v)) mask |= std::uint64_t{1} << bit;
    }
  }
  return mask;
}

DecomposableGraph::DecomposableGraph(Graph g) : graph_(std::move(g)) {
  order_.assign(static_cast<std::size_t>(graph_.n()), 0);
  std::vector<VertexSet> adj(static_cast<std::size_t>(graph_.n()));
  for (int v = 0; v < graph_.n(); ++v) adj[v] = graph_.neighbours(v);
  if (!detail::max_cardinality_search(adj, order_)) {
    throw PreconditionError("graph is not decomposable");
  }
}

std::optional<DecomposableGraph> DecomposableGraph::try_from(Graph g) {
  std::vector<int> order(static_cast<std::size_t>(g.n()));
  std::vector<VertexSet> adj(static_cast<std::size_t>(g.n()));
  for (int v = 0; v < g.n(); ++v) adj[v] = g.neighbours(v);
  if (!detail::max_cardinality_search(adj, order)) return std::nullopt;
  return DecomposableGraph(std::move(g), std::move(order));
}

std::vector<int> DecomposableGraph::elimination_order() const {
  return {order_.rbegin(), order_.rend()};
}

bool is_decomposable(const Graph& g) {
  return DecomposableGraph::try_from(g).has_value();
}

bool is_complete(const Graph& g, VertexSet a) {
  check_subset(g, a);
  for (int v : a) {
    VertexSet others = a;
    others.erase(v);
    if (!others.is_subset_of(g.neighbours(v))) return false;
  }
  return true;
}

Graph induced_subgraph(const Graph& g, VertexSet a) {
  check_subset(g, a);
  Graph out(g.n());
  for (auto [u, v] : g.edges()) {
    if (a.contains(u) && a.contains(v)) out.add_edge(u, v);
  }
  return out;
}

DecomposableGraph induced_subgraph(const DecomposableGraph& g, VertexSet a) {
  return DecomposableGraph(induced_subgraph(g.graph(), a));
}

std::vector<VertexSet> cliques(const DecomposableGraph& g) {
  const auto& order = g.search_order();
  const int n = g.n();
  std::vector<VertexSet> out;
  std::vector<VertexSet> candidate(static_cast<std::size_t>(n));
  std::vector<int> label(static_cast<std::size_t>(n));
  VertexSet seen;
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    const VertexSet earlier = g.graph().neighbours(v) & seen;
    label[i] = earlier.size();
    candidate[i] = earlier | VertexSet::singleton(v);
    seen.insert(v);
  }
  // Blair–Peyton: candidate i is maximal exactly when the next label does not grow by one.
  for (int i = 0; i < n; ++i) {
    if (i == n - 1 || label[i + 1] <= label[i]) out.push_back(candidate[i]);
  }
  return out;
}

bool is_decomposition(const Graph& g, VertexSet a, VertexSet b) {
  check_subset(g, a);
  check_subset(g, b);
  if ((a | b) != g.vertices()) {
    throw PreconditionError("({" + a.to_string() + "},{" + b.to_string() + "}) is not a covering pair");
  }
  const VertexSet sep = a & b;
  if (!is_complete(g, sep)) return false;
  const VertexSet target = b - a;
  VertexSet reached = a - b;
  VertexSet frontier = reached;
  while (!frontier.empty()) {
    VertexSet next;
    for (int v : frontier) next |= g.neighbours(v);
    next -= sep;
    next -= reached;
    if (next.intersects(target)) return false;
    reached |= next;
    frontier = next;
  }
  return true;
}

namespace {

// No vertex of `pool` is adjacent to every member of sep.
bool maximal_within(const Graph& g, VertexSet sep, VertexSet pool) {
  for (int v : pool - sep) {
    if (sep.is_subset_of(g.neighbours(v))) return false;
  }
  return true;
}

}  // namespace

bool in_U_star(const Graph& g, VertexSet a, VertexSet b) {
  return is_decomposition(g, a, b) && maximal_within(g, a & b, a);
}

bool in_U_plus(const Graph& g, VertexSet a, VertexSet b) {
  return is_decomposition(g, a, b) && maximal_within(g, a & b, g.vertices());
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  VertexSet reached = VertexSet::singleton(0);
  VertexSet frontier = reached;
  while (!frontier.empty()) {
    VertexSet next;
    for (int v : frontier) next |= g.neighbours(v);
    next -= reached;
    reached |= next;
    frontier = next;
  }
  return reached == g.vertices();
}

}  // namespace csf
