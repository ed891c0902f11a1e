#include "chordal.hpp"

#include <array>

namespace csf::detail {

bool max_cardinality_search(std::span<const VertexSet> adj, std::span<int> order) {
  const int n = static_cast<int>(adj.size());
  std::array<int, kMaxVertices> label{};
  std::array<int, kMaxVertices> position{};
  VertexSet numbered;
  VertexSet unnumbered = VertexSet::full(n);

  for (int i = 0; i < n; ++i) {
    int v = -1;
    int best = -1;
    for (int w : unnumbered) {
      if (label[w] > best) {
        best = label[w];
        v = w;
      }
    }
    order[i] = v;
    position[v] = i;

    const VertexSet earlier = adj[v] & numbered;
    if (!earlier.empty()) {
      int u = -1;
      for (int w : earlier) {
        if (u < 0 || position[w] > position[u]) u = w;
      }
      VertexSet rest = earlier;
      rest.erase(u);
      if (!rest.is_subset_of(adj[u])) return false;
    }

    numbered.insert(v);
    unnumbered.erase(v);
    for (int w : adj[v] & unnumbered) ++label[w];
  }
  return true;
}

}  // namespace csf::detail
