#include "csf/enumerate.hpp"

#include <array>
#include <string>
#include <thread>

#include "chordal.hpp"
#include "csf/error.hpp"

namespace csf {

namespace {

int pair_count(int n) { return n * (n - 1) / 2; }

void check_limits(int n, const EnumerationLimits& limits) {
  if (n < 1) throw DomainError("enumeration needs n >= 1");
  const int cap = limits.max_vertices < kMaxCodedVertices ? limits.max_vertices : kMaxCodedVertices;
  if (n > cap) {
    throw CapacityError("enumeration limited to n <= " + std::to_string(cap) + " (requested " +
                        std::to_string(n) + ")");
  }
}

// Chordality test straight from an edge code, without building a Graph.
class CodeChordality {
 public:
  explicit CodeChordality(int n) : n_(n) {
    int bit = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v, ++bit) {
        ends_[bit] = {u, v};
      }
    }
  }

  bool operator()(std::uint64_t code) {
    std::array<VertexSet, kMaxCodedVertices> adj{};
    while (code != 0) {
      const int bit = std::countr_zero(code);
      code &= code - 1;
      auto [u, v] = ends_[bit];
      adj[u].insert(v);
      adj[v].insert(u);
    }
    return detail::max_cardinality_search(std::span<const VertexSet>(adj.data(), n_),
                                          std::span<int>(order_.data(), n_));
  }

 private:
  int n_;
  std::array<std::pair<int, int>, 64> ends_{};
  std::array<int, kMaxCodedVertices> order_{};
};

}  // namespace

void for_each_decomposable(int n,
                           const std::function<void(std::uint64_t, const DecomposableGraph&)>& visit,
                           EnumerationLimits limits) {
  check_limits(n, limits);
  CodeChordality chordal(n);
  const std::uint64_t total = std::uint64_t{1} << pair_count(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (chordal(code)) visit(code, DecomposableGraph(graph_from_code(n, code)));
  }
}

std::vector<DecomposableGraph> enumerate_decomposable(int n, EnumerationLimits limits) {
  std::vector<DecomposableGraph> out;
  for_each_decomposable(n, [&](std::uint64_t, const DecomposableGraph& g) { out.push_back(g); }, limits);
  return out;
}

std::vector<std::uint64_t> decomposable_codes(int n, EnumerationLimits limits) {
  check_limits(n, limits);
  CodeChordality chordal(n);
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << pair_count(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (chordal(code)) out.push_back(code);
  }
  return out;
}

std::uint64_t count_decomposable(int n, EnumerationLimits limits, unsigned workers) {
  check_limits(n, limits);
  const std::uint64_t total = std::uint64_t{1} << pair_count(n);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  if (total < 4096) workers = 1;

  std::vector<std::uint64_t> partial(workers, 0);
  auto work = [&](unsigned w) {
    CodeChordality chordal(n);
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    std::uint64_t count = 0;
    for (std::uint64_t code = lo; code < hi; ++code) count += chordal(code) ? 1 : 0;
    partial[w] = count;
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  std::uint64_t sum = 0;
  for (auto c : partial) sum += c;
  return sum;
}

}  // namespace csf
