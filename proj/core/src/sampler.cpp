#include "csf/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "csf/error.hpp"

namespace csf {

namespace {

Edge pair_at(int n, std::uint64_t index) {
  int u = 0;
  auto row = static_cast<std::uint64_t>(n - 1);
  while (index >= row) {
    index -= row;
    --row;
    ++u;
  }
  return {u, u + 1 + static_cast<int>(index)};
}

}  // namespace

ChainState make_chain_state(const CsfLaw& law, DecomposableGraph init, std::uint64_t seed, std::uint64_t chain_index) {
  if (init.n() != law.n()) throw InitialisationError("initial graph has the wrong vertex count");
  const double l = log_density_unnorm(law, init);
  if (l == kNegInf) throw InitialisationError("initial graph lies outside the support of the law");
  return ChainState{std::move(init), l, 0, 0, seed, chain_index};
}

DecomposableGraph default_init(const CsfLaw& law) {
  return DecomposableGraph(law.has_hard_constraints() ? Graph::complete(law.n()) : Graph(law.n()));
}

EdgeFlip propose_edge_flip(const ChainState& state, CounterRng& rng) {
  const int n = state.graph.n();
  if (n < 2) throw DomainError("edge flips need at least two vertices");
  const auto pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const Edge e = pair_at(n, rng.below(pairs));
  Graph g = state.graph.graph();
  g.toggle_edge(e.first, e.second);
  return {e, DecomposableGraph::try_from(std::move(g))};
}

bool mh_step(ChainState& state, const CsfLaw& law, CounterRng& rng) {
  auto flip = propose_edge_flip(state, rng);
  ++state.step_count;
  if (!flip.candidate) return false;
  const double proposed = log_density_unnorm(law, *flip.candidate);
  if (proposed == kNegInf) return false;
  const double delta = proposed - state.log_density;
  if (delta < 0.0 && !(rng.uniform() < std::exp(delta))) return false;
  state.graph = std::move(*flip.candidate);
  state.log_density = proposed;
  ++state.accept_count;
  return true;
}

SampleRecord describe(const ChainState& state) {
  const auto c = census(state.graph);
  SampleRecord r;
  r.step = state.step_count;
  r.edges = state.graph.graph().edges();
  r.log_density = state.log_density;
  r.cliques = static_cast<int>(c.cliques.size());
  for (VertexSet clique : c.cliques) r.max_clique = std::max(r.max_clique, clique.size());
  for (const auto& [s, nu] : c.separators) r.separator_sizes[s.size()] += nu;
  return r;
}

SampleSummary run_chain(const CsfLaw& law, const DecomposableGraph& init, const ChainOptions& options,
                        const StepObserver& observer) {
  if (options.thin == 0) throw DomainError("thin must be positive");
  auto state = make_chain_state(law, init, options.seed, options.chain_index);
  auto rng = CounterRng::for_stream(options.seed, options.chain_index);

  SampleSummary summary;
  summary.samples.push_back(describe(state));
  for (std::uint64_t i = 0; i < options.steps; ++i) {
    const bool accepted = mh_step(state, law, rng);
    if (options.validate) {
      if (!is_decomposable(state.graph.graph())) throw std::logic_error("chain left the decomposable set");
      const double fresh = log_density_unnorm(law, state.graph);
      if (fresh == kNegInf) throw std::logic_error("chain left the support");
      if (accepted && std::abs(fresh - state.log_density) > 1e-9) {
        throw std::logic_error("cached log-density drifted from recomputed value");
      }
    }
    if (observer) observer(state);
    if (state.step_count % options.thin == 0) summary.samples.push_back(describe(state));
  }
  summary.steps = state.step_count;
  summary.accepted = state.accept_count;
  return summary;
}

std::vector<SampleSummary> run_chains(const CsfLaw& law, const DecomposableGraph& init, const ChainOptions& options,
                                      std::size_t chains, unsigned workers) {
  std::vector<SampleSummary> out(chains);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(chains, 1)));

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(chains);
  auto work = [&] {
    for (std::size_t i = next++; i < chains; i = next++) {
      ChainOptions o = options;
      o.chain_index = options.chain_index + i;
      try {
        out[i] = run_chain(law, init, o);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace csf
