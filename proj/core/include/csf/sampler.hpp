#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "csf/laws.hpp"
#include "csf/random.hpp"

namespace csf {

struct ChainState {
  DecomposableGraph graph;
  double log_density = 0.0;  // always finite, equals log_density_unnorm(law, graph)
  std::uint64_t step_count = 0;
  std::uint64_t accept_count = 0;
  std::uint64_t seed = 0;
  std::uint64_t chain_index = 0;
};

// Throws InitialisationError if init lies outside the support of law.
ChainState make_chain_state(const CsfLaw& law, DecomposableGraph init, std::uint64_t seed = 0,
                            std::uint64_t chain_index = 0);

// Complete graph when the law has hard constraints, empty graph otherwise.
DecomposableGraph default_init(const CsfLaw& law);

struct EdgeFlip {
  Edge pair;
  std::optional<DecomposableGraph> candidate;  // empty = reject marker (not decomposable)
};

// Toggles a uniformly chosen unordered pair. Needs n >= 2.
EdgeFlip propose_edge_flip(const ChainState& state, CounterRng& rng);

// One Metropolis–Hastings step; returns whether the move was accepted.
bool mh_step(ChainState& state, const CsfLaw& law, CounterRng& rng);

struct SampleRecord {
  std::uint64_t step = 0;
  std::vector<Edge> edges;
  double log_density = 0.0;
  int cliques = 0;
  int max_clique = 0;
  std::map<int, int> separator_sizes;  // |S| -> count, with multiplicity
};

struct SampleSummary {
  std::vector<SampleRecord> samples;
  std::uint64_t steps = 0;
  std::uint64_t accepted = 0;
  double acceptance_rate() const { return steps == 0 ? 0.0 : static_cast<double>(accepted) / steps; }
};

struct ChainOptions {
  std::uint64_t steps = 0;
  std::uint64_t thin = 100;
  std::uint64_t seed = 0;
  std::uint64_t chain_index = 0;
  // Recompute the log-density after each accepted move and check decomposability/support every
  // step; throws std::logic_error on mismatch.
  bool validate = false;
};

// Invoked after every step (not only retained ones).
using StepObserver = std::function<void(const ChainState&)>;

SampleRecord describe(const ChainState& state);

// Retains the initial state and then every thin-th state. Deterministic given the options.
SampleSummary run_chain(const CsfLaw& law, const DecomposableGraph& init, const ChainOptions& options,
                        const StepObserver& observer = {});

// Independent chains with indices 0..chains-1, each seeded from (seed, index).
// Results do not depend on the worker count (0 = hardware concurrency).
std::vector<SampleSummary> run_chains(const CsfLaw& law, const DecomposableGraph& init,
                                      const ChainOptions& options, std::size_t chains,
                                      unsigned workers = 0);

}  // namespace csf
