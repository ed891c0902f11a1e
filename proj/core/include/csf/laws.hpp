#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "csf/enumerate.hpp"
#include "csf/graph.hpp"
#include "csf/junction_tree.hpp"

namespace csf {

inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Log-potential as a function of subset size k:
//   constant + linear * k + pairs * k(k-1)/2
// "const" rules set only constant, "exp_linear" rules set linear = -rate,
// Erdős–Rényi potentials set only pairs = log(p / (1 - p)).
struct SizeRule {
  double constant = 0.0;
  double linear = 0.0;
  double pairs = 0.0;

  static SizeRule const_value(double value) { return {value, 0.0, 0.0}; }
  static SizeRule exp_linear(double rate) { return {0.0, -rate, 0.0}; }
  static SizeRule per_pair(double coef) { return {0.0, 0.0, coef}; }

  double operator()(int k) const {
    return constant + linear * k + pairs * (0.5 * k * (k - 1));
  }
  bool operator==(const SizeRule&) const = default;
};

// Additive log-term evaluated per subset (marginal likelihoods plug in here).
class SubsetFunction {
 public:
  virtual ~SubsetFunction() = default;
  virtual double operator()(VertexSet a) const = 0;
};

// Set-indexed log-potentials: lookup(A) = overrides[A] if present, +∞ if A misses every hub
// (when a hub constraint is set), otherwise rule(|A|); plus any attached subset terms.
class PotentialTable {
 public:
  PotentialTable() = default;
  explicit PotentialTable(SizeRule rule) : rule_(rule) {}

  double log_value(VertexSet a) const;
  // Override / hub / rule part only, without attached subset terms.
  double base_log_value(VertexSet a) const;

  const SizeRule& rule() const { return rule_; }
  void set_rule(SizeRule rule) { rule_ = rule; }

  const std::map<VertexSet, double>& overrides() const { return overrides_; }
  void set_override(VertexSet a, double log_value) { overrides_[a] = log_value; }
  void clear_overrides() { overrides_.clear(); }

  const std::optional<VertexSet>& hubs() const { return hubs_; }
  void set_hub_constraint(VertexSet hubs) { hubs_ = hubs; }
  bool has_hard_constraint() const;

  const std::vector<std::shared_ptr<const SubsetFunction>>& terms() const { return terms_; }
  void add_term(std::shared_ptr<const SubsetFunction> term) { terms_.push_back(std::move(term)); }

 private:
  SizeRule rule_;
  std::map<VertexSet, double> overrides_;
  std::optional<VertexSet> hubs_;
  std::vector<std::shared_ptr<const SubsetFunction>> terms_;
};

// Clique–separator factorisation law: π(G) ∝ ∏_C φ_C / ∏_S ψ_S, stored as log φ and log ψ.
// φ must be finite everywhere; ψ may be +∞, which removes graphs with that separator.
class CsfLaw {
 public:
  CsfLaw(int n, PotentialTable phi, PotentialTable psi);
  static CsfLaw uniform(int n);

  int n() const { return n_; }
  const PotentialTable& phi() const { return phi_; }
  const PotentialTable& psi() const { return psi_; }
  PotentialTable& phi() { return phi_; }
  PotentialTable& psi() { return psi_; }

  bool has_hard_constraints() const { return psi_.has_hard_constraint(); }

 private:
  int n_;
  PotentialTable phi_;
  PotentialTable psi_;
};

// t_A(G): 1 if A is a clique, -ν_A if A is a separator, 0 otherwise.
int t_statistic(const DecomposableGraph& g, VertexSet a);
inline int t_plus(int t) { return t > 0 ? t : 0; }
inline int t_minus(int t) { return t < 0 ? t : 0; }
// All non-zero t_A(G), keyed by A.
std::map<VertexSet, int> t_vector(const DecomposableGraph& g);

// Σ_C log φ_C − Σ_S ν_S log ψ_S; −∞ when a separator has ψ = +∞.
// Throws InvalidLawError if the value would be +∞ or NaN.
double log_density_unnorm(const CsfLaw& law, const DecomposableGraph& g);
double log_density_unnorm(const CsfLaw& law, const CliqueSeparatorCensus& c);

// φ_A = ψ_A = (p/(1-p))^{|A|(|A|-1)/2}. Throws DomainError unless 0 < p < 1.
CsfLaw erdos_renyi_csf(int n, double p);
// φ_C = exp(-clique_rate |C|); ψ_S = exp(-separator_rate |S|) if S meets hubs, +∞ otherwise.
CsfLaw hub_law(int n, VertexSet hubs, double clique_rate, double separator_rate);

std::int64_t csf_dimension(int n);
std::int64_t cef_dimension(int n);

// Equivalent law with ψ_∅ = 1 and φ_{v} = 1 for every vertex. A hard ψ_∅ = +∞ stays hard.
CsfLaw standardize(const CsfLaw& law);

// Explicit probability for every decomposable graph on n vertices, indexed in enumeration order.
class DensityTable {
 public:
  DensityTable(int n, std::vector<std::uint64_t> codes, std::vector<double> probs);
  static DensityTable uniform(int n, EnumerationLimits limits = {});

  int n() const { return n_; }
  std::size_t size() const { return codes_.size(); }
  std::uint64_t code(std::size_t i) const { return codes_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }
  const std::vector<std::uint64_t>& codes() const { return codes_; }
  const std::vector<double>& probs() const { return probs_; }
  Graph graph(std::size_t i) const { return graph_from_code(n_, codes_[i]); }

  std::optional<std::size_t> index_of(std::uint64_t code) const;
  std::size_t index_of(const Graph& g) const;  // throws DomainError if g is not in the table
  double prob_of(const Graph& g) const { return probs_[index_of(g)]; }

  // Multiplies one entry and renormalises.
  DensityTable perturbed(std::size_t i, double factor) const;

 private:
  int n_;
  std::vector<std::uint64_t> codes_;
  std::vector<double> probs_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

// Normalised density of a law over all decomposable graphs. Throws EmptySupportError if
// no graph has finite log-density.
DensityTable normalize_by_enumeration(const CsfLaw& law, EnumerationLimits limits = {});
// Normalises an arbitrary vector of log-weights aligned with codes.
DensityTable normalize_log_weights(int n, std::vector<std::uint64_t> codes, const std::vector<double>& log_weights);

}  // namespace csf
