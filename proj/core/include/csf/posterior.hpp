#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "csf/laws.hpp"

namespace csf {

// log λ_A(x_A): log marginal likelihood of the data restricted to the columns in A.
// Results are cached per subset; lookups are safe from several threads.
class MarginalScore : public SubsetFunction {
 public:
  double operator()(VertexSet a) const final;
  std::size_t cached() const;

 protected:
  virtual double evaluate(VertexSet a) const = 0;

 private:
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<VertexSet, double> cache_;
};

inline constexpr int kMaxDataColumns = 64;

// Binary observations, one row per observation; bit j of a row is column j.
struct BinaryData {
  int columns = 0;
  std::vector<std::uint64_t> rows;
};

// Dirichlet–multinomial evidence of the contingency table over A, symmetric concentration
// alpha in each of the 2^|A| cells:
//   log Γ(K α) − log Γ(K α + N) + Σ_cells [log Γ(α + n_c) − log Γ(α)],  K = 2^|A|.
class BernoulliDirichletScore : public MarginalScore {
 public:
  BernoulliDirichletScore(BinaryData data, double alpha);

  const BinaryData& data() const { return data_; }
  double alpha() const { return alpha_; }

 protected:
  double evaluate(VertexSet a) const override;

 private:
  BinaryData data_;
  double alpha_;
};

// Throws DomainError on empty data or alpha <= 0.
std::shared_ptr<BernoulliDirichletScore> bernoulli_dirichlet_score(BinaryData data, double alpha);

// Prior with log φ_A += log λ_A and log ψ_A += log λ_A. The score must be finite on every
// subset the law queries; a non-finite value surfaces as InvalidLikelihoodError.
CsfLaw posterior_law(const CsfLaw& prior, std::shared_ptr<const SubsetFunction> score);

// Σ_C log λ_C − Σ_S ν_S log λ_S for one graph.
double log_likelihood(const SubsetFunction& score, const DecomposableGraph& g);

}  // namespace csf
