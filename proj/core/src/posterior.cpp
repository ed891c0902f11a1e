#include "csf/posterior.hpp"

#include <cmath>
#include <mutex>
#include <string>

#include "csf/error.hpp"

namespace csf {

double MarginalScore::operator()(VertexSet a) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(a); it != cache_.end()) return it->second;
  }
  // Evaluated outside the lock; a racing thread may compute the same value.
  const double v = evaluate(a);
  std::unique_lock lock(mutex_);
  cache_.emplace(a, v);
  return v;
}

std::size_t MarginalScore::cached() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

BernoulliDirichletScore::BernoulliDirichletScore(BinaryData data, double alpha)
    : data_(std::move(data)), alpha_(alpha) {
  if (data_.rows.empty()) throw DomainError("marginal score needs at least one observation");
  if (!(alpha_ > 0.0) || !std::isfinite(alpha_)) throw DomainError("alpha must be positive");
  if (data_.columns < 1 || data_.columns > kMaxDataColumns) throw DomainError("bad column count");
}

double BernoulliDirichletScore::evaluate(VertexSet a) const {
  if (!a.is_subset_of(VertexSet::full(data_.columns))) throw DomainError("subset outside data columns");
  const int k = a.size();
  const double rows = static_cast<double>(data_.rows.size());
  // Project each row onto the columns of A and count cells.
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t row : data_.rows) {
    std::uint64_t cell = 0;
    int bit = 0;
    for (int v : a) cell |= ((row >> v) & 1U) << bit++;
    ++counts[cell];
  }
  const double cells = std::ldexp(1.0, k);
  double out = std::lgamma(cells * alpha_) - std::lgamma(cells * alpha_ + rows);
  const double empty_cell = std::lgamma(alpha_);
  for (const auto& [cell, count] : counts) out += std::lgamma(alpha_ + static_cast<double>(count)) - empty_cell;
  return out;
}

std::shared_ptr<BernoulliDirichletScore> bernoulli_dirichlet_score(BinaryData data, double alpha) {
  return std::make_shared<BernoulliDirichletScore>(std::move(data), alpha);
}

namespace {

// Rejects non-finite likelihood values at the point of use.
class CheckedTerm : public SubsetFunction {
 public:
  explicit CheckedTerm(std::shared_ptr<const SubsetFunction> inner) : inner_(std::move(inner)) {}
  double operator()(VertexSet a) const override {
    const double v = (*inner_)(a);
    if (!std::isfinite(v)) {
      throw InvalidLikelihoodError("log marginal likelihood at {" + a.to_string() + "} is not finite");
    }
    return v;
  }

 private:
  std::shared_ptr<const SubsetFunction> inner_;
};

}  // namespace

CsfLaw posterior_law(const CsfLaw& prior, std::shared_ptr<const SubsetFunction> score) {
  if (!score) throw DomainError("missing score");
  auto term = std::make_shared<CheckedTerm>(std::move(score));
  PotentialTable phi = prior.phi();
  PotentialTable psi = prior.psi();
  phi.add_term(term);
  psi.add_term(term);
  return CsfLaw(prior.n(), std::move(phi), std::move(psi));
}

double log_likelihood(const SubsetFunction& score, const DecomposableGraph& g) {
  const auto c = census(g);
  double out = 0.0;
  for (VertexSet clique : c.cliques) out += score(clique);
  for (const auto& [s, nu] : c.separators) out -= nu * score(s);
  return out;
}

}  // namespace csf
