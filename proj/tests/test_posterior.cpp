#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "csf/error.hpp"
#include "csf/markov_check.hpp"
#include "csf/posterior.hpp"
#include "csf/random.hpp"
#include "oracle.hpp"

namespace csf {
namespace {

BinaryData synthetic(int columns, int rows, std::uint64_t seed) {
  CounterRng rng(seed);
  BinaryData d{columns, {}};
  for (int r = 0; r < rows; ++r) {
    // Column 1 copies column 0 most of the time; the rest are fair coins.
    std::uint64_t row = rng() & ((std::uint64_t{1} << columns) - 1);
    if (rng.uniform() < 0.8) row = (row & ~std::uint64_t{2}) | ((row & 1) << 1);
    d.rows.push_back(row);
  }
  return d;
}

// Independent Dirichlet–multinomial evidence straight from counts.
double dm_evidence(const BinaryData& data, VertexSet a, double alpha) {
  std::vector<int> counts(std::size_t{1} << a.size(), 0);
  for (auto row : data.rows) {
    std::size_t cell = 0;
    int k = 0;
    for (int v : a) cell |= ((row >> v) & 1) << k++;
    ++counts[cell];
  }
  const double cells = static_cast<double>(counts.size());
  double out = std::lgamma(cells * alpha) - std::lgamma(cells * alpha + data.rows.size());
  for (int c : counts) out += std::lgamma(alpha + c) - std::lgamma(alpha);
  return out;
}

class FlatScore : public SubsetFunction {
 public:
  double operator()(VertexSet) const override { return 0.0; }
};

class BrokenScore : public SubsetFunction {
 public:
  double operator()(VertexSet a) const override { return a.size() == 2 ? kNegInf : 0.0; }
};

TEST(BernoulliDirichlet, SingleObservation) {
  const auto score = bernoulli_dirichlet_score({1, {1}}, 1.0);
  EXPECT_NEAR(std::exp((*score)(VertexSet{0})), 0.5, 1e-15);
  EXPECT_EQ((*score)(VertexSet{}), 0.0);
}

TEST(BernoulliDirichlet, MatchesDirectEvidence) {
  const auto data = synthetic(4, 50, 1);
  for (double alpha : {0.5, 1.0, 3.0}) {
    const auto score = bernoulli_dirichlet_score(data, alpha);
    for (std::uint64_t bits = 0; bits < 16; ++bits) {
      ASSERT_NEAR((*score)(VertexSet(bits)), dm_evidence(data, VertexSet(bits), alpha), 1e-10);
    }
    EXPECT_EQ(score->cached(), 16u);
  }
}

TEST(BernoulliDirichlet, RowPermutationInvariant) {
  auto data = synthetic(4, 30, 2);
  const auto a = bernoulli_dirichlet_score(data, 1.0);
  std::reverse(data.rows.begin(), data.rows.end());
  std::rotate(data.rows.begin(), data.rows.begin() + 7, data.rows.end());
  const auto b = bernoulli_dirichlet_score(data, 1.0);
  for (std::uint64_t bits = 0; bits < 16; ++bits) ASSERT_NEAR((*a)(VertexSet(bits)), (*b)(VertexSet(bits)), 1e-12);
}

TEST(BernoulliDirichlet, Errors) {
  EXPECT_THROW(bernoulli_dirichlet_score({3, {}}, 1.0), DomainError);
  EXPECT_THROW(bernoulli_dirichlet_score({3, {1}}, 0.0), DomainError);
  EXPECT_THROW(bernoulli_dirichlet_score({3, {1}}, -1.0), DomainError);
  const auto s = bernoulli_dirichlet_score({3, {1}}, 1.0);
  EXPECT_THROW((*s)(VertexSet{4}), DomainError);
}

TEST(PosteriorLaw, FlatLikelihoodLeavesPrior) {
  const CsfLaw prior = oracle::random_csf_law(4, 3);
  const CsfLaw post = posterior_law(prior, std::make_shared<FlatScore>());
  const auto a = normalize_by_enumeration(prior);
  const auto b = normalize_by_enumeration(post);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.prob(i), b.prob(i));
}

TEST(PosteriorLaw, ConjugacyByEnumeration) {
  const auto data = synthetic(4, 50, 5);
  const auto score = bernoulli_dirichlet_score(data, 1.0);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const CsfLaw prior = oracle::random_csf_law(4, seed);
    const auto post = normalize_by_enumeration(posterior_law(prior, score));
    const auto pri = normalize_by_enumeration(prior);
    std::vector<double> bayes(pri.size());
    double total = 0.0;
    for (std::size_t i = 0; i < pri.size(); ++i) {
      const Graph g = pri.graph(i);
      const double ll = oracle::clique_separator_sum(g, [&](VertexSet a) { return dm_evidence(data, a, 1.0); });
      bayes[i] = pri.prob(i) * std::exp(ll);
      total += bayes[i];
    }
    for (std::size_t i = 0; i < pri.size(); ++i) ASSERT_NEAR(post.prob(i) / (bayes[i] / total), 1.0, 1e-9);
    EXPECT_TRUE(check_property(post, Property::WSM).passed);
  }
}

TEST(PosteriorLaw, SupportPreserved) {
  const CsfLaw prior = hub_law(5, VertexSet{2}, 1.0, 0.5);
  const auto score = bernoulli_dirichlet_score(synthetic(5, 20, 3), 1.0);
  const auto a = normalize_by_enumeration(prior);
  const auto b = normalize_by_enumeration(posterior_law(prior, score));
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a.prob(i) > 0.0, b.prob(i) > 0.0);
}

TEST(PosteriorLaw, UpdatesCompose) {
  const CsfLaw prior = oracle::random_csf_law(4, 6);
  const auto d1 = synthetic(4, 20, 7);
  const auto d2 = synthetic(4, 25, 8);
  const auto s1 = bernoulli_dirichlet_score(d1, 1.0);
  const auto s2 = bernoulli_dirichlet_score(d2, 2.0);
  class Sum : public SubsetFunction {
   public:
    Sum(std::shared_ptr<const SubsetFunction> a, std::shared_ptr<const SubsetFunction> b) : a_(a), b_(b) {}
    double operator()(VertexSet s) const override { return (*a_)(s) + (*b_)(s); }

   private:
    std::shared_ptr<const SubsetFunction> a_, b_;
  };
  const auto twice = normalize_by_enumeration(posterior_law(posterior_law(prior, s1), s2));
  const auto once = normalize_by_enumeration(posterior_law(prior, std::make_shared<Sum>(s1, s2)));
  for (std::size_t i = 0; i < once.size(); ++i) ASSERT_NEAR(twice.prob(i) / once.prob(i), 1.0, 1e-12);
}

TEST(PosteriorLaw, NonFiniteScoreRejected) {
  const CsfLaw post = posterior_law(CsfLaw::uniform(3), std::make_shared<BrokenScore>());
  EXPECT_THROW(normalize_by_enumeration(post), InvalidLikelihoodError);
  EXPECT_THROW(posterior_law(CsfLaw::uniform(3), nullptr), DomainError);
}

// Independent columns with plenty of rows push mass away from graphs joining them.
TEST(PosteriorLaw, IndependentColumnsSmoke) {
  CounterRng rng(4);
  BinaryData data{3, {}};
  for (int r = 0; r < 2000; ++r) data.rows.push_back(rng() & 7);
  const auto post = normalize_by_enumeration(posterior_law(CsfLaw::uniform(3), bernoulli_dirichlet_score(data, 1.0)));
  EXPECT_GT(post.prob_of(Graph(3)), 0.5);
  EXPECT_LT(post.prob_of(Graph::complete(3)), 0.05);
}

TEST(LogLikelihood, MatchesCliqueSeparatorFormula) {
  const auto data = synthetic(5, 40, 9);
  const auto score = bernoulli_dirichlet_score(data, 1.0);
  for_each_decomposable(5, [&](std::uint64_t, const DecomposableGraph& g) {
    const double want = oracle::clique_separator_sum(g.graph(), [&](VertexSet a) { return dm_evidence(data, a, 1.0); });
    ASSERT_NEAR(log_likelihood(*score, g), want, 1e-9);
  });
}

}  // namespace
}  // namespace csf
