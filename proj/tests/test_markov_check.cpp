#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "csf/error.hpp"
#include "csf/markov_check.hpp"
#include "oracle.hpp"

namespace csf {
namespace {

// Five-vertex example, 0-based: A = {0,1,3,4}, B = {1,2,3}.
const VertexSet kExampleA{0, 1, 3, 4};
const VertexSet kExampleB{1, 2, 3};

struct Marginals {
  std::set<std::uint64_t> ga, gb;
  std::size_t graphs = 0;
};

Marginals count_marginals(Property p) {
  Marginals m;
  for_each_decomposable(5, [&](std::uint64_t code, const DecomposableGraph& g) {
    if (!in_conditioning_set(p, g.graph(), kExampleA, kExampleB)) return;
    ++m.graphs;
    m.ga.insert(code & pair_mask(5, kExampleA));
    m.gb.insert(code & pair_mask(5, kExampleB));
  });
  return m;
}

TEST(FiveVertexExample, WeakConditioningSet) {
  const auto m = count_marginals(Property::WSM);
  EXPECT_EQ(m.ga.size(), 16u);
  EXPECT_EQ(m.gb.size(), 4u);
  EXPECT_EQ(m.graphs, 64u);
}

// 30, not 32: two of the 32 edge patterns on A containing edge (1,3) are chordless 4-cycles.
TEST(FiveVertexExample, DecompositionConditioningSet) {
  const auto m = count_marginals(Property::SM);
  EXPECT_EQ(m.ga.size(), 30u);
  EXPECT_EQ(m.gb.size(), 4u);
  EXPECT_EQ(m.graphs, 120u);
  const auto table = conditioning_table(DensityTable::uniform(5), Property::SM, kExampleA, kExampleB);
  EXPECT_EQ(table.row_codes.size(), 30u);
  EXPECT_EQ(table.col_codes.size(), 4u);
  EXPECT_EQ(table.graphs, 120u);
}

TEST(ConditioningTable, ProductStructureAndMembers) {
  const auto d = DensityTable::uniform(5);
  for (auto p : {Property::SM, Property::WSM, Property::EWSM}) {
    const auto t = conditioning_table(d, p, kExampleA, kExampleB);
    std::size_t filled = 0;
    double mass = 0.0;
    for (std::size_t r = 0; r < t.row_codes.size(); ++r) {
      for (std::size_t c = 0; c < t.col_codes.size(); ++c) {
        if (t.member[r][c] == SIZE_MAX) continue;
        ++filled;
        mass += t.mass[r][c];
        ASSERT_EQ(d.code(t.member[r][c]) & pair_mask(5, kExampleA), t.row_codes[r]);
        ASSERT_EQ(d.code(t.member[r][c]) & pair_mask(5, kExampleB), t.col_codes[c]);
      }
    }
    EXPECT_EQ(filled, t.graphs);
    EXPECT_NEAR(mass, t.graphs / 822.0, 1e-12);
  }
}

TEST(ConditioningSets, Nesting) {
  for_each_decomposable(5, [&](std::uint64_t, const DecomposableGraph& g) {
    for (const auto& [a, b] : covering_pairs(5)) {
      const bool sm = in_conditioning_set(Property::SM, g.graph(), a, b);
      ASSERT_TRUE(!in_conditioning_set(Property::WSM, g.graph(), a, b) || sm);
      ASSERT_TRUE(!in_conditioning_set(Property::EWSM, g.graph(), a, b) || sm);
    }
  });
}

TEST(CoveringPairs, CountAndShape) {
  for (int n = 2; n <= 6; ++n) {
    const auto pairs = covering_pairs(n);
    // Ordered pairs with A ∪ B = V: 3^n; drop those with A = V or B = V, then halve.
    const std::size_t pow3 = static_cast<std::size_t>(std::pow(3, n));
    const std::size_t with_full = 2 * (std::size_t{1} << n) - 1;
    EXPECT_EQ(pairs.size(), (pow3 - with_full) / 2) << n;
    for (const auto& [a, b] : pairs) {
      ASSERT_EQ(a | b, VertexSet::full(n));
      ASSERT_LT(a, b);
      ASSERT_NE(a, VertexSet::full(n));
      ASSERT_NE(b, VertexSet::full(n));
    }
  }
}

TEST(Property, ParseAndPrint) {
  for (auto p : {Property::SM, Property::WSM, Property::EWSM}) EXPECT_EQ(parse_property(to_string(p)), p);
  EXPECT_EQ(parse_property("wsm"), Property::WSM);
  EXPECT_THROW(parse_property("xsm"), DomainError);
}

TEST(CheckProperty, UniformPassesAll) {
  for (int n = 3; n <= 5; ++n) {
    const auto d = DensityTable::uniform(n);
    for (auto p : {Property::SM, Property::WSM, Property::EWSM}) {
      const auto r = check_property(d, p);
      EXPECT_TRUE(r.passed) << n << " " << to_string(p);
      EXPECT_EQ(r.worst_violation, 0.0);
      EXPECT_EQ(r.tolerance, 1e-9);
      EXPECT_EQ(r.property, p);
      if (n >= 4) {
        EXPECT_GT(r.pairs_checked, 0u);
      }
    }
  }
}

TEST(CheckProperty, RandomCsfLawsPassWsmAndEwsm) {
  for (int n = 3; n <= 5; ++n) {
    for (std::uint64_t seed = 0; seed < (n == 5 ? 3u : 10u); ++seed) {
      const auto d = normalize_by_enumeration(oracle::random_csf_law(n, seed));
      const auto wsm = check_property(d, Property::WSM);
      EXPECT_TRUE(wsm.passed) << n << " " << seed << " " << wsm.worst_violation;
      EXPECT_LE(wsm.worst_violation, 1e-9);
      EXPECT_TRUE(check_property(d, Property::EWSM).passed);
    }
  }
}

// Random CSF laws are not SM in general; SM pass implies WSM pass implies EWSM pass.
TEST(CheckProperty, Monotone) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto d = normalize_by_enumeration(oracle::random_csf_law(4, seed));
    const auto perturbed = d.perturbed(seed % d.size(), 1.5);
    for (const auto* x : {&d, &perturbed}) {
      const bool sm = check_property(*x, Property::SM).passed;
      const bool wsm = check_property(*x, Property::WSM).passed;
      const bool ewsm = check_property(*x, Property::EWSM).passed;
      EXPECT_TRUE(!sm || wsm);
      EXPECT_TRUE(!wsm || ewsm);
    }
  }
  // Clique exponential family (φ = ψ) laws are SM.
  const auto er = normalize_by_enumeration(erdos_renyi_csf(4, 0.3));
  EXPECT_TRUE(check_property(er, Property::SM).passed);
}

TEST(CheckProperty, PerturbationFailsWithWitness) {
  const auto d = normalize_by_enumeration(oracle::random_csf_law(4, 3));
  const auto empty = *d.index_of(0);
  const auto r = check_property(d.perturbed(empty, 2.0), Property::WSM);
  EXPECT_FALSE(r.passed);
  EXPECT_GE(r.worst_violation, 0.1);
  EXPECT_NEAR(r.worst_violation, std::log(2.0), 1e-9);
  EXPECT_EQ(r.witness.a | r.witness.b, VertexSet::full(4));
  EXPECT_NE(r.witness.row1, r.witness.row2);
  EXPECT_NE(r.witness.col1, r.witness.col2);
}

// Only the complete graph and the complete graph minus one edge escape every weak statement.
TEST(CheckProperty, SingleBumpsInvisibleOnlyNearComplete) {
  for (int n = 3; n <= 5; ++n) {
    const auto d = normalize_by_enumeration(oracle::random_csf_law(n, 40 + n));
    const int pairs = n * (n - 1) / 2;
    for (std::size_t i = 0; i < d.size(); ++i) {
      const bool near_complete = d.graph(i).edge_count() + 1 >= pairs;
      const auto r = check_property(d.perturbed(i, 2.0), Property::WSM);
      if (n == 3) {
        ASSERT_TRUE(r.passed);
      } else {
        ASSERT_EQ(r.passed, near_complete) << "n=" << n << " i=" << i;
      }
    }
  }
}

TEST(CheckProperty, ZeroPatternsAreProductOrInfinite) {
  const auto base = DensityTable::uniform(4);
  std::vector<double> probs = base.probs();
  probs[*base.index_of(0)] = 0.0;
  double total = 0.0;
  for (double p : probs) total += p;
  for (double& p : probs) p /= total;
  const DensityTable d(4, base.codes(), probs);
  const auto r = check_property(d, Property::WSM);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.worst_violation, kPosInf);
}

TEST(WorstCrossRatio, HandComputed) {
  ConditioningTable t;
  t.row_codes = {0, 1};
  t.col_codes = {0, 2};
  t.mass = {{1.0, 2.0}, {3.0, 6.0}};
  t.member = {{0, 1}, {2, 3}};
  EXPECT_NEAR(worst_cross_ratio(t), 0.0, 1e-15);
  t.mass[1][1] = 12.0;
  Witness w;
  EXPECT_NEAR(worst_cross_ratio(t, &w), std::log(2.0), 1e-15);
  EXPECT_EQ(w.row2, 1u);
  EXPECT_EQ(w.col2, 2u);
  t.mass[0][0] = 0.0;
  t.mass[1][1] = 0.0;
  EXPECT_EQ(worst_cross_ratio(t), kPosInf);
  t.mass[0][1] = 0.0;
  t.mass[1][0] = 0.0;
  EXPECT_EQ(worst_cross_ratio(t), 0.0);
}

double max_rel_error(const DensityTable& a, const DensityTable& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.prob(i) - b.prob(i)) / b.prob(i));
  }
  return worst;
}

TEST(Fit, UniformThreeVertices) {
  const auto d = DensityTable::uniform(3);
  const CsfLaw law = fit_csf_from_density(d);
  for (std::uint64_t bits = 0; bits < 8; ++bits) {
    EXPECT_NEAR(law.phi().log_value(VertexSet(bits)), std::log(1.0 / 8.0), 1e-14);
  }
  for (int v = 0; v < 3; ++v) {
    EXPECT_NEAR(law.psi().log_value(VertexSet::singleton(v)), std::log(1.0 / 8.0), 1e-14);
  }
  const DecomposableGraph path(Graph::from_edges(3, {{0, 1}, {1, 2}}));
  EXPECT_NEAR(std::exp(log_density_unnorm(law, path)), 1.0 / 8.0, 1e-15);
}

// The reconstruction needs no renormalisation: unnormalised values already equal the input.
TEST(Fit, ReconstructsWsmDensitiesExactly) {
  for (int n = 2; n <= 5; ++n) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto d = normalize_by_enumeration(oracle::random_csf_law(n, 50 + seed));
      const CsfLaw law = fit_csf_from_density(d);
      for (std::size_t i = 0; i < d.size(); ++i) {
        const double value = std::exp(log_density_unnorm(law, DecomposableGraph(d.graph(i))));
        ASSERT_NEAR(value / d.prob(i), 1.0, 1e-9) << n << " " << i;
      }
      EXPECT_LT(max_rel_error(normalize_by_enumeration(law), d), 1e-9);
    }
  }
}

TEST(Fit, ZeroEntryRejected) {
  const auto d = normalize_by_enumeration(hub_law(4, VertexSet{0}, 1.0, 0.5));
  EXPECT_THROW(fit_csf_from_density(d), UnsupportedInputError);
}

TEST(SeparatorRatio, AgreementOnCsfDensities) {
  const auto d4 = normalize_by_enumeration(oracle::random_csf_law(4, 11));
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    const VertexSet s(bits);
    if (s.size() <= 2) {
      EXPECT_LT(verify_lemma2_ratio(d4, s), 1e-9) << s.to_string();
    }
  }
  EXPECT_LT(verify_lemma2_ratio(DensityTable::uniform(3), VertexSet{}), 1e-12);
  EXPECT_THROW(verify_lemma2_ratio(d4, VertexSet{0, 1, 2}), DomainError);
}

TEST(SeparatorRatio, PerturbedDensityDisagrees) {
  const auto d = normalize_by_enumeration(oracle::random_csf_law(4, 11));
  // ⟨{0,1},{0,2}⟩ is in the ratio family for S = {0}.
  const auto target = *d.index_of(edge_code(Graph::from_edges(4, {{0, 1}, {0, 2}})));
  EXPECT_GT(verify_lemma2_ratio(d.perturbed(target, 2.0), VertexSet{0}), 0.1);
}

TEST(CliqueProductIdentity, SingleAndTwoCliqueGraphs) {
  const auto d = normalize_by_enumeration(oracle::random_csf_law(4, 21));
  EXPECT_LT(verify_lemma1_identity(d, DecomposableGraph(Graph::complete(4))).max(), 1e-12);
  const DecomposableGraph two(Graph::from_cliques(4, {VertexSet{0, 1, 2}, VertexSet{2, 3}}));
  EXPECT_LT(verify_lemma1_identity(d, two).max(), 1e-9);
}

TEST(CliqueProductIdentity, AllGraphsOnFourAndFive) {
  for (int n = 4; n <= 5; ++n) {
    const auto d = normalize_by_enumeration(oracle::random_csf_law(n, 31 + n));
    double worst = 0.0;
    for_each_decomposable(n, [&](std::uint64_t, const DecomposableGraph& g) {
      worst = std::max(worst, verify_lemma1_identity(d, g).max());
    });
    EXPECT_LT(worst, 1e-9) << n;
  }
}

TEST(CliqueProductIdentity, PerturbedDensityDetected) {
  const auto d = normalize_by_enumeration(oracle::random_csf_law(4, 21));
  const auto empty = *d.index_of(0);
  const auto bad = d.perturbed(empty, 2.0);
  double worst = 0.0;
  for_each_decomposable(4, [&](std::uint64_t, const DecomposableGraph& g) {
    worst = std::max(worst, verify_lemma1_identity(bad, g).max());
  });
  EXPECT_GT(worst, 0.1);
}

TEST(Ewsm, DimensionAnalysisAtFour) {
  const auto a = ewsm_dimension_analysis(4);
  EXPECT_EQ(a.two_vertex_choices, 6);
  EXPECT_LE(a.num_constraints_bound, 24);
  EXPECT_LE(a.rank, 24);
  EXPECT_GE(a.free_dimension_bound, 36);
  EXPECT_EQ(a.csf_dimension, 21);
  EXPECT_EQ(a.codes.size(), 61u);
  // Null space of the rows over all 61 log-probabilities, normalisation direction included.
  EXPECT_EQ(static_cast<int>(a.null_basis.size()), 61 - a.full_sweep_rank);
  EXPECT_EQ(a.free_dimension_bound, 60 - a.full_sweep_rank);
  EXPECT_THROW(ewsm_dimension_analysis(5), DomainError);
  EXPECT_THROW(ewsm_dimension_analysis(6, true), CapacityError);
}

TEST(Ewsm, NullBasisSatisfiesConstraints) {
  const auto a = ewsm_dimension_analysis(4);
  for (const auto& v : a.null_basis) {
    ASSERT_EQ(v.size(), a.codes.size());
    for (const auto& row : a.constraints) {
      double dot = 0.0;
      for (std::size_t j = 0; j < row.size(); ++j) dot += row[j] * v[j];
      ASSERT_NEAR(dot, 0.0, 1e-9);
    }
  }
}

// Cross-ratio rows never touch connected graphs with one or two cliques.
TEST(Ewsm, NoConstraintOnSmallConnectedGraphs) {
  const auto a = ewsm_dimension_analysis(4);
  for (std::size_t j = 0; j < a.codes.size(); ++j) {
    const DecomposableGraph g(graph_from_code(4, a.codes[j]));
    if (!is_connected(g.graph()) || cliques(g).size() > 2) continue;
    for (const auto& row : a.constraints) ASSERT_EQ(row[j], 0) << a.codes[j];
  }
}

TEST(Ewsm, CsfDensitiesSatisfyConstraints) {
  const auto a = ewsm_dimension_analysis(4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto d = normalize_by_enumeration(oracle::random_csf_law(4, seed));
    for (const auto& row : a.constraints) {
      double dot = 0.0;
      for (std::size_t j = 0; j < row.size(); ++j) dot += row[j] * std::log(d.prob_of(graph_from_code(4, a.codes[j])));
      ASSERT_NEAR(dot, 0.0, 1e-9);
    }
  }
}

TEST(Ewsm, SeparatingDensity) {
  const auto a = ewsm_dimension_analysis(4);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto d = ewsm_separating_density(a, seed);
    EXPECT_TRUE(check_property(d, Property::EWSM).passed);
    const auto wsm = check_property(d, Property::WSM);
    EXPECT_FALSE(wsm.passed);
    EXPECT_GT(wsm.worst_violation, 0.1);
  }
}

}  // namespace
}  // namespace csf
