#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csf/laws.hpp"

namespace csf {

// Which conditioning event the independence statement G_A ⫫ G_B is asserted under.
//   SM   : (A,B) is a decomposition of G                       -> 𝔘(A,B)
//   WSM  : ... and A∩B is a clique of the induced graph on A     -> 𝔘*(A,B)
//   EWSM : ... and A∩B is a clique of G                          -> 𝔘⁺(A,B)
enum class Property { SM, WSM, EWSM };

std::string to_string(Property p);
Property parse_property(const std::string& text);  // "sm" | "wsm" | "ewsm"

bool in_conditioning_set(Property p, const Graph& g, VertexSet a, VertexSet b);

// Partition of the conditioning set by (G_A, G_B). Rows index distinct G_A codes,
// columns distinct G_B codes; mass[r][c] sums the density over graphs in that cell.
struct ConditioningTable {
  VertexSet a;
  VertexSet b;
  std::size_t graphs = 0;
  std::vector<std::uint64_t> row_codes;
  std::vector<std::uint64_t> col_codes;
  std::vector<std::vector<double>> mass;
  // Index into the density table of the (unique) graph in each cell, or SIZE_MAX when empty.
  std::vector<std::vector<std::size_t>> member;
};

ConditioningTable conditioning_table(const DensityTable& density, Property p, VertexSet a, VertexSet b);

// Unordered covering pairs {A, B} with A ∪ B = V and neither equal to V. Each pair is
// reported once with a < b numerically.
std::vector<std::pair<VertexSet, VertexSet>> covering_pairs(int n);

struct Witness {
  VertexSet a;
  VertexSet b;
  std::uint64_t row1 = 0, row2 = 0;  // G_A, G'_A codes
  std::uint64_t col1 = 0, col2 = 0;  // G_B, G'_B codes
};

struct PropertyReport {
  Property property = Property::WSM;
  bool passed = true;
  double worst_violation = 0.0;  // max |log cross-ratio|; +∞ if the support is not a product
  double tolerance = 0.0;
  std::size_t pairs_checked = 0;
  std::size_t pairs_vacuous = 0;
  Witness witness;
};

// Largest absolute log cross-ratio inside one conditioning table.
double worst_cross_ratio(const ConditioningTable& t, Witness* witness = nullptr);

// Sweeps every covering pair. For WSM both orientations (A,B) and (B,A) are checked since
// maximality is tested on the first member only.
PropertyReport check_property(const DensityTable& density, Property p, double tol = 1e-9);

// Constructive law from a strictly positive density: φ_A = π(⟨A⟩), ψ_S from Lemma-2 ratios
// using R_1 = S ∪ {u}, R_2 = S ∪ {w} with u < w the two smallest vertices outside S,
// ψ_∅ = π(⟨∅⟩). The unnormalised density of the result equals the input when it is WSM.
// Throws UnsupportedInputError on any zero entry.
CsfLaw fit_csf_from_density(const DensityTable& density);

// Spread (max − min) of log π(⟨R1,R2⟩) − log π(⟨R1⟩) − log π(⟨R2⟩) over all admissible
// unordered pairs with R1 ∩ R2 = s. Throws DomainError if |s| > n − 2.
double verify_lemma2_ratio(const DensityTable& density, VertexSet s);

struct Lemma1Deviation {
  double identity = 0.0;   // factorisation of π(G) over the pluperfect ordering
  double crossover = 0.0;  // π(⟨R⟩)π(⟨C_1..C_j⟩) = π(⟨C_1..C_{j-1}⟩)π(⟨R,C_j⟩)
  double max() const { return identity > crossover ? identity : crossover; }
};

// Log-scale deviations over every pluperfect ordering (one per first clique) and every
// admissible R_j ⊆ C_{h(j)}, R_j ⊃ S_j.
Lemma1Deviation verify_lemma1_identity(const DensityTable& density, const DecomposableGraph& g);

struct EwsmAnalysis {
  int n = 0;
  int two_vertex_choices = 0;    // pairs with |A| = |B| = 3, |A∩B| = 2 (n = 4)
  int num_constraints_bound = 0; // independent cross-ratio rows from those pairs
  int rank = 0;                  // exact rank of those rows
  int full_sweep_rows = 0;       // rows from every covering pair
  int full_sweep_rank = 0;
  int free_dimension_bound = 0;  // (#graphs − 1) − full_sweep_rank
  std::int64_t csf_dimension = 0;
  std::vector<std::uint64_t> codes;            // column order
  std::vector<std::vector<int>> constraints;   // full sweep rows over log-probabilities
  std::vector<std::vector<double>> null_basis; // basis of the solution space
};

// Builds the linear constraints that the even-weaker property places on log-probabilities.
// n must be 4 unless allow_other_n is set.
EwsmAnalysis ewsm_dimension_analysis(int n, bool allow_other_n = false);

// A density in the solution space of the constraints that is not a CSF law: a seeded random
// combination of the null basis, exponentiated and normalised.
DensityTable ewsm_separating_density(const EwsmAnalysis& analysis, std::uint64_t seed, double scale = 1.0);

}  // namespace csf
