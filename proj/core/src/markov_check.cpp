#include "csf/markov_check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "csf/error.hpp"
#include "csf/random.hpp"
#include "rational.hpp"

namespace csf {

namespace {

constexpr std::size_t kNoMember = std::numeric_limits<std::size_t>::max();

std::vector<Graph> decode_all(const DensityTable& density) {
  std::vector<Graph> out;
  out.reserve(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) out.push_back(density.graph(i));
  return out;
}

ConditioningTable build_table(const DensityTable& density, const std::vector<Graph>& graphs, Property p,
                              VertexSet a, VertexSet b) {
  const int n = density.n();
  const std::uint64_t mask_a = pair_mask(n, a);
  const std::uint64_t mask_b = pair_mask(n, b);

  struct Hit {
    std::uint64_t row, col;
    std::size_t index;
  };
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (in_conditioning_set(p, graphs[i], a, b)) {
      hits.push_back({density.code(i) & mask_a, density.code(i) & mask_b, i});
    }
  }

  ConditioningTable t;
  t.a = a;
  t.b = b;
  t.graphs = hits.size();
  for (const auto& h : hits) {
    t.row_codes.push_back(h.row);
    t.col_codes.push_back(h.col);
  }
  auto dedupe = [](std::vector<std::uint64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(t.row_codes);
  dedupe(t.col_codes);

  t.mass.assign(t.row_codes.size(), std::vector<double>(t.col_codes.size(), 0.0));
  t.member.assign(t.row_codes.size(), std::vector<std::size_t>(t.col_codes.size(), kNoMember));
  for (const auto& h : hits) {
    const auto r = static_cast<std::size_t>(
        std::lower_bound(t.row_codes.begin(), t.row_codes.end(), h.row) - t.row_codes.begin());
    const auto c = static_cast<std::size_t>(
        std::lower_bound(t.col_codes.begin(), t.col_codes.end(), h.col) - t.col_codes.begin());
    t.mass[r][c] += density.prob(h.index);
    t.member[r][c] = h.index;
  }
  return t;
}

// |log m11 + log m22 − log m12 − log m21|, with 0 when both products vanish and +∞ when only
// one does (the zero pattern is not a product).
double cross_violation(double m11, double m22, double m12, double m21) {
  const bool diag_zero = m11 == 0.0 || m22 == 0.0;
  const bool anti_zero = m12 == 0.0 || m21 == 0.0;
  if (diag_zero && anti_zero) return 0.0;
  if (diag_zero || anti_zero) return std::numeric_limits<double>::infinity();
  return std::abs(std::log(m11) + std::log(m22) - std::log(m12) - std::log(m21));
}

double log_prob(const DensityTable& density, const Graph& g) {
  const double p = density.prob_of(g);
  return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
}

}  // namespace

std::string to_string(Property p) {
  switch (p) {
    case Property::SM:
      return "sm";
    case Property::WSM:
      return "wsm";
    case Property::EWSM:
      return "ewsm";
  }
  return "?";
}

Property parse_property(const std::string& text) {
  if (text == "sm") return Property::SM;
  if (text == "wsm") return Property::WSM;
  if (text == "ewsm") return Property::EWSM;
  throw DomainError("unknown property '" + text + "' (expected sm, wsm or ewsm)");
}

bool in_conditioning_set(Property p, const Graph& g, VertexSet a, VertexSet b) {
  switch (p) {
    case Property::SM:
      return is_decomposition(g, a, b);
    case Property::WSM:
      return in_U_star(g, a, b);
    case Property::EWSM:
      return in_U_plus(g, a, b);
  }
  return false;
}

ConditioningTable conditioning_table(const DensityTable& density, Property p, VertexSet a, VertexSet b) {
  return build_table(density, decode_all(density), p, a, b);
}

std::vector<std::pair<VertexSet, VertexSet>> covering_pairs(int n) {
  // Each vertex lies in A only, B only, or both; A ≠ V and B ≠ V force both "only" parts
  // to be non-empty.
  std::vector<std::pair<VertexSet, VertexSet>> out;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  for (std::uint64_t assignment = 0; assignment < total; ++assignment) {
    VertexSet a;
    VertexSet b;
    std::uint64_t rest = assignment;
    for (int v = 0; v < n; ++v, rest /= 3) {
      const auto slot = rest % 3;
      if (slot != 1) a.insert(v);
      if (slot != 0) b.insert(v);
    }
    const VertexSet all = VertexSet::full(n);
    if (a == all || b == all || !(a < b)) continue;
    out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double worst_cross_ratio(const ConditioningTable& t, Witness* witness) {
  double worst = 0.0;
  const std::size_t rows = t.row_codes.size();
  const std::size_t cols = t.col_codes.size();
  for (std::size_t r1 = 0; r1 < rows; ++r1) {
    for (std::size_t r2 = r1 + 1; r2 < rows; ++r2) {
      for (std::size_t c1 = 0; c1 < cols; ++c1) {
        for (std::size_t c2 = c1 + 1; c2 < cols; ++c2) {
          const double v = cross_violation(t.mass[r1][c1], t.mass[r2][c2], t.mass[r1][c2], t.mass[r2][c1]);
          if (v > worst) {
            worst = v;
            if (witness != nullptr) {
              *witness = {t.a, t.b, t.row_codes[r1], t.row_codes[r2], t.col_codes[c1], t.col_codes[c2]};
            }
          }
        }
      }
    }
  }
  return worst;
}

PropertyReport check_property(const DensityTable& density, Property p, double tol) {
  PropertyReport report;
  report.property = p;
  report.tolerance = tol;
  const auto graphs = decode_all(density);

  for (const auto& [a, b] : covering_pairs(density.n())) {
    std::vector<std::pair<VertexSet, VertexSet>> orientations{{a, b}};
    if (p == Property::WSM) orientations.emplace_back(b, a);
    for (const auto& [x, y] : orientations) {
      const auto table = build_table(density, graphs, p, x, y);
      double mass = 0.0;
      for (const auto& row : table.mass) {
        for (double m : row) mass += m;
      }
      if (table.graphs <= 1 || mass == 0.0) {
        ++report.pairs_vacuous;
        continue;
      }
      ++report.pairs_checked;
      Witness w;
      const double v = worst_cross_ratio(table, &w);
      if (v > report.worst_violation) {
        report.worst_violation = v;
        report.witness = w;
      }
    }
  }
  report.passed = report.worst_violation <= tol;
  return report;
}

CsfLaw fit_csf_from_density(const DensityTable& density) {
  const int n = density.n();
  for (std::size_t i = 0; i < density.size(); ++i) {
    if (!(density.prob(i) > 0.0)) {
      throw UnsupportedInputError("fitting needs a strictly positive density (graph " + std::to_string(i) +
                                  " has probability 0)");
    }
  }
  auto lp = [&](std::initializer_list<VertexSet> sets) { return std::log(density.prob_of(Graph::from_cliques(n, sets))); };

  PotentialTable phi;
  PotentialTable psi;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < subsets; ++bits) {
    const VertexSet a(bits);
    phi.set_override(a, lp({a}));
    if (a.size() <= n - 2) {
      const VertexSet outside = VertexSet::full(n) - a;
      const int u = outside.first();
      VertexSet rest = outside;
      rest.erase(u);
      const int w = rest.first();
      const VertexSet r1 = a | VertexSet::singleton(u);
      const VertexSet r2 = a | VertexSet::singleton(w);
      psi.set_override(a, lp({r1}) + lp({r2}) - lp({r1, r2}));
    }
  }
  return CsfLaw(n, std::move(phi), std::move(psi));
}

double verify_lemma2_ratio(const DensityTable& density, VertexSet s) {
  const int n = density.n();
  if (!s.is_subset_of(VertexSet::full(n))) throw DomainError("separator outside vertex set");
  if (s.size() > n - 2) throw DomainError("no admissible (R1,R2) pair when |S| > n - 2");

  std::vector<int> outside;
  for (int v : VertexSet::full(n) - s) outside.push_back(v);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < outside.size(); ++i) total *= 3;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::uint64_t assignment = 0; assignment < total; ++assignment) {
    VertexSet only1;
    VertexSet only2;
    std::uint64_t rest = assignment;
    for (int v : outside) {
      const auto slot = rest % 3;
      rest /= 3;
      if (slot == 1) only1.insert(v);
      if (slot == 2) only2.insert(v);
    }
    // unordered pairs: the smallest assigned vertex goes to R1
    if (only1.empty() || only2.empty() || only1.first() > only2.first()) continue;
    const VertexSet r1 = s | only1;
    const VertexSet r2 = s | only2;
    const double ratio = log_prob(density, Graph::from_cliques(n, {r1, r2})) -
                         log_prob(density, Graph::from_cliques(n, {r1})) -
                         log_prob(density, Graph::from_cliques(n, {r2}));
    if (!std::isfinite(ratio)) return std::numeric_limits<double>::infinity();
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return hi - lo;
}

Lemma1Deviation verify_lemma1_identity(const DensityTable& density, const DecomposableGraph& g) {
  const int n = density.n();
  if (g.n() != n) throw DomainError("graph and density vertex counts differ");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  Lemma1Deviation dev;
  const double lhs = log_prob(density, g.graph());
  const auto clique_list = cliques(g);

  for (std::size_t first = 0; first < clique_list.size(); ++first) {
    const auto order = pluperfect_order(clique_list, first);
    double base = 0.0;
    for (VertexSet c : order.cliques) base += log_prob(density, Graph::from_cliques(n, {c}));

    // The identity is a sum of independent per-step terms, so its extreme deviations over all
    // R-choices are reached at the per-step minima / maxima.
    double sum_min = 0.0;
    double sum_max = 0.0;
    std::vector<VertexSet> prefix{order.cliques[0]};
    for (std::size_t j = 1; j < order.size(); ++j) {
      const auto& link = order.links[j - 1];
      const VertexSet cj = order.cliques[j];
      const VertexSet free = order.cliques[link.parent] - link.separator;
      const double before = log_prob(density, Graph::from_cliques(n, prefix));
      prefix.push_back(cj);
      const double after = log_prob(density, Graph::from_cliques(n, prefix));
      const double lcj = log_prob(density, Graph::from_cliques(n, {cj}));

      double step_min = kInf;
      double step_max = -kInf;
      // R = S_j ∪ T for every non-empty T ⊆ C_h ∖ S_j
      const std::uint64_t free_bits = free.bits();
      for (std::uint64_t t = free_bits; t != 0; t = (t - 1) & free_bits) {
        const VertexSet r = link.separator | VertexSet(t);
        const double lr = log_prob(density, Graph::from_cliques(n, {r}));
        const double lrc = log_prob(density, Graph::from_cliques(n, {r, cj}));
        const double term = lrc - lr - lcj;
        if (!std::isfinite(term) || !std::isfinite(before) || !std::isfinite(after)) return {kInf, kInf};
        step_min = std::min(step_min, term);
        step_max = std::max(step_max, term);
        dev.crossover = std::max(dev.crossover, std::abs(lr + after - before - lrc));
      }
      sum_min += step_min;
      sum_max += step_max;
    }
    if (!std::isfinite(lhs) || !std::isfinite(base)) return {kInf, kInf};
    dev.identity = std::max({dev.identity, std::abs(lhs - base - sum_min), std::abs(lhs - base - sum_max)});
  }
  return dev;
}

EwsmAnalysis ewsm_dimension_analysis(int n, bool allow_other_n) {
  if (n != 4 && !allow_other_n) throw DomainError("the even-weaker analysis is defined for n = 4");
  if (n < 2 || n > 5) throw CapacityError("even-weaker analysis supports 2 <= n <= 5");

  const auto density = DensityTable::uniform(n);
  const auto graphs = decode_all(density);
  EwsmAnalysis out;
  out.n = n;
  out.codes = density.codes();
  out.csf_dimension = csf_dimension(n);
  const std::size_t cols = density.size();

  std::vector<std::vector<int>> two_vertex_rows;
  for (const auto& [a, b] : covering_pairs(n)) {
    const auto t = build_table(density, graphs, Property::EWSM, a, b);
    const bool two_vertex = a.size() == n - 1 && b.size() == n - 1 && (a & b).size() == n - 2;
    if (two_vertex) ++out.two_vertex_choices;
    if (t.row_codes.size() < 2 || t.col_codes.size() < 2) continue;
    for (std::size_t r = 1; r < t.row_codes.size(); ++r) {
      for (std::size_t c = 1; c < t.col_codes.size(); ++c) {
        const std::size_t cells[4] = {t.member[r][c], t.member[0][0], t.member[r][0], t.member[0][c]};
        if (std::find(std::begin(cells), std::end(cells), kNoMember) != std::end(cells)) {
          throw std::logic_error("conditioning set is not a product of its marginals");
        }
        std::vector<int> row(cols, 0);
        row[cells[0]] += 1;
        row[cells[1]] += 1;
        row[cells[2]] -= 1;
        row[cells[3]] -= 1;
        out.constraints.push_back(row);
        if (two_vertex) two_vertex_rows.push_back(row);
      }
    }
  }
  out.num_constraints_bound = static_cast<int>(two_vertex_rows.size());
  out.full_sweep_rows = static_cast<int>(out.constraints.size());

  auto to_rational = [&](const std::vector<std::vector<int>>& rows) {
    std::vector<std::vector<detail::Rational>> m;
    m.reserve(rows.size());
    for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
    return m;
  };
  auto two = to_rational(two_vertex_rows);
  out.rank = static_cast<int>(detail::reduce_rows(two, cols).size());
  auto full = to_rational(out.constraints);
  const auto pivots = detail::reduce_rows(full, cols);
  out.full_sweep_rank = static_cast<int>(pivots.size());
  out.free_dimension_bound = static_cast<int>(cols) - 1 - out.full_sweep_rank;

  // Null space: one basis vector per free column.
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<double> v(cols, 0.0);
    v[f] = 1.0;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -full[r][f].to_double();
    out.null_basis.push_back(std::move(v));
  }
  return out;
}

DensityTable ewsm_separating_density(const EwsmAnalysis& analysis, std::uint64_t seed, double scale) {
  CounterRng rng(seed);
  std::vector<double> logs(analysis.codes.size(), 0.0);
  for (const auto& basis : analysis.null_basis) {
    const double z = rng.uniform(-scale, scale);
    for (std::size_t i = 0; i < logs.size(); ++i) logs[i] += z * basis[i];
  }
  return normalize_log_weights(analysis.n, analysis.codes, logs);
}

}  // namespace csf
