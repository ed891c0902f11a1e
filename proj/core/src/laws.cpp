#include "csf/laws.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csf/error.hpp"

namespace csf {

double PotentialTable::base_log_value(VertexSet a) const {
  if (auto it = overrides_.find(a); it != overrides_.end()) return it->second;
  if (hubs_ && !a.intersects(*hubs_)) return kPosInf;
  return rule_(a.size());
}

double PotentialTable::log_value(VertexSet a) const {
  double value = base_log_value(a);
  if (value == kPosInf) return value;
  for (const auto& term : terms_) value += (*term)(a);
  return value;
}

bool PotentialTable::has_hard_constraint() const {
  if (hubs_) return true;
  return std::any_of(overrides_.begin(), overrides_.end(), [](const auto& kv) { return kv.second == kPosInf; });
}

CsfLaw::CsfLaw(int n, PotentialTable phi, PotentialTable psi) : n_(n), phi_(std::move(phi)), psi_(std::move(psi)) {
  if (n < 1 || n > kMaxVertices) {
    throw CapacityError("law vertex count " + std::to_string(n) + " outside 1.." + std::to_string(kMaxVertices));
  }
  const VertexSet all = VertexSet::full(n);
  if (phi_.hubs()) throw InvalidLawError("hub constraints apply to separator potentials only");
  for (const auto& [a, v] : phi_.overrides()) {
    if (!a.is_subset_of(all)) throw DomainError("phi override {" + a.to_string() + "} outside vertex set");
    if (!std::isfinite(v)) throw InvalidLawError("phi override {" + a.to_string() + "} is not finite");
  }
  for (const auto& [a, v] : psi_.overrides()) {
    if (!a.is_subset_of(all)) throw DomainError("psi override {" + a.to_string() + "} outside vertex set");
    if (std::isnan(v) || v == kNegInf) {
      throw InvalidLawError("psi override {" + a.to_string() + "} must be finite or +inf");
    }
  }
  if (psi_.hubs() && !psi_.hubs()->is_subset_of(all)) throw DomainError("hubs outside vertex set");
}

CsfLaw CsfLaw::uniform(int n) { return CsfLaw(n, PotentialTable{}, PotentialTable{}); }

int t_statistic(const DecomposableGraph& g, VertexSet a) {
  if (!a.is_subset_of(g.graph().vertices())) throw DomainError("subset outside vertex set");
  const auto c = census(g);
  if (std::find(c.cliques.begin(), c.cliques.end(), a) != c.cliques.end()) return 1;
  if (auto it = c.separators.find(a); it != c.separators.end()) return -it->second;
  return 0;
}

std::map<VertexSet, int> t_vector(const DecomposableGraph& g) {
  const auto c = census(g);
  std::map<VertexSet, int> out;
  for (VertexSet clique : c.cliques) out[clique] = 1;
  for (const auto& [s, nu] : c.separators) out[s] = -nu;
  return out;
}

double log_density_unnorm(const CsfLaw& law, const CliqueSeparatorCensus& c) {
  double sum = 0.0;
  for (VertexSet clique : c.cliques) {
    const double v = law.phi().log_value(clique);
    if (!std::isfinite(v)) throw InvalidLawError("phi at {" + clique.to_string() + "} is not finite");
    sum += v;
  }
  for (const auto& [s, nu] : c.separators) {
    const double v = law.psi().log_value(s);
    if (v == kPosInf) return kNegInf;
    if (!std::isfinite(v)) throw InvalidLawError("psi at {" + s.to_string() + "} gives an infinite density");
    sum -= nu * v;
  }
  if (!std::isfinite(sum)) throw InvalidLawError("log-density overflow");
  return sum;
}

double log_density_unnorm(const CsfLaw& law, const DecomposableGraph& g) {
  if (g.n() != law.n()) throw DomainError("graph and law vertex counts differ");
  return log_density_unnorm(law, census(g));
}

CsfLaw erdos_renyi_csf(int n, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("edge probability must lie in (0,1)");
  const double coef = std::log(p / (1.0 - p));
  return CsfLaw(n, PotentialTable(SizeRule::per_pair(coef)), PotentialTable(SizeRule::per_pair(coef)));
}

CsfLaw hub_law(int n, VertexSet hubs, double clique_rate, double separator_rate) {
  PotentialTable psi(SizeRule::exp_linear(separator_rate));
  psi.set_hub_constraint(hubs);
  return CsfLaw(n, PotentialTable(SizeRule::exp_linear(clique_rate)), std::move(psi));
}

std::int64_t csf_dimension(int n) {
  if (n < 2) throw DomainError("dimension formulas need n >= 2");
  if (n > 61) throw CapacityError("dimension overflows 64-bit integers");
  return 2 * (std::int64_t{1} << n) - 2 * n - 3;
}

std::int64_t cef_dimension(int n) {
  if (n < 2) throw DomainError("dimension formulas need n >= 2");
  if (n > 61) throw CapacityError("dimension overflows 64-bit integers");
  return (std::int64_t{1} << n) - n - 1;
}

namespace {

constexpr int kMaxMaterialised = 20;

// Adds shift(A) = offset + Σ_{v∈A} per_vertex[v] to every lookup of the table.
PotentialTable shifted(const PotentialTable& table, int n, double offset, const std::vector<double>& per_vertex) {
  const bool uniform_shift =
      std::all_of(per_vertex.begin(), per_vertex.end(), [&](double d) { return d == per_vertex.front(); });
  auto shift = [&](VertexSet a) {
    double s = offset;
    for (int v : a) s += per_vertex[v];
    return s;
  };

  PotentialTable out = table;
  if (uniform_shift) {
    SizeRule r = table.rule();
    r.constant += offset;
    r.linear += per_vertex.empty() ? 0.0 : per_vertex.front();
    out.set_rule(r);
    for (const auto& [a, v] : table.overrides()) out.set_override(a, v + shift(a));
    return out;
  }
  if (n > kMaxMaterialised) {
    throw CapacityError("vertex-dependent standardisation needs n <= " + std::to_string(kMaxMaterialised));
  }
  out.clear_overrides();
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t bits = 0; bits < subsets; ++bits) {
    const VertexSet a(bits);
    out.set_override(a, table.base_log_value(a) + shift(a));
  }
  return out;
}

}  // namespace

CsfLaw standardize(const CsfLaw& law) {
  // Adding shift(A) = c + Σ_{v∈A} d_v to both log φ_A and log ψ_A changes every log-density by
  // the same constant, because Σ_A t_A = 1 and Σ_{A∋v} t_A = 1 for every decomposable graph.
  const int n = law.n();
  const double log_psi_empty = law.psi().log_value(VertexSet{});
  const double c = log_psi_empty == kPosInf ? 0.0 : -log_psi_empty;
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) d[v] = -law.phi().log_value(VertexSet::singleton(v)) - c;
  return CsfLaw(n, shifted(law.phi(), n, c, d), shifted(law.psi(), n, c, d));
}

DensityTable::DensityTable(int n, std::vector<std::uint64_t> codes, std::vector<double> probs)
    : n_(n), codes_(std::move(codes)), probs_(std::move(probs)) {
  if (codes_.size() != probs_.size()) throw DomainError("density codes and probabilities differ in length");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("density entries must be finite and nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw DomainError("density does not sum to 1");
  index_.reserve(codes_.size());
  for (std::size_t i = 0; i < codes_.size(); ++i) {
    if (!index_.emplace(codes_[i], i).second) throw DomainError("duplicate graph in density table");
  }
}

DensityTable DensityTable::uniform(int n, EnumerationLimits limits) {
  auto codes = decomposable_codes(n, limits);
  std::vector<double> probs(codes.size(), 1.0 / static_cast<double>(codes.size()));
  return DensityTable(n, std::move(codes), std::move(probs));
}

std::optional<std::size_t> DensityTable::index_of(std::uint64_t code) const {
  if (auto it = index_.find(code); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t DensityTable::index_of(const Graph& g) const {
  if (g.n() != n_) throw DomainError("graph vertex count differs from density table");
  auto idx = index_of(edge_code(g));
  if (!idx) throw DomainError("graph not in density table");
  return *idx;
}

DensityTable DensityTable::perturbed(std::size_t i, double factor) const {
  std::vector<double> w = probs_;
  w.at(i) *= factor;
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return DensityTable(n_, codes_, std::move(w));
}

DensityTable normalize_log_weights(int n, std::vector<std::uint64_t> codes, const std::vector<double>& log_weights) {
  double top = kNegInf;
  for (double l : log_weights) top = std::max(top, l);
  if (top == kNegInf) throw EmptySupportError("no graph has positive probability");

  std::vector<double> w(log_weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_weights[i] - top);

  // Neumaier summation over ascending terms so Z does not depend on enumeration order.
  std::vector<double> sorted = w;
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  double comp = 0.0;
  for (double x : sorted) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  const double z = sum + comp;
  for (double& x : w) x /= z;
  return DensityTable(n, std::move(codes), std::move(w));
}

DensityTable normalize_by_enumeration(const CsfLaw& law, EnumerationLimits limits) {
  std::vector<std::uint64_t> codes;
  std::vector<double> logs;
  for_each_decomposable(
      law.n(),
      [&](std::uint64_t code, const DecomposableGraph& g) {
        codes.push_back(code);
        logs.push_back(log_density_unnorm(law, g));
      },
      limits);
  return normalize_log_weights(law.n(), std::move(codes), logs);
}

}  // namespace csf
