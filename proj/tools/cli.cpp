#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "csf/enumerate.hpp"
#include "csf/error.hpp"
#include "csf/io.hpp"
#include "csf/laws.hpp"
#include "csf/markov_check.hpp"
#include "csf/posterior.hpp"
#include "csf/sampler.hpp"
#include "json.hpp"

namespace csf::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<int> n;
  std::string law;
  std::string graph;
  std::string property = "wsm";
  double tol = 1e-9;
  std::uint64_t steps = 0;
  std::uint64_t thin = 100;
  std::uint64_t seed = 0;
  std::string hubs;
  std::optional<double> phi_rate;
  std::optional<double> psi_rate;
  std::string data;
  double alpha = 1.0;
  std::string out;
  bool count_only = false;
  bool skip_header = false;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  void enumerate() {
    const int n = need_n();
    if (o_.count_only) {
      emit(std::to_string(count_decomposable(n)) + "\n");
      return;
    }
    std::string text;
    for_each_decomposable(n, [&](std::uint64_t, const DecomposableGraph& g) { text += io::format_graph(g.graph()) + "\n"; });
    emit(text);
  }

  void dim() {
    const int n = need_n();
    ordered_json j;
    j["n"] = n;
    j["csf_dimension"] = csf_dimension(n);
    j["cef_dimension"] = cef_dimension(n);
    emit(j.dump() + "\n");
  }

  void density() { emit(io::format_density(load_density()) + "\n"); }

  void check() {
    const auto property = parse_property(o_.property);
    const auto report = check_property(load_density(), property, o_.tol);
    ordered_json j;
    j["property"] = to_string(report.property);
    j["passed"] = report.passed;
    j["worst_violation"] = finite_or_string(report.worst_violation);
    j["tolerance"] = report.tolerance;
    j["pairs_checked"] = report.pairs_checked;
    j["pairs_vacuous"] = report.pairs_vacuous;
    if (report.worst_violation > 0.0) {
      const auto& w = report.witness;
      j["witness"] = {{"a", w.a.to_string()}, {"b", w.b.to_string()},   {"g_a", w.row1},
                      {"g_a_prime", w.row2},  {"g_b", w.col1},           {"g_b_prime", w.col2}};
    }
    emit(j.dump() + "\n");
  }

  void fit() {
    const auto density = load_density();
    const auto law = fit_csf_from_density(density);
    double worst = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
      const double rebuilt = std::exp(log_density_unnorm(law, DecomposableGraph(density.graph(i))));
      worst = std::max(worst, std::abs(rebuilt - density.prob(i)) / density.prob(i));
    }
    err_ << "fit: max relative reconstruction error " << worst << "\n";
    emit(io::format_law(law) + "\n");
  }

  void lemma_check() {
    const auto density = load_density();
    const int n = density.n();
    Lemma1Deviation lemma1;
    for (std::size_t i = 0; i < density.size(); ++i) {
      const auto d = verify_lemma1_identity(density, DecomposableGraph(density.graph(i)));
      lemma1.identity = std::max(lemma1.identity, d.identity);
      lemma1.crossover = std::max(lemma1.crossover, d.crossover);
    }
    double lemma2 = 0.0;
    std::size_t separators = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      const VertexSet s(bits);
      if (s.size() > n - 2) continue;
      lemma2 = std::max(lemma2, verify_lemma2_ratio(density, s));
      ++separators;
    }
    ordered_json j;
    j["n"] = n;
    j["graphs"] = density.size();
    j["lemma1_identity"] = finite_or_string(lemma1.identity);
    j["lemma1_crossover"] = finite_or_string(lemma1.crossover);
    j["lemma2_subsets"] = separators;
    j["lemma2_spread"] = finite_or_string(lemma2);
    j["tolerance"] = o_.tol;
    j["passed"] = lemma1.max() <= o_.tol && lemma2 <= o_.tol;
    emit(j.dump() + "\n");
  }

  void ewsm_rank() {
    const int n = need_n();
    const auto a = ewsm_dimension_analysis(n);
    const auto witness = ewsm_separating_density(a, o_.seed);
    const auto ewsm = check_property(witness, Property::EWSM, o_.tol);
    const auto wsm = check_property(witness, Property::WSM, o_.tol);
    ordered_json j;
    j["n"] = n;
    j["two_vertex_choices"] = a.two_vertex_choices;
    j["constraints"] = a.num_constraints_bound;
    j["rank"] = a.rank;
    j["full_sweep_rows"] = a.full_sweep_rows;
    j["full_sweep_rank"] = a.full_sweep_rank;
    j["free_dimension"] = a.free_dimension_bound;
    j["csf_dimension"] = a.csf_dimension;
    j["witness"] = {{"ewsm_worst_violation", ewsm.worst_violation},
                    {"wsm_worst_violation", finite_or_string(wsm.worst_violation)},
                    {"passes_ewsm", ewsm.passed},
                    {"fails_wsm", !wsm.passed}};
    out_ << j.dump() << "\n";
    if (!o_.out.empty()) io::write_file(o_.out, io::format_density(witness) + "\n");
  }

  void sample() {
    const auto law = load_law(true);
    const auto init = o_.graph.empty() ? default_init(law) : DecomposableGraph(load_graph(law.n()));
    ChainOptions options;
    options.steps = o_.steps;
    options.thin = o_.thin;
    options.seed = o_.seed;
    const auto summary = run_chain(law, init, options);
    std::string text;
    for (const auto& r : summary.samples) text += io::format_sample_record(r) + "\n";
    text += io::format_summary_record(summary) + "\n";
    if (o_.out.empty()) {
      out_ << text;
    } else {
      io::write_file(o_.out, text);
      out_ << io::format_summary_record(summary) << "\n";
    }
  }

  void posterior() {
    const auto prior = load_law(false);
    if (o_.data.empty()) throw UsageError("posterior needs --data");
    auto data = io::parse_binary_csv(io::read_file(o_.data), o_.skip_header);
    if (data.columns != prior.n()) throw DomainError("data has " + std::to_string(data.columns) + " columns, law has n=" + std::to_string(prior.n()));
    const auto post = posterior_law(prior, bernoulli_dirichlet_score(std::move(data), o_.alpha));
    emit(io::format_law(io::materialise(post)) + "\n");
  }

  void export_dot() {
    if (o_.graph.empty()) throw UsageError("export-dot needs --graph");
    const Graph g = io::parse_graph(io::read_file(o_.graph));
    const VertexSet hubs = VertexSet::parse(o_.hubs);
    if (!hubs.is_subset_of(g.vertices())) throw DomainError("hub index outside the graph");
    emit(io::format_dot(g, hubs));
  }

 private:
  static ordered_json finite_or_string(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
  }

  int need_n() const {
    if (!o_.n) throw UsageError("--n is required");
    return *o_.n;
  }

  void emit(const std::string& text) {
    if (o_.out.empty()) {
      out_ << text;
    } else {
      io::write_file(o_.out, text);
    }
  }

  Graph load_graph(int n) const {
    Graph g = io::parse_graph(io::read_file(o_.graph));
    if (g.n() != n) throw DomainError("graph vertex count does not match the law");
    return g;
  }

  // --law uniform | PATH, or (sampling only) a size-rule law from --phi-rate/--psi-rate/--hubs.
  CsfLaw load_law(bool allow_rates) const {
    const bool rates = o_.phi_rate || o_.psi_rate || !o_.hubs.empty();
    if (!o_.law.empty() && rates) throw UsageError("--law cannot be combined with --hubs/--phi-rate/--psi-rate");
    if (o_.law == "uniform") return CsfLaw::uniform(need_n());
    if (!o_.law.empty()) {
      const std::string text = io::read_file(o_.law);
      if (io::is_density_document(text)) throw UsageError("--law names a density table; a law is required here");
      auto law = io::parse_law(text);
      if (o_.n && *o_.n != law.n()) throw DomainError("--n does not match the law file");
      return law;
    }
    if (allow_rates && rates) {
      const int n = need_n();
      PotentialTable phi(SizeRule::exp_linear(o_.phi_rate.value_or(0.0)));
      PotentialTable psi(SizeRule::exp_linear(o_.psi_rate.value_or(0.0)));
      if (!o_.hubs.empty()) psi.set_hub_constraint(VertexSet::parse(o_.hubs));
      return CsfLaw(n, std::move(phi), std::move(psi));
    }
    throw UsageError("--law is required");
  }

  DensityTable load_density() const {
    if (!o_.law.empty() && o_.law != "uniform") {
      const std::string text = io::read_file(o_.law);
      if (io::is_density_document(text)) {
        auto d = io::parse_density(text);
        if (o_.n && *o_.n != d.n()) throw DomainError("--n does not match the density file");
        return d;
      }
    }
    return normalize_by_enumeration(load_law(false));
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Clique–separator factorisation laws on decomposable graphs", "csfctl"};
  app.require_subcommand(1, 1);

  auto add_n = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--n", o.n, "Vertex count")->check(CLI::Range(1, kMaxVertices));
    if (required) opt->required();
  };
  auto add_law = [&](CLI::App* s) { s->add_option("--law", o.law, "Law or density file, or 'uniform'"); };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out, "Output path (default: standard output)"); };
  auto add_tol = [&](CLI::App* s) { s->add_option("--tol", o.tol, "Tolerance on the log scale")->check(CLI::NonNegativeNumber); };

  auto* enumerate = app.add_subcommand("enumerate", "List or count decomposable graphs on n vertices");
  add_n(enumerate, true);
  enumerate->add_flag("--count-only", o.count_only, "Print only the count");
  add_out(enumerate);

  auto* dim = app.add_subcommand("dim", "Dimensions of the CSF and clique exponential families");
  add_n(dim, true);

  auto* density = app.add_subcommand("density", "Normalised density table of a law");
  add_n(density, false);
  add_law(density);
  add_out(density);

  auto* check = app.add_subcommand("check", "Check a structural Markov property exhaustively");
  add_n(check, false);
  add_law(check);
  check->add_option("--property", o.property, "sm | wsm | ewsm")->check(CLI::IsMember({"sm", "wsm", "ewsm"}));
  add_tol(check);

  auto* fit = app.add_subcommand("fit", "Fit CSF potentials to a strictly positive density");
  add_n(fit, false);
  add_law(fit);
  add_out(fit);

  auto* lemma = app.add_subcommand("lemma-check", "Check the factorisation identities over all graphs");
  add_n(lemma, false);
  add_law(lemma);
  add_tol(lemma);

  auto* ewsm = app.add_subcommand("ewsm-rank", "Rank of the even-weaker property constraint system");
  add_n(ewsm, true);
  add_tol(ewsm);
  ewsm->add_option("--seed", o.seed, "Seed for the separating density");
  add_out(ewsm);

  auto* sample = app.add_subcommand("sample", "Metropolis–Hastings sampling with single-edge moves");
  add_n(sample, false);
  add_law(sample);
  sample->add_option("--graph", o.graph, "Initial graph file");
  sample->add_option("--steps", o.steps, "Number of steps");
  sample->add_option("--thin", o.thin, "Retain every thin-th state")->check(CLI::PositiveNumber);
  sample->add_option("--seed", o.seed, "Random seed");
  sample->add_option("--hubs", o.hubs, "Comma-separated hub vertices");
  sample->add_option("--phi-rate", o.phi_rate, "Clique rate a in phi_C = exp(-a|C|)");
  sample->add_option("--psi-rate", o.psi_rate, "Separator rate b in psi_S = exp(-b|S|)");
  add_out(sample);

  auto* posterior = app.add_subcommand("posterior", "Conjugate update with a Dirichlet–multinomial score");
  add_n(posterior, false);
  add_law(posterior);
  posterior->add_option("--data", o.data, "CSV of 0/1 observations");
  posterior->add_option("--alpha", o.alpha, "Dirichlet concentration per cell")->check(CLI::PositiveNumber);
  posterior->add_flag("--skip-header", o.skip_header, "Skip the first CSV line");
  add_out(posterior);

  auto* dot = app.add_subcommand("export-dot", "Render a graph file in DOT");
  dot->add_option("--graph", o.graph, "Graph file")->required();
  dot->add_option("--hubs", o.hubs, "Comma-separated hub vertices");
  add_out(dot);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  Runner runner(o, out, err);
  try {
    if (enumerate->parsed()) runner.enumerate();
    if (dim->parsed()) runner.dim();
    if (density->parsed()) runner.density();
    if (check->parsed()) runner.check();
    if (fit->parsed()) runner.fit();
    if (lemma->parsed()) runner.lemma_check();
    if (ewsm->parsed()) runner.ewsm_rank();
    if (sample->parsed()) runner.sample();
    if (posterior->parsed()) runner.posterior();
    if (dot->parsed()) runner.export_dot();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace csf::cli
