#include "csf/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "csf/error.hpp"
#include "json.hpp"

namespace csf::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

Graph graph_from_edge_array(int n, const json& edges) {
  if (!edges.is_array()) throw FormatError("'edges' must be an array");
  Graph g(n);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw FormatError("each edge must be a 2-element array of vertex indices");
    }
    int u = e[0].get<int>();
    int v = e[1].get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n) throw FormatError("edge index out of range");
    if (u == v) throw FormatError("self-loop in edge list");
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) throw FormatError("duplicate edge in edge list");
    g.add_edge(u, v);
  }
  return g;
}

ordered_json edge_array(const Graph& g) {
  ordered_json out = ordered_json::array();
  for (auto [u, v] : g.edges()) out.push_back({u, v});
  return out;
}

ordered_json edge_array(const std::vector<Edge>& edges) {
  ordered_json out = ordered_json::array();
  for (auto [u, v] : edges) out.push_back({u, v});
  return out;
}

int parse_n(const json& j) {
  const int n = field<int>(j, "n");
  if (n < 1 || n > kMaxVertices) throw FormatError("'n' must lie in 1.." + std::to_string(kMaxVertices));
  return n;
}

SizeRule parse_rule(const json& j) {
  const auto type = field<std::string>(j, "type");
  if (type == "const") return SizeRule::const_value(field<double>(j, "value"));
  if (type == "exp_linear") return SizeRule::exp_linear(field<double>(j, "rate"));
  if (type == "poly") {
    return SizeRule{j.value("constant", 0.0), j.value("linear", 0.0), j.value("pairs", 0.0)};
  }
  throw FormatError("unknown rule type '" + type + "'");
}

ordered_json format_rule(const SizeRule& r) {
  if (r.linear == 0.0 && r.pairs == 0.0) return {{"type", "const"}, {"value", r.constant}};
  if (r.constant == 0.0 && r.pairs == 0.0) return {{"type", "exp_linear"}, {"rate", -r.linear}};
  return {{"type", "poly"}, {"constant", r.constant}, {"linear", r.linear}, {"pairs", r.pairs}};
}

double parse_log_potential(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && (v == "inf" || v == "+inf")) return std::numeric_limits<double>::infinity();
  throw FormatError("override values must be numbers or \"inf\"");
}

PotentialTable parse_table(const json& j, bool separators) {
  if (!j.is_object()) throw FormatError("potential table must be an object");
  PotentialTable t(j.contains("rule") ? parse_rule(j.at("rule")) : SizeRule{});
  if (j.contains("overrides")) {
    const auto& ov = j.at("overrides");
    if (!ov.is_object()) throw FormatError("'overrides' must be an object");
    for (const auto& [key, value] : ov.items()) t.set_override(VertexSet::parse(key), parse_log_potential(value));
  }
  if (j.contains("hub_constraint")) {
    if (!separators) throw FormatError("hub_constraint is only valid for psi");
    const auto& hc = j.at("hub_constraint");
    if (hc.value("no_hub", std::string("inf")) != "inf") throw FormatError("hub_constraint.no_hub must be \"inf\"");
    VertexSet hubs;
    for (const auto& h : hc.at("hubs")) {
      const int v = h.get<int>();
      if (v < 0 || v >= kMaxVertices) throw FormatError("hub index out of range");
      hubs.insert(v);
    }
    t.set_hub_constraint(hubs);
  }
  return t;
}

ordered_json format_table(const PotentialTable& t) {
  if (!t.terms().empty()) throw DomainError("law has attached likelihood terms; materialise it before writing");
  ordered_json out;
  out["rule"] = format_rule(t.rule());
  ordered_json ov = ordered_json::object();
  for (const auto& [a, v] : t.overrides()) {
    if (v == std::numeric_limits<double>::infinity()) {
      ov[a.to_string()] = "inf";
    } else {
      ov[a.to_string()] = v;
    }
  }
  out["overrides"] = ov;
  if (t.hubs()) {
    ordered_json hubs = ordered_json::array();
    for (int v : *t.hubs()) hubs.push_back(v);
    out["hub_constraint"] = {{"hubs", hubs}, {"no_hub", "inf"}};
  }
  return out;
}

}  // namespace

Graph parse_graph(const std::string& text) {
  const json j = parse_json(text);
  const int n = parse_n(j);
  if (!j.contains("edges")) throw FormatError("missing 'edges'");
  return graph_from_edge_array(n, j.at("edges"));
}

std::string format_graph(const Graph& g) {
  ordered_json j;
  j["n"] = g.n();
  j["edges"] = edge_array(g);
  return j.dump();
}

CsfLaw parse_law(const std::string& text) {
  const json j = parse_json(text);
  const int n = parse_n(j);
  if (!j.contains("phi") || !j.contains("psi")) throw FormatError("law needs 'phi' and 'psi'");
  return CsfLaw(n, parse_table(j.at("phi"), false), parse_table(j.at("psi"), true));
}

std::string format_law(const CsfLaw& law) {
  ordered_json j;
  j["n"] = law.n();
  j["phi"] = format_table(law.phi());
  j["psi"] = format_table(law.psi());
  return j.dump();
}

CsfLaw materialise(const CsfLaw& law) {
  constexpr int kMax = 20;
  if (law.n() > kMax) throw CapacityError("materialising a law needs n <= 20");
  auto expand = [&](const PotentialTable& t) {
    PotentialTable out;
    const std::uint64_t subsets = std::uint64_t{1} << law.n();
    for (std::uint64_t bits = 0; bits < subsets; ++bits) out.set_override(VertexSet(bits), t.log_value(VertexSet(bits)));
    return out;
  };
  return CsfLaw(law.n(), expand(law.phi()), expand(law.psi()));
}

DensityTable parse_density(const std::string& text, EnumerationLimits limits) {
  const json j = parse_json(text);
  const int n = parse_n(j);
  if (n > kMaxCodedVertices) throw CapacityError("density tables need n <= 11");
  if (!j.contains("entries") || !j.at("entries").is_array()) throw FormatError("missing 'entries' array");

  std::vector<std::pair<std::uint64_t, double>> entries;
  for (const auto& e : j.at("entries")) {
    const Graph g = graph_from_edge_array(n, e.at("edges"));
    if (!is_decomposable(g)) throw FormatError("density entry is not a decomposable graph");
    entries.emplace_back(edge_code(g), field<double>(e, "p"));
  }
  std::sort(entries.begin(), entries.end());
  const auto expected = decomposable_codes(n, limits);
  if (entries.size() != expected.size()) {
    throw FormatError("density has " + std::to_string(entries.size()) + " entries, expected " +
                      std::to_string(expected.size()));
  }
  std::vector<std::uint64_t> codes;
  std::vector<double> probs;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first != expected[i]) throw FormatError("density entries do not cover the decomposable graphs exactly");
    codes.push_back(entries[i].first);
    probs.push_back(entries[i].second);
  }
  return DensityTable(n, std::move(codes), std::move(probs));
}

std::string format_density(const DensityTable& d) {
  ordered_json j;
  j["n"] = d.n();
  ordered_json entries = ordered_json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    ordered_json e;
    e["edges"] = edge_array(d.graph(i));
    e["p"] = d.prob(i);
    entries.push_back(std::move(e));
  }
  j["entries"] = std::move(entries);
  return j.dump();
}

bool is_density_document(const std::string& text) {
  const json j = parse_json(text);
  return j.is_object() && j.contains("entries");
}

BinaryData parse_binary_csv(const std::string& text, bool skip_header) {
  BinaryData data;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && skip_header) {
      first = false;
      continue;
    }
    first = false;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    std::uint64_t row = 0;
    int col = 0;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      const std::string v = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
      if (v != "0" && v != "1") {
        throw FormatError("line " + std::to_string(lineno) + ": expected 0 or 1, got '" + v + "'");
      }
      if (col >= kMaxDataColumns) throw FormatError("more than " + std::to_string(kMaxDataColumns) + " columns");
      if (v == "1") row |= std::uint64_t{1} << col;
      ++col;
    }
    if (data.rows.empty()) {
      data.columns = col;
    } else if (col != data.columns) {
      throw FormatError("line " + std::to_string(lineno) + ": inconsistent column count");
    }
    data.rows.push_back(row);
  }
  if (data.rows.empty()) throw FormatError("no data rows");
  return data;
}

std::string format_sample_record(const SampleRecord& r) {
  ordered_json j;
  j["step"] = r.step;
  j["edges"] = edge_array(r.edges);
  j["logd"] = r.log_density;
  j["cliques"] = r.cliques;
  j["max_clique"] = r.max_clique;
  ordered_json seps = ordered_json::object();
  for (const auto& [size, count] : r.separator_sizes) seps[std::to_string(size)] = count;
  j["separator_sizes"] = seps;
  return j.dump();
}

std::string format_summary_record(const SampleSummary& s) {
  ordered_json j;
  j["summary"] = true;
  j["steps"] = s.steps;
  j["accepted"] = s.accepted;
  j["acceptance_rate"] = s.acceptance_rate();
  j["retained"] = s.samples.size();
  return j.dump();
}

std::string format_dot(const Graph& g, VertexSet hubs) {
  std::ostringstream out;
  out << "graph G {\n";
  for (int v = 0; v < g.n(); ++v) {
    out << "  " << v;
    if (hubs.contains(v)) out << " [style=filled, fillcolor=\"gray25\", fontcolor=\"white\"]";
    out << ";\n";
  }
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << contents;
  if (!out) throw FormatError("write to '" + path + "' failed");
}

}  // namespace csf::io
