#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "csf/laws.hpp"
#include "csf/posterior.hpp"
#include "csf/sampler.hpp"

namespace csf::io {

// {"n":5,"edges":[[1,3],[0,1]]}. Duplicate pairs, self-loops and out-of-range indices are rejected.
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);

// {"n":..,"phi":{"rule":{...},"overrides":{"0,1":-1.5}},
//  "psi":{"rule":{...},"overrides":{},"hub_constraint":{"hubs":[0,1],"no_hub":"inf"}}}
// Rules: {"type":"const","value":v}, {"type":"exp_linear","rate":r} (log-potential −r|A|),
// {"type":"poly","constant":c,"linear":l,"pairs":q}. Override values may be "inf" (ψ only).
CsfLaw parse_law(const std::string& text);
// Attached subset terms are not serialisable; materialise() them first.
std::string format_law(const CsfLaw& law);

// Copy of law with every subset's log-potential written as an override and no attached
// terms or hub constraint. Requires n <= 20.
CsfLaw materialise(const CsfLaw& law);

// {"n":4,"entries":[{"edges":[[0,1]],"p":0.0123},...]}; entries must cover exactly the
// decomposable graphs on n vertices.
DensityTable parse_density(const std::string& text, EnumerationLimits limits = {});
std::string format_density(const DensityTable& d);

// Whether a JSON document looks like a density table (has "entries") rather than a law.
bool is_density_document(const std::string& text);

// CSV of 0/1 values, one observation per row.
BinaryData parse_binary_csv(const std::string& text, bool skip_header = false);

// {"step":1000,"edges":[...],"logd":-12.5,"cliques":7,"max_clique":4,"separator_sizes":{...}}
std::string format_sample_record(const SampleRecord& r);
// {"summary":true,"steps":..,"accepted":..,"acceptance_rate":..,"retained":..}
std::string format_summary_record(const SampleSummary& s);

// Graphviz description; hubs get style=filled.
std::string format_dot(const Graph& g, VertexSet hubs = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace csf::io
