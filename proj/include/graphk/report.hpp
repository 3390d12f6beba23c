#pragma once

// JSON and text rendering of graphs, six-term sequences and witnesses.
// Integers that fit in 64 bits are emitted as JSON numbers, larger ones
// as decimal strings; ∞ multiplicities are the string "inf".

#include "graphk/graph.hpp"
#include "graphk/sixterm.hpp"
#include "graphk/toeplitz.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace graphk {

using Json = nlohmann::ordered_json;

/// {"vertices": [...], "edges": [[src, dst, n | "inf"], ...]}.  Throws InputError.
Graph graph_from_json(const Json& j);
Graph read_graph_file(const std::string& path);
Json graph_to_json(const Graph& g);

/// Comma-separated vertex names; empty string gives the empty set.
VertexSet parse_vertex_list(const Graph& g, const std::string& names);
/// Comma-separated integers.
IntVector parse_int_list(const std::string& s);

Json integer_to_json(const Integer& n);
Integer integer_from_json(const Json& j);
Json vector_to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j, std::size_t cols_if_empty = 0);

Json vertex_names(const Graph& g, const std::vector<Vertex>& vs);
Json vertex_names(const Graph& g, const VertexSet& vs);

Json group_to_json(const GroupSummary& s);
GroupSummary group_from_json(const Json& j);

Json ideals_report(const Graph& g);
Json kgroups_report(const RelativeGraph& rg, const KGroups& k);
Json sixterm_report(const Graph& g, const SixTermSequence& seq, const ExactnessReport& ex);
/// Group summaries in node order, read back from a sixterm report.
std::array<GroupSummary, 6> groups_from_report(const Json& report);
Json witness_report(const Graph& g, const WitnessIndex& w, const IntVector& residue,
                    const std::optional<IntVector>& oracle_class);

std::string sixterm_text(const Graph& g, const SixTermSequence& seq, const ExactnessReport& ex);

}  // namespace graphk
