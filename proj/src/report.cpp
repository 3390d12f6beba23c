#include "graphk/report.hpp"

#include "graphk/error.hpp"

#include <fstream>
#include <sstream>

namespace graphk {

Graph graph_from_json(const Json& j) {
  try {
    if (!j.is_object() || !j.contains("vertices"))
      throw InputError("graph file needs a \"vertices\" list");
    std::vector<std::string> names;
    for (const auto& v : j.at("vertices")) {
      if (!v.is_string()) throw InputError("vertex names must be strings");
      names.push_back(v.get<std::string>());
    }
    const std::size_t n = names.size();
    std::vector<Multiplicity> adj(n * n);
    std::vector<bool> seen(n * n, false);
    Graph index(names, adj);
    auto lookup = [&](const Json& name) {
      if (!name.is_string()) throw InputError("edge endpoints must be vertex names");
      auto v = index.find(name.get<std::string>());
      if (!v) throw InputError("unknown vertex \"" + name.get<std::string>() + "\" in edge list");
      return *v;
    };
    if (j.contains("edges")) {
      for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3)
          throw InputError("edge entries are [source, target, multiplicity]: " + e.dump());
        Vertex s = lookup(e[0]), t = lookup(e[1]);
        Multiplicity m;
        if (e[2].is_string() && e[2].get<std::string>() == "inf")
          m = Multiplicity::infinite();
        else if (e[2].is_number_unsigned())
          m = Multiplicity(e[2].get<std::uint64_t>());
        else if (e[2].is_number_integer() && e[2].get<std::int64_t>() >= 0)
          m = Multiplicity(static_cast<std::uint64_t>(e[2].get<std::int64_t>()));
        else
          throw InputError("multiplicity must be a nonnegative integer or \"inf\": " + e.dump());
        if (seen[s * n + t]) throw InputError("duplicate edge entry " + e.dump());
        seen[s * n + t] = true;
        adj[s * n + t] = m;
      }
    }
    return Graph(std::move(names), std::move(adj));
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed graph JSON: ") + ex.what());
  }
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(path + ": " + ex.what());
  }
  return graph_from_json(j);
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (Vertex v = 0; v < g.size(); ++v)
    for (Vertex w = 0; w < g.size(); ++w) {
      Multiplicity m = g.adjacency(v, w);
      if (m.is_zero()) continue;
      Json mult = m.is_infinite() ? Json("inf") : Json(m.count());
      edges.push_back(Json::array({g.name(v), g.name(w), mult}));
    }
  return Json{{"vertices", g.names()}, {"edges", edges}};
}

VertexSet parse_vertex_list(const Graph& g, const std::string& names) {
  VertexSet out;
  std::stringstream ss(names);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    auto v = g.find(item);
    if (!v) throw InputError("unknown vertex \"" + item + "\"");
    out.insert(*v);
  }
  return out;
}

IntVector parse_int_list(const std::string& s) {
  IntVector out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty entry in integer list \"" + s + "\"");
    item = item.substr(b, item.find_last_not_of(" \t") - b + 1);
    Integer n;
    if (n.set_str(item, 10) != 0) throw InputError("not an integer: \"" + item + "\"");
    out.push_back(n);
  }
  return out;
}

Json integer_to_json(const Integer& n) {
  if (n.fits_slong_p()) return Json(static_cast<std::int64_t>(n.get_si()));
  return Json(n.get_str());
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer n;
    if (n.set_str(j.get<std::string>(), 10) == 0) return n;
  }
  throw InputError("not an integer: " + j.dump());
}

Json vector_to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

IntVector vector_from_json(const Json& j) {
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

Json matrix_to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_to_json(m.row(i)));
  return a;
}

IntMatrix matrix_from_json(const Json& j, std::size_t cols_if_empty) {
  if (j.empty()) return IntMatrix(0, cols_if_empty);
  IntMatrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != m.cols()) throw InputError("ragged matrix");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = integer_from_json(j[i][k]);
  }
  return m;
}

Json vertex_names(const Graph& g, const std::vector<Vertex>& vs) {
  Json a = Json::array();
  for (Vertex v : vs) a.push_back(g.name(v));
  return a;
}

Json vertex_names(const Graph& g, const VertexSet& vs) {
  return vertex_names(g, std::vector<Vertex>(vs.begin(), vs.end()));
}

Json group_to_json(const GroupSummary& s) {
  return Json{{"invariant_factors", vector_to_json(s.invariant_factors)},
              {"free_rank", s.free_rank}};
}

GroupSummary group_from_json(const Json& j) {
  return {vector_from_json(j.at("invariant_factors")), j.at("free_rank").get<std::size_t>()};
}

Json ideals_report(const Graph& g) {
  auto pairs = admissible_pairs(g);
  auto cls = classify_vertices(g);
  Json list = Json::array();
  for (const auto& p : pairs)
    list.push_back(Json{{"H", vertex_names(g, p.H)}, {"S", vertex_names(g, p.S)}});
  Json hasse = Json::array();
  for (auto [i, k] : hasse_edges(pairs)) hasse.push_back(Json::array({i, k}));
  return Json{{"vertices", g.names()},
              {"regular", vertex_names(g, cls.regular)},
              {"singular", vertex_names(g, cls.singular)},
              {"condition_K", condition_K(g)},
              {"pairs", list},
              {"hasse", hasse}};
}

Json kgroups_report(const RelativeGraph& rg, const KGroups& k) {
  const Graph& g = rg.graph;
  return Json{{"relset", vertex_names(g, k.columns)},
              {"rows", vertex_names(g, k.rows)},
              {"matrix", matrix_to_json(k.matrix)},
              {"K0", group_to_json(summarize(k.k0))},
              {"K1", group_to_json(summarize(k.k1))},
              {"kernel_basis", matrix_to_json(k.kernel)}};
}

Json sixterm_report(const Graph& g, const SixTermSequence& seq, const ExactnessReport& ex) {
  SequenceSummary sum = invariant_summary(seq);
  Json groups = Json::object();
  const std::array<std::vector<Vertex>, 3> rows = {seq.ideal_rows(), seq.full_rows(),
                                                   seq.quot_rows()};
  const std::array<std::vector<Vertex>, 3> cols = {seq.ideal_columns(), seq.full_columns(),
                                                   seq.quot_columns()};
  const std::array<const IntMatrix*, 3> kernels = {&seq.ideal_kernel, &seq.full_kernel,
                                                   &seq.quot_kernel};
  for (std::size_t i = 0; i < 6; ++i) {
    Json gj = group_to_json(sum.groups[i]);
    if (i < 3) {
      gj["generators"] = vertex_names(g, rows[i]);
      gj["relations"] = matrix_to_json(seq.group(static_cast<Node>(i)).relations());
    } else {
      gj["ambient"] = vertex_names(g, cols[i - 3]);
      gj["kernel_basis"] = matrix_to_json(*kernels[i - 3]);
    }
    groups[node_names[i]] = gj;
  }
  const std::array<const IntMatrix*, 6> ambient = {&seq.iota0_matrix, &seq.pi0_matrix, nullptr,
                                                   &seq.iota1_matrix, &seq.pi1_matrix,
                                                   &seq.partial1_matrix};
  Json maps = Json::object();
  for (std::size_t i = 0; i < 6; ++i) {
    const MapSummary& m = sum.maps[i];
    Json mj{{"source", node_names[i]},
            {"target", node_names[(i + 1) % 6]},
            {"matrix", matrix_to_json(seq.map(i).lift())},
            {"well_defined", true},
            {"canonical_matrix", matrix_to_json(m.canonical)},
            {"smith_factors", vector_to_json(m.smith_factors)},
            {"kernel", group_to_json(m.kernel)},
            {"image", group_to_json(m.image)},
            {"cokernel", group_to_json(m.cokernel)}};
    if (ambient[i]) mj["ambient_matrix"] = matrix_to_json(*ambient[i]);
    maps[map_names[i]] = mj;
  }
  Json exact = Json::object();
  for (std::size_t i = 0; i < 6; ++i)
    exact[node_names[static_cast<std::size_t>(exactness_nodes[i])]] = ex.exact[i];
  return Json{{"H", vertex_names(g, seq.pair.H)},
              {"S", vertex_names(g, seq.pair.S)},
              {"classes", Json::array({vertex_names(g, seq.blocks.classes[0]),
                                       vertex_names(g, seq.blocks.classes[1]),
                                       vertex_names(g, seq.blocks.classes[2]),
                                       vertex_names(g, seq.blocks.classes[3]),
                                       vertex_names(g, seq.blocks.classes[4])})},
              {"groups", groups},
              {"maps", maps},
              {"exactness", exact},
              {"partial0_zero", ex.partial0_zero},
              {"exact", ex.all()}};
}

std::array<GroupSummary, 6> groups_from_report(const Json& report) {
  std::array<GroupSummary, 6> out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = group_from_json(report.at("groups").at(node_names[i]));
  return out;
}

namespace {

Json item_json(const Graph& g, const IndexItem& it, std::size_t position) {
  Json j{{"kind", it.kind == IndexItem::Kind::Vertex ? "vertex" : "edge"}};
  if (it.kind == IndexItem::Kind::Vertex)
    j["vertex"] = g.name(it.vertex);
  else
    j["edge"] = Json::array({g.name(it.edge.source), g.name(it.edge.target), it.edge.copy});
  j["i"] = it.i;
  j["position"] = position;
  return j;
}

}  // namespace

Json witness_report(const Graph& g, const WitnessIndex& w, const IntVector& residue,
                    const std::optional<IntVector>& oracle_class) {
  Json up = Json::array(), down = Json::array();
  for (const auto& it : w.upindex) up.push_back(item_json(g, it, w.up(it)));
  for (const auto& it : w.downindex) down.push_back(item_json(g, it, w.down(it)));
  return Json{{"relset", vertex_names(g, w.relset)},
              {"x", vector_to_json(w.x_relset)},
              {"h", w.h},
              {"upindex", up},
              {"downindex", down},
              {"residue_vector", vector_to_json(residue)},
              {"oracle_class", oracle_class ? vector_to_json(*oracle_class) : Json(nullptr)}};
}

std::string sixterm_text(const Graph& g, const SixTermSequence& seq, const ExactnessReport& ex) {
  SequenceSummary sum = invariant_summary(seq);
  std::ostringstream os;
  os << "H = " << g.set_str(seq.pair.H) << "  S = " << g.set_str(seq.pair.S) << "\n";
  for (std::size_t i = 0; i < 6; ++i)
    os << "  " << node_names[i] << " = " << sum.groups[i].str() << "\n";
  for (std::size_t i = 0; i < 6; ++i) {
    os << "  " << map_names[i] << ": " << node_names[i] << " -> " << node_names[(i + 1) % 6]
       << "  image " << sum.maps[i].image.str() << ", kernel " << sum.maps[i].kernel.str()
       << "\n";
    std::string m = seq.map(i).lift().str();
    std::istringstream lines(m);
    for (std::string line; std::getline(lines, line);) os << "      " << line << "\n";
  }
  os << "  exactness:";
  for (std::size_t i = 0; i < 6; ++i)
    os << " " << node_names[static_cast<std::size_t>(exactness_nodes[i])] << "="
       << (ex.exact[i] ? "yes" : "NO");
  os << "  partial0_zero=" << (ex.partial0_zero ? "yes" : "NO") << "\n";
  return os.str();
}

}  // namespace graphk
