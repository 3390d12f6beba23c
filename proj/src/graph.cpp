#include "graphk/graph.hpp"

#include "graphk/error.hpp"

#include <algorithm>
#include <sstream>

namespace graphk {

std::uint64_t Multiplicity::count() const {
  if (infinite_) throw InputError("infinite multiplicity where a finite count is required");
  return count_;
}

std::string Multiplicity::str() const { return infinite_ ? "inf" : std::to_string(count_); }

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::vector<std::string> names, std::vector<Multiplicity> adjacency)
    : names_(std::move(names)), adjacency_(std::move(adjacency)) {
  if (adjacency_.size() != names_.size() * names_.size())
    throw InputError("adjacency has " + std::to_string(adjacency_.size()) + " entries for " +
                     std::to_string(names_.size()) + " vertices");
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("duplicate vertex name");
}

Graph Graph::from_matrix(const std::vector<std::vector<Multiplicity>>& rows) {
  std::vector<std::string> names;
  std::vector<Multiplicity> adj;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    names.push_back("v" + std::to_string(i + 1));
    if (rows[i].size() != rows.size()) throw InputError("adjacency matrix is not square");
    adj.insert(adj.end(), rows[i].begin(), rows[i].end());
  }
  return Graph(std::move(names), std::move(adj));
}

std::optional<Vertex> Graph::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Vertex>(it - names_.begin());
}

Multiplicity Graph::out_degree(Vertex v) const {
  Multiplicity total;
  for (Vertex w = 0; w < size(); ++w) total = total + adjacency(v, w);
  return total;
}

bool Graph::is_regular(Vertex v) const {
  const Multiplicity d = out_degree(v);
  return d.is_finite() && !d.is_zero();
}

std::vector<Edge> Graph::edges_from(Vertex v) const {
  std::vector<Edge> out;
  for (Vertex w = 0; w < size(); ++w) {
    const Multiplicity m = adjacency(v, w);
    if (m.is_infinite())
      throw InputError("cannot enumerate the infinitely many edges " + name(v) + " -> " + name(w));
    for (std::uint64_t k = 1; k <= m.count(); ++k) out.push_back({v, w, k});
  }
  return out;
}

std::vector<Edge> Graph::edges_from_into(Vertex v, const VertexSet& targets) const {
  std::vector<Edge> out;
  for (Vertex w : targets) {
    const Multiplicity m = adjacency(v, w);
    if (m.is_infinite())
      throw InputError("cannot enumerate the infinitely many edges " + name(v) + " -> " + name(w));
    for (std::uint64_t k = 1; k <= m.count(); ++k) out.push_back({v, w, k});
  }
  return out;
}

std::string Graph::set_str(const VertexSet& s) const {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (Vertex v : s) {
    out << (first ? "" : ",") << name(v);
    first = false;
  }
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------------------
// Vertex sets

VertexClasses classify_vertices(const Graph& g) {
  VertexClasses c;
  for (Vertex v = 0; v < g.size(); ++v) (g.is_regular(v) ? c.regular : c.singular).insert(v);
  return c;
}

bool is_hereditary(const Graph& g, const VertexSet& h) {
  for (Vertex v : h)
    for (Vertex w = 0; w < g.size(); ++w)
      if (!g.adjacency(v, w).is_zero() && !h.contains(w)) return false;
  return true;
}

namespace {

bool ranges_inside(const Graph& g, Vertex v, const VertexSet& h) {
  for (Vertex w = 0; w < g.size(); ++w)
    if (!g.adjacency(v, w).is_zero() && !h.contains(w)) return false;
  return true;
}

Multiplicity edges_leaving(const Graph& g, Vertex v, const VertexSet& h) {
  Multiplicity total;
  for (Vertex w = 0; w < g.size(); ++w)
    if (!h.contains(w)) total = total + g.adjacency(v, w);
  return total;
}

void check_vertices(const Graph& g, const VertexSet& s) {
  for (Vertex v : s)
    if (v >= g.size()) throw InputError("vertex index " + std::to_string(v) + " out of range");
}

}  // namespace

bool is_saturated(const Graph& g, const VertexSet& h) {
  for (Vertex v = 0; v < g.size(); ++v)
    if (!h.contains(v) && g.is_regular(v) && ranges_inside(g, v, h)) return false;
  return true;
}

VertexSet saturate(const Graph& g, const VertexSet& hereditary) {
  check_vertices(g, hereditary);
  if (!is_hereditary(g, hereditary))
    throw InputError("saturate: " + g.set_str(hereditary) + " is not hereditary");
  VertexSet h = hereditary;
  for (bool grew = true; grew;) {
    grew = false;
    for (Vertex v = 0; v < g.size(); ++v)
      if (!h.contains(v) && g.is_regular(v) && ranges_inside(g, v, h)) {
        h.insert(v);
        grew = true;
      }
  }
  return h;
}

VertexSet breaking_vertices(const Graph& g, const VertexSet& h) {
  check_vertices(g, h);
  if (!is_hereditary(g, h) || !is_saturated(g, h))
    throw InputError("breaking_vertices: " + g.set_str(h) + " is not saturated hereditary");
  VertexSet b;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (!g.out_degree(v).is_infinite()) continue;
    const Multiplicity leaving = edges_leaving(g, v, h);
    if (leaving.is_finite() && !leaving.is_zero()) b.insert(v);
  }
  return b;
}

void validate_pair(const Graph& g, const AdmissiblePair& p) {
  check_vertices(g, p.H);
  check_vertices(g, p.S);
  if (!is_hereditary(g, p.H)) {
    for (Vertex v : p.H)
      for (Vertex w = 0; w < g.size(); ++w)
        if (!g.adjacency(v, w).is_zero() && !p.H.contains(w))
          throw InputError("H is not hereditary: " + g.name(v) + " in H reaches " + g.name(w) +
                           " outside H");
  }
  for (Vertex v = 0; v < g.size(); ++v)
    if (!p.H.contains(v) && g.is_regular(v) && ranges_inside(g, v, p.H))
      throw InputError("H is not saturated: regular vertex " + g.name(v) +
                       " has all its edges into H");
  const VertexSet b = breaking_vertices(g, p.H);
  for (Vertex v : p.S)
    if (!b.contains(v))
      throw InputError("S must consist of breaking vertices for H; " + g.name(v) + " is not one");
}

bool pair_leq(const AdmissiblePair& a, const AdmissiblePair& b) {
  if (!std::includes(b.H.begin(), b.H.end(), a.H.begin(), a.H.end())) return false;
  return std::all_of(a.S.begin(), a.S.end(),
                     [&](Vertex v) { return b.H.contains(v) || b.S.contains(v); });
}

std::vector<AdmissiblePair> admissible_pairs(const Graph& g) {
  const std::size_t n = g.size();
  if (n > max_enumerable_vertices)
    throw InputError("admissible_pairs enumerates 2^n subsets; graph has " + std::to_string(n) +
                     " vertices (limit " + std::to_string(max_enumerable_vertices) + ")");
  std::vector<AdmissiblePair> pairs;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    VertexSet h;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) h.insert(v);
    if (!is_hereditary(g, h) || !is_saturated(g, h)) continue;
    const VertexSet breaking = breaking_vertices(g, h);
    const std::vector<Vertex> b(breaking.begin(), breaking.end());
    for (std::uint64_t smask = 0; smask < (std::uint64_t{1} << b.size()); ++smask) {
      VertexSet s;
      for (std::size_t i = 0; i < b.size(); ++i)
        if (smask >> i & 1) s.insert(b[i]);
      pairs.push_back({h, std::move(s)});
    }
  }
  auto key = [](const AdmissiblePair& p) {
    return std::tuple(p.H.size(), std::vector<Vertex>(p.H.begin(), p.H.end()), p.S.size(),
                      std::vector<Vertex>(p.S.begin(), p.S.end()));
  };
  std::sort(pairs.begin(), pairs.end(),
            [&](const AdmissiblePair& a, const AdmissiblePair& b) { return key(a) < key(b); });
  return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(
    const std::vector<AdmissiblePair>& pairs) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  const std::size_t n = pairs.size();
  auto strictly = [&](std::size_t i, std::size_t j) {
    return i != j && pair_leq(pairs[i], pairs[j]) && pairs[i] != pairs[j];
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!strictly(i, j)) continue;
      bool covered = true;
      for (std::size_t k = 0; k < n && covered; ++k)
        if (strictly(i, k) && strictly(k, j)) covered = false;
      if (covered) edges.emplace_back(i, j);
    }
  return edges;
}

// ---------------------------------------------------------------------------
// Relative graphs

void RelativeGraph::validate() const {
  for (Vertex v : relset)
    if (v >= graph.size() || !graph.is_regular(v))
      throw InputError("relset vertex " + (v < graph.size() ? graph.name(v) : std::to_string(v)) +
                       " is not a regular vertex");
}

RelativeGraph full_relative_graph(const Graph& g) {
  std::vector<Vertex> parent(g.size());
  for (Vertex v = 0; v < g.size(); ++v) parent[v] = v;
  return {g, classify_vertices(g).regular, std::move(parent)};
}

RelativeGraph ideal_subgraph(const Graph& g, const AdmissiblePair& p) {
  validate_pair(g, p);
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.size(); ++v)
    if (p.H.contains(v) || p.S.contains(v)) keep.push_back(v);
  // Rows of H are kept whole (hereditary); rows of S keep only edges into H.
  Graph sub = g.subgraph(keep, [&](Vertex, Vertex w) { return p.H.contains(w); });
  RelativeGraph rg{std::move(sub), {}, keep};
  for (Vertex i = 0; i < keep.size(); ++i)
    if (p.H.contains(keep[i]) && g.is_regular(keep[i])) rg.relset.insert(i);
  rg.validate();
  return rg;
}

RelativeGraph quotient_relative_graph(const Graph& g, const AdmissiblePair& p) {
  validate_pair(g, p);
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!p.H.contains(v)) keep.push_back(v);
  Graph sub = g.subgraph(keep, [](Vertex, Vertex) { return true; });
  RelativeGraph rg{std::move(sub), {}, keep};
  for (Vertex i = 0; i < keep.size(); ++i)
    if (g.is_regular(keep[i]) || p.S.contains(keep[i])) rg.relset.insert(i);
  rg.validate();
  return rg;
}

// ---------------------------------------------------------------------------
// Condition (K)

int simple_cycle_count_capped(const Graph& g, Vertex v) {
  const std::size_t n = g.size();
  // Vertices other than v that reach v along a path avoiding v in between.
  std::vector<bool> returns(n, false);
  for (bool grew = true; grew;) {
    grew = false;
    for (Vertex u = 0; u < n; ++u) {
      if (u == v || returns[u]) continue;
      for (Vertex w = 0; w < n; ++w)
        if (!g.adjacency(u, w).is_zero() && (w == v || returns[w])) {
          returns[u] = true;
          grew = true;
          break;
        }
    }
  }
  // Simple cycles at v are enumerated by length, grouped by the vertex the
  // partial walk currently sits at.  Every live walk stays inside `returns`
  // and can be closed within n more steps, so lengths up to 2n+1 suffice to
  // see a second cycle whenever one exists.  Counts saturate at 2.
  auto capped = [](Multiplicity m) { return m.is_infinite() ? 2 : static_cast<int>(std::min<std::uint64_t>(2, m.count())); };
  std::vector<int> walks(n, 0);
  int count = capped(g.adjacency(v, v));
  for (Vertex w = 0; w < n; ++w)
    if (w != v && returns[w]) walks[w] = capped(g.adjacency(v, w));
  for (std::size_t length = 2; length <= 2 * n + 1 && count < 2; ++length) {
    std::vector<int> next(n, 0);
    for (Vertex u = 0; u < n; ++u) {
      if (walks[u] == 0) continue;
      count = std::min(2, count + walks[u] * capped(g.adjacency(u, v)));
      for (Vertex w = 0; w < n; ++w)
        if (w != v && returns[w])
          next[w] = std::min(2, next[w] + walks[u] * capped(g.adjacency(u, w)));
    }
    walks = std::move(next);
  }
  return count;
}

bool condition_K(const Graph& g) {
  for (Vertex v = 0; v < g.size(); ++v)
    if (simple_cycle_count_capped(g, v) == 1) return false;
  return true;
}

}  // namespace graphk
