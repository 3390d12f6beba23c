#include "graphk/toeplitz.hpp"

#include "graphk/error.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace graphk {

namespace {

Coefficient checked_add(Coefficient a, Coefficient b) {
  Coefficient r;
  if (__builtin_add_overflow(a, b, &r)) throw InternalError("coefficient overflow");
  return r;
}

Coefficient checked_mul(Coefficient a, Coefficient b) {
  Coefficient r;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("coefficient overflow");
  return r;
}

std::optional<PathTerm> multiply_terms(const PathTerm& a, const PathTerm& b) {
  const Path& beta = a.beta;
  const Path& gamma = b.alpha;
  if (beta.is_prefix_of(gamma)) return PathTerm{a.alpha.concat(gamma, beta.length()), b.beta};
  if (gamma.is_prefix_of(beta)) return PathTerm{a.alpha, b.beta.concat(beta, gamma.length())};
  return std::nullopt;
}

std::string edge_str(const Graph& g, const Edge& e) {
  std::string s = g.name(e.source) + ">" + g.name(e.target);
  if (e.copy != 1) s += "#" + std::to_string(e.copy);
  return s;
}

std::string path_str(const Graph& g, const Path& p) {
  if (p.edges.empty()) return g.name(p.start);
  std::string s;
  for (std::size_t k = 0; k < p.edges.size(); ++k) s += (k ? "." : "") + edge_str(g, p.edges[k]);
  return s;
}

bool is_vertex_term(const PathTerm& t) { return t.alpha.edges.empty() && t.beta.edges.empty(); }

}  // namespace

bool Path::is_prefix_of(const Path& other) const {
  return start == other.start && edges.size() <= other.edges.size() &&
         std::equal(edges.begin(), edges.end(), other.edges.begin());
}

Path Path::concat(const Path& rest, std::size_t skip) const {
  Path r = *this;
  r.edges.insert(r.edges.end(), rest.edges.begin() + static_cast<std::ptrdiff_t>(skip),
                 rest.edges.end());
  return r;
}

AlgebraElement AlgebraElement::term(PathTerm t, Coefficient c) {
  if (t.alpha.range() != t.beta.range()) throw InputError("term with mismatched ranges");
  AlgebraElement a;
  a.add(t, c);
  return a;
}

AlgebraElement AlgebraElement::vertex(Vertex v) { return term({Path::vertex(v), Path::vertex(v)}); }

AlgebraElement AlgebraElement::edge(const Edge& e) {
  return term({Path::edge(e), Path::vertex(e.target)});
}

AlgebraElement AlgebraElement::edge_star(const Edge& e) {
  return term({Path::vertex(e.target), Path::edge(e)});
}

AlgebraElement AlgebraElement::range_projection(const Edge& e) {
  return term({Path::edge(e), Path::edge(e)});
}

AlgebraElement AlgebraElement::gap(const Graph& g, Vertex w) {
  AlgebraElement a = vertex(w);
  for (const Edge& e : g.edges_from(w)) a -= range_projection(e);
  return a;
}

AlgebraElement AlgebraElement::unit(std::size_t vertex_count) {
  AlgebraElement a;
  for (Vertex v = 0; v < vertex_count; ++v) a += vertex(v);
  return a;
}

Coefficient AlgebraElement::coefficient(const PathTerm& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? 0 : it->second;
}

void AlgebraElement::add(const PathTerm& t, Coefficient c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (inserted) return;
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  for (const auto& [t, c] : o.terms_) add(t, checked_mul(c, -1));
  return *this;
}

AlgebraElement operator*(Coefficient c, const AlgebraElement& a) {
  AlgebraElement r;
  for (const auto& [t, k] : a.terms_) r.add(t, checked_mul(c, k));
  return r;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement r;
  for (const auto& [s, c] : a.terms_)
    for (const auto& [t, d] : b.terms_)
      if (auto st = multiply_terms(s, t)) r.add(*st, checked_mul(c, d));
  return r;
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

AlgebraElement adjoint(const AlgebraElement& a) {
  AlgebraElement r;
  for (const auto& [t, c] : a.terms()) r.add({t.beta, t.alpha}, c);
  return r;
}

std::string AlgebraElement::str(const Graph& g) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Coefficient m = c < 0 ? -c : c;
    if (m != 1) os << m << "*";
    if (is_vertex_term(t) && t.alpha.start == t.beta.start) {
      os << "p[" << g.name(t.alpha.start) << "]";
      continue;
    }
    bool any = false;
    if (!t.alpha.edges.empty()) {
      os << "s[" << path_str(g, t.alpha) << "]";
      any = true;
    }
    if (!t.beta.edges.empty()) {
      os << (any ? " " : "") << "s[" << path_str(g, t.beta) << "]*";
      any = true;
    }
    if (!any) os << "p[" << g.name(t.alpha.start) << "]";
  }
  return os.str();
}

AlgMatrix AlgMatrix::scalar(std::size_t h, const AlgebraElement& a) {
  AlgMatrix m(h);
  for (std::size_t i = 0; i < h; ++i) m.add(i, i, a);
  return m;
}

AlgebraElement AlgMatrix::at(std::size_t i, std::size_t j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? AlgebraElement{} : it->second;
}

void AlgMatrix::add(std::size_t i, std::size_t j, const AlgebraElement& a) {
  if (i >= h_ || j >= h_) throw InternalError("matrix position out of range");
  if (a.is_zero()) return;
  auto& e = entries_[{i, j}];
  e += a;
  if (e.is_zero()) entries_.erase({i, j});
}

AlgMatrix operator+(const AlgMatrix& a, const AlgMatrix& b) {
  if (a.h_ != b.h_) throw InternalError("matrix size mismatch");
  AlgMatrix r = a;
  for (const auto& [ij, e] : b.entries_) r.add(ij.first, ij.second, e);
  return r;
}

AlgMatrix operator-(const AlgMatrix& a, const AlgMatrix& b) {
  if (a.h_ != b.h_) throw InternalError("matrix size mismatch");
  AlgMatrix r = a;
  for (const auto& [ij, e] : b.entries_) r.add(ij.first, ij.second, -1 * e);
  return r;
}

AlgMatrix operator*(const AlgMatrix& a, const AlgMatrix& b) {
  if (a.h_ != b.h_) throw InternalError("matrix size mismatch");
  std::map<std::size_t, std::vector<std::pair<std::size_t, const AlgebraElement*>>> b_rows;
  for (const auto& [ij, e] : b.entries_) b_rows[ij.first].emplace_back(ij.second, &e);
  AlgMatrix r(a.h_);
  for (const auto& [ik, e] : a.entries_) {
    auto it = b_rows.find(ik.second);
    if (it == b_rows.end()) continue;
    for (const auto& [j, f] : it->second) r.add(ik.first, j, e * *f);
  }
  return r;
}

AlgMatrix adjoint(const AlgMatrix& m) {
  AlgMatrix r(m.size());
  for (const auto& [ij, e] : m.entries()) r.add(ij.second, ij.first, adjoint(e));
  return r;
}

std::string AlgMatrix::str(const Graph& g) const {
  std::ostringstream os;
  for (const auto& [ij, e] : entries_)
    os << "(" << ij.first << "," << ij.second << "): " << e.str(g) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Witness

bool WitnessIndex::respects_ranges() const {
  if (upm.size() != h || downm.size() != h) return false;
  std::vector<std::optional<Vertex>> at_up(h), at_down(h);
  for (const auto& [it, pos] : upm) {
    if (pos >= h || at_up[pos]) return false;
    at_up[pos] = it.range();
  }
  for (const auto& [it, pos] : downm) {
    if (pos >= h || at_down[pos]) return false;
    at_down[pos] = it.range();
  }
  for (std::size_t k = 0; k < h; ++k)
    if (at_up[k] != at_down[k]) return false;
  return true;
}

std::vector<std::size_t> WitnessIndex::up_counts() const {
  std::vector<std::size_t> c(vertex_count);
  for (const auto& it : upindex) ++c[it.range()];
  return c;
}

std::vector<std::size_t> WitnessIndex::down_counts() const {
  std::vector<std::size_t> c(vertex_count);
  for (const auto& it : downindex) ++c[it.range()];
  return c;
}

WitnessIndex witness_index(const RelativeGraph& rg, const IntVector& x) {
  const Graph& g = rg.graph;
  KGroups k = kgroups(rg);
  if (x.size() != k.columns.size())
    throw InputError("x has " + std::to_string(x.size()) + " entries, relset has " +
                     std::to_string(k.columns.size()));
  if (!is_zero(k.matrix * x)) throw InputError("x is not in the kernel: " + to_string(x));

  WitnessIndex w;
  w.vertex_count = g.size();
  w.relset = k.columns;
  w.x_relset = x;
  w.x.assign(g.size(), 0);
  w.emitted.assign(g.size(), {});
  std::size_t total = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!x[j].fits_slong_p()) throw InputError("x entry too large: " + x[j].get_str());
    Vertex v = w.relset[j];
    w.x[v] = x[j].get_si();
    if (w.x[v] == 0) continue;
    w.emitted[v] = g.edges_from(v);
    std::size_t m = static_cast<std::size_t>(std::abs(w.x[v]));
    total += m * (1 + w.emitted[v].size());
    if (total > 2 * max_witness_size) throw InputError("witness too large");
  }

  for (Vertex v = 0; v < g.size(); ++v) {
    std::int64_t xv = w.x[v];
    auto& vert_side = xv > 0 ? w.upindex : w.downindex;
    auto& edge_side = xv > 0 ? w.downindex : w.upindex;
    for (std::int64_t i = 1; i <= std::abs(xv); ++i) {
      vert_side.push_back(IndexItem::of_vertex(v, i));
      for (const Edge& e : w.emitted[v]) edge_side.push_back(IndexItem::of_edge(e, i));
    }
  }
  std::sort(w.upindex.begin(), w.upindex.end());
  std::sort(w.downindex.begin(), w.downindex.end());

  auto up = w.up_counts();
  auto down = w.down_counts();
  for (Vertex v = 0; v < g.size(); ++v)
    if (up[v] != down[v])
      throw InternalError("index counts differ at " + g.name(v) + ": " + std::to_string(up[v]) +
                          " up, " + std::to_string(down[v]) + " down");
  if (w.upindex.size() != w.downindex.size()) throw InternalError("index totals differ");
  w.h = w.upindex.size();

  // Positions grouped by range vertex; members of a class paired in sorted order.
  std::vector<std::vector<IndexItem>> up_by(g.size()), down_by(g.size());
  for (const auto& it : w.upindex) up_by[it.range()].push_back(it);
  for (const auto& it : w.downindex) down_by[it.range()].push_back(it);
  std::size_t pos = 0;
  for (Vertex v = 0; v < g.size(); ++v)
    for (std::size_t k2 = 0; k2 < up_by[v].size(); ++k2, ++pos) {
      w.upm[up_by[v][k2]] = pos;
      w.downm[down_by[v][k2]] = pos;
    }
  return w;
}

WitnessIndex relabel(const WitnessIndex& w, const std::vector<Vertex>& parent,
                     std::size_t vertex_count) {
  auto edge = [&](const Edge& e) { return Edge{parent.at(e.source), parent.at(e.target), e.copy}; };
  auto item = [&](const IndexItem& it) {
    return it.kind == IndexItem::Kind::Vertex ? IndexItem::of_vertex(parent.at(it.vertex), it.i)
                                              : IndexItem::of_edge(edge(it.edge), it.i);
  };
  WitnessIndex r;
  r.vertex_count = vertex_count;
  for (Vertex v : w.relset) r.relset.push_back(parent.at(v));
  r.x_relset = w.x_relset;
  r.x.assign(vertex_count, 0);
  r.emitted.assign(vertex_count, {});
  for (Vertex v = 0; v < w.vertex_count; ++v) {
    r.x[parent.at(v)] = w.x[v];
    for (const Edge& e : w.emitted[v]) r.emitted[parent.at(v)].push_back(edge(e));
  }
  for (const auto& it : w.upindex) r.upindex.push_back(item(it));
  for (const auto& it : w.downindex) r.downindex.push_back(item(it));
  for (const auto& [it, pos] : w.upm) r.upm[item(it)] = pos;
  for (const auto& [it, pos] : w.downm) r.downm[item(it)] = pos;
  r.h = w.h;
  return r;
}

VPU build_VPU(const WitnessIndex& w) {
  using AE = AlgebraElement;
  VPU r{AlgMatrix(w.h), AlgMatrix(w.h), AlgMatrix(w.h)};
  for (Vertex v = 0; v < w.vertex_count; ++v) {
    std::int64_t xv = w.x[v];
    for (std::int64_t i = 1; i <= std::abs(xv); ++i) {
      auto vi = IndexItem::of_vertex(v, i);
      if (xv > 0) {
        r.P.add(w.up(vi), w.up(vi), AE::vertex(v));
        for (const Edge& e : w.emitted[v])
          r.V.add(w.up(vi), w.down(IndexItem::of_edge(e, i)), AE::edge(e));
      } else {
        for (const Edge& e : w.emitted[v]) {
          auto ei = IndexItem::of_edge(e, i);
          r.V.add(w.up(ei), w.down(vi), AE::edge_star(e));
          r.P.add(w.up(ei), w.up(ei), AE::vertex(e.target));
        }
      }
    }
  }
  r.U = r.V + (AlgMatrix::scalar(w.h, AE::unit(w.vertex_count)) - r.P);
  return r;
}

FourEquations verify_foureqs(const WitnessIndex& w, const AlgMatrix& V, const AlgMatrix& P) {
  using AE = AlgebraElement;
  AlgMatrix p_down(w.h), v_star(w.h), vv_star(w.h), v_star_v(w.h);
  for (Vertex v = 0; v < w.vertex_count; ++v) {
    std::int64_t xv = w.x[v];
    AE ranges;
    for (const Edge& e : w.emitted[v]) ranges += AE::range_projection(e);
    for (std::int64_t i = 1; i <= std::abs(xv); ++i) {
      auto vi = IndexItem::of_vertex(v, i);
      if (xv > 0) {
        vv_star.add(w.up(vi), w.up(vi), ranges);
        for (const Edge& e : w.emitted[v]) {
          auto ei = IndexItem::of_edge(e, i);
          p_down.add(w.down(ei), w.down(ei), AE::vertex(e.target));
          v_star.add(w.down(ei), w.up(vi), AE::edge_star(e));
          v_star_v.add(w.down(ei), w.down(ei), AE::vertex(e.target));
        }
      } else {
        p_down.add(w.down(vi), w.down(vi), AE::vertex(v));
        v_star_v.add(w.down(vi), w.down(vi), ranges);
        for (const Edge& e : w.emitted[v]) {
          auto ei = IndexItem::of_edge(e, i);
          v_star.add(w.down(vi), w.up(ei), AE::edge(e));
          vv_star.add(w.up(ei), w.up(ei), AE::vertex(e.target));
        }
      }
    }
  }
  AlgMatrix Vs = adjoint(V);
  FourEquations f;
  f.p_down = P == p_down;
  f.v_star = Vs == v_star;
  f.vv_star = V * Vs == vv_star;
  f.v_star_v = Vs * V == v_star_v;
  return f;
}

bool verify_partial_isometry(const AlgMatrix& V, const AlgMatrix& P) {
  return V * adjoint(V) * V == V && P * V == V && V * P == V;
}

namespace {

// Coefficients, per relset vertex, of a diagonal matrix whose entries are
// integer combinations of gap elements.
std::vector<Integer> gap_coefficients(const Graph& g, const AlgMatrix& m,
                                      const std::vector<std::optional<std::size_t>>& slot) {
  std::vector<Integer> out(std::count_if(slot.begin(), slot.end(), [](auto s) { return s.has_value(); }));
  for (const auto& [ij, entry] : m.entries()) {
    if (ij.first != ij.second)
      throw ResidueError("off-diagonal residue at (" + std::to_string(ij.first) + "," +
                         std::to_string(ij.second) + "): " + entry.str(g));
    AlgebraElement rest = entry;
    std::vector<std::pair<Vertex, Coefficient>> heads;
    for (const auto& [t, c] : entry.terms())
      if (is_vertex_term(t)) heads.emplace_back(t.alpha.start, c);
    for (auto [v, c] : heads) {
      if (!slot[v])
        throw ResidueError("projection at " + g.name(v) + " outside the relset: " + entry.str(g));
      rest -= c * AlgebraElement::gap(g, v);
      out[*slot[v]] += c;
    }
    if (!rest.is_zero())
      throw ResidueError("residue not in the gap span: " + rest.str(g));
  }
  return out;
}

}  // namespace

IntVector gap_residue(const RelativeGraph& rg, const WitnessIndex& w, const AlgMatrix& V,
                      const AlgMatrix& P) {
  const Graph& g = rg.graph;
  std::vector<std::optional<std::size_t>> slot(g.size());
  std::size_t k = 0;
  for (Vertex v : rg.relset) slot[v] = k++;
  if (w.vertex_count != g.size()) throw InputError("witness belongs to another graph");
  AlgMatrix Vs = adjoint(V);
  auto a = gap_coefficients(g, P - V * Vs, slot);
  auto b = gap_coefficients(g, P - Vs * V, slot);
  IntVector r(a.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

namespace {

// Class in coker[A^t - I; alpha^t; 0] of a diagonal defect, coordinates of
// `slot`.  Reads p_v0 - sum_{r(e) not in H} s_e s_e^* (v0 in S) as e_v0 and
// s_e s_e^* with r(e) in H as e_r(e), after expanding p_w over all edges for
// regular w outside H.
IntVector defect_class(const Graph& g, const AdmissiblePair& p, const AlgMatrix& m,
                       const std::vector<std::optional<std::size_t>>& slot, std::size_t dim) {
  VertexSet outside;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!p.H.contains(v)) outside.insert(v);
  IntVector cls(dim);
  for (const auto& [ij, entry] : m.entries()) {
    if (ij.first != ij.second)
      throw ResidueError("off-diagonal defect at (" + std::to_string(ij.first) + "," +
                         std::to_string(ij.second) + "): " + entry.str(g));
    AlgebraElement rest = entry;
    std::vector<std::pair<Vertex, Coefficient>> heads;
    for (const auto& [t, c] : entry.terms())
      if (is_vertex_term(t)) heads.emplace_back(t.alpha.start, c);
    for (auto [v, c] : heads) {
      AlgebraElement pattern = AlgebraElement::vertex(v);
      if (p.S.contains(v)) {
        for (const Edge& e : g.edges_from_into(v, outside))
          pattern -= AlgebraElement::range_projection(e);
        cls[*slot[v]] += c;
      } else if (!p.H.contains(v) && g.is_regular(v)) {
        pattern = AlgebraElement::gap(g, v);
      } else {
        throw ResidueError("unexpected projection p[" + g.name(v) + "] in " + entry.str(g));
      }
      rest -= c * pattern;
    }
    for (const auto& [t, c] : rest.terms()) {
      bool range_proj = t.alpha.length() == 1 && t.alpha == t.beta;
      if (!range_proj || !p.H.contains(t.alpha.range()))
        throw ResidueError("defect term outside the ideal patterns: " + rest.str(g));
      cls[*slot[t.alpha.range()]] += c;
    }
  }
  return cls;
}

}  // namespace

OracleResult index_oracle(const Graph& g, const AdmissiblePair& p, const IntVector& x) {
  BlockDecomposition b = decompose(g, p);
  std::vector<Vertex> quot_cols = b.classes[2];
  quot_cols.insert(quot_cols.end(), b.classes[4].begin(), b.classes[4].end());
  std::vector<Vertex> ideal_rows = b.classes[0];
  for (std::size_t k : {1, 4}) ideal_rows.insert(ideal_rows.end(), b.classes[k].begin(), b.classes[k].end());
  if (x.size() != quot_cols.size())
    throw InputError("x has " + std::to_string(x.size()) + " entries, expected " +
                     std::to_string(quot_cols.size()));

  RelativeGraph q = quotient_relative_graph(g, p);
  IntVector xq;
  for (Vertex v : q.relset) {
    auto it = std::find(quot_cols.begin(), quot_cols.end(), q.parent[v]);
    xq.push_back(x[static_cast<std::size_t>(it - quot_cols.begin())]);
  }
  WitnessIndex w = relabel(witness_index(q, xq), q.parent, g.size());
  VPU vpu = build_VPU(w);

  AlgMatrix one = AlgMatrix::scalar(w.h, AlgebraElement::unit(g.size()));
  AlgMatrix Us = adjoint(vpu.U);
  std::vector<std::optional<std::size_t>> slot(g.size());
  for (std::size_t k = 0; k < ideal_rows.size(); ++k) slot[ideal_rows[k]] = k;

  OracleResult r;
  r.h = w.h;
  r.defect_uu_star = defect_class(g, p, one - vpu.U * Us, slot, ideal_rows.size());
  r.defect_u_star_u = defect_class(g, p, one - Us * vpu.U, slot, ideal_rows.size());
  r.value.resize(ideal_rows.size());
  for (std::size_t k = 0; k < ideal_rows.size(); ++k)
    r.value[k] = r.defect_uu_star[k] - r.defect_u_star_u[k];
  return r;
}

}  // namespace graphk
