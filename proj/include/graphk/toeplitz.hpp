#pragma once

// Symbolic arithmetic in the Toeplitz algebra of a finite graph, on the
// linear basis { s_a s_b^* : r(a) = r(b) }, and the K1 witness machinery
// (index sets, matched bijections, the matrices V, P, U) used to evaluate
// the index map by a defect computation.

#include "graphk/abelian.hpp"
#include "graphk/graph.hpp"
#include "graphk/sixterm.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace graphk {

using Coefficient = std::int64_t;

/// Finite path; length 0 means the vertex `start`.
struct Path {
  Vertex start = 0;
  std::vector<Edge> edges;

  static Path vertex(Vertex v) { return {v, {}}; }
  static Path edge(const Edge& e) { return {e.source, {e}}; }

  Vertex range() const { return edges.empty() ? start : edges.back().target; }
  std::size_t length() const { return edges.size(); }
  bool is_prefix_of(const Path& other) const;
  /// this · rest, where rest starts at range().
  Path concat(const Path& rest, std::size_t skip) const;

  friend auto operator<=>(const Path&, const Path&) = default;
};

/// s_alpha s_beta^*, with alpha.range() == beta.range().
struct PathTerm {
  Path alpha;
  Path beta;

  friend auto operator<=>(const PathTerm&, const PathTerm&) = default;
};

/// Integer combination of basis terms; zero coefficients never stored.
class AlgebraElement {
 public:
  AlgebraElement() = default;

  static AlgebraElement term(PathTerm t, Coefficient c = 1);
  static AlgebraElement vertex(Vertex v);
  static AlgebraElement edge(const Edge& e);
  static AlgebraElement edge_star(const Edge& e);
  /// s_e s_e^*.
  static AlgebraElement range_projection(const Edge& e);
  /// p_w - sum over s(e)=w of s_e s_e^*; w must emit finitely many edges.
  static AlgebraElement gap(const Graph& g, Vertex w);
  /// sum_v p_v.
  static AlgebraElement unit(std::size_t vertex_count);

  const std::map<PathTerm, Coefficient>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coefficient coefficient(const PathTerm& t) const;

  void add(const PathTerm& t, Coefficient c);
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Coefficient c, const AlgebraElement& a);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

  std::string str(const Graph& g) const;

 private:
  std::map<PathTerm, Coefficient> terms_;
};

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);

/// Sparse h x h matrix over the Toeplitz algebra.
class AlgMatrix {
 public:
  using Index = std::pair<std::size_t, std::size_t>;

  AlgMatrix() = default;
  explicit AlgMatrix(std::size_t h) : h_(h) {}

  static AlgMatrix scalar(std::size_t h, const AlgebraElement& a);

  std::size_t size() const { return h_; }
  const std::map<Index, AlgebraElement>& entries() const { return entries_; }
  AlgebraElement at(std::size_t i, std::size_t j) const;
  void add(std::size_t i, std::size_t j, const AlgebraElement& a);

  friend AlgMatrix operator+(const AlgMatrix& a, const AlgMatrix& b);
  friend AlgMatrix operator-(const AlgMatrix& a, const AlgMatrix& b);
  friend AlgMatrix operator*(const AlgMatrix& a, const AlgMatrix& b);
  friend bool operator==(const AlgMatrix&, const AlgMatrix&) = default;

  std::string str(const Graph& g) const;

 private:
  std::size_t h_ = 0;
  std::map<Index, AlgebraElement> entries_;
};

AlgMatrix adjoint(const AlgMatrix& m);

/// Member (x, i) of an index set, x an edge or a vertex.
struct IndexItem {
  enum class Kind : std::uint8_t { Vertex, Edge };
  Kind kind = Kind::Vertex;
  Vertex vertex = 0;  // the vertex, or the source of the edge
  Edge edge{};
  std::int64_t i = 1;

  static IndexItem of_vertex(Vertex v, std::int64_t i) { return {Kind::Vertex, v, {}, i}; }
  static IndexItem of_edge(const Edge& e, std::int64_t i) { return {Kind::Edge, e.source, e, i}; }

  Vertex range() const { return kind == Kind::Vertex ? vertex : edge.target; }

  friend auto operator<=>(const IndexItem&, const IndexItem&) = default;
};

/// Index sets and bijections for a kernel vector x:
///   up   = {(e,i) : i <= -x_s(e)} ∪ {(v,i) : i <= x_v}
///   down = {(e,i) : i <= x_s(e)}  ∪ {(v,i) : i <= -x_v}
/// Positions are 0-based.
struct WitnessIndex {
  std::size_t vertex_count = 0;
  std::vector<Vertex> relset;             // coordinate order of `x_relset`
  IntVector x_relset;
  std::vector<std::int64_t> x;            // dense over all vertices
  std::vector<std::vector<Edge>> emitted; // edges taken into account, by source
  std::vector<IndexItem> upindex, downindex;
  std::map<IndexItem, std::size_t> upm, downm;
  std::size_t h = 0;

  std::size_t up(const IndexItem& it) const { return upm.at(it); }
  std::size_t down(const IndexItem& it) const { return downm.at(it); }

  /// upm, downm are bijections onto [0,h) and equal positions have equal ranges.
  bool respects_ranges() const;

  /// Per-vertex counts |up_v|, |down_v|.
  std::vector<std::size_t> up_counts() const;
  std::vector<std::size_t> down_counts() const;
};

/// Refuses witnesses with more positions than this.
inline constexpr std::size_t max_witness_size = 1u << 16;

/// x in the coordinates of kgroups(rg).columns.  Throws InputError when x is
/// not in the kernel, InternalError when per-vertex counts disagree.
WitnessIndex witness_index(const RelativeGraph& rg, const IntVector& x);

/// The same witness with vertices renamed through `parent` into a graph with
/// `vertex_count` vertices.
WitnessIndex relabel(const WitnessIndex& w, const std::vector<Vertex>& parent,
                     std::size_t vertex_count);

struct VPU {
  AlgMatrix V, P, U;
};

/// U = V + (1 - P) with 1 = sum of all p_v on the diagonal.
VPU build_VPU(const WitnessIndex& w);

/// The four displayed identities: P in down-indexed form, V^*, VV^*, V^*V.
struct FourEquations {
  bool p_down = false;
  bool v_star = false;
  bool vv_star = false;
  bool v_star_v = false;

  bool all() const { return p_down && v_star && vv_star && v_star_v; }
};

FourEquations verify_foureqs(const WitnessIndex& w, const AlgMatrix& V, const AlgMatrix& P);

/// VV^*V = V, PV = V, VP = V.
bool verify_partial_isometry(const AlgMatrix& V, const AlgMatrix& P);

/// Coefficients of P - VV^* minus those of P - V^*V in the relset gap
/// elements, summed over the diagonal; relset order of kgroups(rg).columns.
/// Throws ResidueError when a residue is outside the gap span.
IntVector gap_residue(const RelativeGraph& rg, const WitnessIndex& w, const AlgMatrix& V,
                      const AlgMatrix& P);

struct OracleResult {
  IntVector defect_uu_star;   // class of 1 - UU^*
  IntVector defect_u_star_u;  // class of 1 - U^*U
  IntVector value;            // difference, in ideal row coordinates
  std::size_t h = 0;
};

/// Index of the class of x (coordinates of SixTermSequence::quot_columns)
/// computed from the defect of a lift of U_x to the full Toeplitz algebra.
/// Result coordinates follow SixTermSequence::ideal_rows.
OracleResult index_oracle(const Graph& g, const AdmissiblePair& p, const IntVector& x);

}  // namespace graphk
