#pragma once

// Finite directed multigraphs with possibly infinite edge multiplicities,
// and the vertex-set machinery behind gauge-invariant ideals: hereditary
// and saturated sets, breaking vertices, admissible pairs, and the
// ideal/quotient relative graphs attached to a pair.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace graphk {

using Vertex = std::size_t;
using VertexSet = std::set<Vertex>;

/// Edge count in N ∪ {∞}.  Addition absorbs into ∞.
class Multiplicity {
 public:
  constexpr Multiplicity() = default;
  constexpr Multiplicity(std::uint64_t count) : count_(count) {}  // NOLINT(implicit)
  static constexpr Multiplicity infinite() {
    Multiplicity m;
    m.infinite_ = true;
    return m;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_zero() const { return !infinite_ && count_ == 0; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Finite count; throws InputError on ∞.
  std::uint64_t count() const;

  friend constexpr Multiplicity operator+(Multiplicity a, Multiplicity b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return Multiplicity(a.count_ + b.count_);
  }
  friend constexpr bool operator==(Multiplicity, Multiplicity) = default;
  friend constexpr std::strong_ordering operator<=>(Multiplicity a, Multiplicity b) {
    if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater
                                                       : std::strong_ordering::less;
    return a.count_ <=> b.count_;
  }

  std::string str() const;

 private:
  std::uint64_t count_ = 0;
  bool infinite_ = false;
};

/// The k-th parallel edge source -> target, 1 <= k <= adjacency(source, target).
struct Edge {
  Vertex source = 0;
  Vertex target = 0;
  std::uint64_t copy = 1;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;
  /// `adjacency` is row-major, names.size() squared entries.
  Graph(std::vector<std::string> names, std::vector<Multiplicity> adjacency);
  /// Vertices named v1, v2, ... .
  static Graph from_matrix(const std::vector<std::vector<Multiplicity>>& rows);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Vertex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Vertex> find(const std::string& name) const;

  Multiplicity adjacency(Vertex from, Vertex to) const { return adjacency_[from * size() + to]; }
  Multiplicity out_degree(Vertex v) const;
  bool is_regular(Vertex v) const;
  bool is_singular(Vertex v) const { return !is_regular(v); }

  /// Edges leaving v; v must not be an infinite emitter.
  std::vector<Edge> edges_from(Vertex v) const;
  /// Edges leaving v that land in `targets`; the count must be finite.
  std::vector<Edge> edges_from_into(Vertex v, const VertexSet& targets) const;

  /// Subgraph on `keep` (listed in increasing order) whose rows are filtered by
  /// `edge_kept(source, target)`; vertex names carried over.
  template <typename Pred>
  Graph subgraph(const std::vector<Vertex>& keep, Pred edge_kept) const {
    std::vector<std::string> names;
    std::vector<Multiplicity> adj;
    for (Vertex v : keep) names.push_back(names_[v]);
    for (Vertex v : keep)
      for (Vertex w : keep) adj.push_back(edge_kept(v, w) ? adjacency(v, w) : Multiplicity{});
    return Graph(std::move(names), std::move(adj));
  }

  std::string set_str(const VertexSet& s) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Multiplicity> adjacency_;
};

struct VertexClasses {
  VertexSet regular;
  VertexSet singular;
};

VertexClasses classify_vertices(const Graph& g);

bool is_hereditary(const Graph& g, const VertexSet& h);
bool is_saturated(const Graph& g, const VertexSet& h);

/// Smallest saturated hereditary superset of a hereditary set.
VertexSet saturate(const Graph& g, const VertexSet& hereditary);

/// Infinite emitters with finitely many, but at least one, edges leaving H.
VertexSet breaking_vertices(const Graph& g, const VertexSet& h);

struct AdmissiblePair {
  VertexSet H;
  VertexSet S;

  friend auto operator<=>(const AdmissiblePair&, const AdmissiblePair&) = default;
};

/// Throws InputError naming the offending vertices.
void validate_pair(const Graph& g, const AdmissiblePair& p);

/// (H,S) <= (H',S')  iff  H ⊆ H' and S ⊆ H' ∪ S'.
bool pair_leq(const AdmissiblePair& a, const AdmissiblePair& b);

/// Brute force over all 2^n vertex subsets; limited to max_enumerable_vertices.
/// Ordered by |H|, then H lexicographically, then |S|, then S.
std::vector<AdmissiblePair> admissible_pairs(const Graph& g);
inline constexpr std::size_t max_enumerable_vertices = 20;

/// Covering relations (i, j) of pair_leq on a list of pairs: i < j in the order
/// with nothing strictly between.
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(
    const std::vector<AdmissiblePair>& pairs);

/// A graph with a distinguished set of regular vertices at which the
/// Cuntz-Krieger sum relation is imposed.  `parent` maps each vertex to the
/// vertex it came from when the graph was cut out of a larger one.
struct RelativeGraph {
  Graph graph;
  VertexSet relset;
  std::vector<Vertex> parent;

  /// Checks relset ⊆ regular vertices.
  void validate() const;
};

/// (E, E^0_reg).
RelativeGraph full_relative_graph(const Graph& g);

/// E_(H,S): vertices H ∪ S, edges s^-1(H) ∪ (s^-1(S) ∩ r^-1(H)), relset E^0_reg ∩ H.
RelativeGraph ideal_subgraph(const Graph& g, const AdmissiblePair& p);

/// E \ H with relset (E^0_reg \ H) ∪ S.
RelativeGraph quotient_relative_graph(const Graph& g, const AdmissiblePair& p);

/// Every vertex is the base of zero or at least two simple cycles.
bool condition_K(const Graph& g);

/// Number of simple cycles based at v, capped at 2.
int simple_cycle_count_capped(const Graph& g, Vertex v);

}  // namespace graphk
