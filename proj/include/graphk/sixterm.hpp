#pragma once

// K-theory of graph algebras and of the extension attached to a
// gauge-invariant ideal, realized as integer matrices between
// cokernel/kernel presentations.
//
// Vertex classes used throughout, in this order:
//   0: regular ∩ H        1: singular ∩ H        2: regular \ H
//   3: singular \ (H ∪ S) 4: S
// Each class lists its vertices in input order.

#include "graphk/abelian.hpp"
#include "graphk/graph.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace graphk {

/// Adjacency matrix cut along the five vertex classes.  Only the blocks
/// that enter the K-theory are materialized; they are finite for a valid
/// pair (rows of S are finite on columns outside H since S ⊆ B_H).
struct BlockDecomposition {
  std::array<std::vector<Vertex>, 5> classes;

  IntMatrix A, alpha;                   // rows reg∩H
  IntMatrix X, xi, B, beta, eta;        // rows reg\H
  IntMatrix Gamma, gamma, Z;            // rows S

  std::size_t count(std::size_t k) const { return classes[k].size(); }
};

BlockDecomposition decompose(const Graph& g, const AdmissiblePair& p);

/// K-groups of a relative graph algebra.
struct KGroups {
  /// [A^t - I ; alpha^t] for the split relset ⊔ rest.
  IntMatrix matrix;
  std::vector<Vertex> rows;     // relset first, then the rest
  std::vector<Vertex> columns;  // relset
  FgGroup k0;
  FgGroup k1;                   // free, in kernel-basis coordinates
  IntMatrix kernel;             // columns: basis of ker(matrix)
};

KGroups kgroups(const RelativeGraph& rg);

/// Indices of the six groups around the cycle.
enum class Node : std::size_t { K0Ideal, K0Full, K0Quot, K1Ideal, K1Full, K1Quot };
inline constexpr std::array<const char*, 6> node_names = {"K0_ideal", "K0_full", "K0_quot",
                                                          "K1_ideal", "K1_full", "K1_quot"};
inline constexpr std::array<const char*, 6> map_names = {"iota0", "pi0",  "partial0",
                                                         "iota1", "pi1", "partial1"};

/// Cyclic sequence
///   K0_ideal -iota0-> K0_full -pi0-> K0_quot -partial0-> K1_ideal
///   -iota1-> K1_full -pi1-> K1_quot -partial1-> K0_ideal.
/// Kernel groups are free on their kernel-basis coordinates; `*_kernel`
/// holds the embedding of those coordinates into the column space.
struct SixTermSequence {
  AdmissiblePair pair;
  BlockDecomposition blocks;

  IntMatrix ideal_matrix;  // rows: classes 0,1,4   cols: class 0
  IntMatrix full_matrix;   // rows: classes 0..4    cols: classes 0,2
  IntMatrix quot_matrix;   // rows: classes 2,3,4   cols: classes 2,4

  IntMatrix ideal_kernel, full_kernel, quot_kernel;

  FgGroup k0_ideal, k0_full, k0_quot;
  FgGroup k1_ideal, k1_full, k1_quot;

  /// Ambient matrices of the connecting and inclusion maps before they are
  /// composed with kernel bases.
  IntMatrix iota0_matrix, pi0_matrix, iota1_matrix, pi1_matrix, partial1_matrix;

  GroupHom iota0, pi0, partial0, iota1, pi1, partial1;

  /// Row labels (vertices) of the three cokernel presentations.
  std::vector<Vertex> ideal_rows() const;
  std::vector<Vertex> full_rows() const;
  std::vector<Vertex> quot_rows() const;
  /// Column labels of the three kernel ambients.
  std::vector<Vertex> ideal_columns() const;
  std::vector<Vertex> full_columns() const;
  std::vector<Vertex> quot_columns() const;

  const FgGroup& group(Node n) const;
  /// Map i leaves node i: iota0, pi0, partial0, iota1, pi1, partial1.
  const GroupHom& map(std::size_t i) const;
  GroupHom& map(std::size_t i);
};

/// Throws InputError when the pair is not admissible.
SixTermSequence build_six_term(const Graph& g, const AdmissiblePair& p);

struct ExactnessReport {
  /// exact[i]: im map(i) == ker map(i+1 mod 6), i.e. exactness at
  /// exactness_nodes[i].
  std::array<bool, 6> exact{};
  bool partial0_zero = false;

  bool all() const;
};

inline constexpr std::array<Node, 6> exactness_nodes = {Node::K0Full, Node::K0Quot,
                                                        Node::K1Ideal, Node::K1Full,
                                                        Node::K1Quot, Node::K0Ideal};

ExactnessReport verify_exactness(const SixTermSequence& seq);

struct ConeGenerators {
  std::vector<IntVector> vectors;
  std::size_t bound = 0;
  std::vector<Vertex> coordinates;  // vertex of each coordinate, as in KGroups::rows
};

/// e_v for all v, and e_v - sum_{e in F} e_{r(e)} for singular v and finite
/// F ⊆ s^-1(v) with |F| <= bound.  Deduplicated, sorted.
ConeGenerators cone_generators(const RelativeGraph& rg, std::size_t bound);

/// Bounded search: is `target` a sum of cone generators plus an element of
/// the relation lattice?  Explores partial sums with coordinates inside
/// [-radius, radius] using at most `max_terms` generators.
bool cone_contains(const ConeGenerators& cone, const IntMatrix& relations,
                   const IntVector& target, long radius, std::size_t max_terms);

struct GroupSummary {
  std::vector<Integer> invariant_factors;
  std::size_t free_rank = 0;

  friend bool operator==(const GroupSummary&, const GroupSummary&) = default;
  std::string str() const;
};

GroupSummary summarize(const FgGroup& g);

struct MapSummary {
  IntMatrix canonical;                 // depends on the stored Smith bases
  std::vector<Integer> smith_factors;  // nonzero Smith diagonal of `canonical`
  GroupSummary kernel, image, cokernel;

  friend bool operator==(const MapSummary&, const MapSummary&) = default;
};

MapSummary summarize(const GroupHom& f);

/// Fingerprint of a sequence.  Group data is basis independent; map data
/// is canonical only up to the stored bases, except for the kernel, image
/// and cokernel groups, which are invariants.
struct SequenceSummary {
  std::array<GroupSummary, 6> groups;
  std::array<MapSummary, 6> maps;
};

SequenceSummary invariant_summary(const SixTermSequence& seq);

}  // namespace graphk
