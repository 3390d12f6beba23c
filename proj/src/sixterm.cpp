#include "graphk/sixterm.hpp"

#include "graphk/error.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace graphk {

namespace {

IntMatrix block(const Graph& g, const std::vector<Vertex>& rows, const std::vector<Vertex>& cols) {
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Multiplicity a = g.adjacency(rows[i], cols[j]);
      if (a.is_infinite())
        throw InternalError("infinite entry in block " + g.name(rows[i]) + " -> " +
                            g.name(cols[j]));
      m(i, j) = static_cast<unsigned long>(a.count());
    }
  return m;
}

// Grid of blocks; a missing block is zero.  Row and column heights come from
// `row_sizes` / `col_sizes`.
class Assembler {
 public:
  Assembler(std::vector<std::size_t> row_sizes, std::vector<std::size_t> col_sizes)
      : row_sizes_(std::move(row_sizes)), col_sizes_(std::move(col_sizes)) {
    std::size_t r = 0, c = 0;
    for (auto s : row_sizes_) r += s;
    for (auto s : col_sizes_) c += s;
    m_ = IntMatrix(r, c);
  }

  Assembler& put(std::size_t bi, std::size_t bj, const IntMatrix& b) {
    if (b.rows() != row_sizes_[bi] || b.cols() != col_sizes_[bj])
      throw InternalError("block shape mismatch");
    std::size_t r0 = 0, c0 = 0;
    for (std::size_t k = 0; k < bi; ++k) r0 += row_sizes_[k];
    for (std::size_t k = 0; k < bj; ++k) c0 += col_sizes_[k];
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m_(r0 + i, c0 + j) = b(i, j);
    return *this;
  }

  IntMatrix done() const { return m_; }

 private:
  std::vector<std::size_t> row_sizes_, col_sizes_;
  IntMatrix m_;
};

std::vector<Vertex> concat(const BlockDecomposition& b, std::initializer_list<std::size_t> ks) {
  std::vector<Vertex> out;
  for (auto k : ks) out.insert(out.end(), b.classes[k].begin(), b.classes[k].end());
  return out;
}

}  // namespace

BlockDecomposition decompose(const Graph& g, const AdmissiblePair& p) {
  validate_pair(g, p);
  BlockDecomposition b;
  for (Vertex v = 0; v < g.size(); ++v) {
    bool in_h = p.H.contains(v);
    bool reg = g.is_regular(v);
    std::size_t k;
    if (in_h)
      k = reg ? 0 : 1;
    else if (reg)
      k = 2;
    else
      k = p.S.contains(v) ? 4 : 3;
    b.classes[k].push_back(v);
  }
  const auto& c = b.classes;
  b.A = block(g, c[0], c[0]);
  b.alpha = block(g, c[0], c[1]);
  b.X = block(g, c[2], c[0]);
  b.xi = block(g, c[2], c[1]);
  b.B = block(g, c[2], c[2]);
  b.beta = block(g, c[2], c[3]);
  b.eta = block(g, c[2], c[4]);
  b.Gamma = block(g, c[4], c[2]);
  b.gamma = block(g, c[4], c[3]);
  b.Z = block(g, c[4], c[4]);
  return b;
}

KGroups kgroups(const RelativeGraph& rg) {
  rg.validate();
  const Graph& g = rg.graph;
  KGroups k;
  k.columns.assign(rg.relset.begin(), rg.relset.end());
  k.rows = k.columns;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!rg.relset.contains(v)) k.rows.push_back(v);
  // Column j is the relation at a regular vertex, so every entry is finite.
  k.matrix = IntMatrix(k.rows.size(), k.columns.size());
  for (std::size_t i = 0; i < k.rows.size(); ++i)
    for (std::size_t j = 0; j < k.columns.size(); ++j) {
      Integer a = static_cast<unsigned long>(g.adjacency(k.columns[j], k.rows[i]).count());
      if (k.rows[i] == k.columns[j]) a -= 1;
      k.matrix(i, j) = a;
    }
  k.k0 = cokernel(k.matrix);
  k.kernel = kernel_basis(k.matrix);
  k.k1 = FgGroup::free(k.kernel.cols());
  return k;
}

std::vector<Vertex> SixTermSequence::ideal_rows() const { return concat(blocks, {0, 1, 4}); }
std::vector<Vertex> SixTermSequence::full_rows() const { return concat(blocks, {0, 1, 2, 3, 4}); }
std::vector<Vertex> SixTermSequence::quot_rows() const { return concat(blocks, {2, 3, 4}); }
std::vector<Vertex> SixTermSequence::ideal_columns() const { return concat(blocks, {0}); }
std::vector<Vertex> SixTermSequence::full_columns() const { return concat(blocks, {0, 2}); }
std::vector<Vertex> SixTermSequence::quot_columns() const { return concat(blocks, {2, 4}); }

const FgGroup& SixTermSequence::group(Node n) const {
  switch (n) {
    case Node::K0Ideal: return k0_ideal;
    case Node::K0Full: return k0_full;
    case Node::K0Quot: return k0_quot;
    case Node::K1Ideal: return k1_ideal;
    case Node::K1Full: return k1_full;
    case Node::K1Quot: return k1_quot;
  }
  throw InternalError("bad node");
}

const GroupHom& SixTermSequence::map(std::size_t i) const {
  return const_cast<SixTermSequence*>(this)->map(i);
}

GroupHom& SixTermSequence::map(std::size_t i) {
  switch (i) {
    case 0: return iota0;
    case 1: return pi0;
    case 2: return partial0;
    case 3: return iota1;
    case 4: return pi1;
    case 5: return partial1;
  }
  throw InternalError("map index out of range");
}

SixTermSequence build_six_term(const Graph& g, const AdmissiblePair& p) {
  SixTermSequence s;
  s.pair = p;
  s.blocks = decompose(g, p);
  const auto& b = s.blocks;
  const std::size_t n0 = b.count(0), n1 = b.count(1), n2 = b.count(2), n3 = b.count(3),
                    n4 = b.count(4);
  auto I = [](std::size_t n) { return IntMatrix::identity(n); };

  s.ideal_matrix = Assembler({n0, n1, n4}, {n0})
                       .put(0, 0, b.A.transpose() - I(n0))
                       .put(1, 0, b.alpha.transpose())
                       .done();
  s.full_matrix = Assembler({n0, n1, n2, n3, n4}, {n0, n2})
                      .put(0, 0, b.A.transpose() - I(n0))
                      .put(0, 1, b.X.transpose())
                      .put(1, 0, b.alpha.transpose())
                      .put(1, 1, b.xi.transpose())
                      .put(2, 1, b.B.transpose() - I(n2))
                      .put(3, 1, b.beta.transpose())
                      .put(4, 1, b.eta.transpose())
                      .done();
  s.quot_matrix = Assembler({n2, n3, n4}, {n2, n4})
                      .put(0, 0, b.B.transpose() - I(n2))
                      .put(0, 1, b.Gamma.transpose())
                      .put(1, 0, b.beta.transpose())
                      .put(1, 1, b.gamma.transpose())
                      .put(2, 0, b.eta.transpose())
                      .put(2, 1, b.Z.transpose() - I(n4))
                      .done();

  s.ideal_kernel = kernel_basis(s.ideal_matrix);
  s.full_kernel = kernel_basis(s.full_matrix);
  s.quot_kernel = kernel_basis(s.quot_matrix);

  s.k0_ideal = cokernel(s.ideal_matrix);
  s.k0_full = cokernel(s.full_matrix);
  s.k0_quot = cokernel(s.quot_matrix);
  s.k1_ideal = FgGroup::free(s.ideal_kernel.cols());
  s.k1_full = FgGroup::free(s.full_kernel.cols());
  s.k1_quot = FgGroup::free(s.quot_kernel.cols());

  // e_v for v in S goes to e_v minus its edges leaving H.
  s.iota0_matrix = Assembler({n0, n1, n2, n3, n4}, {n0, n1, n4})
                       .put(0, 0, I(n0))
                       .put(1, 1, I(n1))
                       .put(2, 2, -b.Gamma.transpose())
                       .put(3, 2, -b.gamma.transpose())
                       .put(4, 2, I(n4) - b.Z.transpose())
                       .done();
  s.pi0_matrix = Assembler({n2, n3, n4}, {n0, n1, n2, n3, n4})
                     .put(0, 2, I(n2))
                     .put(1, 3, I(n3))
                     .put(2, 4, I(n4))
                     .done();
  s.iota1_matrix = Assembler({n0, n2}, {n0}).put(0, 0, I(n0)).done();
  s.pi1_matrix = Assembler({n2, n4}, {n0, n2}).put(0, 1, I(n2)).done();
  s.partial1_matrix = Assembler({n0, n1, n4}, {n2, n4})
                          .put(0, 0, b.X.transpose())
                          .put(1, 0, b.xi.transpose())
                          .put(2, 1, I(n4))
                          .done();

  s.iota0 = make_hom(s.iota0_matrix, s.k0_ideal, s.k0_full);
  s.pi0 = make_hom(s.pi0_matrix, s.k0_full, s.k0_quot);
  s.partial0 = make_hom(IntMatrix(s.k1_ideal.ambient_rank(), s.k0_quot.ambient_rank()),
                        s.k0_quot, s.k1_ideal);
  s.iota1 = make_hom(coordinates_in(s.full_kernel, s.iota1_matrix * s.ideal_kernel), s.k1_ideal,
                     s.k1_full);
  s.pi1 = make_hom(coordinates_in(s.quot_kernel, s.pi1_matrix * s.full_kernel), s.k1_full,
                   s.k1_quot);
  s.partial1 = make_hom(s.partial1_matrix * s.quot_kernel, s.k1_quot, s.k0_ideal);
  return s;
}

bool ExactnessReport::all() const {
  return partial0_zero && std::all_of(exact.begin(), exact.end(), [](bool b) { return b; });
}

ExactnessReport verify_exactness(const SixTermSequence& seq) {
  ExactnessReport r;
  for (std::size_t i = 0; i < 6; ++i) r.exact[i] = exactness_at(seq.map(i), seq.map((i + 1) % 6));
  r.partial0_zero = seq.partial0.is_zero();
  return r;
}

ConeGenerators cone_generators(const RelativeGraph& rg, std::size_t bound) {
  const Graph& g = rg.graph;
  ConeGenerators cone;
  cone.bound = bound;
  cone.coordinates.assign(rg.relset.begin(), rg.relset.end());
  for (Vertex v = 0; v < g.size(); ++v)
    if (!rg.relset.contains(v)) cone.coordinates.push_back(v);
  std::vector<std::size_t> slot(g.size());
  for (std::size_t i = 0; i < cone.coordinates.size(); ++i) slot[cone.coordinates[i]] = i;

  std::set<IntVector> found;
  const std::size_t n = g.size();
  for (Vertex v = 0; v < n; ++v) {
    IntVector base(n);
    base[slot[v]] = 1;
    found.insert(base);
    if (!g.is_singular(v)) continue;
    std::vector<std::size_t> cap(n);
    for (Vertex w = 0; w < n; ++w) {
      Multiplicity a = g.adjacency(v, w);
      cap[w] = a.is_infinite() ? bound : std::min<std::size_t>(a.count(), bound);
    }
    // Every multiset of targets of size <= bound, chosen within the multiplicities.
    IntVector cur = base;
    std::function<void(Vertex, std::size_t)> rec = [&](Vertex w, std::size_t left) {
      if (w == n) {
        found.insert(cur);
        return;
      }
      for (std::size_t c = 0; c <= std::min(cap[w], left); ++c) {
        cur[slot[w]] -= c;
        rec(w + 1, left - c);
        cur[slot[w]] += c;
      }
    };
    rec(0, bound);
  }
  cone.vectors.assign(found.begin(), found.end());
  return cone;
}

bool cone_contains(const ConeGenerators& cone, const IntMatrix& relations, const IntVector& target,
                   long radius, std::size_t max_terms) {
  FgGroup quotient(relations);
  const std::size_t n = target.size();
  std::set<IntVector> seen;
  std::deque<std::pair<IntVector, std::size_t>> queue;
  IntVector zero(n);
  seen.insert(zero);
  queue.emplace_back(zero, 0);
  while (!queue.empty()) {
    auto [v, depth] = queue.front();
    queue.pop_front();
    if (depth > 0 && quotient.same_class(v, target)) return true;
    if (depth == max_terms) continue;
    for (const auto& gen : cone.vectors) {
      IntVector w = v;
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i) {
        w[i] += gen[i];
        if (abs(w[i]) > radius) inside = false;
      }
      if (inside && seen.insert(w).second) queue.emplace_back(std::move(w), depth + 1);
    }
  }
  // The empty sum represents zero.
  return quotient.is_zero(target);
}

std::string GroupSummary::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& d : invariant_factors) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (free_rank > 0) {
    os << (first ? "" : " + ") << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

GroupSummary summarize(const FgGroup& g) { return {g.invariant_factors(), g.free_rank()}; }

MapSummary summarize(const GroupHom& f) {
  MapSummary m;
  m.canonical = f.canonical_matrix();
  SmithForm snf = smith_normal_form(m.canonical);
  for (const auto& d : snf.diagonal())
    if (d != 0) m.smith_factors.push_back(d);
  m.kernel = summarize(kernel_group(f));
  m.image = summarize(image_group(f));
  m.cokernel = summarize(cokernel_group(f));
  return m;
}

SequenceSummary invariant_summary(const SixTermSequence& seq) {
  SequenceSummary s;
  for (std::size_t i = 0; i < 6; ++i) {
    s.groups[i] = summarize(seq.group(static_cast<Node>(i)));
    s.maps[i] = summarize(seq.map(i));
  }
  return s;
}

}  // namespace graphk
