#pragma once

// Test-only generators and brute-force oracles.  Nothing here calls the
// Smith or Hermite code under test unless stated.

#include "graphk/abelian.hpp"
#include "graphk/families.hpp"
#include "graphk/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using graphk::Graph;
using graphk::IntMatrix;
using graphk::Integer;
using graphk::IntVector;
using graphk::Multiplicity;
using graphk::Vertex;
using graphk::VertexSet;

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo,
                               long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

/// Product of random elementary matrices; determinant ±1 by construction.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (n == 1 && rng() % 2) u.negate_row(0);
    return u;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<long> factor(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) {
      u.negate_row(a);
      continue;
    }
    if (rng() % 4 == 0)
      u.swap_rows(a, b);
    else
      u.add_row_multiple(a, b, factor(rng));
  }
  return u;
}

/// Entry distribution 0 (45%), 1 (25%), 2 (15%), ∞ (15%).
inline Multiplicity random_entry(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 99);
  int r = d(rng);
  if (r < 45) return 0;
  if (r < 70) return 1;
  if (r < 85) return 2;
  return Multiplicity::infinite();
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t max_vertices = 4) {
  std::uniform_int_distribution<std::size_t> size(1, max_vertices);
  std::size_t n = size(rng);
  std::vector<std::vector<Multiplicity>> rows(n, std::vector<Multiplicity>(n));
  for (auto& row : rows)
    for (auto& m : row) m = random_entry(rng);
  return Graph::from_matrix(rows);
}

/// Fixed-seed random graphs plus a sweep of both families.
inline std::vector<Graph> corpus(std::size_t random_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> out;
  for (std::size_t i = 0; i < random_count; ++i) out.push_back(random_graph(rng));
  for (std::uint64_t x = 0; x <= 3; ++x)
    for (std::uint64_t z = 0; z <= 3; ++z) out.push_back(graphk::family_E(x, 1, z));
  for (std::uint64_t y = 1; y <= 3; ++y)
    for (std::uint64_t z = 1; z <= 8; ++z) out.push_back(graphk::family_F(y, z));
  return out;
}

// ---------------------------------------------------------------------------
// Invariant factors from determinantal divisors: d_k = gcd of k-minors,
// factor_k = d_k / d_{k-1}.

inline Integer minor_det(const IntMatrix& m, const std::vector<std::size_t>& r,
                         const std::vector<std::size_t>& c) {
  // Laplace expansion along the first row; k <= 8 here.
  std::size_t k = r.size();
  if (k == 0) return 1;
  if (k == 1) return m(r[0], c[0]);
  Integer total = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (m(r[0], c[j]) == 0) continue;
    std::vector<std::size_t> rr(r.begin() + 1, r.end()), cc;
    for (std::size_t t = 0; t < k; ++t)
      if (t != j) cc.push_back(c[t]);
    Integer sub = minor_det(m, rr, cc);
    total += (j % 2 ? -1 : 1) * m(r[0], c[j]) * sub;
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
    if (pos == k) {
      f(idx);
      return;
    }
    for (std::size_t i = from; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

struct Invariants {
  std::vector<Integer> diagonal;  // nonzero invariant factors, including units
  std::size_t rank = 0;
};

inline Invariants determinantal_invariants(const IntMatrix& m) {
  Invariants inv;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    Integer g = 0;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& r) {
      if (g == 1) return;
      for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& c) {
        if (g == 1) return;
        Integer d = minor_det(m, r, c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) break;
    inv.diagonal.push_back(g / prev);
    prev = g;
    inv.rank = k;
  }
  return inv;
}

/// Invariant factors >= 2 and free rank of coker m.
inline std::pair<std::vector<Integer>, std::size_t> cokernel_invariants(const IntMatrix& m) {
  Invariants inv = determinantal_invariants(m);
  std::vector<Integer> f;
  for (const auto& d : inv.diagonal)
    if (abs(d) != 1) f.push_back(abs(d));
  return {f, m.rows() - inv.rank};
}

// ---------------------------------------------------------------------------
// Kernel by unimodular column reduction of [M ; I]: reduce the top block to
// column echelon form; the bottom parts of the columns whose top part
// vanished form a kernel basis.

inline IntMatrix kernel_by_column_reduction(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix a = graphk::vcat(m, IntMatrix::identity(c));
  std::size_t lead = 0;  // columns [0, lead) hold pivots
  for (std::size_t row = 0; row < r && lead < c; ++row) {
    // Euclid on row `row` across columns [lead, c).
    for (;;) {
      std::size_t best = c;
      for (std::size_t j = lead; j < c; ++j)
        if (a(row, j) != 0 && (best == c || abs(a(row, j)) < abs(a(row, best)))) best = j;
      if (best == c) break;
      a.swap_columns(lead, best);
      bool done = true;
      for (std::size_t j = lead + 1; j < c; ++j) {
        if (a(row, j) == 0) continue;
        Integer q = a(row, j) / a(row, lead);
        a.add_column_multiple(j, lead, -q);
        if (a(row, j) != 0) done = false;
      }
      if (done) {
        ++lead;
        break;
      }
    }
  }
  std::vector<std::size_t> cols;
  for (std::size_t j = lead; j < c; ++j) cols.push_back(j);
  std::vector<std::size_t> rows;
  for (std::size_t i = r; i < r + c; ++i) rows.push_back(i);
  return a.select_rows(rows).select_columns(cols);
}

// ---------------------------------------------------------------------------
// Finite quotients Z^n / L enumerated element by element.  Vectors are
// reduced against a lower-triangular basis of L built by row-wise Euclid
// (independent of the library's Hermite routine).

class FiniteQuotient {
 public:
  /// `relations` must have full row rank.
  explicit FiniteQuotient(const IntMatrix& relations) : n_(relations.rows()) {
    IntMatrix a = relations;
    std::size_t lead = 0;
    for (std::size_t row = 0; row < n_; ++row) {
      for (;;) {
        std::size_t best = a.cols();
        for (std::size_t j = lead; j < a.cols(); ++j)
          if (a(row, j) != 0 && (best == a.cols() || abs(a(row, j)) < abs(a(row, best)))) best = j;
        if (best == a.cols()) {
          full_rank_ = false;
          return;
        }
        a.swap_columns(lead, best);
        bool done = true;
        for (std::size_t j = lead + 1; j < a.cols(); ++j) {
          if (a(row, j) == 0) continue;
          a.add_column_multiple(j, lead, -(a(row, j) / a(row, lead)));
          if (a(row, j) != 0) done = false;
        }
        if (done) break;
      }
      if (a(row, lead) < 0) a.negate_column(lead);
      basis_.push_back(a.column(lead));
      ++lead;
    }
  }

  bool finite() const { return full_rank_; }

  IntVector reduce(IntVector v) const {
    for (std::size_t k = 0; k < n_; ++k) {
      const IntVector& b = basis_[k];
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), v[k].get_mpz_t(), b[k].get_mpz_t());
      for (std::size_t i = k; i < n_; ++i) v[i] -= q * b[i];
    }
    return v;
  }

  /// Subgroup generated by the given vectors, as reduced representatives.
  std::set<IntVector> span(const std::vector<IntVector>& gens, std::size_t limit) const {
    std::set<IntVector> seen{reduce(IntVector(n_))};
    std::vector<IntVector> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<IntVector> next;
      for (const auto& v : frontier)
        for (const auto& g : gens) {
          IntVector w = v;
          for (std::size_t i = 0; i < n_; ++i) w[i] += g[i];
          w = reduce(w);
          if (seen.insert(w).second) next.push_back(w);
          if (seen.size() > limit) return seen;
        }
      frontier = std::move(next);
    }
    return seen;
  }

  std::set<IntVector> elements(std::size_t limit) const {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < n_; ++i) {
      IntVector e(n_);
      e[i] = 1;
      gens.push_back(e);
    }
    return span(gens, limit);
  }

 private:
  std::size_t n_;
  bool full_rank_ = true;
  std::vector<IntVector> basis_;
};

// ---------------------------------------------------------------------------
// Graph oracles by direct enumeration.

inline bool reaches(const Graph& g, Vertex from, Vertex to) {
  std::vector<bool> seen(g.size(), false);
  std::vector<Vertex> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    Vertex u = stack.back();
    stack.pop_back();
    if (u == to) return true;
    for (Vertex w = 0; w < g.size(); ++w)
      if (!g.adjacency(u, w).is_zero() && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  return false;
}

struct PairOracle {
  VertexSet H, S;
  auto operator<=>(const PairOracle&) const = default;
};

/// All (H, S) by subset enumeration, sorted.
inline std::vector<PairOracle> brute_pairs(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<PairOracle> out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    VertexSet H;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) H.insert(v);
    bool ok = true;
    for (Vertex v : H)
      for (Vertex w = 0; w < n; ++w)
        if (reaches(g, v, w) && !H.contains(w)) ok = false;
    for (Vertex v = 0; v < n && ok; ++v) {
      Multiplicity deg;
      bool all_in = true;
      for (Vertex w = 0; w < n; ++w) {
        deg = deg + g.adjacency(v, w);
        if (!g.adjacency(v, w).is_zero() && !H.contains(w)) all_in = false;
      }
      bool regular = !deg.is_zero() && deg.is_finite();
      if (regular && all_in && !H.contains(v)) ok = false;
    }
    if (!ok) continue;
    std::vector<Vertex> breaking;
    for (Vertex v = 0; v < n; ++v) {
      if (H.contains(v)) continue;
      bool inf = false;
      Multiplicity out_h;
      for (Vertex w = 0; w < n; ++w) {
        if (g.adjacency(v, w).is_infinite()) inf = true;
        if (!H.contains(w)) out_h = out_h + g.adjacency(v, w);
      }
      if (inf && !out_h.is_zero() && out_h.is_finite()) breaking.push_back(v);
    }
    for (std::uint32_t sm = 0; sm < (1u << breaking.size()); ++sm) {
      VertexSet S;
      for (std::size_t k = 0; k < breaking.size(); ++k)
        if (sm >> k & 1) S.insert(breaking[k]);
      out.push_back({H, S});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// First-return closed walks at v, enumerated edge by edge up to length
/// `max_len`, multiplicities capped at 2; result capped at 2.
inline int brute_simple_cycles(const Graph& g, Vertex v, std::size_t max_len) {
  auto cap = [](Multiplicity m) {
    return m.is_infinite() ? 2 : static_cast<int>(std::min<std::uint64_t>(m.count(), 2));
  };
  int count = 0;
  std::function<void(Vertex, std::size_t, int)> walk = [&](Vertex u, std::size_t len, int ways) {
    if (count >= 2 || len >= max_len) return;
    for (Vertex w = 0; w < g.size(); ++w) {
      int m = cap(g.adjacency(u, w));
      if (m == 0) continue;
      if (w == v)
        count = std::min(2, count + ways * m);
      else
        walk(w, len + 1, std::min(2, ways * m));
      if (count >= 2) return;
    }
  };
  walk(v, 0, 1);
  return count;
}

}  // namespace oracle
