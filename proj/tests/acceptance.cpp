// Acceptance run: one PASS/FAIL line per criterion, detail lines indented
// below it.  Exit status is nonzero when any criterion fails.

#include "graphk/error.hpp"
#include "graphk/families.hpp"
#include "graphk/sixterm.hpp"
#include "graphk/toeplitz.hpp"
#include "support/fock.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace graphk;

namespace {

// Pinned limits.  All comparisons are exact; only runtimes and sample sizes
// are thresholds.
constexpr double per_instance_seconds = 1.0;
constexpr std::size_t exactness_random_graphs = 500;
constexpr std::size_t oracle_min_triples = 100;
constexpr int repairings_per_witness = 10;
constexpr std::size_t term_triples = 1000;
constexpr std::size_t smith_matrices = 1000;
constexpr std::size_t smith_max_dim = 8;
constexpr long smith_entry_bound = 20;
constexpr std::size_t finite_order_limit = 200;
constexpr std::size_t cone_bound = 5;
constexpr long cone_box = 5;
constexpr std::uint64_t corpus_seed = 2024;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass || notes.size() < 12) notes.push_back("failed: " + what);
      pass = false;
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

GroupSummary group(std::vector<long> factors, std::size_t rank) {
  GroupSummary s;
  // Z/1 is trivial, so unit factors are not part of the normal form.
  for (long f : factors)
    if (f != 1) s.invariant_factors.push_back(f);
  s.free_rank = rank;
  return s;
}

std::string vec_str(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

struct Timer {
  double worst = 0;
  template <typename F>
  auto run(F&& f) {
    auto t0 = Clock::now();
    auto r = f();
    worst = std::max(worst, seconds_since(t0));
    return r;
  }
};

const std::vector<Graph>& corpus() {
  static const std::vector<Graph> c = oracle::corpus(exactness_random_graphs, corpus_seed);
  return c;
}

Outcome criterion1() {
  Outcome o;
  Timer timer;
  std::size_t unequal = 0, k1_z = 0, k1_zero = 0;
  for (std::uint64_t x = 0; x <= 4; ++x)
    for (std::uint64_t y = 0; y <= 4; ++y)
      for (std::uint64_t z = 0; z <= 4; ++z) {
        std::string tag = "E(" + std::to_string(x) + "," + std::to_string(y) + "," +
                          std::to_string(z) + ")";
        SixTermSequence s =
            timer.run([&] { return build_six_term(family_E(x, y, z), family_E_pair()); });
        GroupSummary k0 = summarize(s.k0_full), k1 = summarize(s.k1_full);
        long d = std::abs(static_cast<long>(x) - static_cast<long>(z));
        if (x != z) {
          ++unequal;
          o.require(k0 == group({d}, 1), tag + " K0 = " + k0.str());
          // The stated K1 value, checked as written.
          if (k1 == group({}, 1)) ++k1_z;
          if (k1 == group({}, 0)) ++k1_zero;
          o.require(k1 == group({}, 1), tag + " K1 = " + k1.str() + ", expected Z");
        } else {
          o.require(s.partial1.is_zero(), tag + " index map nonzero");
          o.require(k0 == group({}, 2), tag + " K0 = " + k0.str());
        }
        // The five-term sequence 0 -> K1_quot -(x-z)-> K0_ideal -> K0 -> K0_quot -> 0.
        o.require(summarize(s.k1_quot) == group({}, 1) && summarize(s.k0_ideal) == group({}, 1) &&
                      summarize(s.k0_quot) == group({}, 1),
                  tag + " outer groups");
        o.require(s.partial1.apply({1}) == IntVector{static_cast<long>(x) - static_cast<long>(z)},
                  tag + " index map");
      }
  o.require(timer.worst < per_instance_seconds, "runtime");
  std::ostringstream msg;
  msg << "x != z: " << unequal << " instances; K1(C*(E)) = Z in " << k1_z << ", K1(C*(E)) = 0 in "
      << k1_zero;
  o.note(msg.str());
  if (k1_zero == unequal)
    o.note("K1 of the full algebra is ker[x y z; 0 1 0; 1 0 1; 0 1 0] = 0 when x != z; "
           "the Z in that position belongs to K1 of the quotient, and K1(C*(E)) = 0 is also "
           "what the five-term sequence above forces (K1_quot -> K0_ideal is injective)");
  o.note("slowest instance " + std::to_string(timer.worst) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  Timer timer;
  for (long y = 1; y <= 3; ++y)
    for (long z = 1; z <= 8; ++z) {
      std::string tag = "F(" + std::to_string(y) + "," + std::to_string(z) + ")";
      SixTermSequence s = timer.run([&] { return build_six_term(family_F(y, z), family_F_pair()); });
      o.require(verify_exactness(s).all(), tag + " exactness");
      o.require(summarize(s.k0_ideal) == group({}, 2), tag + " K0_ideal");
      MapSummary iota = summarize(s.iota0);
      MapSummary pi = summarize(s.pi0);
      if (z != 4) {
        long d = std::abs(z - 4);
        o.require(summarize(s.k0_quot) == group({d}, 0), tag + " K0_quot");
        o.require(summarize(s.k1_quot) == group({}, 0), tag + " K1_quot");
        o.require(summarize(s.k0_full) == group({}, 2), tag + " K0_full");
        // 0 -> Z^2 -[-1 -2y; 0 4-z]-> Z^2 -> Z/|z-4| -> 0.
        std::vector<Integer> factors{1, d};
        o.require(iota.smith_factors == factors, tag + " iota0 Smith factors");
        o.require(iota.kernel == group({}, 0), tag + " iota0 injective");
        o.require(pi.cokernel == group({}, 0), tag + " pi0 surjective");
        o.require(iota.cokernel == group({d}, 0), tag + " coker iota0");
      } else {
        o.require(summarize(s.k1_quot) == group({}, 1), tag + " K1_quot");
        IntVector img = s.partial1.apply({1});
        bool ok = img == IntVector{-2 * y, 1} || img == IntVector{2 * y, -1};
        o.require(ok, tag + " index map " + vec_str(img));
        // iota0 = [-1 -2y; 0 0] up to bases: one unit Smith factor.
        o.require(iota.smith_factors == std::vector<Integer>{1}, tag + " iota0 Smith factors");
      }
    }
  o.require(timer.worst < per_instance_seconds, "runtime");
  o.note("24 instances, slowest " + std::to_string(timer.worst) + " s");
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto t0 = Clock::now();
  std::size_t graphs = 0, sequences = 0;
  for (const Graph& g : corpus()) {
    ++graphs;
    for (const auto& p : admissible_pairs(g)) {
      ++sequences;
      ExactnessReport r = verify_exactness(build_six_term(g, p));
      o.require(r.all() && r.partial0_zero, "sequence " + std::to_string(sequences));
    }
  }
  o.note(std::to_string(graphs) + " graphs, " + std::to_string(sequences) + " sequences, " +
         std::to_string(seconds_since(t0)) + " s");
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t triples = 0, too_large = 0;
  for (const Graph& g : corpus())
    for (const auto& p : admissible_pairs(g)) {
      SixTermSequence s = build_six_term(g, p);
      for (std::size_t j = 0; j < s.quot_kernel.cols(); ++j) {
        IntVector x = s.quot_kernel.column(j);
        try {
          OracleResult r = index_oracle(g, p, x);
          ++triples;
          o.require(s.k0_ideal.same_class(r.value, s.partial1_matrix * x),
                    "oracle " + vec_str(r.value) + " vs matrix " + vec_str(s.partial1_matrix * x));
        } catch (const InputError&) {
          ++too_large;
        }
      }
    }
  o.require(triples >= oracle_min_triples, "only " + std::to_string(triples) + " triples");
  o.note(std::to_string(triples) + " triples compared, " + std::to_string(too_large) +
         " beyond the witness size limit");
  return o;
}

// Per-vertex sizes of the two index sets, computed from x directly.
std::pair<std::vector<long>, std::vector<long>> counted_sizes(const RelativeGraph& q,
                                                              const WitnessIndex& w) {
  const Graph& g = q.graph;
  std::vector<long> up(g.size()), down(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    long xv = w.x[v];
    up[v] += std::max(xv, 0L);
    down[v] += std::max(-xv, 0L);
    if (xv == 0) continue;
    for (Vertex t = 0; t < g.size(); ++t) {
      long m = static_cast<long>(g.adjacency(v, t).count());
      up[t] += m * std::max(-xv, 0L);
      down[t] += m * std::max(xv, 0L);
    }
  }
  return {up, down};
}

template <typename F>
void for_each_witness(F&& f) {
  for (const Graph& g : corpus())
    for (const auto& p : admissible_pairs(g)) {
      RelativeGraph q = quotient_relative_graph(g, p);
      KGroups k = kgroups(q);
      for (std::size_t j = 0; j < k.kernel.cols(); ++j) {
        IntVector x = k.kernel.column(j);
        f(q, x);
        IntVector neg = x;
        for (auto& c : neg) c = -c;
        f(q, neg);
      }
    }
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(corpus_seed + 5);
  std::size_t witnesses = 0, repairs = 0;
  for_each_witness([&](const RelativeGraph& q, const IntVector& x) {
    WitnessIndex w = witness_index(q, x);
    ++witnesses;
    auto [up, down] = counted_sizes(q, w);
    o.require(up == down, "index set sizes differ for x = " + vec_str(x));
    std::vector<long> got_up, got_down;
    for (auto c : w.up_counts()) got_up.push_back(static_cast<long>(c));
    for (auto c : w.down_counts()) got_down.push_back(static_cast<long>(c));
    o.require(got_up == up && got_down == down, "index sets miscounted for x = " + vec_str(x));
    o.require(w.respects_ranges(), "positions do not match ranges for x = " + vec_str(x));
    VPU vpu = build_VPU(w);
    o.require(gap_residue(q, w, vpu.V, vpu.P) == x, "residue for x = " + vec_str(x));
    for (int r = 0; r < repairings_per_witness; ++r) {
      WitnessIndex w2 = oracle::repair(w, rng);
      ++repairs;
      VPU v2 = build_VPU(w2);
      o.require(w2.respects_ranges() && gap_residue(q, w2, v2.V, v2.P) == x,
                "re-paired residue for x = " + vec_str(x));
    }
  });
  o.note(std::to_string(witnesses) + " witnesses, " + std::to_string(repairs) + " re-pairings");
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t witnesses = 0;
  for_each_witness([&](const RelativeGraph& q, const IntVector& x) {
    WitnessIndex w = witness_index(q, x);
    ++witnesses;
    VPU vpu = build_VPU(w);
    o.require(verify_foureqs(w, vpu.V, vpu.P).all(), "four equations for x = " + vec_str(x));
    o.require(verify_partial_isometry(vpu.V, vpu.P), "partial isometry for x = " + vec_str(x));
  });
  std::mt19937_64 rng(corpus_seed + 6);
  std::size_t fock_checks = 0;
  for (std::size_t t = 0; t < term_triples; ++t) {
    Graph g = oracle::random_finite_graph(rng);
    AlgebraElement a = oracle::random_element(rng, g, 1);
    AlgebraElement b = oracle::random_element(rng, g, 1);
    AlgebraElement c = oracle::random_element(rng, g, 1);
    o.require((a * b) * c == a * (b * c), "associativity");
    o.require(adjoint(a * b) == adjoint(b) * adjoint(a), "adjoint of a product");
    AlgebraElement abc = (a * b) * c;
    for (const Path& mu : oracle::paths_up_to(g, 3)) {
      oracle::FockVector xi{{mu, 1}};
      o.require(oracle::act(abc, xi) == oracle::act(a, oracle::act(b, oracle::act(c, xi))),
                "product against path action");
      ++fock_checks;
    }
  }
  o.note(std::to_string(witnesses) + " witnesses, " + std::to_string(term_triples) +
         " term triples, " + std::to_string(fock_checks) + " path-action checks");
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(corpus_seed + 7);
  for (std::size_t t = 0; t < smith_matrices; ++t) {
    std::size_t r = 1 + rng() % smith_max_dim, c = 1 + rng() % smith_max_dim;
    IntMatrix m = oracle::random_matrix(rng, r, c, -smith_entry_bound, smith_entry_bound);
    SmithForm s = smith_normal_form(m);
    o.require(s.U * m * s.V == s.D, "U M V = D for " + m.str());
    o.require(abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1, "unimodular");
    IntVector d = s.diagonal();
    bool diag = true;
    for (std::size_t i = 0; i < s.D.rows(); ++i)
      for (std::size_t j = 0; j < s.D.cols(); ++j)
        if (i != j && s.D(i, j) != 0) diag = false;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      if (d[i] < 0) diag = false;
      if (d[i] == 0 ? d[i + 1] != 0 : d[i + 1] % d[i] != 0) diag = false;
    }
    o.require(diag, "diagonal divisibility chain for " + m.str());
  }

  std::size_t groups = 0;
  for (const Graph& g : corpus())
    for (const auto& p : admissible_pairs(g)) {
      SixTermSequence s = build_six_term(g, p);
      for (std::size_t i = 0; i < 6; ++i) {
        const GroupHom& f = s.map(i);
        const GroupHom& h = s.map((i + 1) % 6);
        const FgGroup& mid = f.target();
        auto ord = mid.order();
        if (!ord || *ord > static_cast<long>(finite_order_limit)) continue;
        oracle::FiniteQuotient fq(mid.relations());
        auto elements = fq.elements(finite_order_limit);
        std::vector<IntVector> gens;
        for (std::size_t j = 0; j < f.lift().cols(); ++j) gens.push_back(f.lift().column(j));
        auto image = fq.span(gens, finite_order_limit);
        std::set<IntVector> kernel;
        for (const auto& e : elements)
          if (h.target().is_zero(h.apply(e))) kernel.insert(e);
        o.require(exactness_at(f, h) == (image == kernel), "enumerated exactness");
        o.require(elements.size() == *ord, "enumerated order");
        ++groups;
      }
    }
  o.note(std::to_string(smith_matrices) + " Smith forms, " + std::to_string(groups) +
         " finite middle groups enumerated");
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::size_t instances = 0, x3_one = 0;
  for (long y = 1; y <= 3; ++y)
    for (long z = 1; z <= 8; ++z) {
      RelativeGraph id = ideal_subgraph(family_F(y, z), family_F_pair());
      ConeGenerators cone = cone_generators(id, cone_bound);
      KGroups k = kgroups(id);
      ++instances;
      for (long a = -cone_box; a <= cone_box; ++a)
        for (long b = -cone_box; b <= cone_box; ++b) {
          bool expected = b >= 1 || (b == 0 && a >= 0);
          bool got = cone_contains(cone, k.matrix, {a, b}, 2 * cone_box, 2 * cone_box);
          o.require(got == expected, "membership of (" + std::to_string(a) + "," +
                                         std::to_string(b) + ")");
          if (b == 1 && got) ++x3_one;
        }
    }
  o.note(std::to_string(instances) + " ideals, box [-5,5]^2");
  o.note("cone = {b >= 1} u {b = 0, a >= 0}; " + std::to_string(x3_one) +
         " members have b = 1, which a strict bound b > 1 would exclude");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
  };
  bool all = true;
  for (const auto& [n, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << "\n";
    for (const auto& s : o.notes) std::cout << "    " << s << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
