// Command-line front end.  Exit status: 0 success, 1 a verification
// failed, 2 bad input.

#include "graphk/error.hpp"
#include "graphk/families.hpp"
#include "graphk/report.hpp"
#include "graphk/sixterm.hpp"
#include "graphk/toeplitz.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <iostream>
#include <thread>

using namespace graphk;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct Options {
  std::string file;
  std::string H, S, relset, x, family, params;
  std::string format = "text";
  bool relset_given = false;
  bool all = false;
  unsigned jobs = 1;
};

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

AdmissiblePair read_pair(const Graph& g, const Options& o) {
  AdmissiblePair p{parse_vertex_list(g, o.H), parse_vertex_list(g, o.S)};
  validate_pair(g, p);
  return p;
}

int cmd_ideals(const Options& o) {
  Graph g = read_graph_file(o.file);
  Json r = ideals_report(g);
  if (o.format == "json") {
    print(r);
    return kOk;
  }
  auto pairs = admissible_pairs(g);
  std::cout << "regular: " << g.set_str(classify_vertices(g).regular) << "\n";
  std::cout << "condition K: " << (condition_K(g) ? "yes (every ideal is gauge invariant)" : "no")
            << "\n";
  for (std::size_t i = 0; i < pairs.size(); ++i)
    std::cout << "  [" << i << "] H = " << g.set_str(pairs[i].H)
              << "  S = " << g.set_str(pairs[i].S) << "\n";
  std::cout << "covering relations:";
  for (auto [a, b] : hasse_edges(pairs)) std::cout << " " << a << "<" << b;
  std::cout << "\n";
  return kOk;
}

int cmd_kgroups(const Options& o) {
  Graph g = read_graph_file(o.file);
  RelativeGraph rg = full_relative_graph(g);
  if (o.relset_given) rg.relset = parse_vertex_list(g, o.relset);
  rg.validate();
  KGroups k = kgroups(rg);
  if (o.format == "json") {
    print(kgroups_report(rg, k));
    return kOk;
  }
  std::cout << "relset " << g.set_str(rg.relset) << "\n"
            << "  K0 = " << summarize(k.k0).str() << "\n"
            << "  K1 = " << summarize(k.k1).str() << "\n";
  return kOk;
}

int cmd_sixterm(const Options& o) {
  Graph g = read_graph_file(o.file);
  std::vector<AdmissiblePair> pairs;
  if (o.all)
    pairs = admissible_pairs(g);
  else
    pairs.push_back(read_pair(g, o));

  std::vector<Json> json(pairs.size());
  std::vector<std::string> text(pairs.size());
  std::vector<char> ok(pairs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < pairs.size();) {
      SixTermSequence seq = build_six_term(g, pairs[i]);
      ExactnessReport ex = verify_exactness(seq);
      ok[i] = ex.all();
      if (o.format == "json")
        json[i] = sixterm_report(g, seq, ex);
      else
        text[i] = sixterm_text(g, seq, ex);
    }
  };
  std::vector<std::thread> threads;
  for (unsigned t = 1; t < std::max(1u, o.jobs); ++t) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  if (o.format == "json")
    print(o.all ? Json(json) : json.front());
  else
    for (const auto& t : text) std::cout << t;
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c; }) ? kOk : kVerificationFailed;
}

int cmd_witness(const Options& o) {
  Graph g = read_graph_file(o.file);
  RelativeGraph rg = full_relative_graph(g);
  if (o.relset_given) rg.relset = parse_vertex_list(g, o.relset);
  rg.validate();
  IntVector x = parse_int_list(o.x);
  WitnessIndex w = witness_index(rg, x);
  VPU vpu = build_VPU(w);
  FourEquations four = verify_foureqs(w, vpu.V, vpu.P);
  bool iso = verify_partial_isometry(vpu.V, vpu.P);
  IntVector residue = gap_residue(rg, w, vpu.V, vpu.P);
  bool good = four.all() && iso && residue == x;
  if (o.format == "json") {
    Json r = witness_report(g, w, residue, std::nullopt);
    r["foureqs"] = four.all();
    r["partial_isometry"] = iso;
    print(r);
  } else {
    std::cout << "h = " << w.h << "\n"
              << "four equations: " << (four.all() ? "hold" : "FAIL") << "\n"
              << "partial isometry: " << (iso ? "yes" : "NO") << "\n"
              << "residue " << to_string(residue) << (residue == x ? " = x" : " != x") << "\n";
  }
  return good ? kOk : kVerificationFailed;
}

int cmd_oracle(const Options& o) {
  Graph g = read_graph_file(o.file);
  AdmissiblePair p = read_pair(g, o);
  SixTermSequence seq = build_six_term(g, p);
  bool all_agree = true;
  Json rows = Json::array();
  for (std::size_t j = 0; j < seq.quot_kernel.cols(); ++j) {
    IntVector x = seq.quot_kernel.column(j);
    IntVector matrix_value = seq.partial1_matrix * x;
    OracleResult r = index_oracle(g, p, x);
    bool agree = seq.k0_ideal.same_class(matrix_value, r.value);
    all_agree = all_agree && agree;
    if (o.format == "json") {
      rows.push_back(Json{{"x", vector_to_json(x)},
                          {"matrix_value", vector_to_json(matrix_value)},
                          {"oracle_class", vector_to_json(r.value)},
                          {"h", r.h},
                          {"agree", agree}});
    } else {
      std::cout << "x = " << to_string(x) << "  matrix " << to_string(matrix_value) << "  oracle "
                << to_string(r.value) << "  " << (agree ? "agree" : "DISAGREE") << "\n";
    }
  }
  if (o.format == "json")
    print(Json{{"H", vertex_names(g, p.H)},
               {"S", vertex_names(g, p.S)},
               {"ideal_generators", vertex_names(g, seq.ideal_rows())},
               {"kernel_vectors", rows},
               {"agree", all_agree}});
  else if (seq.quot_kernel.cols() == 0)
    std::cout << "K1 of the quotient is trivial; nothing to compare\n";
  return all_agree ? kOk : kVerificationFailed;
}

// "a..b" or "a", comma separated, one per family parameter.
std::vector<std::vector<std::uint64_t>> parse_params(const std::string& s, std::size_t count) {
  std::vector<std::vector<std::uint64_t>> ranges;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::uint64_t lo, hi;
    auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        lo = hi = std::stoull(item);
      } else {
        lo = std::stoull(item.substr(0, dots));
        hi = std::stoull(item.substr(dots + 2));
      }
    } catch (const std::exception&) {
      throw InputError("bad parameter \"" + item + "\"");
    }
    if (lo > hi || hi - lo > 1000) throw InputError("bad parameter range \"" + item + "\"");
    std::vector<std::uint64_t> r;
    for (auto v = lo; v <= hi; ++v) r.push_back(v);
    ranges.push_back(r);
  }
  if (ranges.size() != count)
    throw InputError("expected " + std::to_string(count) + " parameters, got " +
                     std::to_string(ranges.size()));
  return ranges;
}

int cmd_examples(const Options& o) {
  bool is_E = o.family == "E";
  if (!is_E && o.family != "F") throw InputError("family must be E or F");
  auto ranges = parse_params(o.params, is_E ? 3 : 2);
  std::vector<std::vector<std::uint64_t>> instances{{}};
  for (const auto& r : ranges) {
    std::vector<std::vector<std::uint64_t>> grown;
    for (const auto& prefix : instances)
      for (auto v : r) {
        grown.push_back(prefix);
        grown.back().push_back(v);
      }
    instances = std::move(grown);
  }
  bool ok = true;
  Json out = Json::array();
  for (const auto& prm : instances) {
    Graph g = is_E ? family_E(prm[0], prm[1], prm[2]) : family_F(prm[0], prm[1]);
    AdmissiblePair p = is_E ? family_E_pair() : family_F_pair();
    SixTermSequence seq = build_six_term(g, p);
    ExactnessReport ex = verify_exactness(seq);
    ok = ok && ex.all();
    if (o.format == "json") {
      out.push_back(Json{{"family", o.family},
                         {"params", prm},
                         {"graph", graph_to_json(g)},
                         {"sixterm", sixterm_report(g, seq, ex)}});
    } else {
      SequenceSummary s = invariant_summary(seq);
      std::cout << o.family << "(";
      for (std::size_t i = 0; i < prm.size(); ++i) std::cout << (i ? "," : "") << prm[i];
      std::cout << ")";
      for (std::size_t i = 0; i < 6; ++i) std::cout << "  " << node_names[i] << "=" << s.groups[i].str();
      std::cout << (ex.all() ? "" : "  NOT EXACT") << "\n";
    }
  }
  if (o.format == "json") print(out);
  return ok ? kOk : kVerificationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-theory of graph algebras and their gauge-invariant ideals"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };

  auto* ideals = app.add_subcommand("ideals", "list admissible pairs and their order");
  ideals->add_option("file", o.file, "graph JSON")->required();
  add_format(ideals);

  auto* kg = app.add_subcommand("kgroups", "K-groups of a relative graph algebra");
  kg->add_option("file", o.file, "graph JSON")->required();
  kg->add_option("--relset", o.relset, "comma-separated regular vertices (default: all regular)")
      ->each([&](const std::string&) { o.relset_given = true; });
  add_format(kg);

  auto* six = app.add_subcommand("sixterm", "six-term exact sequence of an admissible pair");
  six->add_option("file", o.file, "graph JSON")->required();
  six->add_option("--H", o.H, "comma-separated vertices of H");
  six->add_option("--S", o.S, "comma-separated breaking vertices");
  six->add_flag("--all", o.all, "every admissible pair");
  six->add_option("--jobs", o.jobs, "worker threads for --all")->check(CLI::Range(1u, 256u));
  add_format(six);

  auto* wit = app.add_subcommand("witness", "index sets, V, P and the gap residue for x");
  wit->add_option("file", o.file, "graph JSON")->required();
  wit->add_option("--relset", o.relset, "comma-separated regular vertices (default: all regular)")
      ->each([&](const std::string&) { o.relset_given = true; });
  wit->add_option("--x", o.x, "kernel vector, relset order")->required();
  add_format(wit);

  auto* orc = app.add_subcommand("oracle", "compare the index map with the defect computation");
  orc->add_option("file", o.file, "graph JSON")->required();
  orc->add_option("--H", o.H, "comma-separated vertices of H");
  orc->add_option("--S", o.S, "comma-separated breaking vertices");
  add_format(orc);

  auto* ex = app.add_subcommand("examples", "the E and F example families");
  ex->add_option("--family", o.family, "E or F")->required();
  ex->add_option("--params", o.params, "per parameter a or a..b, comma separated")->required();
  add_format(ex);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*ideals) return cmd_ideals(o);
    if (*kg) return cmd_kgroups(o);
    if (*six) return cmd_sixterm(o);
    if (*wit) return cmd_witness(o);
    if (*orc) return cmd_oracle(o);
    if (*ex) return cmd_examples(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  }
  return kInputError;
}
