// Command-line front end: model checking with successor/order atoms on
// finite structures, plus the walk, decomposition, and poset utilities the
// pipeline is built from. Every command prints a plain-text report ending in
// one machine-readable line `RESULT ...`; artifacts go only to paths the
// user names. Exit codes: 0 holds/pass, 1 does not hold/fail, 2 error,
// 3 structural guarantee violated.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include "CLI11.hpp"
#include "invfo/errors.hpp"
#include "invfo/formula.hpp"
#include "invfo/graph.hpp"
#include "invfo/invariance.hpp"
#include "invfo/kwalk.hpp"
#include "invfo/pipeline.hpp"
#include "invfo/poset.hpp"
#include "invfo/structure.hpp"
#include "invfo/successor.hpp"
#include "invfo/tree_decomposition.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invfo::input_error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invfo::input_error("cannot write file '" + path + "'");
  out << content;
  if (!out) throw invfo::input_error("failed writing file '" + path + "'");
}

std::string fmt_pairs(const std::set<std::pair<int, int>>& ps) {
  std::ostringstream os;
  bool first = true;
  for (auto [a, b] : ps) {
    if (!first) os << " ";
    os << "(" << a << "," << b << ")";
    first = false;
  }
  return os.str();
}

std::size_t max_bag_size(const invfo::TreeDecomposition& td) {
  std::size_t best = 0;
  for (const auto& [id, bag] : td.bags) {
    (void)id;
    best = std::max(best, bag.size());
  }
  return best;
}

// --td value: "single-bag", "file=PATH", or "heuristic=NAME".
invfo::TreeDecomposition resolve_td(const std::string& spec,
                                    const invfo::Graph& host) {
  if (spec == "single-bag")
    return invfo::heuristic_decompose(host, invfo::DecomposeMethod::SingleBag);
  if (spec.rfind("file=", 0) == 0) {
    std::string path = spec.substr(5);
    if (path.empty()) throw invfo::input_error("--td file= needs a path");
    return invfo::parse_tree_decomposition(read_file(path), host);
  }
  if (spec.rfind("heuristic=", 0) == 0)
    return invfo::heuristic_decompose(
        host, invfo::parse_decompose_method(spec.substr(10)));
  throw invfo::input_error(
      "bad --td value '" + spec +
      "' (expected file=PATH, heuristic=NAME, or single-bag)");
}

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               t0)
      .count();
}

void print_unclassified(std::ostream& os, const std::vector<int>& bags) {
  os << "classification: failed for bags";
  for (int b : bags) os << " " << b;
  os << "\n";
}

void print_connect_stats(std::ostream& os, const invfo::ConnectResult& cr) {
  int max_d = 0;
  for (const auto& plan : cr.plans) max_d = std::max(max_d, plan.d);
  os << "walk: length=" << cr.walk.length() << " k=" << cr.k_tracked
     << " M=" << cr.m_max << " k'=" << cr.bound()
     << " realized=" << cr.realized_max << "\n";
  os << "plan degree bound: " << max_d
     << " conforming=" << (cr.conforming ? "yes" : "no") << "\n";
  os << "edges added: " << cr.edge_log.size() << "\n";
  os << "splices: " << cr.splices.size() << "\n";
}

int cmd_mc(const std::string& structure_path, const std::string& formula_path,
           const std::string& td_spec, int c, const std::string& strategy_name,
           bool verbose) {
  auto t0 = Clock::now();
  std::ostream& os = std::cout;
  invfo::Structure a = invfo::parse_structure(read_file(structure_path));
  invfo::FormulaPtr phi = invfo::parse_formula(read_file(formula_path));
  invfo::Strategy strategy = invfo::parse_strategy(strategy_name);

  invfo::Graph g = invfo::gaifman_graph(a);
  invfo::TreeDecomposition td;
  if (!a.universe.empty()) td = resolve_td(td_spec, g);

  invfo::McRun r = invfo::run_mc(a, phi, td, c, strategy);

  os << "universe size: " << a.universe.size() << "\n";
  if (!r.empty_universe) {
    os << "gaifman graph: n=" << g.vertex_count() << " m=" << g.edge_count()
       << "\n";
    os << "decomposition: bags=" << td.bags.size()
       << " maxbag=" << max_bag_size(td) << "\n";
  }
  if (r.classification_failed) {
    print_unclassified(os, r.unclassified);
    if (verbose) os << "time: " << ms_since(t0) << " ms\n";
    os << "RESULT guarantee-violated k'=0 M=0 edges_added=0\n";
    return 3;
  }
  if (!r.empty_universe) {
    os << "classification: c=" << c << " ok\n";
    os << "walk: length=" << r.walk.length() << " k=" << r.k_tracked
       << " M=" << r.m_max << " k'=" << r.k_prime
       << " realized=" << r.realized_max << "\n";
    os << "plan degree bound: " << r.max_d
       << " conforming=" << (r.conforming ? "yes" : "no") << "\n";
    os << "edges added: " << r.edges_added << "\n";
    os << "splices: " << r.splice_count << "\n";
  }
  os << "strategy: " << strategy_name << "\n";
  os << "verdict: " << (r.holds ? "holds" : "not-holds") << "\n";
  if (verbose) os << "time: " << ms_since(t0) << " ms\n";
  os << "RESULT " << (r.holds ? "holds" : "not-holds") << " k'=" << r.k_prime
     << " M=" << r.m_max << " edges_added=" << r.edges_added << "\n";
  return r.holds ? 0 : 1;
}

int cmd_kwalk(const std::string& graph_path, const std::string& td_spec, int c,
              const std::string& walk_out, const std::string& edges_out,
              bool verbose) {
  auto t0 = Clock::now();
  std::ostream& os = std::cout;
  invfo::Graph g = invfo::parse_graph(read_file(graph_path));
  invfo::TreeDecomposition td = resolve_td(td_spec, g);

  invfo::WalkBuild wb = invfo::build_walk_pipeline(g, td, c);
  os << "graph: n=" << g.vertex_count() << " m=" << g.edge_count() << "\n";
  os << "decomposition: bags=" << td.bags.size()
     << " maxbag=" << max_bag_size(td) << "\n";
  if (wb.classification_failed) {
    print_unclassified(os, wb.unclassified);
    if (verbose) os << "time: " << ms_since(t0) << " ms\n";
    os << "RESULT guarantee-violated k'=0 M=0 edges_added=0\n";
    return 3;
  }
  const invfo::ConnectResult& cr = wb.connect;
  os << "classification: c=" << c << " ok\n";
  print_connect_stats(os, cr);
  if (!walk_out.empty()) {
    std::ostringstream ws;
    invfo::write_walk(ws, cr.walk, cr.bound());
    write_file(walk_out, ws.str());
    os << "wrote walk to " << walk_out << "\n";
  }
  if (!edges_out.empty()) {
    std::ostringstream es;
    invfo::write_edge_log(es, cr.edge_log);
    write_file(edges_out, es.str());
    os << "wrote edge log to " << edges_out << "\n";
  }
  if (verbose) os << "time: " << ms_since(t0) << " ms\n";
  os << "RESULT ok k'=" << cr.bound() << " M=" << cr.m_max
     << " edges_added=" << cr.edge_log.size() << "\n";
  return 0;
}

int cmd_decompose(const std::string& graph_path, const std::string& method_name,
                  const std::string& out_path) {
  std::ostream& os = std::cout;
  invfo::Graph g = invfo::parse_graph(read_file(graph_path));
  invfo::DecomposeMethod method = invfo::parse_decompose_method(method_name);
  invfo::TreeDecomposition td = invfo::heuristic_decompose(g, method);
  std::string text = invfo::write_tree_decomposition(td);
  os << "graph: n=" << g.vertex_count() << " m=" << g.edge_count() << "\n";
  os << "method: " << method_name << "\n";
  if (out_path.empty()) {
    os << text;
  } else {
    write_file(out_path, text);
    os << "wrote decomposition to " << out_path << "\n";
  }
  os << "RESULT ok bags=" << td.bags.size() << " maxbag=" << max_bag_size(td)
     << "\n";
  return 0;
}

int cmd_check_walk(const std::string& graph_path, const std::string& walk_path,
                   int k_override) {
  std::ostream& os = std::cout;
  invfo::Graph g = invfo::parse_graph(read_file(graph_path));
  invfo::ParsedWalk pw = invfo::parse_walk(read_file(walk_path));
  int k = k_override >= 0 ? k_override : pw.k;
  os << "walk: length=" << pw.walk.length() << " bound=" << k << "\n";
  invfo::WalkCheck chk = invfo::validate_kwalk(g, pw.walk, k);
  if (chk.ok) {
    os << "check: pass\n";
    os << "RESULT pass\n";
    return 0;
  }
  os << "check: fail\n";
  os << "reason: " << chk.reason << "\n";
  os << "RESULT fail\n";
  return 1;
}

int cmd_check_td(const std::string& graph_path, const std::string& td_path) {
  std::ostream& os = std::cout;
  invfo::Graph g = invfo::parse_graph(read_file(graph_path));
  invfo::TreeDecomposition td =
      invfo::parse_tree_decomposition(read_file(td_path), g);
  os << "decomposition: bags=" << td.bags.size()
     << " maxbag=" << max_bag_size(td) << "\n";
  invfo::TdReport rep = invfo::validate(td);
  if (rep.valid()) {
    os << "check: pass\n";
    os << "RESULT pass\n";
    return 0;
  }
  os << "check: fail\n";
  os << "reason: " << rep.describe() << "\n";
  os << "RESULT fail\n";
  return 1;
}

int cmd_check_succ_inv(const std::string& structure_path,
                       const std::string& formula_path, int max_exhaustive,
                       std::uint64_t seed, int samples) {
  std::ostream& os = std::cout;
  invfo::Structure a = invfo::parse_structure(read_file(structure_path));
  invfo::FormulaPtr phi = invfo::parse_formula(read_file(formula_path));
  invfo::check_mc_vocabulary(a);
  invfo::check_mc_formula(a, phi);

  const int n = static_cast<int>(a.universe.size());
  os << "universe size: " << n << "\n";
  invfo::InvarianceResult res;
  if (n <= max_exhaustive) {
    res = invfo::check_successor_invariance(a, phi, max_exhaustive);
    os << "mode: exhaustive\n";
  } else {
    res = invfo::check_successor_invariance(
        a, phi, invfo::SampleMode{seed, samples});
    os << "mode: sampled seed=" << seed << " samples=" << samples << "\n";
  }
  os << "candidates evaluated: " << res.samples << "\n";
  if (res.invariant) {
    os << "RESULT invariant\n";
    return 0;
  }
  os << "true under: " << fmt_pairs(res.witness->first) << "\n";
  os << "false under: " << fmt_pairs(res.witness->second) << "\n";
  os << "RESULT violated\n";
  return 1;
}

int cmd_poset_mc(const std::string& poset_path, const std::string& formula_path,
                 bool check_invariance, int max_exhaustive) {
  std::ostream& os = std::cout;
  invfo::ColouredPoset p = invfo::parse_poset(read_file(poset_path));
  invfo::FormulaPtr phi = invfo::parse_formula(read_file(formula_path));

  invfo::WidthResult wr = invfo::width_and_chain_cover(p);
  os << "poset: n=" << p.elements.size() << " width=" << wr.width << "\n";
  if (check_invariance) {
    invfo::Structure base = invfo::poset_structure(p);
    invfo::InvarianceResult ir =
        invfo::check_order_invariance(base, phi, max_exhaustive);
    if (!ir.invariant)
      throw invfo::input_error(
          "formula is not order-invariant on this poset (true under " +
          fmt_pairs(ir.witness->first) + ", false under " +
          fmt_pairs(ir.witness->second) + ")");
    os << "invariance: verified over " << ir.samples << " linear orders\n";
  }
  bool holds = invfo::poset_model_check(p, phi);
  os << "verdict: " << (holds ? "holds" : "not-holds") << "\n";
  os << "RESULT " << (holds ? "holds" : "not-holds") << "\n";
  return holds ? 0 : 1;
}

int cmd_poset_width(const std::string& poset_path) {
  std::ostream& os = std::cout;
  invfo::ColouredPoset p = invfo::parse_poset(read_file(poset_path));
  invfo::WidthResult wr = invfo::width_and_chain_cover(p);
  os << "poset: n=" << p.elements.size() << "\n";
  os << "width: " << wr.width << "\n";
  for (std::size_t j = 0; j < wr.cover.chains.size(); ++j) {
    os << "chain " << (j + 1) << ":";
    for (int v : wr.cover.chains[j]) os << " " << v;
    os << "\n";
  }
  os << "RESULT width=" << wr.width << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "model checking for first-order formulas with successor or order "
      "atoms on finite structures"};
  app.require_subcommand(1);

  std::string structure_path, formula_path, graph_path, poset_path;
  std::string td_spec = "single-bag";
  std::string strategy = "semantic";
  std::string method, out_path, walk_out, edges_out, walk_path, td_path;
  int c = 1;
  int k_override = -1;
  int max_exhaustive_succ = 8;
  int max_exhaustive_ord = 6;
  std::uint64_t seed = 1;
  int samples = 100;
  bool verbose = false;
  bool check_invariance = false;

  CLI::App* mc = app.add_subcommand(
      "mc", "model-check a formula against a structure via a covering walk");
  mc->add_option("--structure", structure_path, "structure file")->required();
  mc->add_option("--formula", formula_path, "formula file")->required();
  mc->add_option("--td", td_spec,
                 "decomposition source: file=PATH, heuristic=NAME, or "
                 "single-bag (default)");
  mc->add_option("-c", c, "bag class parameter (>= 1)")->required();
  mc->add_option("--strategy", strategy, "semantic or syntactic");
  mc->add_flag("--verbose", verbose, "add timing lines to the report");

  CLI::App* kw = app.add_subcommand(
      "kwalk", "build a bounded-multiplicity closed walk covering a graph");
  kw->add_option("--graph", graph_path, "graph file")->required();
  kw->add_option("--td", td_spec,
                 "decomposition source: file=PATH, heuristic=NAME, or "
                 "single-bag (default)");
  kw->add_option("-c", c, "bag class parameter (>= 1)")->required();
  kw->add_option("--walk-out", walk_out, "write the walk here");
  kw->add_option("--edges-out", edges_out, "write the added-edge log here");
  kw->add_flag("--verbose", verbose, "add timing lines to the report");

  CLI::App* dec = app.add_subcommand(
      "decompose", "compute a tree decomposition of a graph");
  dec->add_option("--graph", graph_path, "graph file")->required();
  dec->add_option("--method", method, "single-bag, min-degree, or min-fill")
      ->required();
  dec->add_option("--out", out_path,
                  "write the decomposition here (default: stdout)");

  CLI::App* cw = app.add_subcommand(
      "check-walk", "verify a closed covering walk against a graph");
  cw->add_option("--graph", graph_path, "graph file")->required();
  cw->add_option("--walk", walk_path, "walk file")->required();
  cw->add_option("-k", k_override,
                 "override the multiplicity bound from the walk file");

  CLI::App* ct = app.add_subcommand(
      "check-td", "verify a tree decomposition against a graph");
  ct->add_option("--graph", graph_path, "graph file")->required();
  ct->add_option("--td-file", td_path, "decomposition file")->required();

  CLI::App* ci = app.add_subcommand(
      "check-succ-inv",
      "test whether a formula's verdict depends on the successor relation");
  ci->add_option("--structure", structure_path, "structure file")->required();
  ci->add_option("--formula", formula_path, "formula file")->required();
  ci->add_option("--max-exhaustive", max_exhaustive_succ,
                 "largest universe checked exhaustively (default 8)");
  ci->add_option("--seed", seed, "sampling seed (default 1)");
  ci->add_option("--samples", samples,
                 "sample count above the exhaustive limit (default 100)");

  CLI::App* pm = app.add_subcommand(
      "poset-mc", "model-check an order-invariant formula on a poset");
  pm->add_option("--poset", poset_path, "poset file")->required();
  pm->add_option("--formula", formula_path, "formula file")->required();
  pm->add_flag("--check-invariance", check_invariance,
               "first verify order-invariance exhaustively");
  pm->add_option("--max-exhaustive", max_exhaustive_ord,
                 "largest universe for the invariance check (default 6)");

  CLI::App* pw = app.add_subcommand(
      "poset-width", "width and a minimum chain cover of a poset");
  pw->add_option("--poset", poset_path, "poset file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mc->parsed())
      return cmd_mc(structure_path, formula_path, td_spec, c, strategy,
                    verbose);
    if (kw->parsed())
      return cmd_kwalk(graph_path, td_spec, c, walk_out, edges_out, verbose);
    if (dec->parsed()) return cmd_decompose(graph_path, method, out_path);
    if (cw->parsed()) return cmd_check_walk(graph_path, walk_path, k_override);
    if (ct->parsed()) return cmd_check_td(graph_path, td_path);
    if (ci->parsed())
      return cmd_check_succ_inv(structure_path, formula_path,
                                max_exhaustive_succ, seed, samples);
    if (pm->parsed())
      return cmd_poset_mc(poset_path, formula_path, check_invariance,
                          max_exhaustive_ord);
    if (pw->parsed()) return cmd_poset_width(poset_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
