#pragma once

#include <cctype>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invfo/errors.hpp"
#include "invfo/formula.hpp"
#include "invfo/graph.hpp"
#include "invfo/kwalk.hpp"
#include "invfo/structure.hpp"
#include "invfo/successor.hpp"
#include "invfo/tree_decomposition.hpp"

namespace invfo {

inline std::string walk_step_symbol() { return "wstep"; }

namespace detail {

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

// Names the pipeline claims for itself: the walk-step relation and the
// annotation symbols Occ_<r> / Step_<i>_<j>.
inline bool is_pipeline_symbol(const std::string& name) {
  if (name == walk_step_symbol()) return true;
  if (name.rfind("Occ_", 0) == 0) return all_digits(name.substr(4));
  if (name.rfind("Step_", 0) == 0) {
    std::string rest = name.substr(5);
    auto us = rest.find('_');
    if (us == std::string::npos) return false;
    return all_digits(rest.substr(0, us)) && all_digits(rest.substr(us + 1));
  }
  return false;
}

}  // namespace detail

// Reject structures whose vocabulary would collide with the symbols the
// pipeline adds.
inline void check_mc_vocabulary(const Structure& a) {
  for (const auto& [name, arity] : a.vocab.symbols) {
    (void)arity;
    if (is_reserved_symbol(name))
      throw input_error("structure vocabulary uses the reserved symbol '" +
                        name + "'");
    if (detail::is_pipeline_symbol(name))
      throw input_error("structure vocabulary uses '" + name +
                        "', which the pipeline reserves for walk annotations");
  }
}

// Check that every atom of phi is either the reserved binary `succ` or a
// vocabulary symbol of matching arity.
inline void check_mc_formula(const Structure& a, const FormulaPtr& phi) {
  std::function<void(const FormulaPtr&)> walk = [&](const FormulaPtr& f) {
    if (!f) return;
    if (f->kind == Kind::Atom) {
      if (f->name == "succ") {
        if (f->vars.size() != 2)
          throw input_error("succ takes exactly 2 arguments, got " +
                            std::to_string(f->vars.size()));
      } else if (f->name == "leq") {
        throw input_error(
            "leq is reserved for poset commands and cannot appear here");
      } else if (detail::is_pipeline_symbol(f->name)) {
        throw input_error("formula uses '" + f->name +
                          "', which the pipeline reserves");
      } else {
        if (!a.vocab.has(f->name))
          throw input_error("formula uses unknown relation '" + f->name + "'");
        if (a.vocab.arity(f->name) != static_cast<int>(f->vars.size()))
          throw input_error("relation '" + f->name + "' has arity " +
                            std::to_string(a.vocab.arity(f->name)) +
                            ", used with " + std::to_string(f->vars.size()) +
                            " arguments");
      }
    }
    walk(f->lhs);
    walk(f->rhs);
  };
  walk(phi);
}

// Decomposition-to-walk stage shared by the model checker and the walk
// builder: validate, root at the lowest node id, normalize, make torsos
// explicit, classify at parameter c, and connect. A failed classification is
// reported, not thrown (the input simply lacks the structural guarantee).
struct WalkBuild {
  bool classification_failed = false;
  std::vector<int> unclassified;  // bags failing both tests
  int root = 0;
  ConnectResult connect;  // meaningful when classification succeeded
};

inline WalkBuild build_walk_pipeline(const Graph& g,
                                     const TreeDecomposition& td, int c,
                                     const ContainmentOptions& opts = {}) {
  if (!(td.host == g))
    throw input_error(
        "decomposition host graph differs from the graph being walked");
  TdReport vr = validate(td);
  if (!vr.valid())
    throw input_error("invalid tree decomposition: " + vr.describe());

  WalkBuild out;
  out.root = td.bags.begin()->first;
  RootedDecomposition rd = root_decomposition(td, out.root);
  rd = normalize_empty_adhesions(rd);
  ExplicitTorsos et = make_torsos_explicit(rd);
  BagClassification cls = classify_bags(et.rd, c, opts);
  if (!cls.all_classified()) {
    out.classification_failed = true;
    out.unclassified = cls.failures;
    return out;
  }
  out.connect = connect_walks(et.rd, cls, c);
  return out;
}

// Everything a model-checking run produces, for reports and tests.
struct McRun {
  bool classification_failed = false;
  std::vector<int> unclassified;
  bool holds = false;
  bool empty_universe = false;
  int k_tracked = 0;
  int m_max = 0;
  int k_prime = 0;
  int realized_max = 0;
  int max_d = 0;
  bool conforming = true;
  std::size_t edges_added = 0;
  std::size_t splice_count = 0;
  Walk walk;
  Graph gprime;
};

// Full model-checking pipeline: Gaifman graph, decomposition-to-walk stage,
// walk-step relation, then the chosen strategy for successor atoms. The
// decomposition must be over the structure's Gaifman graph.
inline McRun run_mc(const Structure& a, const FormulaPtr& phi,
                    const TreeDecomposition& td, int c, Strategy strategy,
                    const ContainmentOptions& opts = {}) {
  check_mc_vocabulary(a);
  check_mc_formula(a, phi);
  McRun out;

  if (a.universe.empty()) {
    // Nothing to walk; the verdict is decided directly.
    out.empty_universe = true;
    Structure b = with_binary_relation(a, walk_step_symbol(), {});
    out.holds = apply_strategy(b, Walk{}, phi, strategy);
    return out;
  }

  Graph g = gaifman_graph(a);
  WalkBuild wb = build_walk_pipeline(g, td, c, opts);
  if (wb.classification_failed) {
    out.classification_failed = true;
    out.unclassified = wb.unclassified;
    return out;
  }
  const ConnectResult& cr = wb.connect;

  std::set<std::pair<int, int>> steps;
  for (auto [x, y] : walk_steps(cr.walk)) steps.emplace(x, y);
  Structure b = with_binary_relation(a, walk_step_symbol(), steps);
  out.holds = apply_strategy(b, cr.walk, phi, strategy);

  out.k_tracked = cr.k_tracked;
  out.m_max = cr.m_max;
  out.k_prime = cr.bound();
  out.realized_max = cr.realized_max;
  out.conforming = cr.conforming;
  out.edges_added = cr.edge_log.size();
  out.splice_count = cr.splices.size();
  for (const auto& plan : cr.plans) out.max_d = std::max(out.max_d, plan.d);
  out.walk = cr.walk;
  out.gprime = cr.gprime;
  return out;
}

}  // namespace invfo
