#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invfo/errors.hpp"
#include "invfo/formula.hpp"
#include "invfo/graph.hpp"
#include "invfo/kwalk.hpp"
#include "invfo/structure.hpp"

namespace invfo {

// Successor relation read off a covering closed walk: order the elements by
// the position of their first visit; each element's successor is the next
// one in that cyclic order. A one-element universe gets the loop (v,v).
inline SuccessorRelation first_visit_successor(const std::set<int>& universe,
                                               const Walk& w) {
  std::vector<int> order;
  std::set<int> seen;
  for (int v : w.seq) {
    if (!universe.count(v))
      throw input_error("first_visit_successor: walk vertex " +
                        std::to_string(v) + " is outside the universe");
    if (seen.insert(v).second) order.push_back(v);
  }
  for (int v : universe) {
    if (!seen.count(v))
      throw input_error("first_visit_successor: element " + std::to_string(v) +
                        " is never visited");
  }
  SuccessorRelation sr;
  for (std::size_t i = 0; i < order.size(); ++i)
    sr.emplace(order[i], order[(i + 1) % order.size()]);
  return sr;
}

// A structure extended with walk annotations: Occ_r holds the elements
// visited exactly r times; Step_i_j holds the walk steps from an element's
// i-th visit to the next element's j-th visit (wrap-around step included).
// For every element and every visit index there is exactly one outgoing
// step, except that a single-vertex walk has no steps at all.
struct AnnotatedExpansion {
  Structure base;      // the input structure, untouched
  Structure extended;  // base plus the annotation relations
  int k = 0;           // visit bound the annotation was built for
  std::vector<std::string> occ_symbols;
  std::vector<std::string> step_symbols;
};

inline std::string occ_symbol(int r) { return "Occ_" + std::to_string(r); }
inline std::string step_symbol(int i, int j) {
  return "Step_" + std::to_string(i) + "_" + std::to_string(j);
}

// Annotate `a` with the visit structure of the covering closed walk w, whose
// per-vertex visit counts must not exceed k. Every step of w must be an edge
// of a's Gaifman graph (arrange this by adding the walk-step relation to the
// structure first), so the expansion provably leaves the Gaifman graph
// unchanged -- which is still re-checked before returning.
inline AnnotatedExpansion build_annotated_expansion(const Structure& a,
                                                    const Walk& w, int k) {
  if (k < 1)
    throw input_error("build_annotated_expansion: bound must be positive");
  auto counts = w.counts();
  for (int v : w.seq) {
    if (!a.universe.count(v))
      throw input_error("build_annotated_expansion: walk vertex " +
                        std::to_string(v) + " is outside the universe");
  }
  for (int v : a.universe) {
    auto it = counts.find(v);
    if (it == counts.end())
      throw input_error("build_annotated_expansion: element " +
                        std::to_string(v) + " is never visited");
    if (it->second > k)
      throw input_error("build_annotated_expansion: element " +
                        std::to_string(v) + " visited " +
                        std::to_string(it->second) + " times, bound is " +
                        std::to_string(k));
  }
  Graph gaif = gaifman_graph(a);
  for (auto [x, y] : walk_steps(w)) {
    if (x == y || !gaif.has_edge(x, y))
      throw input_error("build_annotated_expansion: walk step " +
                        std::to_string(x) + " -> " + std::to_string(y) +
                        " is not a Gaifman edge");
  }

  AnnotatedExpansion ex;
  ex.base = a;
  ex.extended = a;
  ex.k = k;
  for (int r = 1; r <= k; ++r) {
    ex.extended.vocab.add(occ_symbol(r), 1);
    ex.occ_symbols.push_back(occ_symbol(r));
  }
  for (int i = 1; i <= k; ++i) {
    for (int j = 1; j <= k; ++j) {
      ex.extended.vocab.add(step_symbol(i, j), 2);
      ex.step_symbols.push_back(step_symbol(i, j));
    }
  }
  for (const auto& [v, n] : counts) ex.extended.add_tuple(occ_symbol(n), {v});

  if (w.seq.size() >= 2) {
    // Visit index of each walk position.
    std::map<int, int> seen;
    std::vector<int> occ_at(w.seq.size());
    for (std::size_t p = 0; p < w.seq.size(); ++p)
      occ_at[p] = ++seen[w.seq[p]];
    std::set<std::pair<int, int>> sources;  // (vertex, visit index)
    for (std::size_t p = 0; p < w.seq.size(); ++p) {
      std::size_t q = (p + 1) % w.seq.size();
      int i = occ_at[p];
      int j = q == 0 ? 1 : occ_at[q];
      if (!sources.emplace(w.seq[p], i).second)
        throw invariant_violation(
            "build_annotated_expansion: visit (" + std::to_string(w.seq[p]) +
            ", " + std::to_string(i) + ") has two outgoing steps");
      ex.extended.add_tuple(step_symbol(i, j), {w.seq[p], w.seq[q]});
    }
    // Exactly one outgoing step per (vertex, visit index).
    for (const auto& [v, n] : counts) {
      for (int i = 1; i <= n; ++i) {
        if (!sources.count({v, i}))
          throw invariant_violation(
              "build_annotated_expansion: visit (" + std::to_string(v) + ", " +
              std::to_string(i) + ") has no outgoing step");
      }
    }
  }

  if (!(gaifman_graph(ex.extended) == gaif))
    throw invariant_violation(
        "build_annotated_expansion: annotation changed the Gaifman graph");
  return ex;
}

// Formula defining a successor relation on every annotated expansion built
// for the given bound. For a bound of 1 the walk visits everything exactly
// once, so its own steps form the successor; the extra disjunct covers the
// one-element universe, whose single-vertex walk has no steps. Larger
// bounds are not provided.
inline FormulaPtr build_phi_succ(int k) {
  if (k < 1) throw input_error("build_phi_succ: bound must be positive");
  if (k > 1)
    throw capability_error(
        "unsupported: no defining formula is provided for bound " +
        std::to_string(k) + " (only 1)");
  FormulaPtr step = f_atom(step_symbol(1, 1), {"x", "y"});
  FormulaPtr lone =
      f_and(f_eq("x", "y"), f_forall("z", f_eq("z", "x")));
  return f_or(step, lone);
}

enum class Strategy { Semantic, Syntactic };

inline Strategy parse_strategy(const std::string& s) {
  if (s == "semantic") return Strategy::Semantic;
  if (s == "syntactic") return Strategy::Syntactic;
  throw input_error("unknown strategy '" + s +
                    "' (expected semantic or syntactic)");
}

// Decide whether `a` satisfies phi, reading successor atoms from the walk.
// Semantic: interpret the reserved symbol `succ` by first_visit_successor
// and evaluate directly. Syntactic: annotate the structure, replace each
// succ atom by the defining formula, and evaluate the result; this route
// exists only for walks that visit every vertex once.
inline bool apply_strategy(const Structure& a, const Walk& w,
                           const FormulaPtr& phi, Strategy strategy) {
  if (strategy == Strategy::Semantic) {
    SuccessorRelation sr = first_visit_successor(a.universe, w);
    Structure b = with_binary_relation(a, "succ", sr);
    return evaluate(b, phi);
  }
  if (w.max_count() > 1)
    throw capability_error(
        "unsupported: the syntactic strategy needs a walk that visits every "
        "vertex once, but some vertex is visited " +
        std::to_string(w.max_count()) + " times");
  AnnotatedExpansion ex = build_annotated_expansion(a, w, 1);
  FormulaPtr replaced =
      substitute_atom(phi, "succ", {"x", "y"}, build_phi_succ(1));
  return evaluate(ex.extended, replaced);
}

}  // namespace invfo
