#pragma once

// Tree decompositions: the three defining conditions with witness-producing
// validation, adhesion figures, torsos, rooting with adhesion sets, the
// empty-adhesion normalization, torso-explicitation, per-bag structural
// classification, elimination-ordering heuristics, and the td file format.

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invfo/containment.hpp"
#include "invfo/errors.hpp"
#include "invfo/graph.hpp"

namespace invfo {

struct TreeDecomposition {
  Graph host;
  Graph tree;                       // nodes are bag ids
  std::map<int, std::set<int>> bags;  // bag id -> host vertex set
};

// --- validation -------------------------------------------------------------

struct TdReport {
  bool covers_vertices = true;
  std::optional<int> uncovered_vertex;
  bool covers_edges = true;
  std::optional<std::pair<int, int>> uncovered_edge;
  bool connected_subtrees = true;
  std::optional<int> disconnected_vertex;

  bool valid() const { return covers_vertices && covers_edges && connected_subtrees; }

  std::string describe() const {
    if (valid()) return "valid tree decomposition";
    std::ostringstream os;
    if (!covers_vertices)
      os << "vertex " << *uncovered_vertex << " is in no bag\n";
    if (!covers_edges)
      os << "edge " << uncovered_edge->first << "-" << uncovered_edge->second
         << " is inside no bag\n";
    if (!connected_subtrees)
      os << "bags containing vertex " << *disconnected_vertex
         << " do not induce a connected subtree\n";
    std::string s = os.str();
    if (!s.empty()) s.pop_back();
    return s;
  }
};

namespace detail {

// structural sanity shared by every td operation: matching node/bag ids,
// tree-ness, no dangling host vertices
inline void check_td_shape(const TreeDecomposition& td) {
  if (td.tree.vertex_count() == 0) throw input_error("decomposition has no bags");
  if (td.tree.vertex_count() != td.bags.size())
    throw input_error("tree nodes and bag ids disagree");
  for (int t : td.tree.vertices())
    if (!td.bags.count(t)) throw input_error("tree node " + std::to_string(t) + " has no bag");
  if (td.tree.edge_count() != td.tree.vertex_count() - 1 || !is_connected(td.tree))
    throw input_error("decomposition tree is not a tree");
  for (const auto& [t, bag] : td.bags)
    for (int v : bag)
      if (!td.host.has_vertex(v))
        throw input_error("bag " + std::to_string(t) + " mentions unknown host vertex " +
                          std::to_string(v));
}

}  // namespace detail

// Checks the three defining conditions, reporting a witness per failure.
inline TdReport validate(const TreeDecomposition& td) {
  detail::check_td_shape(td);
  TdReport rep;
  std::map<int, std::set<int>> nodes_with;  // host vertex -> tree nodes whose bag has it
  for (const auto& [t, bag] : td.bags)
    for (int v : bag) nodes_with[v].insert(t);
  for (int v : td.host.vertices()) {
    if (!nodes_with.count(v)) {
      rep.covers_vertices = false;
      rep.uncovered_vertex = v;
      break;
    }
  }
  for (auto [u, v] : td.host.edges()) {
    bool inside = false;
    for (const auto& [t, bag] : td.bags)
      if (bag.count(u) && bag.count(v)) {
        inside = true;
        break;
      }
    if (!inside) {
      rep.covers_edges = false;
      rep.uncovered_edge = {u, v};
      break;
    }
  }
  for (const auto& [v, nodes] : nodes_with) {
    if (!is_connected(induced_subgraph(td.tree, nodes))) {
      rep.connected_subtrees = false;
      rep.disconnected_vertex = v;
      break;
    }
  }
  return rep;
}

// --- adhesion ---------------------------------------------------------------

struct AdhesionReport {
  int adjacent_max = 0;  // over tree edges (the figure the walk builder uses)
  int all_pairs_max = 0;  // over all node pairs
};

inline AdhesionReport adhesion(const TreeDecomposition& td) {
  detail::check_td_shape(td);
  AdhesionReport rep;
  for (auto [s, t] : td.tree.edges()) {
    std::set<int> inter;
    std::set_intersection(td.bags.at(s).begin(), td.bags.at(s).end(), td.bags.at(t).begin(),
                          td.bags.at(t).end(), std::inserter(inter, inter.begin()));
    rep.adjacent_max = std::max(rep.adjacent_max, static_cast<int>(inter.size()));
  }
  std::vector<int> nodes = td.tree.vertices();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      std::set<int> inter;
      std::set_intersection(td.bags.at(nodes[i]).begin(), td.bags.at(nodes[i]).end(),
                            td.bags.at(nodes[j]).begin(), td.bags.at(nodes[j]).end(),
                            std::inserter(inter, inter.begin()));
      rep.all_pairs_max = std::max(rep.all_pairs_max, static_cast<int>(inter.size()));
    }
  return rep;
}

// --- torso ------------------------------------------------------------------

// Induced subgraph on bag(t) plus clique edges on each intersection with a
// tree-neighbouring bag.
inline Graph torso(const TreeDecomposition& td, int t) {
  detail::check_td_shape(td);
  if (!td.bags.count(t)) throw input_error("unknown tree node " + std::to_string(t));
  Graph out = induced_subgraph(td.host, td.bags.at(t));
  for (int u : td.tree.neighbors(t)) {
    std::set<int> inter;
    std::set_intersection(td.bags.at(t).begin(), td.bags.at(t).end(), td.bags.at(u).begin(),
                          td.bags.at(u).end(), std::inserter(inter, inter.begin()));
    out = add_clique_edges(out, inter);
  }
  return out;
}

// --- rooting ----------------------------------------------------------------

struct RootedDecomposition {
  TreeDecomposition base;
  int root = 0;
  std::map<int, int> parent;              // absent for the root
  std::map<int, std::vector<int>> children;  // ascending ids
  std::map<int, std::set<int>> alpha;     // adhesion set: bag(parent) ∩ bag(t)

  const std::set<int>& bag(int t) const { return base.bags.at(t); }

  // bag(t) minus its adhesion set: the vertices t introduces
  std::set<int> interior(int t) const {
    std::set<int> out;
    const auto& a = alpha.at(t);
    for (int v : bag(t))
      if (!a.count(v)) out.insert(v);
    return out;
  }

  // breadth-first node order starting at the root, children ascending
  std::vector<int> bfs_order() const {
    std::vector<int> order{root};
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto it = children.find(order[i]);
      if (it == children.end()) continue;
      for (int s : it->second) order.push_back(s);
    }
    return order;
  }
};

inline RootedDecomposition root_decomposition(const TreeDecomposition& td, int r) {
  detail::check_td_shape(td);
  if (!td.bags.count(r)) throw input_error("unknown root node " + std::to_string(r));
  RootedDecomposition rd;
  rd.base = td;
  rd.root = r;
  rd.alpha[r] = {};
  std::vector<int> queue{r};
  std::set<int> seen{r};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int t = queue[i];
    for (int s : td.tree.neighbors(t)) {
      if (!seen.insert(s).second) continue;
      rd.parent[s] = t;
      rd.children[t].push_back(s);
      std::set<int> inter;
      std::set_intersection(td.bags.at(t).begin(), td.bags.at(t).end(), td.bags.at(s).begin(),
                            td.bags.at(s).end(), std::inserter(inter, inter.begin()));
      rd.alpha[s] = std::move(inter);
      queue.push_back(s);
    }
  }
  for (auto& [t, kids] : rd.children) std::sort(kids.begin(), kids.end());
  return rd;
}

// --- normalization ----------------------------------------------------------

// Re-parents every child whose adhesion set adds nothing beyond its
// parent's (alpha(s) \ alpha(t) empty) up one level, repeatedly, so that
// afterwards only root children may have empty attachment sets (those are
// the decomposition's disconnected components).
inline RootedDecomposition normalize_empty_adhesions(const RootedDecomposition& rd) {
  std::map<int, int> parent = rd.parent;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [s, t] : parent) {
      if (t == rd.root) continue;
      const std::set<int>& as = rd.alpha.at(s);   // = bag(parent-chain) ∩ bag(s), stable under
      const std::set<int>& at = rd.alpha.at(t);   // re-parenting (see below)
      bool extends = false;
      for (int v : as)
        if (!at.count(v)) {
          extends = true;
          break;
        }
      if (!extends) {
        parent[s] = parent.at(t);
        changed = true;
        break;  // parent map mutated; restart the scan
      }
    }
  }
  // rebuild the tree from the new parent map; alpha(s) = bag(new parent) ∩
  // bag(s) coincides with the old value because alpha(s) ⊆ alpha(t) ⊆
  // bag(parent(t)) and subtree-connectivity pins the intersection
  RootedDecomposition out;
  out.base = rd.base;
  out.base.tree = Graph();
  for (int t : rd.base.tree.vertices()) out.base.tree.add_vertex(t);
  for (const auto& [s, t] : parent) out.base.tree.add_edge(s, t);
  out.root = rd.root;
  out.parent = parent;
  out.alpha[rd.root] = {};
  for (const auto& [s, t] : parent) {
    out.children[t].push_back(s);
    std::set<int> inter;
    std::set_intersection(rd.base.bags.at(t).begin(), rd.base.bags.at(t).end(),
                          rd.base.bags.at(s).begin(), rd.base.bags.at(s).end(),
                          std::inserter(inter, inter.begin()));
    out.alpha[s] = std::move(inter);
  }
  for (auto& [t, kids] : out.children) std::sort(kids.begin(), kids.end());
  return out;
}

// --- torso-explicitation ------------------------------------------------------

struct ExplicitTorsos {
  Graph host;
  RootedDecomposition rd;
  std::vector<std::pair<int, int>> added;
};

// Adds clique edges on every adhesion set so parent-child intersections are
// cliques of the host. Idempotent; the added edges are reported.
inline ExplicitTorsos make_torsos_explicit(const RootedDecomposition& rd) {
  ExplicitTorsos out;
  out.host = rd.base.host;
  for (const auto& [t, a] : rd.alpha)
    if (a.size() >= 2) out.host = add_clique_edges(out.host, a, &out.added);
  out.rd = rd;
  out.rd.base.host = out.host;
  return out;
}

// --- classification -----------------------------------------------------------

enum class BagTag { NearBoundedDegree, MinorFree };

struct BagClassification {
  int c = 0;
  std::map<int, BagTag> tags;
  std::vector<int> failures;  // nodes meeting neither condition

  bool all_classified() const { return failures.empty(); }
};

// Tags each node by the structure of its torso: first the cheap degree test
// (at most c vertices of torso-degree above c), then K_c-minor-freeness via
// the exhaustive oracle.
inline BagClassification classify_bags(const RootedDecomposition& rd, int c,
                                       const ContainmentOptions& opts = {}) {
  if (c < 1) throw input_error("class parameter c must be >= 1");
  BagClassification out;
  out.c = c;
  Graph kc = complete_graph(c);
  for (int t : rd.base.tree.vertices()) {
    Graph ts = torso(rd.base, t);
    int heavy = 0;
    for (int v : ts.vertices())
      if (ts.degree(v) > c) ++heavy;
    if (heavy <= c) {
      out.tags[t] = BagTag::NearBoundedDegree;
      continue;
    }
    if (!is_minor(kc, ts, opts)) {
      out.tags[t] = BagTag::MinorFree;
      continue;
    }
    out.failures.push_back(t);
  }
  return out;
}

// --- heuristics ---------------------------------------------------------------

enum class DecomposeMethod { SingleBag, MinDegree, MinFill };

inline DecomposeMethod parse_decompose_method(const std::string& name) {
  if (name == "single-bag") return DecomposeMethod::SingleBag;
  if (name == "min-degree") return DecomposeMethod::MinDegree;
  if (name == "min-fill") return DecomposeMethod::MinFill;
  throw input_error("unknown decomposition method '" + name + "'");
}

namespace detail {

inline int fill_in_count(const std::map<int, std::set<int>>& adj, int v) {
  const auto& nb = adj.at(v);
  int missing = 0;
  for (auto it = nb.begin(); it != nb.end(); ++it)
    for (auto jt = std::next(it); jt != nb.end(); ++jt)
      if (!adj.at(*it).count(*jt)) ++missing;
  return missing;
}

}  // namespace detail

// Elimination-ordering decomposition: bag i is the closed neighbourhood of
// the i-th eliminated vertex at elimination time; each bag attaches to the
// bag of the next-eliminated vertex it contains (components end up as
// subtrees hanging off the last bag). single-bag puts everything in one bag.
inline TreeDecomposition heuristic_decompose(const Graph& g, DecomposeMethod method) {
  TreeDecomposition td;
  td.host = g;
  if (method == DecomposeMethod::SingleBag) {
    td.tree.add_vertex(1);
    td.bags[1] = g.vertex_set();
    return td;
  }
  std::map<int, std::set<int>> adj;
  for (int v : g.vertices()) adj[v] = g.neighbors(v);
  if (adj.empty()) {  // empty host still needs one (empty) bag
    td.tree.add_vertex(1);
    td.bags[1] = {};
    return td;
  }
  std::vector<int> elim_order;
  std::map<int, int> elim_index;
  std::vector<std::set<int>> bags;
  while (!adj.empty()) {
    int best = -1;
    long best_score = -1;
    for (const auto& [v, nb] : adj) {
      long score = method == DecomposeMethod::MinDegree
                       ? static_cast<long>(nb.size())
                       : static_cast<long>(detail::fill_in_count(adj, v));
      if (best == -1 || score < best_score) {
        best = v;
        best_score = score;
      }
    }
    std::set<int> bag = adj[best];
    bag.insert(best);
    // make the remaining neighbourhood a clique (fill-in), then remove
    for (int u : adj[best])
      for (int w : adj[best])
        if (u < w) {
          adj[u].insert(w);
          adj[w].insert(u);
        }
    for (int u : adj[best]) adj[u].erase(best);
    adj.erase(best);
    elim_index[best] = static_cast<int>(bags.size()) + 1;
    elim_order.push_back(best);
    bags.push_back(std::move(bag));
  }
  const int n = static_cast<int>(bags.size());
  for (int i = 1; i <= n; ++i) {
    td.tree.add_vertex(i);
    td.bags[i] = bags[i - 1];
  }
  for (int i = 1; i < n; ++i) {
    int parent = n;  // fallback: attach to the last bag
    for (int v : bags[i - 1]) {
      int j = elim_index.at(v);
      if (j > i && j < parent) parent = j;
    }
    td.tree.add_edge(i, parent);
  }
  return td;
}

// --- file format ---------------------------------------------------------------
//
//   td <#bags> <maxbagsize> <n>
//   b <i> <v1> <v2> ...        (one line per bag, ids 1..#bags)
//   <i> <j>                    (tree edges)
//
// '#' comments and blank lines are ignored.

inline TreeDecomposition parse_tree_decomposition(std::istream& in, const Graph& host) {
  TreeDecomposition td;
  td.host = host;
  int nbags = -1, maxbag = -1, n = -1, lineno = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = "line " + std::to_string(lineno);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "td") {
      if (nbags != -1) throw parse_error(where + ": duplicate td header");
      if (!(ls >> nbags >> maxbag >> n) || nbags < 1 || maxbag < 0 || n < 0)
        throw parse_error(where + ": expected 'td <#bags> <maxbagsize> <n>'");
    } else if (tag == "b") {
      if (nbags == -1) throw parse_error(where + ": bag before td header");
      int i = 0;
      if (!(ls >> i) || i < 1 || i > nbags)
        throw parse_error(where + ": bag id out of range 1.." + std::to_string(nbags));
      if (td.bags.count(i)) throw parse_error(where + ": duplicate bag " + std::to_string(i));
      std::set<int>& bag = td.bags[i];
      td.tree.add_vertex(i);
      int v = 0;
      while (ls >> v) {
        if (v < 1 || v > n)
          throw parse_error(where + ": bag vertex out of range 1.." + std::to_string(n));
        if (!bag.insert(v).second) throw parse_error(where + ": repeated vertex in bag");
      }
      if (!ls.eof()) throw parse_error(where + ": bad token in bag line");
    } else {
      // a tree edge line: two bag ids
      int i = 0, j = 0;
      try {
        i = std::stoi(tag);
      } catch (const std::exception&) {
        throw parse_error(where + ": unknown directive '" + tag + "'");
      }
      if (!(ls >> j)) throw parse_error(where + ": expected '<i> <j>' tree edge");
      if (i < 1 || i > nbags || j < 1 || j > nbags)
        throw parse_error(where + ": tree edge id out of range");
      if (i == j) throw parse_error(where + ": self-loop tree edge");
      td.tree.add_edge(i, j);
    }
    if (tag != "b") {  // bag lines checked their own tail above
      std::string junk;
      if (ls >> junk) throw parse_error(where + ": trailing tokens");
    }
  }
  if (nbags == -1) throw parse_error("missing 'td' header");
  if (static_cast<int>(td.bags.size()) != nbags)
    throw parse_error("header says " + std::to_string(nbags) + " bags, found " +
                      std::to_string(td.bags.size()));
  std::size_t actual_max = 0;
  for (const auto& [i, bag] : td.bags) actual_max = std::max(actual_max, bag.size());
  if (static_cast<int>(actual_max) != maxbag)
    throw parse_error("header says max bag size " + std::to_string(maxbag) + ", found " +
                      std::to_string(actual_max));
  if (host.max_vertex_id() > n || static_cast<int>(host.vertex_count()) > n)
    throw parse_error("header says " + std::to_string(n) + " host vertices, host has more");
  return td;
}

inline TreeDecomposition parse_tree_decomposition(const std::string& text, const Graph& host) {
  std::istringstream in(text);
  return parse_tree_decomposition(in, host);
}

inline std::string write_tree_decomposition(const TreeDecomposition& td) {
  std::size_t maxbag = 0;
  for (const auto& [i, bag] : td.bags) maxbag = std::max(maxbag, bag.size());
  std::ostringstream out;
  out << "td " << td.bags.size() << ' ' << maxbag << ' ' << td.host.max_vertex_id() << '\n';
  for (const auto& [i, bag] : td.bags) {
    out << "b " << i;
    for (int v : bag) out << ' ' << v;
    out << '\n';
  }
  for (auto [i, j] : td.tree.edges()) out << i << ' ' << j << '\n';
  return out.str();
}

}  // namespace invfo
