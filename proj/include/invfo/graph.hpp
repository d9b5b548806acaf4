#pragma once

// Undirected simple graphs over positive integer vertex ids, the exact
// small-scale operations the rest of the library is built on, and the
// plain-text graph file format.

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invfo/errors.hpp"

namespace invfo {

class Graph {
 public:
  Graph() = default;

  void add_vertex(int v) {
    check_id(v);
    adj_.try_emplace(v);
  }

  // Adds the edge {u, v}, creating missing endpoints. Self-loops are
  // rejected. Returns false when the edge was already present.
  bool add_edge(int u, int v) {
    if (u == v) throw input_error("self-loop rejected at vertex " + std::to_string(u));
    add_vertex(u);
    add_vertex(v);
    bool fresh = adj_[u].insert(v).second;
    adj_[v].insert(u);
    return fresh;
  }

  bool has_vertex(int v) const { return adj_.count(v) != 0; }

  bool has_edge(int u, int v) const {
    auto it = adj_.find(u);
    return it != adj_.end() && it->second.count(v) != 0;
  }

  const std::set<int>& neighbors(int v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw input_error("unknown vertex " + std::to_string(v));
    return it->second;
  }

  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  std::size_t vertex_count() const { return adj_.size(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& [v, nb] : adj_) twice += nb.size();
    return twice / 2;
  }

  std::vector<int> vertices() const {
    std::vector<int> out;
    out.reserve(adj_.size());
    for (const auto& [v, nb] : adj_) out.push_back(v);
    return out;
  }

  std::set<int> vertex_set() const {
    std::set<int> out;
    for (const auto& [v, nb] : adj_) out.insert(v);
    return out;
  }

  // Edges as (u, v) pairs with u < v, in lexicographic order.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [v, nb] : adj_)
      for (int w : nb)
        if (v < w) out.emplace_back(v, w);
    return out;
  }

  int max_vertex_id() const { return adj_.empty() ? 0 : adj_.rbegin()->first; }

  bool operator==(const Graph& other) const { return adj_ == other.adj_; }
  bool operator!=(const Graph& other) const { return adj_ != other.adj_; }

 private:
  static void check_id(int v) {
    if (v <= 0) throw input_error("vertex ids must be positive, got " + std::to_string(v));
  }

  std::map<int, std::set<int>> adj_;
};

// Subgraph induced by `keep`; every member of `keep` must be a vertex of g.
inline Graph induced_subgraph(const Graph& g, const std::set<int>& keep) {
  Graph out;
  for (int v : keep) {
    if (!g.has_vertex(v))
      throw input_error("induced_subgraph: unknown vertex " + std::to_string(v));
    out.add_vertex(v);
  }
  for (int v : keep)
    for (int w : g.neighbors(v))
      if (v < w && keep.count(w)) out.add_edge(v, w);
  return out;
}

// Complete graph on the given nonempty vertex set.
inline Graph clique_on(const std::set<int>& s) {
  if (s.empty()) throw input_error("clique_on: empty vertex set");
  Graph out;
  for (int v : s) out.add_vertex(v);
  for (auto it = s.begin(); it != s.end(); ++it)
    for (auto jt = std::next(it); jt != s.end(); ++jt) out.add_edge(*it, *jt);
  return out;
}

// Copy of g with all pairwise edges added on `verts` (vertices created as
// needed). Returns the new graph and the edges that were actually added.
inline Graph add_clique_edges(const Graph& g, const std::set<int>& verts,
                              std::vector<std::pair<int, int>>* added = nullptr) {
  Graph out = g;
  for (int v : verts) out.add_vertex(v);
  for (auto it = verts.begin(); it != verts.end(); ++it)
    for (auto jt = std::next(it); jt != verts.end(); ++jt)
      if (out.add_edge(*it, *jt) && added) added->emplace_back(*it, *jt);
  return out;
}

// g joined with a fresh c-clique: disjoint union plus every edge between g
// and the clique. Fresh ids start right after g's largest id.
inline Graph join_with_clique(const Graph& g, int c) {
  if (c < 1) throw input_error("clique size must be at least 1");
  Graph out = g;
  int base = g.max_vertex_id();
  std::vector<int> fresh;
  for (int i = 1; i <= c; ++i) {
    fresh.push_back(base + i);
    out.add_vertex(base + i);
  }
  for (std::size_t i = 0; i < fresh.size(); ++i)
    for (std::size_t j = i + 1; j < fresh.size(); ++j) out.add_edge(fresh[i], fresh[j]);
  for (int v : g.vertices())
    for (int f : fresh) out.add_edge(v, f);
  return out;
}

struct DegeneracyOrder {
  std::vector<int> order;  // removal order
  int degeneracy = 0;      // max degree at time of removal
};

// Repeatedly removes a minimum-degree vertex (ties broken toward the lowest
// id) and records the largest degree seen at removal time.
inline DegeneracyOrder degeneracy_order(const Graph& g) {
  DegeneracyOrder out;
  std::map<int, std::set<int>> adj;
  for (int v : g.vertices()) adj[v] = g.neighbors(v);
  while (!adj.empty()) {
    int best = -1;
    std::size_t best_deg = 0;
    for (const auto& [v, nb] : adj) {
      if (best == -1 || nb.size() < best_deg) {
        best = v;
        best_deg = nb.size();
      }
    }
    out.degeneracy = std::max(out.degeneracy, static_cast<int>(best_deg));
    out.order.push_back(best);
    for (int w : adj[best]) adj[w].erase(best);
    adj.erase(best);
  }
  return out;
}

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() <= 1) return true;
  std::set<int> seen;
  std::vector<int> stack{g.vertices().front()};
  seen.insert(stack.back());
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(v))
      if (seen.insert(w).second) stack.push_back(w);
  }
  return seen.size() == g.vertex_count();
}

inline std::vector<std::set<int>> connected_components(const Graph& g) {
  std::vector<std::set<int>> comps;
  std::set<int> seen;
  for (int s : g.vertices()) {
    if (seen.count(s)) continue;
    std::set<int> comp;
    std::vector<int> stack{s};
    seen.insert(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.insert(v);
      for (int w : g.neighbors(v))
        if (seen.insert(w).second) stack.push_back(w);
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

// --- file format ---------------------------------------------------------
//
//   # comment
//   graph <n> <m>
//   e <u> <v>        (m lines, ids in 1..n)
//
// Blank lines and '#' comments are ignored. Duplicate edges and self-loops
// are parse errors.

inline Graph parse_graph(std::istream& in) {
  Graph g;
  std::string line;
  int n = -1, m = -1, seen_edges = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = "line " + std::to_string(lineno);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "graph") {
      if (n != -1) throw parse_error(where + ": duplicate graph header");
      if (!(ls >> n >> m) || n < 0 || m < 0)
        throw parse_error(where + ": expected 'graph <n> <m>'");
      for (int v = 1; v <= n; ++v) g.add_vertex(v);
    } else if (tag == "e") {
      if (n == -1) throw parse_error(where + ": edge before graph header");
      int u = 0, v = 0;
      if (!(ls >> u >> v)) throw parse_error(where + ": expected 'e <u> <v>'");
      if (u < 1 || u > n || v < 1 || v > n)
        throw parse_error(where + ": vertex id out of range 1.." + std::to_string(n));
      if (u == v) throw parse_error(where + ": self-loop rejected");
      if (g.has_edge(u, v)) throw parse_error(where + ": duplicate edge");
      g.add_edge(u, v);
      ++seen_edges;
    } else {
      throw parse_error(where + ": unknown directive '" + tag + "'");
    }
    std::string junk;
    if (ls >> junk) throw parse_error(where + ": trailing tokens");
  }
  if (n == -1) throw parse_error("missing 'graph <n> <m>' header");
  if (seen_edges != m)
    throw parse_error("edge count mismatch: header says " + std::to_string(m) + ", found " +
                      std::to_string(seen_edges));
  return g;
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

// Writes the 1..n re-indexing-free format; requires ids to already be 1..n.
inline std::string write_graph(const Graph& g) {
  int n = g.max_vertex_id();
  if (static_cast<std::size_t>(n) != g.vertex_count())
    throw input_error("graph file format requires contiguous ids 1..n");
  std::ostringstream out;
  out << "graph " << n << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace invfo
