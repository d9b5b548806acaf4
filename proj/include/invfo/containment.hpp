#pragma once

// Exact (exhaustive, witness-producing) minor and topological-subgraph
// tests for small patterns, plus validators for the returned witnesses.
// Both searches are deliberately brute force: they are the ground truth the
// constructive parts of the library are checked against.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "invfo/errors.hpp"
#include "invfo/graph.hpp"

namespace invfo {

struct MinorModel {
  // pattern vertex -> branch set of host vertices
  std::map<int, std::set<int>> branch_sets;
};

struct TopEmbedding {
  // pattern vertex -> host branch vertex
  std::map<int, int> branch;
  // pattern edge (u < v) -> host path from branch[u] to branch[v],
  // endpoints included
  std::map<std::pair<int, int>, std::vector<int>> paths;
};

struct ContainmentOptions {
  // Exhaustive search is only attempted for patterns up to this many
  // vertices; raise deliberately to override the guard.
  int max_pattern_vertices = 6;
};

namespace detail {

// Bitmask view of a graph; host sizes beyond 63 are out of scope for the
// exhaustive searches.
struct MaskGraph {
  std::vector<int> ids;            // index -> vertex id (ascending)
  std::map<int, int> index;        // vertex id -> index
  std::vector<std::uint64_t> adj;  // index -> neighbor mask
  int n = 0;

  explicit MaskGraph(const Graph& g) {
    ids = g.vertices();
    n = static_cast<int>(ids.size());
    if (n > 63) throw capability_error("exhaustive search limited to 63 host vertices");
    for (int i = 0; i < n; ++i) index[ids[i]] = i;
    adj.assign(n, 0);
    for (int i = 0; i < n; ++i)
      for (int w : g.neighbors(ids[i])) adj[i] |= std::uint64_t{1} << index[w];
  }

  std::uint64_t full() const { return (std::uint64_t{1} << n) - 1; }
};

inline int popcount(std::uint64_t m) { return __builtin_popcountll(m); }

inline std::uint64_t neighbors_of_set(const MaskGraph& g, std::uint64_t s) {
  std::uint64_t nb = 0;
  for (std::uint64_t m = s; m;) {
    int v = __builtin_ctzll(m);
    m &= m - 1;
    nb |= g.adj[v];
  }
  return nb & ~s;
}

// Enumerates every nonempty connected subset S of `allowed` with
// |S| <= max_size, each exactly once; stops early when cb returns true.
// Classic include/exclude branching on extension candidates, rooted at the
// minimum element of the subset.
template <typename Cb>
bool for_each_connected_subset(const MaskGraph& g, std::uint64_t allowed, int max_size, Cb&& cb) {
  if (max_size <= 0) return false;
  std::uint64_t roots = allowed;
  while (roots) {
    int s = __builtin_ctzll(roots);
    roots &= roots - 1;
    // subsets whose minimum element is s; smaller vertices are excluded
    std::uint64_t scope = allowed & ~((std::uint64_t{1} << (s + 1)) - 1);
    std::uint64_t start = std::uint64_t{1} << s;
    if (cb(start)) return true;
    struct Frame {
      std::uint64_t sub, ext, forbidden;
    };
    std::vector<Frame> work;
    work.push_back({start, g.adj[s] & scope, 0});
    while (!work.empty()) {
      Frame f = work.back();
      work.pop_back();
      if (!f.ext || popcount(f.sub) >= max_size) continue;
      int v = __builtin_ctzll(f.ext);
      std::uint64_t vbit = std::uint64_t{1} << v;
      std::uint64_t rest = f.ext & ~vbit;
      // exclude v from this branch for good
      work.push_back({f.sub, rest, f.forbidden | vbit});
      // include v
      std::uint64_t sub2 = f.sub | vbit;
      std::uint64_t ext2 = (rest | (g.adj[v] & scope)) & ~sub2 & ~f.forbidden;
      if (cb(sub2)) return true;
      work.push_back({sub2, ext2, f.forbidden});
    }
  }
  return false;
}

inline std::set<int> mask_to_ids(const MaskGraph& g, std::uint64_t m) {
  std::set<int> out;
  while (m) {
    int v = __builtin_ctzll(m);
    m &= m - 1;
    out.insert(g.ids[v]);
  }
  return out;
}

}  // namespace detail

// --- minors ---------------------------------------------------------------

// Exhaustive branch-set search: returns a witness model iff h is a minor of
// g. Pattern size is guarded by opts.max_pattern_vertices.
inline std::optional<MinorModel> is_minor(const Graph& h, const Graph& g,
                                          const ContainmentOptions& opts = {}) {
  const int w = static_cast<int>(h.vertex_count());
  if (w > opts.max_pattern_vertices)
    throw capability_error("minor search guard: pattern has " + std::to_string(w) +
                           " vertices, guard is " + std::to_string(opts.max_pattern_vertices));
  if (w == 0) return MinorModel{};
  if (g.vertex_count() < h.vertex_count() || g.edge_count() < h.edge_count()) return std::nullopt;

  detail::MaskGraph mg(g);
  std::vector<int> pat = h.vertices();
  // place high-degree pattern vertices first
  std::sort(pat.begin(), pat.end(), [&](int a, int b) {
    if (h.degree(a) != h.degree(b)) return h.degree(a) > h.degree(b);
    return a < b;
  });

  std::vector<std::uint64_t> branch(w, 0);
  std::vector<std::uint64_t> branch_nb(w, 0);  // open neighborhood of each branch set

  std::function<bool(int, std::uint64_t)> place = [&](int i, std::uint64_t used) -> bool {
    if (i == w) return true;
    std::uint64_t free = mg.full() & ~used;
    int remaining = w - i;
    if (detail::popcount(free) < remaining) return false;
    int cap = detail::popcount(free) - (remaining - 1);
    return detail::for_each_connected_subset(mg, free, cap, [&](std::uint64_t s) -> bool {
      for (int j = 0; j < i; ++j)
        if (h.has_edge(pat[i], pat[j]) && !(branch_nb[j] & s)) return false;
      branch[i] = s;
      branch_nb[i] = detail::neighbors_of_set(mg, s);
      return place(i + 1, used | s);
    });
  };

  if (!place(0, 0)) return std::nullopt;
  MinorModel model;
  for (int i = 0; i < w; ++i) model.branch_sets[pat[i]] = detail::mask_to_ids(mg, branch[i]);
  return model;
}

inline bool validate_minor_model(const Graph& h, const Graph& g, const MinorModel& m,
                                 std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::set<int> used;
  for (int v : h.vertices()) {
    auto it = m.branch_sets.find(v);
    if (it == m.branch_sets.end() || it->second.empty())
      return fail("pattern vertex " + std::to_string(v) + " has no branch set");
    for (int x : it->second) {
      if (!g.has_vertex(x)) return fail("branch vertex " + std::to_string(x) + " not in host");
      if (!used.insert(x).second) return fail("branch sets overlap at " + std::to_string(x));
    }
    if (!is_connected(induced_subgraph(g, it->second)))
      return fail("branch set of " + std::to_string(v) + " is disconnected");
  }
  for (auto [u, v] : h.edges()) {
    bool hit = false;
    for (int a : m.branch_sets.at(u)) {
      for (int b : m.branch_sets.at(v))
        if (g.has_edge(a, b)) {
          hit = true;
          break;
        }
      if (hit) break;
    }
    if (!hit)
      return fail("no host edge between branch sets of " + std::to_string(u) + " and " +
                  std::to_string(v));
  }
  return true;
}

// --- topological subgraphs --------------------------------------------------

namespace detail {

struct TopSearch {
  const Graph& h;
  const Graph& g;
  MaskGraph mg;
  std::vector<int> pat;                     // pattern vertices in placement order
  std::vector<int> image;                   // placement: index into mg.ids
  std::uint64_t branch_mask = 0;
  std::vector<std::pair<int, int>> pedges;  // pattern edges as placement-order index pairs
  std::uint64_t inner_used = 0;
  std::map<std::pair<int, int>, std::vector<int>> paths;
  bool pattern_is_clique = false;

  TopSearch(const Graph& hh, const Graph& gg) : h(hh), g(gg), mg(gg) {}

  // pack internally-disjoint paths for pattern edges e, e+1, ...
  bool find_paths(std::size_t e) {
    if (e == pedges.size()) return true;
    auto [ia, ib] = pedges[e];
    int a = image[ia], b = image[ib];
    std::uint64_t allowed = mg.full() & ~branch_mask & ~inner_used;
    std::vector<int> path{a};
    std::uint64_t on_path = std::uint64_t{1} << a;
    std::function<bool(int)> dfs = [&](int cur) -> bool {
      if (mg.adj[cur] & (std::uint64_t{1} << b)) {
        std::uint64_t inner = on_path & ~(std::uint64_t{1} << a);
        inner_used |= inner;
        path.push_back(b);
        int pu = pat[ia], pv = pat[ib];
        auto key = std::minmax(pu, pv);
        std::vector<int> ids;
        ids.reserve(path.size());
        for (int idx : path) ids.push_back(mg.ids[idx]);
        if (pu > pv) std::reverse(ids.begin(), ids.end());
        paths[key] = ids;
        if (find_paths(e + 1)) return true;
        paths.erase(key);
        path.pop_back();
        inner_used &= ~inner;
      }
      std::uint64_t cand = mg.adj[cur] & allowed & ~on_path;
      while (cand) {
        int nxt = __builtin_ctzll(cand);
        cand &= cand - 1;
        path.push_back(nxt);
        on_path |= std::uint64_t{1} << nxt;
        if (dfs(nxt)) return true;
        on_path &= ~(std::uint64_t{1} << nxt);
        path.pop_back();
      }
      return false;
    };
    return dfs(a);
  }

  bool place(std::size_t i) {
    if (i == pat.size()) return find_paths(0);
    int need = h.degree(pat[i]);
    for (int cand = 0; cand < mg.n; ++cand) {
      std::uint64_t bit = std::uint64_t{1} << cand;
      if (branch_mask & bit) continue;
      if (popcount(mg.adj[cand]) < need) continue;
      // for complete patterns all branch vertices are interchangeable:
      // force ascending placement to kill the factorial symmetry
      if (pattern_is_clique && i > 0 && cand < image[i - 1]) continue;
      image[i] = cand;
      branch_mask |= bit;
      if (place(i + 1)) return true;
      branch_mask &= ~bit;
    }
    return false;
  }
};

}  // namespace detail

// Exhaustive subdivision search: returns a witness embedding iff some
// subdivision of h is a subgraph of g. Pattern size guarded as for minors.
inline std::optional<TopEmbedding> is_topological_subgraph(const Graph& h, const Graph& g,
                                                           const ContainmentOptions& opts = {}) {
  const int w = static_cast<int>(h.vertex_count());
  if (w > opts.max_pattern_vertices)
    throw capability_error("topological-subgraph guard: pattern has " + std::to_string(w) +
                           " vertices, guard is " + std::to_string(opts.max_pattern_vertices));
  if (w == 0) return TopEmbedding{};
  if (g.vertex_count() < h.vertex_count() || g.edge_count() < h.edge_count()) return std::nullopt;
  // the i-th largest pattern degree needs a host vertex of at least that degree
  {
    std::vector<int> hd, gd;
    for (int v : h.vertices()) hd.push_back(h.degree(v));
    for (int v : g.vertices()) gd.push_back(g.degree(v));
    std::sort(hd.rbegin(), hd.rend());
    std::sort(gd.rbegin(), gd.rend());
    for (std::size_t i = 0; i < hd.size(); ++i)
      if (gd[i] < hd[i]) return std::nullopt;
  }

  detail::TopSearch search(h, g);
  search.pat = h.vertices();
  std::sort(search.pat.begin(), search.pat.end(), [&](int a, int b) {
    if (h.degree(a) != h.degree(b)) return h.degree(a) > h.degree(b);
    return a < b;
  });
  search.image.assign(search.pat.size(), -1);
  search.pattern_is_clique = h.edge_count() == static_cast<std::size_t>(w) * (w - 1) / 2;
  std::map<int, std::size_t> order_of;
  for (std::size_t i = 0; i < search.pat.size(); ++i) order_of[search.pat[i]] = i;
  for (auto [u, v] : h.edges())
    search.pedges.emplace_back(static_cast<int>(order_of[u]), static_cast<int>(order_of[v]));
  std::sort(search.pedges.begin(), search.pedges.end());

  if (!search.place(0)) return std::nullopt;
  TopEmbedding emb;
  for (std::size_t i = 0; i < search.pat.size(); ++i)
    emb.branch[search.pat[i]] = search.mg.ids[search.image[i]];
  emb.paths = search.paths;
  return emb;
}

inline bool validate_top_embedding(const Graph& h, const Graph& g, const TopEmbedding& e,
                                   std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::set<int> branch_ids;
  for (int v : h.vertices()) {
    auto it = e.branch.find(v);
    if (it == e.branch.end()) return fail("missing branch vertex for " + std::to_string(v));
    if (!g.has_vertex(it->second)) return fail("branch vertex not in host");
    if (!branch_ids.insert(it->second).second) return fail("branch map is not injective");
  }
  std::set<int> inner_seen;
  for (auto [u, v] : h.edges()) {
    auto key = std::minmax(u, v);
    auto it = e.paths.find({key.first, key.second});
    if (it == e.paths.end())
      return fail("missing path for edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    const auto& p = it->second;
    if (p.size() < 2) return fail("path too short");
    if (p.front() != e.branch.at(key.first) || p.back() != e.branch.at(key.second))
      return fail("path endpoints disagree with branch map");
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (!g.has_edge(p[i], p[i + 1])) return fail("path uses a non-edge");
    std::set<int> on_path(p.begin(), p.end());
    if (on_path.size() != p.size()) return fail("path is not simple");
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
      if (branch_ids.count(p[i])) return fail("path interior touches a branch vertex");
      if (!inner_seen.insert(p[i]).second)
        return fail("paths share interior vertex " + std::to_string(p[i]));
    }
  }
  return true;
}

// Convenience: complete pattern on vertices 1..k.
inline Graph complete_graph(int k) {
  Graph g;
  for (int v = 1; v <= k; ++v) g.add_vertex(v);
  for (int u = 1; u <= k; ++u)
    for (int v = u + 1; v <= k; ++v) g.add_edge(u, v);
  return g;
}

}  // namespace invfo
