#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invfo/errors.hpp"
#include "invfo/graph.hpp"
#include "invfo/tree_decomposition.hpp"

namespace invfo {

// A closed walk: consecutive entries are edges, and for length >= 2 the last
// entry connects back to the first. A single-vertex walk has no steps.
struct Walk {
  std::vector<int> seq;

  std::size_t length() const { return seq.size(); }
  bool empty() const { return seq.empty(); }

  // Visit count per vertex.
  std::map<int, int> counts() const {
    std::map<int, int> c;
    for (int v : seq) ++c[v];
    return c;
  }

  int max_count() const {
    std::map<int, int> c = counts();
    int best = 0;
    for (const auto& [v, n] : c) {
      (void)v;
      best = std::max(best, n);
    }
    return best;
  }

  std::set<int> vertex_set() const { return {seq.begin(), seq.end()}; }

  bool operator==(const Walk& other) const { return seq == other.seq; }
};

// The steps of a closed walk: adjacent pairs plus the wrap-around step for
// walks of length >= 2.
inline std::vector<std::pair<int, int>> walk_steps(const Walk& w) {
  std::vector<std::pair<int, int>> steps;
  if (w.seq.size() < 2) return steps;
  for (std::size_t i = 0; i + 1 < w.seq.size(); ++i)
    steps.emplace_back(w.seq[i], w.seq[i + 1]);
  steps.emplace_back(w.seq.back(), w.seq.front());
  return steps;
}

// Evidence that a walk visits every vertex of a graph, each at most k times,
// moving only along edges.
struct KWalkCertificate {
  Walk walk;
  int k = 0;
  std::map<int, int> visit_counts;
};

// Outcome of checking a claimed k-walk: a certificate, or the first reason
// it fails.
struct WalkCheck {
  bool ok = false;
  std::string reason;
  KWalkCertificate cert;  // meaningful only when ok
};

// Check that w is a closed walk through g visiting every vertex of g at
// least once and at most k times, moving only along edges. Failures are
// reported, not thrown.
inline WalkCheck validate_kwalk(const Graph& g, const Walk& w, int k) {
  WalkCheck r;
  if (k < 1) {
    r.reason = "bound must be at least 1, got " + std::to_string(k);
    return r;
  }
  if (w.empty()) {
    if (g.vertex_count() == 0) {
      r.ok = true;
      r.cert = KWalkCertificate{w, k, {}};
      return r;
    }
    r.reason = "walk is empty but the graph has vertices";
    return r;
  }
  for (int v : w.seq) {
    if (!g.has_vertex(v)) {
      r.reason = "walk mentions vertex " + std::to_string(v) +
                 " which is not in the graph";
      return r;
    }
  }
  for (auto [a, b] : walk_steps(w)) {
    if (!g.has_edge(a, b)) {
      r.reason = "step " + std::to_string(a) + " -> " + std::to_string(b) +
                 " is not an edge";
      return r;
    }
  }
  auto counts = w.counts();
  for (int v : g.vertices()) {
    auto it = counts.find(v);
    if (it == counts.end()) {
      r.reason = "vertex " + std::to_string(v) + " is never visited";
      return r;
    }
    if (it->second > k) {
      r.reason = "vertex " + std::to_string(v) + " visited " +
                 std::to_string(it->second) + " times, bound is " +
                 std::to_string(k);
      return r;
    }
  }
  r.ok = true;
  r.cert = KWalkCertificate{w, k, std::move(counts)};
  return r;
}

// Closed walk visiting each vertex of `verts` exactly once, in ascending id
// order. Cycle edges missing from g are added (and logged when `added` is
// given). A single vertex yields a one-entry walk and no edges; two vertices
// need only the one connecting edge.
inline Walk bag_walk(Graph& g, const std::set<int>& verts,
                     std::vector<std::pair<int, int>>* added = nullptr) {
  if (verts.empty()) throw input_error("bag_walk: empty vertex set");
  for (int v : verts) {
    if (!g.has_vertex(v))
      throw input_error("bag_walk: unknown vertex " + std::to_string(v));
  }
  Walk w;
  w.seq.assign(verts.begin(), verts.end());
  if (w.seq.size() >= 2) {
    auto ensure = [&](int a, int b) {
      if (g.add_edge(a, b) && added)
        added->emplace_back(std::min(a, b), std::max(a, b));
    };
    for (std::size_t i = 0; i + 1 < w.seq.size(); ++i)
      ensure(w.seq[i], w.seq[i + 1]);
    if (w.seq.size() >= 3) ensure(w.seq.back(), w.seq.front());
  }
  return w;
}

namespace detail {

// Rotate a closed walk so it starts at `start` (first occurrence).
inline Walk rotate_walk(const Walk& w, int start) {
  auto it = std::find(w.seq.begin(), w.seq.end(), start);
  if (it == w.seq.end())
    throw input_error("rotate_walk: vertex " + std::to_string(start) +
                      " not on the walk");
  Walk out;
  out.seq.reserve(w.seq.size());
  out.seq.insert(out.seq.end(), it, w.seq.end());
  out.seq.insert(out.seq.end(), w.seq.begin(), it);
  return out;
}

}  // namespace detail

// Insert the closed walk `child` into `current` at the first occurrence of v,
// entering and leaving the child at u. The edge v-u is added to g when
// missing (and logged). After the splice the count of v rises by exactly one
// (zero when current is the single-vertex walk [v], which is absorbed rather
// than duplicated), the count of u rises by the child walk's count of u plus
// one extra for the re-entry (no extra when the child is a single vertex),
// and every other child vertex rises by its child count.
inline Walk splice_walk(const Walk& current, int v, const Walk& child, int u,
                        Graph& g,
                        std::vector<std::pair<int, int>>* added = nullptr) {
  if (child.empty()) throw input_error("splice_walk: empty child walk");
  auto vpos = std::find(current.seq.begin(), current.seq.end(), v);
  if (vpos == current.seq.end())
    throw input_error("splice_walk: vertex " + std::to_string(v) +
                      " not on the current walk");
  if (std::find(child.seq.begin(), child.seq.end(), u) == child.seq.end())
    throw input_error("splice_walk: vertex " + std::to_string(u) +
                      " not on the child walk");
  if (v == u)
    throw input_error("splice_walk: attachment and entry vertex coincide");
  if (g.add_edge(v, u) && added)
    added->emplace_back(std::min(v, u), std::max(v, u));

  Walk rot = detail::rotate_walk(child, u);
  // Detour taken from v: enter u, traverse the child cycle back to u, return
  // to v. A one-vertex child contributes just [u].
  std::vector<int> detour = rot.seq;
  if (rot.seq.size() >= 2) detour.push_back(u);

  if (current.seq.size() == 1) {
    // [v] -> [v, detour...]; the wrap-around step closes detour-end -> v, so
    // v is not repeated.
    Walk out;
    out.seq.push_back(v);
    out.seq.insert(out.seq.end(), detour.begin(), detour.end());
    return out;
  }
  Walk out;
  out.seq.reserve(current.seq.size() + detour.size() + 1);
  out.seq.insert(out.seq.end(), current.seq.begin(), vpos + 1);
  out.seq.insert(out.seq.end(), detour.begin(), detour.end());
  out.seq.push_back(v);
  out.seq.insert(out.seq.end(), vpos + 1, current.seq.end());
  return out;
}

// Result of merging sibling walks that share one separator set.
struct MergeResult {
  std::optional<Walk> merged;  // absent when no walk was eligible
  std::vector<std::pair<int, int>> added;  // junction edges actually new
  // Per eligible walk, in input order: the shared set extended by the two
  // endpoints of that walk's opening edge.
  std::vector<std::set<int>> augmented;
  std::vector<std::size_t> skipped;  // indices of single-vertex walks
};

// Merge sibling closed walks whose parent separator is the same set
// `shared`. Each eligible walk (length >= 2) is cut open at its first
// traversed edge (u_i, v_i) = (seq[0], seq[1]) and the pieces are chained:
// v_i connects to u_{i+1}, and v_m back to u_1, with those junction edges
// added to g where missing. Single-vertex walks carry no edge to cut and are
// left out, reported in `skipped`. Visit counts of merged vertices are
// unchanged.
inline MergeResult merge_duplicate_adhesions(const std::vector<Walk>& walks,
                                             const std::set<int>& shared,
                                             Graph& g) {
  if (walks.size() < 2)
    throw input_error("merge_duplicate_adhesions: need at least two walks");
  if (shared.empty())
    throw input_error("merge_duplicate_adhesions: empty shared separator");
  MergeResult r;
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < walks.size(); ++i) {
    if (walks[i].empty())
      throw input_error("merge_duplicate_adhesions: empty walk");
    if (walks[i].length() >= 2)
      eligible.push_back(i);
    else
      r.skipped.push_back(i);
  }
  if (eligible.empty()) return r;

  std::vector<int> us, vs;
  for (std::size_t i : eligible) {
    int u = walks[i].seq[0];
    int v = walks[i].seq[1];
    us.push_back(u);
    vs.push_back(v);
    std::set<int> aug = shared;
    aug.insert(u);
    aug.insert(v);
    r.augmented.push_back(std::move(aug));
  }
  if (eligible.size() == 1) {
    r.merged = walks[eligible[0]];
    return r;
  }
  auto ensure = [&](int a, int b) {
    if (g.add_edge(a, b)) r.added.emplace_back(std::min(a, b), std::max(a, b));
  };
  Walk merged;
  for (std::size_t j = 0; j < eligible.size(); ++j) {
    const auto& seq = walks[eligible[j]].seq;
    // Contribution from u_i to v_i without using the cut edge: walk the
    // cycle backwards, u, last, ..., second.
    merged.seq.push_back(seq[0]);
    for (std::size_t p = seq.size(); p-- > 1;) merged.seq.push_back(seq[p]);
    ensure(vs[j], us[(j + 1) % eligible.size()]);
  }
  r.merged = std::move(merged);
  return r;
}

// How children whose walks hang off a shared parent bag get attached: which
// vertex each child group is routed through, and the resulting bound on how
// many groups any one vertex serves.
struct AttachmentPlan {
  std::map<std::size_t, int> f;  // group index -> routing vertex
  int d = 0;                     // degree bound the selection worked under
  int m_bound = 0;               // max groups per vertex implied by d
  bool conforming = true;        // selection never exceeded d
  int observed_degree = 0;       // largest min-degree actually selected
};

namespace detail {

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

// Route each group (a set of at most c+2 mutually adjacent vertices of
// `base`) through one of its members, chosen by repeatedly taking a
// minimum-degree vertex of the subgraph of `base` induced on the union of
// unrouted groups and routing every group containing it. `d` bounds the
// selected degrees: c for bags with few high-degree vertices, the observed
// degeneracy otherwise. Since distinct groups through v are distinct subsets
// of v's neighbourhood of size <= c+1, no vertex serves more than
// sum_{j=0}^{c+1} C(d, j) groups; a selection that exceeds d is still
// completed under the observed degree but flagged non-conforming.
inline AttachmentPlan select_attachments(
    const std::vector<std::set<int>>& groups, const Graph& base, int c,
    BagTag tag) {
  if (groups.empty()) throw input_error("select_attachments: no groups");
  if (c < 1) throw input_error("select_attachments: c must be positive");
  std::set<std::set<int>> distinct(groups.begin(), groups.end());
  if (distinct.size() != groups.size())
    throw input_error("select_attachments: duplicate groups");
  for (const auto& s : groups) {
    if (s.empty()) throw input_error("select_attachments: empty group");
    if (static_cast<int>(s.size()) > c + 2)
      throw input_error("select_attachments: group of size " +
                        std::to_string(s.size()) + " exceeds limit " +
                        std::to_string(c + 2));
    for (int v : s) {
      if (!base.has_vertex(v))
        throw input_error("select_attachments: unknown vertex " +
                          std::to_string(v));
      for (int w : s) {
        if (v < w && !base.has_edge(v, w))
          throw input_error("select_attachments: group {" + std::to_string(v) +
                            "," + std::to_string(w) +
                            ",...} is not mutually adjacent");
      }
    }
  }

  AttachmentPlan plan;
  std::set<int> all;
  for (const auto& s : groups) all.insert(s.begin(), s.end());
  if (tag == BagTag::NearBoundedDegree) {
    plan.d = c;
  } else {
    plan.d = degeneracy_order(induced_subgraph(base, all)).degeneracy;
  }

  std::set<std::size_t> remaining;
  for (std::size_t i = 0; i < groups.size(); ++i) remaining.insert(i);
  while (!remaining.empty()) {
    std::set<int> uni;
    for (std::size_t i : remaining)
      uni.insert(groups[i].begin(), groups[i].end());
    Graph sub = induced_subgraph(base, uni);
    int best = -1, best_deg = 0;
    for (int v : sub.vertices()) {
      int deg = sub.degree(v);
      if (best == -1 || deg < best_deg) {
        best = v;
        best_deg = deg;
      }
    }
    plan.observed_degree = std::max(plan.observed_degree, best_deg);
    std::vector<std::size_t> routed;
    for (std::size_t i : remaining) {
      if (groups[i].count(best)) routed.push_back(i);
    }
    if (routed.empty())
      throw invariant_violation(
          "select_attachments: chosen vertex lies in no remaining group");
    for (std::size_t i : routed) {
      plan.f[i] = best;
      remaining.erase(i);
    }
  }

  plan.conforming = plan.observed_degree <= plan.d;
  int d_eff = std::max(plan.d, plan.observed_degree);
  long long m = 0;
  for (int j = 0; j <= c + 1; ++j) m += detail::binomial(d_eff, j);
  plan.m_bound = static_cast<int>(std::min<long long>(m, 1 << 30));

  // Per-vertex load must respect the bound just computed.
  std::map<int, int> fcount;
  for (const auto& [i, v] : plan.f) {
    (void)i;
    if (++fcount[v] > plan.m_bound)
      throw invariant_violation("select_attachments: vertex " +
                                std::to_string(v) +
                                " routed more groups than its bound allows");
  }
  return plan;
}

// One attachment performed during connect_walks, for auditing.
struct SpliceEvent {
  int parent_node = 0;  // tree node whose children were being attached
  int child_node = 0;   // representative child (lowest id within its group)
  int v = 0;            // vertex on the existing walk the child enters from
  int u = 0;            // entry vertex inside the child walk
  bool via_plan = false;  // true: routed by an attachment plan; false: a
                          // disconnected piece chained at the root
};

// Full outcome of building one closed walk through a supergraph of the host.
struct ConnectResult {
  Graph gprime;           // host plus every edge the construction added
  Walk walk;              // closed walk covering all vertices
  KWalkCertificate cert;  // validated at bound()
  // Largest number of times any single vertex is used as content by the
  // constituent walks (bag walks and composite walks formed for sibling
  // groups) -- 1 when every vertex is enumerated once, higher after merging,
  // and excluding the per-splice duplicates accounted for by bound().
  int k_tracked = 0;
  int m_max = 0;           // largest per-vertex routing bound across plans
  int realized_max = 0;    // max visit count actually reached
  bool conforming = true;  // every attachment plan stayed within its d
  std::vector<std::pair<int, int>> edge_log;  // edges added, in order
  std::vector<SpliceEvent> splices;
  std::vector<AttachmentPlan> plans;  // one per parent node with groups

  int bound() const { return k_tracked + m_max + 1; }
};

namespace detail {

// Entry vertex for walking into `interior` from v: the lowest-id neighbour
// of v inside the set, or the lowest-id member with a fresh edge v-u.
inline int choose_entry(Graph& g, int v, const std::set<int>& interior,
                        std::vector<std::pair<int, int>>* added) {
  for (int u : interior) {
    if (g.has_edge(v, u)) return u;
  }
  int u = *interior.begin();
  if (g.add_edge(v, u) && added)
    added->emplace_back(std::min(v, u), std::max(v, u));
  return u;
}

}  // namespace detail

// Build one closed walk covering every vertex of the (torso-explicit) host,
// walking each bag's fresh vertices in turn and splicing child walks into
// the walk of their parent. Children of one node with the same separator are
// threaded into a single composite walk and attached by one splice, through
// a vertex chosen by select_attachments; disconnected pieces are chained at
// the root. The visit count of each vertex decomposes into walk content
// (bounded by k_tracked), at most m_max routing duplicates, and at most one
// entry-or-chain duplicate, so the returned certificate at
// k_tracked + m_max + 1 always holds; every step of that accounting is
// re-checked at run time.
inline ConnectResult connect_walks(const RootedDecomposition& rd,
                                   const BagClassification& cls, int c) {
  if (rd.base.host.vertex_count() == 0)
    throw input_error("connect_walks: empty host graph");
  if (!cls.all_classified())
    throw input_error("connect_walks: decomposition has unclassified bags");

  ConnectResult res;
  const Graph base = rd.base.host;  // degrees for routing come from here
  res.gprime = rd.base.host;
  Graph& gp = res.gprime;

  // Ledgers. `load` counts walk content per vertex; the three hit maps count
  // actual splice duplicates by kind.
  std::map<int, int> load;
  std::map<int, int> plan_hits;
  std::map<int, int> entry_hits;
  std::map<int, int> chain_hits;

  auto absorb = [&](const Walk& w) {
    for (const auto& [x, n] : w.counts()) load[x] += n;
  };

  // Splice with a count audit: each vertex's count must rise by exactly its
  // count in the child walk, plus one for the attachment vertex and one for
  // the entry vertex (degenerate cases add nothing extra).
  auto audited_splice = [&](Walk& current, int v, const Walk& child, int u,
                            bool via_plan) {
    auto before = current.counts();
    bool lone_target = current.seq.size() == 1;
    bool lone_child = child.seq.size() == 1;
    Walk next = splice_walk(current, v, child, u, gp, &res.edge_log);
    auto after = next.counts();
    auto cc = child.counts();
    for (const auto& [x, n] : after) {
      int expect = (before.count(x) ? before.at(x) : 0) +
                   (cc.count(x) ? cc.at(x) : 0) +
                   (x == v && !lone_target ? 1 : 0) +
                   (x == u && !lone_child ? 1 : 0);
      if (n != expect)
        throw invariant_violation(
            "connect_walks: splice changed the count of vertex " +
            std::to_string(x) + " to " + std::to_string(n) + ", expected " +
            std::to_string(expect));
    }
    absorb(child);
    if (!lone_target) {
      if (via_plan)
        ++plan_hits[v];
      else
        ++chain_hits[v];
    }
    if (!lone_child) ++entry_hits[u];
    current = std::move(next);
  };

  Walk walk;  // the walk under construction
  if (!rd.bag(rd.root).empty()) {
    walk = bag_walk(gp, rd.bag(rd.root), &res.edge_log);
    absorb(walk);
  }

  // For chaining disconnected pieces at the root: the previous piece's walk
  // and the vertex it was entered through (-1 when it was never spliced).
  std::optional<std::pair<Walk, int>> prev_piece;

  for (int t : rd.bfs_order()) {
    auto kit = rd.children.find(t);
    if (kit == rd.children.end() || kit->second.empty()) continue;

    // Group attachable children by their separator from t.
    std::map<std::set<int>, std::vector<int>> sep_groups;
    std::vector<int> component_roots;  // empty separator: new component
    for (int s : kit->second) {
      if (rd.interior(s).empty()) continue;  // nothing new to walk
      std::set<int> sep = rd.alpha.at(s);
      if (sep.empty()) {
        if (t != rd.root)
          throw invariant_violation(
              "connect_walks: empty separator below a non-root node");
        component_roots.push_back(s);
      } else {
        sep_groups[sep].push_back(s);
      }
    }

    if (!sep_groups.empty()) {
      std::vector<std::set<int>> cliques;
      for (const auto& [sep, members] : sep_groups) {
        (void)members;
        cliques.push_back(sep);
      }
      AttachmentPlan plan =
          select_attachments(cliques, base, c, cls.tags.at(t));
      res.m_max = std::max(res.m_max, plan.m_bound);
      res.conforming = res.conforming && plan.conforming;
      res.plans.push_back(plan);

      std::size_t gi = 0;
      for (const auto& [sep, members] : sep_groups) {
        (void)sep;
        int v = plan.f.at(gi);
        ++gi;

        Walk composite;
        int entry = 0;
        if (members.size() == 1) {
          composite = bag_walk(gp, rd.interior(members[0]), &res.edge_log);
          entry = detail::choose_entry(gp, v, rd.interior(members[0]),
                                       &res.edge_log);
        } else {
          // Thread the member walks into one closed walk that returns to v
          // between consecutive members, so a single splice attaches all.
          std::vector<int> entries;
          for (int s : members) {
            const std::set<int>& inner = rd.interior(s);
            Walk piece = bag_walk(gp, inner, &res.edge_log);
            int e = detail::choose_entry(gp, v, inner, &res.edge_log);
            Walk rot = detail::rotate_walk(piece, e);
            if (!gp.has_edge(rot.seq.back(), v)) {
              // Close the block back at its entry so the step to v that
              // follows stays on edges.
              rot.seq.push_back(e);
            }
            entries.push_back(e);
            composite.seq.insert(composite.seq.end(), rot.seq.begin(),
                                 rot.seq.end());
            composite.seq.push_back(v);
          }
          entry = entries.front();
        }

        if (walk.empty())
          throw invariant_violation(
              "connect_walks: separator group with no walk to attach to");
        audited_splice(walk, v, composite, entry, true);
        res.splices.push_back(SpliceEvent{t, members.front(), v, entry, true});
      }
    }

    // Chain the remaining components one after another: each new piece is
    // spliced into the previous piece at that piece's lowest-id vertex,
    // avoiding the vertex the previous piece was entered through (its count
    // already carries the entry duplicate).
    for (int s : component_roots) {
      const std::set<int>& inner = rd.interior(s);
      Walk piece = bag_walk(gp, inner, &res.edge_log);
      if (walk.empty()) {
        walk = piece;
        absorb(piece);
        prev_piece = {piece, -1};
        continue;
      }
      int v = -1;
      if (prev_piece) {
        const Walk& pw = prev_piece->first;
        int avoid = prev_piece->second;
        for (int x : pw.vertex_set()) {
          if (x != avoid) {
            v = x;
            break;
          }
        }
        if (v == -1) v = avoid;  // single-vertex piece: its entry carried no
                                 // duplicate, so targeting it is safe
      } else {
        // First piece chained onto the main walk: target the lowest vertex
        // still free of entry/chain duplicates (entry vertices of earlier
        // splices have spent their allowance; root-bag vertices never have).
        for (int x : walk.vertex_set()) {
          int he = entry_hits.count(x) ? entry_hits.at(x) : 0;
          int hc = chain_hits.count(x) ? chain_hits.at(x) : 0;
          if (he + hc == 0) {
            v = x;
            break;
          }
        }
        if (v == -1) v = *walk.vertex_set().begin();
      }
      int entry = detail::choose_entry(gp, v, inner, &res.edge_log);
      audited_splice(walk, v, piece, entry, false);
      res.splices.push_back(SpliceEvent{t, s, v, entry, false});
      prev_piece = {piece, entry};
    }
  }

  // Global audits: coverage, the per-vertex count decomposition, and the
  // bounds each duplicate kind must respect.
  if (walk.vertex_set() != gp.vertex_set())
    throw invariant_violation("connect_walks: walk does not cover the host");
  for (const auto& [x, n] : load) res.k_tracked = std::max(res.k_tracked, n);
  if (res.k_tracked < 1)
    throw invariant_violation("connect_walks: no walk content was produced");
  auto final_counts = walk.counts();
  for (const auto& [x, n] : final_counts) {
    int lp = plan_hits.count(x) ? plan_hits.at(x) : 0;
    int le = entry_hits.count(x) ? entry_hits.at(x) : 0;
    int lc = chain_hits.count(x) ? chain_hits.at(x) : 0;
    int lw = load.count(x) ? load.at(x) : 0;
    if (n != lw + lp + le + lc)
      throw invariant_violation(
          "connect_walks: count of vertex " + std::to_string(x) +
          " does not decompose into content plus duplicates");
    if (lp > res.m_max)
      throw invariant_violation(
          "connect_walks: vertex " + std::to_string(x) +
          " received more routing duplicates than the bound allows");
    if (le + lc > 1)
      throw invariant_violation(
          "connect_walks: vertex " + std::to_string(x) +
          " received more than one entry or chain duplicate");
  }

  res.walk = std::move(walk);
  res.realized_max = res.walk.max_count();
  WalkCheck check = validate_kwalk(gp, res.walk, res.bound());
  if (!check.ok)
    throw invariant_violation("connect_walks: final walk fails its bound: " +
                              check.reason);
  res.cert = std::move(check.cert);
  return res;
}

// --- walk file format -------------------------------------------------------
//
//   walk <k> <len>
//   <id> ...   (len vertex ids, whitespace-separated, any line split)
//
// '#' starts a comment; blank lines are skipped.

inline void write_walk(std::ostream& os, const Walk& w, int k) {
  os << "walk " << k << " " << w.seq.size() << "\n";
  for (std::size_t i = 0; i < w.seq.size(); ++i)
    os << w.seq[i] << (i + 1 == w.seq.size() ? "\n" : " ");
}

struct ParsedWalk {
  Walk walk;
  int k = 0;
};

inline ParsedWalk parse_walk(std::istream& is) {
  ParsedWalk out;
  bool have_header = false;
  std::size_t expect = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (!have_header) {
      if (first != "walk")
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected walk header");
      long long k = 0, len = -1;
      if (!(ls >> k >> len) || k < 1 || len < 0)
        throw parse_error("line " + std::to_string(lineno) +
                          ": malformed walk header");
      std::string junk;
      if (ls >> junk)
        throw parse_error("line " + std::to_string(lineno) +
                          ": trailing tokens after walk header");
      out.k = static_cast<int>(k);
      expect = static_cast<std::size_t>(len);
      have_header = true;
      continue;
    }
    std::string tok = first;
    do {
      std::size_t pos = 0;
      int v;
      try {
        v = std::stoi(tok, &pos);
      } catch (const std::exception&) {
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected a vertex id, got '" + tok + "'");
      }
      if (pos != tok.size() || v < 1)
        throw parse_error("line " + std::to_string(lineno) +
                          ": bad vertex id '" + tok + "'");
      if (out.walk.seq.size() == expect)
        throw parse_error("line " + std::to_string(lineno) +
                          ": more entries than the header announced");
      out.walk.seq.push_back(v);
    } while (ls >> tok);
  }
  if (!have_header) throw parse_error("missing walk header");
  if (out.walk.seq.size() != expect)
    throw parse_error("walk has " + std::to_string(out.walk.seq.size()) +
                      " entries, header announced " + std::to_string(expect));
  return out;
}

inline ParsedWalk parse_walk(const std::string& text) {
  std::istringstream is(text);
  return parse_walk(is);
}

// Edge additions, one per line: "+ <u> <v>".
inline void write_edge_log(std::ostream& os,
                           const std::vector<std::pair<int, int>>& edges) {
  for (auto [u, v] : edges) os << "+ " << u << " " << v << "\n";
}

}  // namespace invfo
