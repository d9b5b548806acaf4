#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "invfo/kwalk.hpp"
#include "invfo/tree_decomposition.hpp"
#include "testutil.hpp"

using namespace invfo;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

namespace {

Walk mk(std::vector<int> seq) {
  Walk w;
  w.seq = std::move(seq);
  return w;
}

}  // namespace

TEST_CASE("walk bookkeeping") {
  Walk w = mk({1, 2, 3, 4, 5, 4, 3});
  CHECK(w.length() == 7);
  CHECK(w.counts() == std::map<int, int>{{1, 1}, {2, 1}, {3, 2}, {4, 2}, {5, 1}});
  CHECK(w.max_count() == 2);
  CHECK(w.vertex_set() == std::set<int>{1, 2, 3, 4, 5});
  CHECK(walk_steps(mk({1, 2, 3})) ==
        std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {3, 1}});
  CHECK(walk_steps(mk({7})).empty());
  CHECK(walk_steps(mk({})).empty());
}

TEST_CASE("k-walk validation") {
  SECTION("a triangle tour is a 1-walk") {
    WalkCheck r = validate_kwalk(testutil::cycle_graph(3), mk({1, 2, 3}), 1);
    REQUIRE(r.ok);
    CHECK(r.cert.k == 1);
    CHECK(r.cert.visit_counts == std::map<int, int>{{1, 1}, {2, 1}, {3, 1}});
  }
  SECTION("a star tour needs three visits of the centre") {
    Graph star = testutil::star_graph(3);  // centre 1, leaves 2..4
    Walk w = mk({1, 2, 1, 3, 1, 4});
    CHECK(validate_kwalk(star, w, 3).ok);
    WalkCheck r = validate_kwalk(star, w, 2);
    CHECK_FALSE(r.ok);
    CHECK_THAT(r.reason, ContainsSubstring("visited 3 times"));
  }
  SECTION("failure reasons") {
    Graph p3 = testutil::path_graph(3);
    CHECK_THAT(validate_kwalk(p3, mk({1, 3}), 2).reason,
               ContainsSubstring("not an edge"));
    CHECK_THAT(validate_kwalk(testutil::cycle_graph(3), mk({1, 2}), 2).reason,
               ContainsSubstring("never visited"));
    CHECK_THAT(validate_kwalk(p3, mk({1, 9}), 2).reason,
               ContainsSubstring("not in the graph"));
    CHECK_THAT(validate_kwalk(p3, mk({}), 2).reason,
               ContainsSubstring("empty"));
    CHECK_THAT(validate_kwalk(p3, mk({1, 2}), 0).reason,
               ContainsSubstring("at least 1"));
  }
  SECTION("degenerate graphs") {
    CHECK(validate_kwalk(Graph(), mk({}), 1).ok);
    Graph one;
    one.add_vertex(7);
    CHECK(validate_kwalk(one, mk({7}), 1).ok);
  }
}

TEST_CASE("bag walks enumerate a vertex set in ascending order") {
  SECTION("existing edges are reused") {
    Graph g = testutil::path_graph(5);
    std::vector<std::pair<int, int>> added;
    Walk w = bag_walk(g, {4, 5}, &added);
    CHECK(w == mk({4, 5}));
    CHECK(added.empty());
  }
  SECTION("missing cycle edges are added and logged") {
    Graph g;
    for (int v : {1, 2, 3}) g.add_vertex(v);
    std::vector<std::pair<int, int>> added;
    Walk w = bag_walk(g, {1, 2, 3}, &added);
    CHECK(w == mk({1, 2, 3}));
    CHECK(added == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 3}});
    CHECK(g.has_edge(1, 3));
  }
  SECTION("two vertices need only the connecting edge") {
    Graph g;
    g.add_vertex(4);
    g.add_vertex(5);
    std::vector<std::pair<int, int>> added;
    Walk w = bag_walk(g, {4, 5}, &added);
    CHECK(w == mk({4, 5}));
    CHECK(added == std::vector<std::pair<int, int>>{{4, 5}});
  }
  SECTION("a single vertex is a one-entry walk") {
    Graph g;
    g.add_vertex(7);
    Walk w = bag_walk(g, {7});
    CHECK(w == mk({7}));
  }
  SECTION("bad inputs") {
    Graph g = testutil::path_graph(2);
    CHECK_THROWS_MATCHES(bag_walk(g, {}), input_error,
                         MessageMatches(ContainsSubstring("empty vertex set")));
    CHECK_THROWS_MATCHES(bag_walk(g, {1, 9}), input_error,
                         MessageMatches(ContainsSubstring("unknown vertex 9")));
  }
}

TEST_CASE("splicing a child walk into a parent walk") {
  SECTION("detour enters and leaves through the same vertex") {
    Graph g = testutil::path_graph(5);
    g.add_edge(4, 5);  // no-op, already there
    std::vector<std::pair<int, int>> added;
    Walk out = splice_walk(mk({1, 2, 3}), 3, mk({4, 5}), 4, g, &added);
    CHECK(out == mk({1, 2, 3, 4, 5, 4, 3}));
    CHECK(added.empty());  // 3-4 was a path edge
    auto c = out.counts();
    CHECK(c.at(3) == 2);
    CHECK(c.at(4) == 2);
    CHECK(c.at(1) == 1);
  }
  SECTION("the attachment edge is added when missing") {
    Graph g;
    for (int v : {1, 2, 3, 4, 5}) g.add_vertex(v);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(1, 3);
    g.add_edge(4, 5);
    std::vector<std::pair<int, int>> added;
    Walk out = splice_walk(mk({1, 2, 3}), 3, mk({4, 5}), 4, g, &added);
    CHECK(out == mk({1, 2, 3, 4, 5, 4, 3}));
    CHECK(added == std::vector<std::pair<int, int>>{{3, 4}});
    CHECK(g.has_edge(3, 4));
  }
  SECTION("splicing into a one-vertex walk absorbs it") {
    Graph g;
    for (int v : {4, 5, 7}) g.add_vertex(v);
    g.add_edge(4, 5);
    std::vector<std::pair<int, int>> added;
    Walk out = splice_walk(mk({7}), 7, mk({4, 5}), 4, g, &added);
    CHECK(out == mk({7, 4, 5, 4}));
    CHECK(out.counts().at(7) == 1);
    CHECK(added == std::vector<std::pair<int, int>>{{4, 7}});
  }
  SECTION("a one-vertex child contributes a single detour stop") {
    Graph g = testutil::path_graph(4);
    Walk out = splice_walk(mk({1, 2, 3}), 3, mk({4}), 4, g);
    CHECK(out == mk({1, 2, 3, 4, 3}));
  }
  SECTION("the child is entered at its first occurrence of u") {
    Graph g = testutil::cycle_graph(5);
    g.add_edge(1, 3);
    Walk out = splice_walk(mk({1, 2}), 1, mk({3, 4, 5}), 4, g);
    // child rotated to start at 4: [4,5,3], detour [4,5,3,4]
    CHECK(out == mk({1, 4, 5, 3, 4, 1, 2}));
    CHECK(g.has_edge(1, 4));
  }
  SECTION("bad inputs") {
    Graph g = testutil::path_graph(3);
    CHECK_THROWS_MATCHES(splice_walk(mk({1, 2}), 1, mk({}), 1, g), input_error,
                         MessageMatches(ContainsSubstring("empty child")));
    CHECK_THROWS_MATCHES(splice_walk(mk({1, 2}), 9, mk({3}), 3, g), input_error,
                         MessageMatches(ContainsSubstring("not on the current walk")));
    CHECK_THROWS_MATCHES(splice_walk(mk({1, 2}), 1, mk({3}), 9, g), input_error,
                         MessageMatches(ContainsSubstring("not on the child walk")));
    CHECK_THROWS_MATCHES(splice_walk(mk({1, 2}), 1, mk({1, 3}), 1, g), input_error,
                         MessageMatches(ContainsSubstring("coincide")));
  }
}

TEST_CASE("merging sibling walks over one separator") {
  SECTION("two cycles chain into one, counts preserved") {
    Graph g;
    for (int v : {4, 5, 6, 7}) g.add_vertex(v);
    g.add_edge(4, 5);
    g.add_edge(6, 7);
    MergeResult r = merge_duplicate_adhesions({mk({4, 5}), mk({6, 7})}, {1}, g);
    REQUIRE(r.merged.has_value());
    CHECK(*r.merged == mk({4, 5, 6, 7}));
    CHECK(r.added == std::vector<std::pair<int, int>>{{5, 6}, {4, 7}});
    CHECK(r.skipped.empty());
    CHECK(r.augmented ==
          std::vector<std::set<int>>{{1, 4, 5}, {1, 6, 7}});
    CHECK(r.merged->counts() == std::map<int, int>{{4, 1}, {5, 1}, {6, 1}, {7, 1}});
  }
  SECTION("longer walks are traversed backwards past the cut edge") {
    Graph g = testutil::cycle_graph(3);
    for (int v : {4, 5}) g.add_vertex(v);
    g.add_edge(4, 5);
    MergeResult r = merge_duplicate_adhesions({mk({1, 2, 3}), mk({4, 5})}, {9}, g);
    REQUIRE(r.merged.has_value());
    CHECK(*r.merged == mk({1, 3, 2, 4, 5}));
    CHECK(r.added == std::vector<std::pair<int, int>>{{2, 4}, {1, 5}});
  }
  SECTION("single-vertex walks are skipped") {
    Graph g;
    for (int v : {4, 5, 9}) g.add_vertex(v);
    g.add_edge(4, 5);
    MergeResult r = merge_duplicate_adhesions({mk({4, 5}), mk({9})}, {1}, g);
    REQUIRE(r.merged.has_value());
    CHECK(*r.merged == mk({4, 5}));
    CHECK(r.skipped == std::vector<std::size_t>{1});
    CHECK(r.added.empty());

    MergeResult all = merge_duplicate_adhesions({mk({8}), mk({9})}, {1}, g);
    CHECK_FALSE(all.merged.has_value());
    CHECK(all.skipped == std::vector<std::size_t>{0, 1});
  }
  SECTION("bad inputs") {
    Graph g;
    CHECK_THROWS_MATCHES(merge_duplicate_adhesions({mk({1, 2})}, {1}, g), input_error,
                         MessageMatches(ContainsSubstring("at least two")));
    CHECK_THROWS_MATCHES(merge_duplicate_adhesions({mk({1, 2}), mk({3})}, {}, g),
                         input_error,
                         MessageMatches(ContainsSubstring("empty shared separator")));
    CHECK_THROWS_MATCHES(merge_duplicate_adhesions({mk({1, 2}), mk({})}, {1}, g),
                         input_error, MessageMatches(ContainsSubstring("empty walk")));
  }
}

TEST_CASE("attachment selection routes groups through low-degree vertices") {
  SECTION("triangle of pairwise groups") {
    Graph tri = testutil::cycle_graph(3);
    AttachmentPlan plan = select_attachments({{1, 2}, {2, 3}, {1, 3}}, tri, 1,
                                             BagTag::MinorFree);
    CHECK(plan.d == 2);  // triangle degeneracy
    CHECK(plan.m_bound == 4);  // C(2,0)+C(2,1)+C(2,2)
    CHECK(plan.conforming);
    CHECK(plan.observed_degree == 2);
    CHECK(plan.f.at(0) == 1);
    CHECK(plan.f.at(1) == 2);
    CHECK(plan.f.at(2) == 1);
  }
  SECTION("a single one-vertex group routes through that vertex") {
    Graph tri = testutil::cycle_graph(3);
    AttachmentPlan plan = select_attachments({{3}}, tri, 1, BagTag::NearBoundedDegree);
    CHECK(plan.f.at(0) == 3);
    CHECK(plan.d == 1);
    CHECK(plan.observed_degree == 0);
    CHECK(plan.conforming);
  }
  SECTION("near-bounded-degree bags use d = c even when degrees exceed it") {
    Graph tri = testutil::cycle_graph(3);
    AttachmentPlan plan = select_attachments({{1, 2}, {2, 3}, {1, 3}}, tri, 1,
                                             BagTag::NearBoundedDegree);
    CHECK(plan.d == 1);
    CHECK(plan.observed_degree == 2);
    CHECK_FALSE(plan.conforming);
    CHECK(plan.m_bound == 4);  // recomputed with the observed degree
  }
  SECTION("bad inputs") {
    Graph p3 = testutil::path_graph(3);
    CHECK_THROWS_MATCHES(select_attachments({}, p3, 1, BagTag::NearBoundedDegree),
                         input_error, MessageMatches(ContainsSubstring("no groups")));
    CHECK_THROWS_MATCHES(select_attachments({{1}}, p3, 0, BagTag::NearBoundedDegree),
                         input_error, MessageMatches(ContainsSubstring("positive")));
    CHECK_THROWS_MATCHES(
        select_attachments({{1}, {1}}, p3, 1, BagTag::NearBoundedDegree), input_error,
        MessageMatches(ContainsSubstring("duplicate groups")));
    CHECK_THROWS_MATCHES(
        select_attachments({std::set<int>{}}, p3, 1, BagTag::NearBoundedDegree),
        input_error, MessageMatches(ContainsSubstring("empty group")));
    Graph k4 = complete_graph(4);
    CHECK_THROWS_MATCHES(
        select_attachments({{1, 2, 3, 4}}, k4, 1, BagTag::NearBoundedDegree),
        input_error, MessageMatches(ContainsSubstring("exceeds limit 3")));
    CHECK_THROWS_MATCHES(
        select_attachments({{9}}, p3, 1, BagTag::NearBoundedDegree), input_error,
        MessageMatches(ContainsSubstring("unknown vertex")));
    CHECK_THROWS_MATCHES(
        select_attachments({{1, 3}}, p3, 1, BagTag::NearBoundedDegree), input_error,
        MessageMatches(ContainsSubstring("not mutually adjacent")));
  }
}

TEST_CASE("connecting bag walks across a decomposition") {
  SECTION("two triangles sharing a cut vertex") {
    Graph host;
    host.add_edge(1, 2);
    host.add_edge(2, 3);
    host.add_edge(1, 3);
    host.add_edge(3, 4);
    host.add_edge(4, 5);
    host.add_edge(3, 5);
    TreeDecomposition td;
    td.host = host;
    td.bags[1] = {1, 2, 3};
    td.bags[2] = {3, 4, 5};
    td.tree.add_vertex(1);
    td.tree.add_vertex(2);
    td.tree.add_edge(1, 2);
    RootedDecomposition rd = root_decomposition(td, 1);
    BagClassification cls = classify_bags(rd, 2);
    REQUIRE(cls.all_classified());

    ConnectResult res = connect_walks(rd, cls, 2);
    CHECK(res.walk == mk({1, 2, 3, 4, 5, 4, 3}));
    CHECK(res.edge_log.empty());
    CHECK(res.gprime.edge_count() == host.edge_count());
    CHECK(res.k_tracked == 1);
    CHECK(res.m_max == 4);
    CHECK(res.realized_max == 2);
    CHECK(res.bound() == 6);
    CHECK(res.conforming);
    REQUIRE(res.splices.size() == 1);
    CHECK(res.splices[0].parent_node == 1);
    CHECK(res.splices[0].child_node == 2);
    CHECK(res.splices[0].v == 3);
    CHECK(res.splices[0].u == 4);
    CHECK(res.splices[0].via_plan);
    CHECK(validate_kwalk(res.gprime, res.walk, res.bound()).ok);
  }
  SECTION("a single bag walks its cycle once") {
    TreeDecomposition td = heuristic_decompose(testutil::cycle_graph(4),
                                               DecomposeMethod::SingleBag);
    RootedDecomposition rd = root_decomposition(td, 1);
    BagClassification cls = classify_bags(rd, 2);
    ConnectResult res = connect_walks(rd, cls, 2);
    CHECK(res.walk == mk({1, 2, 3, 4}));
    CHECK(res.realized_max == 1);
    CHECK(res.edge_log.empty());
    CHECK(res.splices.empty());
    CHECK(res.m_max == 0);
    CHECK(res.bound() == 2);
  }
  SECTION("an edgeless bag is closed into a cycle") {
    Graph g;
    for (int v : {1, 2, 3}) g.add_vertex(v);
    TreeDecomposition td = heuristic_decompose(g, DecomposeMethod::SingleBag);
    RootedDecomposition rd = root_decomposition(td, 1);
    BagClassification cls = classify_bags(rd, 1);
    ConnectResult res = connect_walks(rd, cls, 1);
    CHECK(res.walk == mk({1, 2, 3}));
    CHECK(res.edge_log ==
          std::vector<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 3}});
    CHECK(res.gprime.edge_count() == 3);
  }
  SECTION("disconnected pieces are chained at the root") {
    Graph host;
    host.add_edge(1, 2);
    host.add_edge(3, 4);
    TreeDecomposition td;
    td.host = host;
    td.bags[1] = {1, 2};
    td.bags[2] = {3, 4};
    td.tree.add_vertex(1);
    td.tree.add_vertex(2);
    td.tree.add_edge(1, 2);
    RootedDecomposition rd =
        normalize_empty_adhesions(root_decomposition(td, 1));
    BagClassification cls = classify_bags(rd, 1);
    ConnectResult res = connect_walks(rd, cls, 1);
    CHECK(res.walk == mk({1, 3, 4, 3, 1, 2}));
    CHECK(res.edge_log == std::vector<std::pair<int, int>>{{1, 3}});
    REQUIRE(res.splices.size() == 1);
    CHECK_FALSE(res.splices[0].via_plan);
    CHECK(res.m_max == 0);
    CHECK(res.bound() == 2);
    CHECK(res.realized_max == 2);
    CHECK(validate_kwalk(res.gprime, res.walk, 2).ok);
  }
  SECTION("a path decomposition splices bag by bag") {
    Graph host = testutil::path_graph(5);
    TreeDecomposition td = heuristic_decompose(host, DecomposeMethod::MinDegree);
    RootedDecomposition rd =
        normalize_empty_adhesions(root_decomposition(td, 1));
    ExplicitTorsos ex = make_torsos_explicit(rd);
    BagClassification cls = classify_bags(ex.rd, 1);
    REQUIRE(cls.all_classified());
    ConnectResult res = connect_walks(ex.rd, cls, 1);
    CHECK(res.walk.vertex_set() == host.vertex_set());
    CHECK(validate_kwalk(res.gprime, res.walk, res.bound()).ok);
    for (auto [u, v] : host.edges()) CHECK(res.gprime.has_edge(u, v));
    CHECK(res.gprime.edge_count() == host.edge_count() + res.edge_log.size());
  }
  SECTION("bad inputs") {
    TreeDecomposition td = heuristic_decompose(Graph(), DecomposeMethod::SingleBag);
    RootedDecomposition rd = root_decomposition(td, 1);
    BagClassification cls = classify_bags(rd, 1);
    CHECK_THROWS_MATCHES(connect_walks(rd, cls, 1), input_error,
                         MessageMatches(ContainsSubstring("empty host")));

    auto dense = root_decomposition(
        heuristic_decompose(complete_graph(5), DecomposeMethod::SingleBag), 1);
    BagClassification bad = classify_bags(dense, 3);
    REQUIRE_FALSE(bad.all_classified());
    CHECK_THROWS_MATCHES(connect_walks(dense, bad, 3), input_error,
                         MessageMatches(ContainsSubstring("unclassified")));
  }
}

TEST_CASE("random hosts produce certified walks") {
  testutil::Rng rng(808);
  for (int trial = 0; trial < 25; ++trial) {
    int n = testutil::rand_int(rng, 1, 12);
    Graph host = testutil::random_graph(rng, n, testutil::rand_int(rng, 10, 70));
    auto method = trial % 2 == 0 ? DecomposeMethod::MinDegree : DecomposeMethod::MinFill;
    TreeDecomposition td = heuristic_decompose(host, method);
    RootedDecomposition rd =
        normalize_empty_adhesions(root_decomposition(td, 1));
    ExplicitTorsos ex = make_torsos_explicit(rd);
    // every torso degree is below n, so all bags pass the degree test at c=n
    BagClassification cls = classify_bags(ex.rd, n);
    REQUIRE(cls.all_classified());
    ConnectResult res = connect_walks(ex.rd, cls, n);
    INFO("trial " << trial << " n=" << n);
    CHECK(res.walk.vertex_set() == host.vertex_set());
    CHECK(res.realized_max <= res.bound());
    CHECK(validate_kwalk(res.gprime, res.walk, res.bound()).ok);
    for (auto [u, v] : host.edges()) CHECK(res.gprime.has_edge(u, v));
    CHECK(res.gprime.edge_count() ==
          host.edge_count() + ex.added.size() + res.edge_log.size());
  }
}

TEST_CASE("walk files parse and print") {
  SECTION("write format") {
    std::ostringstream os;
    write_walk(os, mk({1, 2, 3}), 5);
    CHECK(os.str() == "walk 5 3\n1 2 3\n");
    std::ostringstream empty;
    write_walk(empty, mk({}), 1);
    CHECK(empty.str() == "walk 1 0\n");
  }
  SECTION("round trip") {
    std::ostringstream os;
    write_walk(os, mk({1, 2, 3, 4, 5, 4, 3}), 6);
    ParsedWalk back = parse_walk(os.str());
    CHECK(back.k == 6);
    CHECK(back.walk == mk({1, 2, 3, 4, 5, 4, 3}));
  }
  SECTION("entries may split across lines, comments ignored") {
    ParsedWalk p = parse_walk("# tour\nwalk 2 5\n1 2\n# middle\n3\n4 5\n");
    CHECK(p.k == 2);
    CHECK(p.walk == mk({1, 2, 3, 4, 5}));
  }
  SECTION("parse errors") {
    auto throws_with = [](const std::string& text, const std::string& needle) {
      CHECK_THROWS_MATCHES(parse_walk(text), parse_error,
                           MessageMatches(ContainsSubstring(needle)));
    };
    throws_with("", "missing walk header");
    throws_with("wolk 1 1\n1\n", "expected walk header");
    throws_with("walk 0 1\n1\n", "malformed walk header");
    throws_with("walk 2\n", "malformed walk header");
    throws_with("walk 2 1 9\n1\n", "trailing tokens");
    throws_with("walk 2 2\n1 x\n", "expected a vertex id");
    throws_with("walk 2 2\n1 2.5\n", "bad vertex id");
    throws_with("walk 2 2\n0 1\n", "bad vertex id");
    throws_with("walk 2 1\n1 2\n", "more entries");
    throws_with("walk 2 3\n1 2\n", "header announced 3");
  }
}

TEST_CASE("edge logs print one addition per line") {
  std::ostringstream os;
  write_edge_log(os, {{1, 3}, {2, 4}});
  CHECK(os.str() == "+ 1 3\n+ 2 4\n");
}
