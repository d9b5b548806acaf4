#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace invfo;
using testutil::make_graph;

TEST_CASE("graph basics: vertices, edges, degrees") {
  Graph g = make_graph(3, {{1, 2}, {2, 3}});
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(2, 1));
  CHECK_FALSE(g.has_edge(1, 3));
  CHECK(g.degree(2) == 2);
  CHECK(g.max_vertex_id() == 3);
}

TEST_CASE("add_edge rejects loops, reports duplicates") {
  Graph g = make_graph(2, {});
  CHECK(g.add_edge(1, 2));
  CHECK_FALSE(g.add_edge(2, 1));  // same undirected edge
  CHECK_THROWS_AS(g.add_edge(1, 1), input_error);
}

TEST_CASE("induced subgraph") {
  Graph tri = make_graph(3, {{1, 2}, {2, 3}, {1, 3}});
  SECTION("triangle restricted to an edge") {
    Graph s = induced_subgraph(tri, {1, 2});
    CHECK(s.vertex_count() == 2);
    CHECK(s.edge_count() == 1);
    CHECK(s.has_edge(1, 2));
  }
  SECTION("full vertex set is the identity") {
    CHECK(induced_subgraph(tri, {1, 2, 3}) == tri);
  }
  SECTION("non-adjacent pair of C_4 gives isolated vertices") {
    Graph c4 = testutil::cycle_graph(4);
    Graph s = induced_subgraph(c4, {1, 3});
    CHECK(s.vertex_count() == 2);
    CHECK(s.edge_count() == 0);
  }
  SECTION("no edge leaves the kept set, repeat application is stable") {
    testutil::Rng rng(7);
    Graph g = testutil::random_graph(rng, 8, 40);
    std::set<int> keep{2, 3, 5, 8};
    Graph s = induced_subgraph(g, keep);
    for (auto [u, v] : s.edges()) {
      CHECK(keep.count(u));
      CHECK(keep.count(v));
      CHECK(g.has_edge(u, v));
    }
    CHECK(induced_subgraph(s, keep) == s);
  }
  SECTION("unknown vertex rejected") {
    CHECK_THROWS_AS(induced_subgraph(tri, {1, 9}), input_error);
  }
}

TEST_CASE("clique_on sizes") {
  CHECK(clique_on({1}).edge_count() == 0);
  CHECK(clique_on({1, 2, 3}).edge_count() == 3);
  CHECK(clique_on({1, 2, 3, 4, 5}).edge_count() == 10);
  CHECK_THROWS_AS(clique_on({}), input_error);
}

TEST_CASE("add_clique_edges records only fresh edges") {
  Graph g = make_graph(3, {{1, 2}});
  std::vector<std::pair<int, int>> added;
  Graph h = add_clique_edges(g, {1, 2, 3}, &added);
  CHECK(h.edge_count() == 3);
  CHECK(added == std::vector<std::pair<int, int>>{{1, 3}, {2, 3}});
}

TEST_CASE("join_with_clique") {
  SECTION("K_1 + K_1 joins to K_2") {
    Graph k1 = make_graph(1, {});
    Graph j = join_with_clique(k1, 1);
    CHECK(j.vertex_count() == 2);
    CHECK(j.edge_count() == 1);
  }
  SECTION("P_3 + K_1 has 4 vertices and 5 edges") {
    Graph j = join_with_clique(testutil::path_graph(3), 1);
    CHECK(j.vertex_count() == 4);
    CHECK(j.edge_count() == 5);
  }
  SECTION("clique side is complete and fully crossed") {
    Graph g = testutil::path_graph(3);
    Graph j = join_with_clique(g, 2);
    CHECK(j.vertex_count() == 5);
    // 2 path edges + 1 clique edge + 3*2 cross edges
    CHECK(j.edge_count() == 2 + 1 + 6);
  }
  SECTION("c must be positive") {
    CHECK_THROWS_AS(join_with_clique(testutil::path_graph(2), 0), input_error);
  }
}

TEST_CASE("degeneracy order") {
  SECTION("trees have degeneracy 1") {
    CHECK(degeneracy_order(testutil::path_graph(5)).degeneracy == 1);
    CHECK(degeneracy_order(testutil::star_graph(4)).degeneracy == 1);
  }
  SECTION("cycles have degeneracy 2") {
    CHECK(degeneracy_order(testutil::cycle_graph(4)).degeneracy == 2);
  }
  SECTION("complete graphs have degeneracy n-1") {
    CHECK(degeneracy_order(complete_graph(4)).degeneracy == 3);
    CHECK(degeneracy_order(complete_graph(6)).degeneracy == 5);
  }
  SECTION("lowest-id tie-break") {
    Graph g = make_graph(3, {});
    CHECK(degeneracy_order(g).order == std::vector<int>{1, 2, 3});
  }
  SECTION("back-degree never exceeds the reported degeneracy") {
    testutil::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      Graph g = testutil::random_graph(rng, 10, 35);
      DegeneracyOrder d = degeneracy_order(g);
      std::set<int> later(d.order.begin(), d.order.end());
      for (int v : d.order) {
        later.erase(v);
        int back = 0;
        for (int u : g.neighbors(v))
          if (later.count(u)) ++back;
        CHECK(back <= d.degeneracy);
      }
    }
  }
}

TEST_CASE("connectivity helpers") {
  CHECK(is_connected(testutil::path_graph(4)));
  Graph two = make_graph(4, {{1, 2}, {3, 4}});
  CHECK_FALSE(is_connected(two));
  auto comps = connected_components(two);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::set<int>{1, 2});
  CHECK(comps[1] == std::set<int>{3, 4});
}

TEST_CASE("graph file format") {
  SECTION("parse and write round-trip") {
    std::string text = "graph 3 2\ne 1 2\ne 2 3\n";
    Graph g = parse_graph(text);
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(parse_graph(write_graph(g)) == g);
  }
  SECTION("comments and blank lines are skipped") {
    Graph g = parse_graph("# a graph\n\ngraph 2 1\ne 1 2  # the edge\n");
    CHECK(g.edge_count() == 1);
  }
  SECTION("bad inputs are parse errors with positions") {
    CHECK_THROWS_AS(parse_graph("graph 2\ne 1 2\n"), parse_error);
    CHECK_THROWS_AS(parse_graph("graph 2 1\ne 1 1\n"), parse_error);  // loop
    CHECK_THROWS_AS(parse_graph("graph 2 2\ne 1 2\ne 2 1\n"),
                    parse_error);  // duplicate
    CHECK_THROWS_AS(parse_graph("graph 2 1\ne 1 3\n"), parse_error);  // range
    CHECK_THROWS_AS(parse_graph("graph 2 2\ne 1 2\n"), parse_error);  // count
    CHECK_THROWS_AS(parse_graph("e 1 2\n"), parse_error);  // missing header
    CHECK_THROWS_MATCHES(parse_graph("graph 2 1\nx 1 2\n"), parse_error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("line 2")));
  }
}
