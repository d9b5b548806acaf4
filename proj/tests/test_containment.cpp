#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace invfo;
using testutil::make_graph;

namespace {

// K_{3,3} with sides {1,2,3} and {4,5,6}.
Graph k33() {
  Graph g;
  for (int v = 1; v <= 6; ++v) g.add_vertex(v);
  for (int u = 1; u <= 3; ++u)
    for (int v = 4; v <= 6; ++v) g.add_edge(u, v);
  return g;
}

}  // namespace

TEST_CASE("minor detection on pinned instances") {
  SECTION("K_3 is a minor of C_4 via one contraction") {
    auto m = is_minor(complete_graph(3), testutil::cycle_graph(4));
    REQUIRE(m.has_value());
    CHECK(validate_minor_model(complete_graph(3), testutil::cycle_graph(4), *m));
  }
  SECTION("K_2 is not a minor of an edgeless pair") {
    CHECK_FALSE(is_minor(complete_graph(2), make_graph(2, {})));
  }
  SECTION("every graph is a minor of itself") {
    Graph p3 = testutil::path_graph(3);
    auto m = is_minor(p3, p3);
    REQUIRE(m.has_value());
    CHECK(validate_minor_model(p3, p3, *m));
  }
  SECTION("K_3 is not a minor of P_3") {
    CHECK_FALSE(is_minor(complete_graph(3), testutil::path_graph(3)));
  }
  SECTION("K_4 is not a minor of P_3 joined with K_1") {
    Graph j = join_with_clique(testutil::path_graph(3), 1);
    CHECK_FALSE(is_minor(complete_graph(4), j));
  }
}

TEST_CASE("topological subgraph detection on pinned instances") {
  SECTION("C_3 sits in C_5 as a subdivided triangle") {
    auto e = is_topological_subgraph(complete_graph(3), testutil::cycle_graph(5));
    REQUIRE(e.has_value());
    CHECK(validate_top_embedding(complete_graph(3), testutil::cycle_graph(5), *e));
  }
  SECTION("K_4 sits topologically in K_{3,3}") {
    auto e = is_topological_subgraph(complete_graph(4), k33());
    REQUIRE(e.has_value());
    CHECK(validate_top_embedding(complete_graph(4), k33(), *e));
  }
  SECTION("K_5 does not fit in K_4") {
    CHECK_FALSE(is_topological_subgraph(complete_graph(5), complete_graph(4)));
  }
}

TEST_CASE("size guards") {
  SECTION("patterns above the guard need an explicit override") {
    Graph k7 = complete_graph(7);
    CHECK_THROWS_AS(is_minor(k7, k7), capability_error);
    CHECK_THROWS_AS(is_topological_subgraph(k7, k7), capability_error);
    ContainmentOptions wide;
    wide.max_pattern_vertices = 7;
    CHECK(is_minor(k7, k7, wide).has_value());
    CHECK(is_topological_subgraph(k7, k7, wide).has_value());
  }
  SECTION("hosts beyond 63 vertices are out of range") {
    Graph big;
    for (int v = 1; v <= 64; ++v) big.add_vertex(v);
    CHECK_THROWS_AS(is_minor(complete_graph(1), big), capability_error);
  }
}

TEST_CASE("topological containment implies minor containment") {
  std::vector<Graph> patterns{complete_graph(3), testutil::path_graph(3),
                              testutil::cycle_graph(4), complete_graph(4)};
  SECTION("exhaustively on all 4-vertex hosts") {
    for (std::uint64_t mask = 0; mask < (1ULL << testutil::pair_count(4));
         ++mask) {
      Graph g = testutil::mask_graph(4, mask);
      for (const Graph& h : patterns) {
        if (is_topological_subgraph(h, g)) {
          CHECK(is_minor(h, g).has_value());
        }
      }
    }
  }
  SECTION("sampled on 5-vertex hosts") {
    testutil::Rng rng(23);
    for (int trial = 0; trial < 120; ++trial) {
      Graph g = testutil::mask_graph(
          5, rng.next() % (1ULL << testutil::pair_count(5)));
      for (const Graph& h : patterns) {
        auto e = is_topological_subgraph(h, g);
        if (e) {
          CHECK(validate_top_embedding(h, g, *e));
          auto m = is_minor(h, g);
          REQUIRE(m.has_value());
          CHECK(validate_minor_model(h, g, *m));
        }
      }
    }
  }
}

TEST_CASE("complete_graph") {
  CHECK(complete_graph(1).edge_count() == 0);
  CHECK(complete_graph(4).edge_count() == 6);
  CHECK(complete_graph(0).vertex_count() == 0);
}
