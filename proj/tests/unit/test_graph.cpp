#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "hitaug/errors.hpp"
#include "hitaug/generators.hpp"
#include "hitaug/graph.hpp"

using namespace hitaug;

TEST_CASE("path-5 with a blue middle node") {
  const auto g = gen_path(5, {2});
  CHECK(g.node_count() == 5);
  CHECK(g.edge_count() == 4);
  CHECK(g.red_count() == 4);
  CHECK(g.blue_count() == 1);
  CHECK(g.red_position(3) == 2);
  CHECK(g.red_position(2) == -1);
  CHECK(g.blue_degree(1) == 1);
  CHECK(g.blue_degree(0) == 0);
  CHECK(mean_red_degree(g) == doctest::Approx(1.5));
}

TEST_CASE("build rejects invalid inputs") {
  const std::vector<Edge> triangle{{0, 1}, {1, 2}, {0, 2}};
  CHECK_THROWS_AS(BipartiteInstance::build(3, triangle, std::vector<Color>(3, Color::Red)), InvalidBipartition);
  CHECK_THROWS_AS(BipartiteInstance::build(3, triangle, std::vector<Color>(3, Color::Blue)), InvalidBipartition);

  const std::vector<Edge> two_edges{{0, 1}, {2, 3}};
  CHECK_THROWS_AS(BipartiteInstance::build(4, two_edges, {Color::Red, Color::Blue, Color::Red, Color::Blue}),
                  DisconnectedGraph);

  const std::vector<Edge> loop{{0, 1}, {1, 1}};
  CHECK_THROWS_AS(BipartiteInstance::build(2, loop, {Color::Red, Color::Blue}), MalformedInput);
}

TEST_CASE("duplicate edges are merged and counted") {
  const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}, {0, 1}};
  std::size_t dropped = 0;
  const auto g = BipartiteInstance::build(3, edges, {Color::Red, Color::Red, Color::Blue}, {}, &dropped);
  CHECK(dropped == 2);
  CHECK(g.edge_count() == 2);
  CHECK(g.degree(1) == 2);
}

TEST_CASE("augmented view wires shortcuts to the lowest free blue node") {
  const auto g = gen_path(5, {2});

  SUBCASE("single shortcut at node 0") {
    const AugmentedGraph view(g, ShortcutSet({0}));
    CHECK(view.degree(0) == 2);
    CHECK(view.neighbors(0) == std::vector<NodeId>{1, 2});
    CHECK(view.neighbors(2) == std::vector<NodeId>{0, 1, 3});
    CHECK(view.edge_count() == 5);
    CHECK(g.degree(0) == 1);  // base untouched
  }

  SUBCASE("empty set leaves adjacency unchanged") {
    const AugmentedGraph view(g, ShortcutSet{});
    for (NodeId v = 0; v < 5; ++v) {
      const auto base = g.neighbors(v);
      CHECK(view.neighbors(v) == std::vector<NodeId>(base.begin(), base.end()));
    }
  }

  SUBCASE("second copy at node 0 exceeds capacity") {
    CHECK_THROWS_AS(AugmentedGraph(g, ShortcutSet({0, 0})), CapacityExceeded);
  }

  SUBCASE("blue endpoints must not be listed") {
    CHECK_THROWS_AS(AugmentedGraph(g, ShortcutSet({2})), InvalidParameter);
  }
}

TEST_CASE("multiplicity skips blue nodes already adjacent") {
  // Red 0 adjacent to blue 2; blues are 1, 2, 3.
  const std::vector<Edge> edges{{0, 2}, {1, 2}, {2, 3}};
  const auto g = BipartiteInstance::build(4, edges, {Color::Red, Color::Blue, Color::Blue, Color::Blue});
  const AugmentedGraph view(g, ShortcutSet({0, 0}));
  CHECK(view.shortcut_edges() == std::vector<Edge>{{0, 1}, {0, 3}});
  CHECK(view.neighbors(0) == std::vector<NodeId>{1, 2, 3});
  CHECK(candidate_endpoints(g, ShortcutSet({0, 0})).empty());
}

TEST_CASE("candidate endpoints") {
  const auto g = gen_path(5, {2});
  CHECK(candidate_endpoints(g, ShortcutSet{}) == std::vector<NodeId>{0, 4});
  CHECK(candidate_endpoints(g, ShortcutSet({0})) == std::vector<NodeId>{4});

  // Complete bipartite R x B: every pair present.
  std::vector<Edge> edges;
  for (NodeId r = 0; r < 3; ++r)
    for (NodeId b = 3; b < 5; ++b) edges.emplace_back(r, b);
  const auto kb = BipartiteInstance::build(5, edges, {Color::Red, Color::Red, Color::Red, Color::Blue, Color::Blue});
  CHECK(candidate_endpoints(kb, ShortcutSet{}).empty());
}

TEST_CASE("augmented views stay simple and candidates shrink monotonically") {
  std::mt19937_64 rng(7);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = gen_planted_two_community(6, 4, 0.6, 0.2, seed);
    ShortcutSet F;
    auto cands = candidate_endpoints(g, F);
    while (!cands.empty()) {
      F.add(cands[rng() % cands.size()]);
      const AugmentedGraph view(g, F);
      CHECK(view.edge_count() == g.edge_count() + F.size());
      std::size_t degree_sum = 0;
      for (NodeId v = 0; v < static_cast<NodeId>(g.node_count()); ++v) {
        const auto nb = view.neighbors(v);
        degree_sum += nb.size();
        CHECK(std::set<NodeId>(nb.begin(), nb.end()).size() == nb.size());
        CHECK(std::find(nb.begin(), nb.end(), v) == nb.end());
      }
      CHECK(degree_sum == 2 * view.edge_count());
      const auto next = candidate_endpoints(g, F);
      CHECK(std::includes(cands.begin(), cands.end(), next.begin(), next.end()));
      cands = next;
    }
  }
}

TEST_CASE("degree statistics") {
  const auto g = gen_star_path_clique(16);
  CHECK(max_degree(g, g.blue_nodes()) == 16);  // 15 leaves + path head
  CHECK(mean_red_degree(g) >= 1.0);
  const AugmentedGraph view(g, ShortcutSet({19}));  // clique node, far from the center
  CHECK(mean_red_degree(view) > mean_red_degree(g));
}
