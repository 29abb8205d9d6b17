#include <doctest.h>

#include <functional>

#include "spr/errors.hpp"
#include "spr/graph.hpp"
#include "spr/instance.hpp"
#include "support.hpp"

using namespace spr;
using spr::testing::oracle_distances;
using spr::testing::oracle_girth;

namespace {

// Lexicographically smallest among minimum-length simple u-v paths.
std::vector<Vertex> oracle_canonical_path(const WeightedGraph& g, Vertex u, Vertex v) {
  std::vector<Vertex> best;
  ExtLength best_len = kInfinity;
  std::vector<Vertex> stack{u};
  std::vector<char> seen(g.vertex_count(), 0);
  seen[u] = 1;
  std::function<void(Length)> dfs = [&](Length len) {
    if (stack.back() == v) {
      if (ExtLength(len) < best_len || (ExtLength(len) == best_len && stack < best)) {
        best_len = len;
        best = stack;
      }
      return;
    }
    for (const auto& nb : g.neighbors(stack.back())) {
      if (seen[nb.vertex]) continue;
      seen[nb.vertex] = 1;
      stack.push_back(nb.vertex);
      dfs(len + nb.weight);
      stack.pop_back();
      seen[nb.vertex] = 0;
    }
  };
  dfs(0);
  return best;
}

}  // namespace

TEST_CASE("graph construction rejects malformed input") {
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 0, 1}}), ArgumentError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 1}, {1, 0, 2}}), ArgumentError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 3, 1}}), ArgumentError);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 0}}), ArgumentError);
  const WeightedGraph g(4, {{2, 1, 5}, {0, 3, 1}, {1, 0, 2}});
  REQUIRE(g.edge_count() == 3);
  CHECK(g.edges()[0] == Edge{0, 1, 2});
  CHECK(g.edges()[2] == Edge{1, 2, 5});
  CHECK(g.neighbors(0)[0].vertex == 1);
  CHECK(g.neighbors(0)[1].vertex == 3);
  CHECK(*g.weight(2, 1) == 5);
  CHECK_FALSE(g.has_edge(2, 3));
}

TEST_CASE("shortest path examples") {
  const auto tri = spr::testing::complete_graph(3);
  const Path p = shortest_path(tri, 0, 2);
  CHECK(p.vertices().size() == 2);
  CHECK(p.length() == 1);

  const WeightedGraph line(3, {{0, 1, 2}, {1, 2, 3}});
  const Path q = shortest_path(line, 0, 2);
  CHECK(std::vector<Vertex>(q.vertices().begin(), q.vertices().end()) == std::vector<Vertex>{0, 1, 2});
  CHECK(q.length() == 5);

  const auto pet = spr::testing::textbook_petersen();
  for (Vertex u = 0; u < 10; ++u) {
    for (Vertex v = 0; v < 10; ++v) {
      if (u == v) continue;
      CHECK(distance(pet, u, v) == ExtLength(pet.has_edge(u, v) ? 1 : 2));
    }
  }

  const WeightedGraph split(4, {{0, 1, 1}, {2, 3, 1}});
  CHECK_THROWS_AS(shortest_path(split, 0, 3), DisconnectedPairError);
  CHECK(distance(split, 0, 3).is_infinite());
}

TEST_CASE("ties break to the lexicographically smallest vertex sequence") {
  // Square 0-1-3, 0-2-3 with equal lengths.
  const WeightedGraph sq(4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}, {2, 3, 1}});
  const Path p = shortest_path(sq, 0, 3);
  CHECK(std::vector<Vertex>(p.vertices().begin(), p.vertices().end()) == std::vector<Vertex>{0, 1, 3});
  const Path r = shortest_path(sq, 3, 0);
  CHECK(std::vector<Vertex>(r.vertices().begin(), r.vertices().end()) == std::vector<Vertex>{3, 1, 0});

  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = spr::testing::random_graph(3 + rng.below(6), 0.5, 3, rng);
    for (Vertex u = 0; u < static_cast<Vertex>(g.vertex_count()); ++u) {
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        if (distance(g, u, v).is_infinite()) continue;
        const Path sp = shortest_path(g, u, v);
        CHECK(std::vector<Vertex>(sp.vertices().begin(), sp.vertices().end()) == oracle_canonical_path(g, u, v));
      }
    }
  }
}

TEST_CASE("distances and girth match exhaustive oracles on small graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = spr::testing::random_graph(2 + rng.below(9), 0.15 + 0.1 * static_cast<double>(rng.below(6)), 5, rng);
    const auto oracle = oracle_distances(g);
    for (Vertex s = 0; s < static_cast<Vertex>(g.vertex_count()); ++s) {
      const auto d = distances_from(g, s);
      for (std::size_t v = 0; v < g.vertex_count(); ++v) REQUIRE(d[v] == oracle[s][v]);
    }
    REQUIRE(girth(g) == oracle_girth(g));
  }
}

TEST_CASE("girth examples") {
  CHECK(girth(spr::testing::complete_graph(4)) == ExtLength(3));
  const WeightedGraph c4(4, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {0, 3, 4}});
  CHECK(girth(c4) == ExtLength(10));
  CHECK(girth(spr::testing::textbook_petersen()) == ExtLength(5));
  CHECK(oracle_girth(spr::testing::textbook_petersen()) == ExtLength(5));
  const WeightedGraph tree(4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}});
  CHECK(girth(tree).is_infinite());
  // Pendant edges never lie on a cycle.
  const WeightedGraph tailed(5, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 7}, {3, 4, 2}});
  CHECK(girth(tailed) == ExtLength(3));
}

TEST_CASE("paths validate adjacency and report simplicity") {
  const auto c5 = spr::testing::cycle_graph(5);
  CHECK_THROWS_AS(Path::from_vertices(c5, {0, 2}), ArgumentError);
  CHECK_THROWS_AS(Path::from_vertices(c5, {}), ArgumentError);
  const Path walk = Path::from_vertices(c5, {0, 1, 0});
  CHECK_FALSE(walk.is_simple());
  CHECK(walk.length() == 2);
  const Path p = Path::from_vertices(c5, {0, 1, 2, 3});
  CHECK(p.is_simple());
  CHECK(p.edge_count() == 3);
  const Path s = p.slice(c5, 1, 3);
  CHECK(std::vector<Vertex>(s.vertices().begin(), s.vertices().end()) == std::vector<Vertex>{1, 2, 3});
  CHECK(s.length() == 2);
  CHECK(p.reversed().front() == 3);
  CHECK(p.edge_pairs()[2] == std::pair<Vertex, Vertex>{2, 3});
}

TEST_CASE("girth dichotomy examples") {
  const auto c5 = spr::testing::cycle_graph(5);
  const Path arc2 = Path::from_vertices(c5, {0, 1, 2});
  const Path arc3 = Path::from_vertices(c5, {0, 4, 3, 2});
  CHECK(girth_dichotomy(c5, arc2, arc2) == Dichotomy::subset);
  CHECK(girth_dichotomy(c5, arc2, arc3) == Dichotomy::long_cycle);
  CHECK(to_string(Dichotomy::long_cycle) == "long");
  // Either orientation of q is accepted.
  CHECK(girth_dichotomy(c5, arc2, arc3.reversed()) == Dichotomy::long_cycle);
  const Path other = Path::from_vertices(c5, {0, 1});
  CHECK_THROWS_AS(girth_dichotomy(c5, arc2, other), ArgumentError);

  // A non-shortest p exposes the violation verdict.
  const auto c8 = spr::testing::cycle_graph(8);
  const Path long_way = Path::from_vertices(c8, {0, 7, 6, 5, 4, 3, 2});
  const Path short_way = Path::from_vertices(c8, {0, 1, 2});
  CHECK(girth_dichotomy(c8, short_way, long_way) == Dichotomy::long_cycle);
  CHECK(girth_dichotomy(Path::from_vertices(c8, {0, 1, 2}), Path::from_vertices(c8, {0, 7, 6, 5, 4, 3, 2}),
                        ExtLength(20)) == Dichotomy::violation);
}

TEST_CASE("concat joins parts into a walk") {
  const WeightedGraph g(3, {{0, 1, 2}, {1, 2, 3}});
  const Path ab = Path::from_vertices(g, {0, 1});
  const Path bc = Path::from_vertices(g, {1, 2});
  const std::vector<Path> parts{ab, bc};
  const Path abc = concat(parts);
  CHECK(std::vector<Vertex>(abc.vertices().begin(), abc.vertices().end()) == std::vector<Vertex>{0, 1, 2});
  CHECK(abc.length() == 5);
  const std::vector<Path> back{ab, ab.reversed()};
  const Path aba = concat(back);
  CHECK(aba.length() == 4);
  CHECK_FALSE(aba.is_simple());
  const std::vector<Path> bad{ab, ab};
  CHECK_THROWS_AS(concat(bad), ArgumentError);
}

TEST_CASE("catalog petersen is isomorphic in distance profile to the textbook one") {
  const auto cat = cage_graph("petersen");
  CHECK(cat.is_regular(3));
  CHECK(girth(cat) == ExtLength(5));
  std::size_t at_two = 0;
  for (Vertex v = 1; v < 10; ++v) at_two += distance(cat, 0, v) == ExtLength(2);
  CHECK(at_two == 6);
}
