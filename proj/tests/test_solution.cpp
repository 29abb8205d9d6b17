#include <doctest.h>

#include <memory>

#include "spr/errors.hpp"
#include "spr/instance.hpp"
#include "spr/solution.hpp"
#include "support.hpp"

using namespace spr;

namespace {

InstanceParams custom(std::uint64_t k, Length M, Rational L, Length g) {
  ParamOverrides o;
  o.M = M;
  o.S = 1;
  o.L = L;
  o.g = g;
  return derive_params(k, ParamMode::custom, o);
}

std::shared_ptr<const Instance> cage_instance(const char* name, Length M) {
  const auto core = cage_graph(name);
  return std::make_shared<const Instance>(
      build_instance(core, custom(core.vertex_count(), M, Rational(2 * M + 1), girth(core).value())));
}

std::shared_ptr<const Instance> sub_instance(const WeightedGraph& core, std::vector<Vertex> att, Length M) {
  const std::uint64_t k = att.size();
  const Length g = girth(core).is_finite() ? girth(core).value() : 3;
  return std::make_shared<const Instance>(build_subterminal_instance(core, std::move(att), custom(k, M, Rational(1), g)));
}

// All-pairs stretch by Floyd-Warshall, independent of the library's Dijkstra.
Rational oracle_stretch(const SprSolution& sol) {
  const std::size_t k = sol.h.vertex_count();
  std::vector<std::vector<ExtLength>> d(k, std::vector<ExtLength>(k, kInfinity));
  for (std::size_t i = 0; i < k; ++i) d[i][i] = 0;
  for (const auto& e : sol.h.edges()) d[e.u][e.v] = d[e.v][e.u] = e.w;
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (d[i][m] + d[m][j] < d[i][j]) d[i][j] = d[i][m] + d[m][j];
      }
    }
  }
  const auto dg = spr::testing::oracle_distances(sol.host->full());
  Rational best(1);
  bool first = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const Rational r = Rational::ratio(d[i][j], dg[sol.host->terminal_vertex(i)][sol.host->terminal_vertex(j)].value());
      if (first || r > best) best = r;
      first = false;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("validation of explicit solutions") {
  const auto inst = cage_instance("heawood", 2);
  const SprSolution complete = metric_completion(inst);
  const auto r = validate_solution(complete);
  CHECK_FALSE(r.passed("edge-budget"));
  CHECK(r.find("edge-budget")->detail == "|E(h)|=91, |E(G)|=35");
  CHECK(r.passed("edge-weights"));
  ValidationOptions relaxed;
  relaxed.enforce_edge_budget = false;
  CHECK(validate_solution(complete, relaxed).ok());

  SprSolution cheat = voronoi_solution(inst);
  std::vector<Edge> edges(cheat.h.edges().begin(), cheat.h.edges().end());
  edges[0].w = inst->terminal_distance(edges[0].u, edges[0].v).value() - 1;
  cheat.h = WeightedGraph(14, edges);
  CHECK_FALSE(validate_solution(cheat).passed("edge-weights"));

  SprSolution wrong_size{inst, WeightedGraph(13, {}), std::nullopt};
  CHECK_FALSE(validate_solution(wrong_size).passed("vertex-set"));

  CHECK(validate_solution(voronoi_solution(inst)).ok());
}

TEST_CASE("stretch examples") {
  const auto inst = cage_instance("heawood", 2);
  const auto complete = stretch(metric_completion(inst));
  CHECK(complete.max_ratio == Rational(1));
  CHECK(complete.per_pair.size() == 91);

  // Core edge u-v, pendants of weight 2: dist_G(t_0, t_1) = 5.
  const WeightedGraph k2 = WeightedGraph::unit(2, std::vector<std::pair<Vertex, Vertex>>{{0, 1}});
  const auto two = sub_instance(k2, {0, 1}, 2);
  CHECK(two->terminal_distance(0, 1) == ExtLength(5));
  const SprSolution ten{two, WeightedGraph(2, {{0, 1, 10}}), std::nullopt};
  const auto st = stretch(ten);
  CHECK(st.max_ratio == Rational(2));
  CHECK(st.witness == std::pair<std::size_t, std::size_t>{0, 1});

  const SprSolution none{two, WeightedGraph(2, {}), std::nullopt};
  CHECK(stretch(none).max_ratio.is_infinite());

  const auto pet = cage_instance("petersen", 2);
  const SprSolution vor = voronoi_solution(pet);
  const auto sv = stretch(vor, 3);
  CHECK(sv.max_ratio >= Rational(1));
  CHECK(sv.max_ratio == oracle_stretch(vor));
  CHECK(stretch(vor, 1).per_pair.size() == sv.per_pair.size());
}

TEST_CASE("stretch witness is the first maximising pair") {
  const auto inst = cage_instance("petersen", 1);
  const auto vor = voronoi_solution(inst);
  const auto st = stretch(vor);
  for (const auto& p : st.per_pair) {
    if (std::make_pair(p.i, p.j) < st.witness) CHECK(p.ratio < st.max_ratio);
  }
}

TEST_CASE("image paths") {
  const auto inst = cage_instance("petersen", 2);
  const SprSolution vor = voronoi_solution(inst);
  const auto& e = vor.h.edges()[0];
  const Path single = Path::from_vertices(vor.h, {e.u, e.v});
  const Path r = image_path(vor, single);
  CHECK(r == shortest_path(inst->full(), inst->terminal_vertex(e.u), inst->terminal_vertex(e.v)));
  CHECK_THROWS_AS(image_path(vor, Path::single(99)), ArgumentError);

  // Sandwich inequality on h-shortest paths.
  for (std::size_t i = 0; i < 10; ++i) {
    for (std::size_t j = i + 1; j < 10; ++j) {
      const Path q = shortest_path(vor.h, static_cast<Vertex>(i), static_cast<Vertex>(j));
      const Path img = image_path(vor, q);
      CHECK(ExtLength(q.length()) >= ExtLength(img.length()));
      CHECK(ExtLength(img.length()) >= inst->terminal_distance(i, j));
    }
  }

  // C6 with terminals on 0, 2, 4: the h-path 0-1-2 revisits core vertex 2's
  // neighbourhood and passes t_1 twice.
  const auto c6 = sub_instance(spr::testing::cycle_graph(6), {0, 2, 4}, 1);
  const SprSolution tri = metric_completion(c6);
  const Path walk = image_path(tri, Path::from_vertices(tri.h, {0, 1, 0}));
  CHECK_FALSE(walk.is_simple());
  CHECK(walk.length() == 8);
  const Path through = image_path(tri, Path::from_vertices(tri.h, {0, 1, 2}));
  CHECK_FALSE(through.is_simple());
  CHECK(through.length() == 8);
}

TEST_CASE("voronoi solutions") {
  const auto pet = cage_instance("petersen", 2);
  const SprSolution vor = voronoi_solution(pet);
  REQUIRE(vor.clusters);
  for (std::size_t v = 0; v < 10; ++v) CHECK((*vor.clusters)[v] == v);
  CHECK(vor.h.edge_count() == 15);
  for (const auto& e : vor.h.edges()) {
    CHECK(pet->core().has_edge(e.u, e.v));
    CHECK(e.w == 5);
  }
  CHECK(voronoi_solution(pet).h == vor.h);

  const auto c6 = sub_instance(spr::testing::cycle_graph(6), {0, 2, 4}, 1);
  const SprSolution split = voronoi_solution(c6);
  // Vertices 1, 3 and 5 each sit between two terminals; ties go to the
  // smaller terminal index, so terminal 0 wins both of its ties.
  CHECK(*split.clusters == std::vector<std::size_t>{0, 0, 1, 1, 2, 0});
  CHECK(split.h.edge_count() == 3);
  CHECK(validate_solution(split).ok());
}

TEST_CASE("partition validation catches broken clusters") {
  const auto c6 = sub_instance(spr::testing::cycle_graph(6), {0, 2, 4}, 1);
  SprSolution sol = voronoi_solution(c6);
  // Vertex 3 handed to terminal 0 disconnects cluster 0.
  auto clusters = *sol.clusters;
  clusters[3] = 0;
  SprSolution broken{c6, sol.h, clusters};
  CHECK_FALSE(validate_solution(broken).passed("clusters-connected"));
  clusters = *sol.clusters;
  clusters[2] = 0;
  SprSolution stolen{c6, sol.h, clusters};
  CHECK_FALSE(validate_solution(stolen).passed("one-terminal-per-cluster"));
}

TEST_CASE("brute force optimal examples") {
  const auto tri = sub_instance(spr::testing::complete_graph(3), {0, 1}, 1);
  const auto best = brute_force_optimal(tri, 1000);
  CHECK(best.partitions_examined == 2);
  CHECK(best.min_stretch == Rational(1));
  CHECK(best.best.h.edge_count() == 1);
  CHECK(best.best.h.edges()[0].w == 3);

  const auto c6 = sub_instance(spr::testing::cycle_graph(6), {0, 2, 4}, 1);
  const auto opt = brute_force_optimal(c6, 1000);
  CHECK(opt.min_stretch == Rational(1));
  CHECK(opt.best.h.edge_count() == 3);
  for (const auto& e : opt.best.h.edges()) CHECK(e.w == 4);

  const auto pet = cage_instance("petersen", 1);
  const auto forced = enumerate_partition_solutions(pet, 10);
  CHECK(forced.size() == 1);

  CHECK_THROWS_AS(enumerate_partition_solutions(c6, 5), CapacityError);
  const auto big = sub_instance(spr::testing::cycle_graph(16), {0, 8}, 1);
  CHECK_THROWS_AS(enumerate_partition_solutions(big, 1'000'000'000), CapacityError);
}

TEST_CASE("enumeration matches an independent connected-partition count") {
  // Path graph 0-1-2-3-4 with terminals at the ends: a cut position among 4
  // edges gives exactly 4 connected 2-partitions.
  std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  const auto path = sub_instance(WeightedGraph::unit(5, e), {0, 4}, 1);
  const auto all = enumerate_partition_solutions(path, 1000);
  CHECK(all.size() == 4);
  for (const auto& s : all) CHECK(validate_solution(s).ok());
}

TEST_CASE("raising an h-edge weight never lowers stretch") {
  Rng rng(5);
  const auto c6 = sub_instance(spr::testing::cycle_graph(6), {0, 2, 4}, 1);
  const auto pet = cage_instance("petersen", 1);
  for (const auto& inst : {c6, pet}) {
    for (const auto& sol : enumerate_partition_solutions(inst, 10000)) {
      const Rational base = stretch(sol).max_ratio;
      std::vector<Edge> edges(sol.h.edges().begin(), sol.h.edges().end());
      for (int trial = 0; trial < 5 && !edges.empty(); ++trial) {
        auto bumped = edges;
        bumped[rng.below(bumped.size())].w += 1 + static_cast<Weight>(rng.below(5));
        const SprSolution heavier{inst, WeightedGraph(sol.h.vertex_count(), bumped), std::nullopt};
        CHECK(stretch(heavier).max_ratio >= base);
      }
    }
  }
}

TEST_CASE("metric MST is valid and spans") {
  const auto inst = cage_instance("mcgee", 1);
  const SprSolution mst = metric_mst_solution(inst);
  CHECK(mst.h.edge_count() == 23);
  CHECK(mst.h.is_connected());
  CHECK(validate_solution(mst).ok());
  CHECK(stretch(mst).max_ratio == oracle_stretch(mst));
}
