#pragma once

// Independent oracles and fixtures shared by the test binaries. Nothing here
// calls into the library's search routines.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spr/graph.hpp"
#include "spr/rng.hpp"

namespace spr::testing {

inline WeightedGraph random_graph(std::size_t n, double density, Weight max_weight, Rng& rng) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (static_cast<double>(rng.below(1000)) < density * 1000.0) {
        const Weight w = 1 + static_cast<Weight>(rng.below(static_cast<std::uint64_t>(max_weight)));
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
      }
    }
  }
  return WeightedGraph(n, std::move(edges));
}

// Minimum over all simple u-v paths, found by exhaustive DFS.
inline std::vector<std::vector<ExtLength>> oracle_distances(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<ExtLength>> best(n, std::vector<ExtLength>(n, kInfinity));
  std::vector<char> seen(n, 0);
  std::function<void(std::size_t, Vertex, Length)> dfs = [&](std::size_t src, Vertex v, Length len) {
    if (ExtLength(len) < best[src][v]) best[src][v] = len;
    for (const auto& nb : g.neighbors(v)) {
      if (seen[nb.vertex]) continue;
      seen[nb.vertex] = 1;
      dfs(src, nb.vertex, len + nb.weight);
      seen[nb.vertex] = 0;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    seen.assign(n, 0);
    seen[s] = 1;
    dfs(s, static_cast<Vertex>(s), 0);
  }
  return best;
}

// Minimum weight over all simple cycles: each cycle is found from its
// smallest vertex, closing back to it after at least three vertices.
inline ExtLength oracle_girth(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  ExtLength best = kInfinity;
  std::vector<char> seen(n, 0);
  std::function<void(Vertex, Vertex, Length, std::size_t)> dfs = [&](Vertex root, Vertex v, Length len,
                                                                     std::size_t depth) {
    for (const auto& nb : g.neighbors(v)) {
      if (nb.vertex == root && depth >= 3) {
        if (ExtLength(len + nb.weight) < best) best = len + nb.weight;
        continue;
      }
      if (nb.vertex <= root || seen[nb.vertex]) continue;
      seen[nb.vertex] = 1;
      dfs(root, nb.vertex, len + nb.weight, depth + 1);
      seen[nb.vertex] = 0;
    }
  };
  for (std::size_t r = 0; r < n; ++r) {
    seen.assign(n, 0);
    seen[r] = 1;
    dfs(static_cast<Vertex>(r), static_cast<Vertex>(r), 0, 1);
  }
  return best;
}

inline WeightedGraph cycle_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>((i + 1) % n));
  return WeightedGraph::unit(n, e);
}

inline WeightedGraph complete_graph(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
  }
  return WeightedGraph::unit(n, e);
}

// Textbook Petersen adjacency (outer 5-cycle, spokes, inner pentagram),
// written out independently of the library catalog.
inline WeightedGraph textbook_petersen() {
  const std::vector<std::pair<Vertex, Vertex>> e = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                                    {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  return WeightedGraph::unit(10, e);
}

inline std::filesystem::path temp_dir(const std::string& name) {
  const char* base = std::getenv("SPR_LAB_TEST_TMP");
  std::filesystem::path dir = std::filesystem::path(base ? base : std::filesystem::temp_directory_path().string()) /
                              ("spr_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace spr::testing
