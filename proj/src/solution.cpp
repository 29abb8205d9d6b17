#include "spr/solution.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>
#include <tuple>

#include "spr/errors.hpp"
#include "spr/parallel.hpp"

namespace spr {

namespace {

const Instance& host_of(const SprSolution& sol) {
  if (!sol.host) throw ArgumentError("solution has no host instance");
  return *sol.host;
}

void require_host(const std::shared_ptr<const Instance>& inst) {
  if (!inst) throw ArgumentError("null instance");
}

// Each cluster index in [0, k) induces a connected subgraph of the core.
bool clusters_connected(const WeightedGraph& core, const std::vector<std::size_t>& clusters, std::size_t k) {
  const std::size_t n = core.vertex_count();
  std::vector<char> seen(n, 0);
  std::vector<char> cluster_started(k, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    const std::size_t c = clusters[s];
    if (cluster_started[c]) return false;  // second component of the same cluster
    cluster_started[c] = 1;
    std::vector<Vertex> stack{static_cast<Vertex>(s)};
    seen[s] = 1;
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (const auto& nb : core.neighbors(x)) {
        if (!seen[nb.vertex] && clusters[nb.vertex] == c) {
          seen[nb.vertex] = 1;
          stack.push_back(nb.vertex);
        }
      }
    }
  }
  return true;
}

Weight metric_weight(const Instance& inst, std::size_t i, std::size_t j) {
  const ExtLength d = inst.terminal_distance(i, j);
  if (d.is_infinite()) {
    throw DisconnectedPairError("terminals " + std::to_string(i) + " and " + std::to_string(j) + " are disconnected");
  }
  return d.value();
}

}  // namespace

CheckReport validate_solution(const SprSolution& sol, const ValidationOptions& options) {
  const Instance& inst = host_of(sol);
  const std::size_t k = inst.terminal_count();
  CheckReport report;

  report.add("vertex-set", sol.h.vertex_count() == k,
             "|V(h)|=" + std::to_string(sol.h.vertex_count()) + ", |T|=" + std::to_string(k));

  const std::string budget_detail =
      "|E(h)|=" + std::to_string(sol.h.edge_count()) + ", |E(G)|=" + std::to_string(inst.full().edge_count());
  if (options.enforce_edge_budget) {
    report.add("edge-budget", sol.h.edge_count() <= inst.full().edge_count(), budget_detail);
  } else {
    report.add("edge-budget", true, budget_detail + " (not enforced)");
  }

  bool weights_ok = sol.h.vertex_count() == k;
  std::string weight_detail;
  if (weights_ok) {
    for (const auto& e : sol.h.edges()) {
      const ExtLength d = inst.terminal_distance(e.u, e.v);
      if (ExtLength(e.w) < d) {
        weights_ok = false;
        weight_detail = "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") weight " + std::to_string(e.w) +
                        " < dist_G " + d.to_string();
        break;
      }
    }
  }
  report.add("edge-weights", weights_ok, weight_detail);

  if (sol.clusters) {
    const auto& clusters = *sol.clusters;
    const WeightedGraph& core = inst.core();
    const bool shape_ok = clusters.size() == core.vertex_count() &&
                          std::all_of(clusters.begin(), clusters.end(), [&](std::size_t c) { return c < k; });
    report.add("cluster-assignment", shape_ok);
    if (shape_ok) {
      bool own_attachment = true;
      for (std::size_t t = 0; t < k; ++t) {
        if (clusters[inst.attachments()[t]] != t) own_attachment = false;
      }
      report.add("one-terminal-per-cluster", own_attachment);
      report.add("clusters-connected", clusters_connected(core, clusters, k));
      bool adjacency_ok = sol.h.vertex_count() == k;
      if (adjacency_ok) {
        std::vector<char> adjacent(k * k, 0);
        for (const auto& e : core.edges()) {
          adjacent[clusters[e.u] * k + clusters[e.v]] = 1;
          adjacent[clusters[e.v] * k + clusters[e.u]] = 1;
        }
        for (const auto& e : sol.h.edges()) {
          if (!adjacent[static_cast<std::size_t>(e.u) * k + static_cast<std::size_t>(e.v)]) adjacency_ok = false;
        }
      }
      report.add("edges-join-adjacent-clusters", adjacency_ok);
    }
  }
  return report;
}

StretchReport stretch(const SprSolution& sol, unsigned threads) {
  const Instance& inst = host_of(sol);
  const std::size_t k = inst.terminal_count();
  if (sol.h.vertex_count() != k) throw ArgumentError("solution vertex set does not match terminals");

  std::vector<std::vector<ExtLength>> rows(k);
  parallel_for(k, resolve_threads(threads), [&](std::size_t i) {
    rows[i] = distances_from(sol.h, static_cast<Vertex>(i));
  });

  StretchReport report;
  bool first = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const ExtLength dg = inst.terminal_distance(i, j);
      if (dg.is_infinite()) throw DisconnectedPairError("terminals disconnected in G");
      const ExtLength dh = rows[i][j];
      const Rational ratio = Rational::ratio(dh, dg.value());
      report.per_pair.push_back({i, j, dg, dh, ratio});
      if (first || ratio > report.max_ratio) {
        report.max_ratio = ratio;
        report.witness = {i, j};
        first = false;
      }
    }
  }
  return report;
}

Path image_path(const SprSolution& sol, const Path& hpath) {
  const Instance& inst = host_of(sol);
  if (hpath.empty()) throw ArgumentError("empty h-path");
  const auto vs = hpath.vertices();
  for (Vertex t : vs) {
    if (!sol.h.contains(t)) throw ArgumentError("h-path vertex " + std::to_string(t) + " is not a terminal");
  }
  if (vs.size() == 1) return Path::single(inst.terminal_vertex(vs[0]));
  std::vector<Path> parts;
  parts.reserve(vs.size() - 1);
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (!sol.h.has_edge(vs[i - 1], vs[i])) {
      throw ArgumentError("h-path step (" + std::to_string(vs[i - 1]) + "," + std::to_string(vs[i]) + ") not in h");
    }
    parts.push_back(shortest_path(inst.full(), inst.terminal_vertex(vs[i - 1]), inst.terminal_vertex(vs[i])));
  }
  return concat(parts);
}

SprSolution partition_solution(std::shared_ptr<const Instance> inst, std::vector<std::size_t> clusters) {
  require_host(inst);
  const std::size_t k = inst->terminal_count();
  if (clusters.size() != inst->core().vertex_count()) throw ArgumentError("cluster assignment size mismatch");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& e : inst->core().edges()) {
    std::size_t a = clusters[e.u], b = clusters[e.v];
    if (a >= k || b >= k) throw ArgumentError("cluster index out of range");
    if (a == b) continue;
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b), metric_weight(*inst, a, b)});
  }
  SprSolution sol{inst, WeightedGraph(k, std::move(edges)), std::move(clusters)};
  return sol;
}

SprSolution voronoi_solution(std::shared_ptr<const Instance> inst) {
  require_host(inst);
  const WeightedGraph& core = inst->core();
  const std::size_t n = core.vertex_count();
  using Key = std::pair<Length, std::size_t>;  // (distance, terminal index)
  using Entry = std::pair<Key, Vertex>;
  std::vector<std::optional<Key>> best(n);
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (std::size_t t = 0; t < inst->terminal_count(); ++t) {
    const Vertex a = inst->attachments()[t];
    Key key{0, t};
    if (!best[a] || key < *best[a]) {
      best[a] = key;
      queue.emplace(key, a);
    }
  }
  while (!queue.empty()) {
    auto [key, x] = queue.top();
    queue.pop();
    if (key != *best[x]) continue;
    for (const auto& nb : core.neighbors(x)) {
      Key next{key.first + nb.weight, key.second};
      if (!best[nb.vertex] || next < *best[nb.vertex]) {
        best[nb.vertex] = next;
        queue.emplace(next, nb.vertex);
      }
    }
  }
  std::vector<std::size_t> clusters(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!best[v]) throw DisconnectedPairError("core vertex " + std::to_string(v) + " reaches no terminal");
    clusters[v] = best[v]->second;
  }
  return partition_solution(std::move(inst), std::move(clusters));
}

SprSolution metric_mst_solution(std::shared_ptr<const Instance> inst) {
  require_host(inst);
  const std::size_t k = inst->terminal_count();
  std::vector<std::tuple<Weight, std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) candidates.emplace_back(metric_weight(*inst, i, j), i, j);
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Edge> edges;
  for (auto [w, i, j] : candidates) {
    const std::size_t ri = find(i), rj = find(j);
    if (ri == rj) continue;
    parent[ri] = rj;
    edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), w});
  }
  return SprSolution{inst, WeightedGraph(k, std::move(edges)), std::nullopt};
}

SprSolution metric_completion(std::shared_ptr<const Instance> inst) {
  require_host(inst);
  const std::size_t k = inst->terminal_count();
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      edges.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), metric_weight(*inst, i, j)});
    }
  }
  return SprSolution{inst, WeightedGraph(k, std::move(edges)), std::nullopt};
}

std::vector<SprSolution> enumerate_partition_solutions(std::shared_ptr<const Instance> inst, std::size_t budget) {
  require_host(inst);
  const WeightedGraph& core = inst->core();
  const std::size_t n = core.vertex_count();
  const std::size_t k = inst->terminal_count();
  std::vector<Vertex> free_vertices;
  for (std::size_t v = 0; v < n; ++v) {
    if (!inst->terminal_at(static_cast<Vertex>(v))) free_vertices.push_back(static_cast<Vertex>(v));
  }
  if (free_vertices.size() > 12) {
    throw CapacityError("partition enumeration limited to 12 non-terminal core vertices, got " +
                        std::to_string(free_vertices.size()));
  }
  std::size_t total = 1;
  for (std::size_t i = 0; i < free_vertices.size(); ++i) {
    if (total > budget / std::max<std::size_t>(k, 1)) {
      throw CapacityError("partition enumeration exceeds budget of " + std::to_string(budget) + " assignments");
    }
    total *= k;
  }
  if (total > budget) throw CapacityError("partition enumeration exceeds budget");

  std::vector<std::size_t> clusters(n, 0);
  for (std::size_t t = 0; t < k; ++t) clusters[inst->attachments()[t]] = t;
  std::vector<std::size_t> digits(free_vertices.size(), 0);
  std::vector<SprSolution> out;
  for (std::size_t index = 0; index < total; ++index) {
    // Odometer with the first free vertex most significant.
    std::size_t rest = index;
    for (std::size_t d = free_vertices.size(); d-- > 0;) {
      digits[d] = rest % k;
      rest /= k;
    }
    for (std::size_t d = 0; d < free_vertices.size(); ++d) clusters[free_vertices[d]] = digits[d];
    if (!clusters_connected(core, clusters, k)) continue;
    out.push_back(partition_solution(inst, clusters));
  }
  return out;
}

OptimalSpr brute_force_optimal(std::shared_ptr<const Instance> inst, std::size_t budget) {
  auto solutions = enumerate_partition_solutions(inst, budget);
  if (solutions.empty()) throw ArgumentError("instance admits no connected partition");
  std::size_t best = 0;
  Rational best_ratio = Rational::infinity();
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    const Rational r = stretch(solutions[i], 1).max_ratio;
    if (i == 0 || r < best_ratio) {
      best_ratio = r;
      best = i;
    }
  }
  return {best_ratio, std::move(solutions[best]), solutions.size()};
}

}  // namespace spr
