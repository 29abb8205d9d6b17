#include "spr/graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <unordered_set>

#include "spr/errors.hpp"

namespace spr {

namespace {

using QueueEntry = std::pair<Length, Vertex>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

std::string edge_text(Vertex u, Vertex v) { return "(" + std::to_string(u) + "," + std::to_string(v) + ")"; }

// Dijkstra from `source` ignoring the undirected edge {skip_u, skip_v};
// returns dist(source, target) or infinity, giving up once every remaining
// label is >= cutoff.
ExtLength bounded_distance(const WeightedGraph& g, Vertex source, Vertex target, Vertex skip_u, Vertex skip_v,
                           Length cutoff, std::vector<Length>& dist, std::vector<Vertex>& touched) {
  constexpr Length kUnset = -1;
  for (Vertex t : touched) dist[t] = kUnset;
  touched.clear();
  MinQueue queue;
  dist[source] = 0;
  touched.push_back(source);
  queue.emplace(0, source);
  while (!queue.empty()) {
    auto [d, x] = queue.top();
    queue.pop();
    if (d != dist[x]) continue;
    if (d >= cutoff) break;
    if (x == target) return d;
    for (const auto& nb : g.neighbors(x)) {
      if ((x == skip_u && nb.vertex == skip_v) || (x == skip_v && nb.vertex == skip_u)) continue;
      Length nd = d + nb.weight;
      if (nd >= cutoff) continue;
      if (dist[nb.vertex] == kUnset || nd < dist[nb.vertex]) {
        if (dist[nb.vertex] == kUnset) touched.push_back(nb.vertex);
        dist[nb.vertex] = nd;
        queue.emplace(nd, nb.vertex);
      }
    }
  }
  return kInfinity;
}

void require_vertex(const WeightedGraph& g, Vertex v) {
  if (!g.contains(v)) throw ArgumentError("vertex " + std::to_string(v) + " not in graph");
}

}  // namespace

WeightedGraph::WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (!contains(e.u) || !contains(e.v)) throw ArgumentError("edge endpoint out of range: " + edge_text(e.u, e.v));
    if (e.u == e.v) throw ArgumentError("self-loop at vertex " + std::to_string(e.u));
    if (e.w < 1) throw ArgumentError("non-positive weight on edge " + edge_text(e.u, e.v));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      throw ArgumentError("parallel edge " + edge_text(edges_[i].u, edges_[i].v));
    }
  }
  std::vector<std::size_t> degree(vertex_count_, 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(vertex_count_ + 1, 0);
  for (std::size_t v = 0; v < vertex_count_; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.w};
    adjacency_[cursor[e.v]++] = {e.u, e.w};
  }
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    std::sort(adjacency_.begin() + offsets_[v], adjacency_.begin() + offsets_[v + 1],
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
  }
}

WeightedGraph WeightedGraph::unit(std::size_t vertex_count, std::span<const std::pair<Vertex, Vertex>> edges) {
  std::vector<Edge> weighted;
  weighted.reserve(edges.size());
  for (auto [u, v] : edges) weighted.push_back({u, v, 1});
  return WeightedGraph(vertex_count, std::move(weighted));
}

std::span<const Neighbor> WeightedGraph::neighbors(Vertex v) const {
  if (!contains(v)) throw ArgumentError("vertex " + std::to_string(v) + " not in graph");
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::optional<Weight> WeightedGraph::weight(Vertex u, Vertex v) const {
  if (!contains(u) || !contains(v)) return std::nullopt;
  auto nbs = neighbors(u);
  auto it = std::lower_bound(nbs.begin(), nbs.end(), v, [](const Neighbor& n, Vertex x) { return n.vertex < x; });
  if (it == nbs.end() || it->vertex != v) return std::nullopt;
  return it->weight;
}

bool WeightedGraph::is_unit_weight() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.w == 1; });
}

bool WeightedGraph::is_regular(std::size_t d) const {
  for (std::size_t v = 0; v < vertex_count_; ++v) {
    if (offsets_[v + 1] - offsets_[v] != d) return false;
  }
  return true;
}

bool WeightedGraph::is_connected() const {
  if (vertex_count_ == 0) return true;
  std::vector<char> seen(vertex_count_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (const auto& nb : neighbors(x)) {
      if (!seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++reached;
        stack.push_back(nb.vertex);
      }
    }
  }
  return reached == vertex_count_;
}

Path Path::from_vertices(const WeightedGraph& g, std::vector<Vertex> vertices) {
  if (vertices.empty()) throw ArgumentError("path needs at least one vertex");
  require_vertex(g, vertices.front());
  Length length = 0;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    auto w = g.weight(vertices[i - 1], vertices[i]);
    if (!w) throw ArgumentError("path step " + edge_text(vertices[i - 1], vertices[i]) + " is not an edge");
    length += *w;
  }
  return Path(std::move(vertices), length);
}

bool Path::is_simple() const {
  std::vector<Vertex> sorted(vertices_);
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

std::vector<std::pair<Vertex, Vertex>> Path::edge_pairs() const {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    pairs.emplace_back(std::min(vertices_[i - 1], vertices_[i]), std::max(vertices_[i - 1], vertices_[i]));
  }
  return pairs;
}

Path Path::slice(const WeightedGraph& g, std::size_t first, std::size_t last) const {
  if (first > last || last >= vertices_.size()) throw ArgumentError("slice out of range");
  return from_vertices(g, std::vector<Vertex>(vertices_.begin() + first, vertices_.begin() + last + 1));
}

Path Path::reversed() const { return Path(std::vector<Vertex>(vertices_.rbegin(), vertices_.rend()), length_); }

std::vector<ExtLength> distances_from(const WeightedGraph& g, Vertex source) {
  require_vertex(g, source);
  constexpr Length kUnset = -1;
  std::vector<Length> dist(g.vertex_count(), kUnset);
  MinQueue queue;
  dist[source] = 0;
  queue.emplace(0, source);
  while (!queue.empty()) {
    auto [d, x] = queue.top();
    queue.pop();
    if (d != dist[x]) continue;
    for (const auto& nb : g.neighbors(x)) {
      Length nd = d + nb.weight;
      if (dist[nb.vertex] == kUnset || nd < dist[nb.vertex]) {
        dist[nb.vertex] = nd;
        queue.emplace(nd, nb.vertex);
      }
    }
  }
  std::vector<ExtLength> out;
  out.reserve(dist.size());
  for (Length d : dist) out.push_back(d == kUnset ? kInfinity : ExtLength(d));
  return out;
}

ExtLength distance(const WeightedGraph& g, Vertex u, Vertex v) {
  require_vertex(g, v);
  return distances_from(g, u)[v];
}

Path shortest_path_towards(const WeightedGraph& g, Vertex u, Vertex v, std::span<const ExtLength> dist_to_v) {
  require_vertex(g, u);
  require_vertex(g, v);
  if (dist_to_v[u].is_infinite()) {
    throw DisconnectedPairError("no path between " + std::to_string(u) + " and " + std::to_string(v));
  }
  // Greedy over sorted adjacency: the smallest neighbour that stays on some
  // shortest path gives the lexicographically smallest shortest path.
  std::vector<Vertex> vertices{u};
  Length length = 0;
  Vertex x = u;
  while (x != v) {
    const Length here = dist_to_v[x].value();
    bool advanced = false;
    for (const auto& nb : g.neighbors(x)) {
      if (dist_to_v[nb.vertex].is_finite() && dist_to_v[nb.vertex].value() + nb.weight == here) {
        x = nb.vertex;
        length += nb.weight;
        vertices.push_back(x);
        advanced = true;
        break;
      }
    }
    if (!advanced) throw std::logic_error("distance row inconsistent with graph");
  }
  return Path::from_vertices(g, std::move(vertices));
}

Path shortest_path(const WeightedGraph& g, Vertex u, Vertex v) {
  require_vertex(g, u);
  auto dist = distances_from(g, v);
  return shortest_path_towards(g, u, v, dist);
}

ExtLength girth(const WeightedGraph& g) {
  ExtLength best = kInfinity;
  std::vector<Length> dist(g.vertex_count(), -1);
  std::vector<Vertex> touched;
  for (const auto& e : g.edges()) {
    // Only a strictly shorter cycle can improve `best`.
    const Length cutoff = best.is_finite() ? best.value() - e.w : std::numeric_limits<Length>::max();
    if (cutoff <= 0) continue;
    ExtLength d = bounded_distance(g, e.u, e.v, e.u, e.v, cutoff, dist, touched);
    if (d.is_finite()) best = std::min(best, d + ExtLength(e.w));
  }
  return best;
}

std::string_view to_string(Dichotomy d) {
  switch (d) {
    case Dichotomy::subset:
      return "subset";
    case Dichotomy::long_cycle:
      return "long";
    case Dichotomy::violation:
      return "violation";
  }
  return "?";
}

Dichotomy girth_dichotomy(const Path& p, const Path& q, ExtLength girth_value) {
  if (p.empty() || q.empty()) throw ArgumentError("girth_dichotomy on empty path");
  const bool same = p.front() == q.front() && p.back() == q.back();
  const bool flipped = p.front() == q.back() && p.back() == q.front();
  if (!same && !flipped) throw ArgumentError("paths do not share endpoints");

  auto hash = [](const std::pair<Vertex, Vertex>& e) {
    return std::hash<long long>{}((static_cast<long long>(e.first) << 32) ^ static_cast<unsigned>(e.second));
  };
  std::unordered_set<std::pair<Vertex, Vertex>, decltype(hash)> q_edges(16, hash);
  for (const auto& e : q.edge_pairs()) q_edges.insert(e);
  const auto p_edges = p.edge_pairs();
  if (std::all_of(p_edges.begin(), p_edges.end(), [&](const auto& e) { return q_edges.count(e) > 0; })) {
    return Dichotomy::subset;
  }
  if (ExtLength(p.length() + q.length()) >= girth_value) return Dichotomy::long_cycle;
  return Dichotomy::violation;
}

Dichotomy girth_dichotomy(const WeightedGraph& g, const Path& p, const Path& q) {
  return girth_dichotomy(p, q, girth(g));
}

Path concat(std::span<const Path> parts) {
  if (parts.empty()) throw ArgumentError("concat of no paths");
  std::vector<Vertex> vertices(parts.front().vertices().begin(), parts.front().vertices().end());
  Length length = parts.front().length();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Path& next = parts[i];
    if (next.empty() || next.front() != vertices.back()) {
      throw ArgumentError("concat: part " + std::to_string(i) + " does not start where the previous part ends");
    }
    vertices.insert(vertices.end(), next.vertices().begin() + 1, next.vertices().end());
    length += next.length();
  }
  return Path(std::move(vertices), length);
}

}  // namespace spr
