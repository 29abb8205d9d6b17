#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "spr/extended.hpp"

namespace spr {

using Vertex = int;
using Weight = std::int64_t;

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Neighbor {
  Vertex vertex;
  Weight weight;
};

// Undirected simple graph with positive integer weights. Edges are stored
// with u < v in lexicographic order and adjacency lists are sorted by
// neighbour index; every canonical choice downstream derives from that order.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  // Throws ArgumentError on self-loops, parallel edges, out-of-range
  // endpoints or non-positive weights. Edge orientation and order are free.
  WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges);

  // Unit-weight convenience constructor.
  static WeightedGraph unit(std::size_t vertex_count, std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  std::optional<Weight> weight(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return weight(u, v).has_value(); }
  bool contains(Vertex v) const { return v >= 0 && static_cast<std::size_t>(v) < vertex_count_; }

  bool is_unit_weight() const;
  // Every vertex has exactly `degree` neighbours.
  bool is_regular(std::size_t degree) const;
  bool is_connected() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

// Vertex sequence with its cached length. Consecutive vertices are adjacent
// in the graph the path was built against; repeated vertices are allowed
// (walks) and reported through is_simple().
class Path {
 public:
  Path() = default;

  // Throws ArgumentError if a consecutive pair is not an edge of g.
  static Path from_vertices(const WeightedGraph& g, std::vector<Vertex> vertices);
  static Path single(Vertex v) { return Path({v}, 0); }

  std::span<const Vertex> vertices() const { return vertices_; }
  Length length() const { return length_; }
  std::size_t edge_count() const { return vertices_.empty() ? 0 : vertices_.size() - 1; }
  bool empty() const { return vertices_.empty(); }
  Vertex front() const { return vertices_.front(); }
  Vertex back() const { return vertices_.back(); }
  bool is_simple() const;

  // Undirected edges as (min, max) pairs in traversal order (repeats kept).
  std::vector<std::pair<Vertex, Vertex>> edge_pairs() const;
  // Sub-path over vertex positions [first, last].
  Path slice(const WeightedGraph& g, std::size_t first, std::size_t last) const;
  Path reversed() const;

  friend bool operator==(const Path& a, const Path& b) { return a.vertices_ == b.vertices_; }
  // Lexicographic on the vertex sequence.
  friend auto operator<=>(const Path& a, const Path& b) { return a.vertices_ <=> b.vertices_; }

 private:
  Path(std::vector<Vertex> vertices, Length length) : vertices_(std::move(vertices)), length_(length) {}
  friend Path concat(std::span<const Path> parts);

  std::vector<Vertex> vertices_;
  Length length_ = 0;
};

// Single-source distances; unreachable vertices are infinite.
std::vector<ExtLength> distances_from(const WeightedGraph& g, Vertex source);

ExtLength distance(const WeightedGraph& g, Vertex u, Vertex v);

// Minimum-length u-v path; among ties the lexicographically smallest vertex
// sequence. Throws DisconnectedPairError when v is unreachable.
Path shortest_path(const WeightedGraph& g, Vertex u, Vertex v);

// As above, reusing a precomputed distance row towards v.
Path shortest_path_towards(const WeightedGraph& g, Vertex u, Vertex v, std::span<const ExtLength> dist_to_v);

// Minimum total weight of a simple cycle, infinity for forests. For each edge
// (u,v) the cycle length is w(u,v) + dist(u,v) with that edge removed.
ExtLength girth(const WeightedGraph& g);

enum class Dichotomy { subset, long_cycle, violation };

std::string_view to_string(Dichotomy d);

// Either every edge of p appears in q, or |p| + |q| >= girth. p must be a
// shortest path and q must share its endpoints (either orientation).
Dichotomy girth_dichotomy(const WeightedGraph& g, const Path& p, const Path& q);
Dichotomy girth_dichotomy(const Path& p, const Path& q, ExtLength girth);

// Sequential concatenation; consecutive parts must share an endpoint.
Path concat(std::span<const Path> parts);

}  // namespace spr
