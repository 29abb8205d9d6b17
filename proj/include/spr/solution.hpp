#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "spr/graph.hpp"
#include "spr/instance.hpp"
#include "spr/rational.hpp"
#include "spr/report.hpp"

namespace spr {

// Candidate SPR solution: a weighted graph h on the terminals of `host`
// (vertex i of h is terminal i). When `clusters` is set, the solution came
// from contracting a partition of the core and clusters[v] is the terminal
// index owning core vertex v.
struct SprSolution {
  std::shared_ptr<const Instance> host;
  WeightedGraph h;
  std::optional<std::vector<std::size_t>> clusters;

  bool has_partition() const { return clusters.has_value(); }
};

struct ValidationOptions {
  // Off only for controls such as the metric completion, which exceeds the
  // |E(G)| edge budget on purpose.
  bool enforce_edge_budget = true;
};

// Vertex set, edge budget |E(h)| <= |E(G)|, per-edge weight >= dist_G; for
// partition solutions also cluster connectivity, one attachment per cluster
// and that every h-edge joins clusters adjacent in the core.
CheckReport validate_solution(const SprSolution& sol, const ValidationOptions& options = {});

struct PairStretch {
  std::size_t i;
  std::size_t j;
  ExtLength dist_g;
  ExtLength dist_h;
  Rational ratio;
};

struct StretchReport {
  Rational max_ratio{1};
  std::pair<std::size_t, std::size_t> witness{0, 0};
  std::vector<PairStretch> per_pair;  // i < j, lexicographic
};

// Exact all-pairs stretch over terminal pairs. Disconnected h yields an
// infinite ratio. Parallel over source terminals; output independent of
// `threads` (0 = SPR_LAB_THREADS or 1).
StretchReport stretch(const SprSolution& sol, unsigned threads = 0);

// Concatenation of canonical G-shortest paths between consecutive terminals
// of `hpath` (a vertex sequence of h). Throws ArgumentError if a step is not
// an h-edge.
Path image_path(const SprSolution& sol, const Path& hpath);

// Nearest-attachment partition of the core (ties to the smaller terminal
// index), contracted; h-edges between adjacent clusters weighted by dist_G.
SprSolution voronoi_solution(std::shared_ptr<const Instance> inst);

// Minimum spanning tree of the terminal metric (weights dist_G, ties by
// terminal pair). Satisfies both edge hypotheses but is not a minor.
SprSolution metric_mst_solution(std::shared_ptr<const Instance> inst);

// Complete graph on the terminals with weights dist_G. Stretch 1; exceeds
// the edge budget for k >= 2|E(G)|/(k-1).
SprSolution metric_completion(std::shared_ptr<const Instance> inst);

// Contraction minor of a cluster assignment (core vertex -> terminal index),
// with h-edge weights dist_G of the endpoint terminals.
SprSolution partition_solution(std::shared_ptr<const Instance> inst, std::vector<std::size_t> clusters);

// Every partition of the core into connected clusters holding exactly one
// attachment vertex each. Throws CapacityError when more than 12 core
// vertices lack a terminal or when k^(free vertices) exceeds `budget`.
std::vector<SprSolution> enumerate_partition_solutions(std::shared_ptr<const Instance> inst, std::size_t budget);

struct OptimalSpr {
  Rational min_stretch;
  SprSolution best;
  std::size_t partitions_examined;
};

// Minimum stretch over all enumerated partition minors (first minimiser in
// enumeration order).
OptimalSpr brute_force_optimal(std::shared_ptr<const Instance> inst, std::size_t budget);

}  // namespace spr
