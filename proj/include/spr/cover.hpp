#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spr/graph.hpp"
#include "spr/instance.hpp"
#include "spr/rational.hpp"
#include "spr/rng.hpp"
#include "spr/solution.hpp"

namespace spr {

// Image paths of the short h-edges (dist_G(endpoints) <= L), or any family
// of simple paths supplied directly for synthetic experiments.
struct CoverFamily {
  std::vector<Path> paths;
  // Parallel to `paths` when built from a solution.
  std::vector<std::pair<std::size_t, std::size_t>> source_edges;

  std::size_t size() const { return paths.size(); }
  static CoverFamily from_paths(std::vector<Path> paths);
};

enum class CoverReduction { interval, set_cover };

struct CovResult {
  ExtLength value = kInfinity;
  std::vector<std::size_t> witness;  // family indices of a minimum cover
  CoverReduction reduction = CoverReduction::interval;
};

// Edge interval [first, last] over vertex positions of the target path,
// i.e. covering edges first .. last-1.
struct EdgeInterval {
  std::size_t first;
  std::size_t last;
};

CoverFamily build_cover_family(const SprSolution& sol);

// Minimum number of intervals covering edges 0 .. edge_count-1, greedy;
// witness lists indices into `intervals`, ties to the smaller index.
CovResult min_interval_cover(std::span<const std::optional<EdgeInterval>> intervals, std::size_t edge_count);

// Exact minimum set cover of {0 .. universe-1} by brute force over subsets in
// order of size. Throws CapacityError above 20 sets.
CovResult min_set_cover(std::span<const std::vector<std::size_t>> sets, std::size_t universe);

// Minimum number of family members whose union contains every edge of p.
// Uses the interval reduction when every member meets p in a contiguous
// block of edges, else exact set cover (at most 20 intersecting members).
CovResult cov(const Path& p, const CoverFamily& family);

// Edge positions of p (0-based) that `member` traverses.
std::vector<std::size_t> intersect_edges(const Path& p, const Path& member);

// Splits a unit-weight path into floor(|p|/s) pieces of s edges, the last one
// absorbing the remainder. Throws ArgumentError if s < 1 or s > |p|.
std::vector<Path> decompose(const WeightedGraph& g, const Path& p, std::size_t s);

struct Superadditivity {
  ExtLength lhs;
  Length rhs;
  bool holds;
};

// cov(p) >= sum over pieces of (cov(piece) - 1). Requires cov(p) finite.
Superadditivity check_superadditivity(const WeightedGraph& g, const Path& p, const CoverFamily& family, std::size_t s);

// Non-backtracking sampler: uniform start, uniform first step, then uniform
// among the neighbours other than the previous vertex. Requires minimum
// degree 2; `length` must be below the girth so samples are simple paths.
class NonBacktrackingSampler {
 public:
  explicit NonBacktrackingSampler(const WeightedGraph& g);

  ExtLength girth() const { return girth_; }
  Path sample(std::size_t length, Rng& rng) const;

 private:
  const WeightedGraph* graph_;
  ExtLength girth_;
};

Path sample_nb_path(const WeightedGraph& g, std::size_t length, std::uint64_t seed);

// Oriented simple paths with s edges, by exhaustive non-backtracking
// enumeration. Equals n * 3 * 2^(s-1) on cubic graphs when s < girth.
std::uint64_t count_length_s_paths(const WeightedGraph& g, std::size_t s);

// Visits every oriented simple path with `length` edges, starting vertices
// ascending and neighbours ascending (lexicographic order). Stops when the
// visitor returns false.
template <typename Visitor>
void for_each_simple_path(const WeightedGraph& g, std::size_t length, Visitor&& visit);

// Contiguous length-s windows of a simple path with r edges: max(0, r-s+1).
std::uint64_t coverable_window_count(const Path& qpath, std::size_t s);

// Longest run of consecutive edges with both endpoints in the core
// (vertices below core_vertex_count); strips the pendant edges of image paths.
std::size_t core_edge_run(const Path& member, std::size_t core_vertex_count);

// Sum over members of max(0, core_edge_run - s + 1).
std::uint64_t family_window_count(const CoverFamily& family, std::size_t s, std::size_t core_vertex_count);

struct CovDistribution {
  std::size_t trials = 0;
  std::size_t at_least_two = 0;  // includes uncoverable samples
  std::size_t uncovered = 0;
  double fraction_at_least_two = 0;
  double uncovered_fraction = 0;
  double mean_finite_cov = 0;  // NaN-free: 0 when no finite sample
  std::uint64_t window_count = 0;
  std::uint64_t oriented_path_count = 0;  // n * 3 * 2^(s-1)
  // 1 - 2 * windows / oriented count: each unoriented window is hit by two
  // oriented samples.
  double analytic_bound = 0;
  // The coarser 1 - 4k * L / (k * 3 * 2^(s-1)) form.
  double paper_form_bound = 0;
  double sigma = 0;  // binomial standard deviation at the analytic bound
};

// Monte Carlo estimate of Pr[cov(P) >= 2] for non-backtracking length-s
// paths in the core. Trial t draws from Rng(mix_seed(seed, t)).
CovDistribution estimate_cov_distribution(const Instance& inst, const CoverFamily& family, std::size_t s,
                                          std::size_t trials, std::uint64_t seed, unsigned threads = 0);

struct HighCovPath {
  Path path;
  CovResult cov;
  bool exhaustive;
  std::uint64_t candidates;
};

// Maximiser of cov over length-m core paths: exhaustive when the oriented
// count is within `budget`, else the best of `budget` samples. Infinity
// beats every finite value; ties go to the lexicographically smaller path.
HighCovPath find_high_cov_path(const Instance& inst, const CoverFamily& family, std::size_t m, std::uint64_t budget,
                               std::uint64_t seed = 0);

// ---------------------------------------------------------------------------

template <typename Visitor>
void for_each_simple_path(const WeightedGraph& g, std::size_t length, Visitor&& visit) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> stack;
  std::vector<char> on_path(n, 0);
  bool keep_going = true;
  auto extend = [&](auto&& self) -> void {
    if (!keep_going) return;
    if (stack.size() == length + 1) {
      keep_going = visit(std::as_const(stack));
      return;
    }
    for (const auto& nb : g.neighbors(stack.back())) {
      if (on_path[nb.vertex]) continue;
      on_path[nb.vertex] = 1;
      stack.push_back(nb.vertex);
      self(self);
      stack.pop_back();
      on_path[nb.vertex] = 0;
      if (!keep_going) return;
    }
  };
  for (std::size_t v = 0; v < n && keep_going; ++v) {
    stack.assign(1, static_cast<Vertex>(v));
    on_path[v] = 1;
    extend(extend);
    on_path[v] = 0;
  }
}

}  // namespace spr
