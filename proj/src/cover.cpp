#include "spr/cover.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "spr/errors.hpp"
#include "spr/parallel.hpp"

namespace spr {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<Vertex, Vertex>& e) const {
    return std::hash<long long>{}((static_cast<long long>(e.first) << 32) ^ static_cast<unsigned>(e.second));
  }
};

using Bits = std::vector<std::uint64_t>;

}  // namespace

CoverFamily CoverFamily::from_paths(std::vector<Path> paths) {
  CoverFamily family;
  family.paths = std::move(paths);
  return family;
}

CoverFamily build_cover_family(const SprSolution& sol) {
  if (!sol.host) throw ArgumentError("solution has no host instance");
  const Instance& inst = *sol.host;
  const Rational threshold = inst.params().L;
  CoverFamily family;
  for (const auto& e : sol.h.edges()) {
    const ExtLength d = inst.terminal_distance(e.u, e.v);
    if (d.is_infinite() || Rational(d.value()) > threshold) continue;
    family.paths.push_back(shortest_path(inst.full(), inst.terminal_vertex(e.u), inst.terminal_vertex(e.v)));
    family.source_edges.emplace_back(e.u, e.v);
  }
  return family;
}

CovResult min_interval_cover(std::span<const std::optional<EdgeInterval>> intervals, std::size_t edge_count) {
  CovResult result;
  result.reduction = CoverReduction::interval;
  std::size_t covered = 0;
  while (covered < edge_count) {
    std::size_t best_end = covered;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
      const auto& iv = intervals[i];
      if (iv && iv->first <= covered && iv->last > best_end) {
        best_end = iv->last;
        best = i;
      }
    }
    if (!best) {
      result.value = kInfinity;
      result.witness.clear();
      return result;
    }
    result.witness.push_back(*best);
    covered = best_end;
  }
  result.value = static_cast<Length>(result.witness.size());
  return result;
}

CovResult min_set_cover(std::span<const std::vector<std::size_t>> sets, std::size_t universe) {
  if (sets.size() > 20) {
    throw CapacityError("exact set cover limited to 20 sets, got " + std::to_string(sets.size()));
  }
  CovResult result;
  result.reduction = CoverReduction::set_cover;
  if (universe == 0) {
    result.value = 0;
    return result;
  }
  const std::size_t words = (universe + 63) / 64;
  std::vector<Bits> masks(sets.size(), Bits(words, 0));
  Bits all(words, 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t x : sets[i]) {
      if (x >= universe) throw ArgumentError("set element outside universe");
      masks[i][x / 64] |= std::uint64_t{1} << (x % 64);
      all[x / 64] |= std::uint64_t{1} << (x % 64);
    }
  }
  Bits full(words, ~std::uint64_t{0});
  if (universe % 64 != 0) full.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  if (all != full) {
    result.value = kInfinity;
    return result;
  }
  // Combinations of each size in lexicographic order; the first hit is
  // minimum and lexicographically smallest.
  const std::size_t count = sets.size();
  for (std::size_t size = 1; size <= count; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      Bits acc(words, 0);
      for (std::size_t i : pick) {
        for (std::size_t w = 0; w < words; ++w) acc[w] |= masks[i][w];
      }
      if (acc == full) {
        result.value = static_cast<Length>(size);
        result.witness = pick;
        return result;
      }
      std::size_t pos = size;
      while (pos > 0 && pick[pos - 1] == count - size + pos - 1) --pos;
      if (pos == 0) break;
      ++pick[pos - 1];
      for (std::size_t i = pos; i < size; ++i) pick[i] = pick[i - 1] + 1;
    }
  }
  result.value = kInfinity;
  return result;
}

std::vector<std::size_t> intersect_edges(const Path& p, const Path& member) {
  std::unordered_set<std::pair<Vertex, Vertex>, PairHash> member_edges;
  for (const auto& e : member.edge_pairs()) member_edges.insert(e);
  std::vector<std::size_t> positions;
  const auto p_edges = p.edge_pairs();
  for (std::size_t i = 0; i < p_edges.size(); ++i) {
    if (member_edges.count(p_edges[i])) positions.push_back(i);
  }
  return positions;
}

CovResult cov(const Path& p, const CoverFamily& family) {
  if (!p.is_simple()) throw ArgumentError("cov target path must be simple");
  const std::size_t m = p.edge_count();
  std::vector<std::vector<std::size_t>> hits(family.size());
  bool contiguous = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    hits[i] = intersect_edges(p, family.paths[i]);
    if (!hits[i].empty() && hits[i].back() - hits[i].front() + 1 != hits[i].size()) contiguous = false;
  }
  if (contiguous) {
    std::vector<std::optional<EdgeInterval>> intervals(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (!hits[i].empty()) intervals[i] = EdgeInterval{hits[i].front(), hits[i].back() + 1};
    }
    return min_interval_cover(intervals, m);
  }
  // A member whose hit set lies inside another's (the earlier one on ties)
  // never needs to be in a minimum cover, so only maximal sets go to the
  // exact search.
  std::vector<std::size_t> members;
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (hits[i].empty()) continue;
    bool dominated = false;
    for (std::size_t j = 0; j < family.size() && !dominated; ++j) {
      if (j == i || hits[j].size() < hits[i].size()) continue;
      if (hits[j].size() == hits[i].size() && j > i) continue;
      dominated = std::includes(hits[j].begin(), hits[j].end(), hits[i].begin(), hits[i].end());
    }
    if (!dominated) members.push_back(i);
  }
  for (std::size_t i : members) sets.push_back(hits[i]);
  CovResult result = min_set_cover(sets, m);
  for (auto& w : result.witness) w = members[w];
  return result;
}

std::vector<Path> decompose(const WeightedGraph& g, const Path& p, std::size_t s) {
  const std::size_t m = p.edge_count();
  if (s < 1 || s > m) {
    throw ArgumentError("decompose needs 1 <= s <= |p| (s=" + std::to_string(s) + ", |p|=" + std::to_string(m) + ")");
  }
  const std::size_t parts = m / s;
  std::vector<Path> pieces;
  pieces.reserve(parts);
  for (std::size_t j = 0; j < parts; ++j) {
    const std::size_t first = j * s;
    const std::size_t last = j + 1 == parts ? m : (j + 1) * s;
    pieces.push_back(p.slice(g, first, last));
  }
  return pieces;
}

Superadditivity check_superadditivity(const WeightedGraph& g, const Path& p, const CoverFamily& family, std::size_t s) {
  const CovResult whole = cov(p, family);
  if (whole.value.is_infinite()) throw PreconditionError("superadditivity check needs cov(p) finite");
  Length rhs = 0;
  for (const Path& piece : decompose(g, p, s)) rhs += cov(piece, family).value.value() - 1;
  return {whole.value, rhs, whole.value >= ExtLength(rhs)};
}

NonBacktrackingSampler::NonBacktrackingSampler(const WeightedGraph& g) : graph_(&g), girth_(spr::girth(g)) {
  if (g.vertex_count() == 0) throw PreconditionError("sampler on empty graph");
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(static_cast<Vertex>(v)) < 2) {
      throw PreconditionError("non-backtracking sampler needs minimum degree 2");
    }
  }
}

Path NonBacktrackingSampler::sample(std::size_t length, Rng& rng) const {
  if (ExtLength(static_cast<Length>(length)) >= girth_) {
    throw PreconditionError("path length " + std::to_string(length) + " >= girth " + girth_.to_string() +
                            "; sampled walk could self-intersect");
  }
  const WeightedGraph& g = *graph_;
  std::vector<Vertex> vertices;
  vertices.reserve(length + 1);
  vertices.push_back(static_cast<Vertex>(rng.below(g.vertex_count())));
  if (length >= 1) {
    auto nbs = g.neighbors(vertices.back());
    vertices.push_back(nbs[rng.below(nbs.size())].vertex);
  }
  while (vertices.size() < length + 1) {
    const Vertex prev = vertices[vertices.size() - 2];
    auto nbs = g.neighbors(vertices.back());
    std::size_t pick = rng.below(nbs.size() - 1);
    // Skip over the previous vertex in the sorted neighbour list.
    for (std::size_t i = 0; i <= pick; ++i) {
      if (nbs[i].vertex == prev) {
        ++pick;
        break;
      }
    }
    vertices.push_back(nbs[pick].vertex);
  }
  return Path::from_vertices(g, std::move(vertices));
}

Path sample_nb_path(const WeightedGraph& g, std::size_t length, std::uint64_t seed) {
  NonBacktrackingSampler sampler(g);
  Rng rng(seed);
  return sampler.sample(length, rng);
}

std::uint64_t count_length_s_paths(const WeightedGraph& g, std::size_t s) {
  std::uint64_t count = 0;
  for_each_simple_path(g, s, [&](const std::vector<Vertex>&) {
    ++count;
    return true;
  });
  return count;
}

std::uint64_t coverable_window_count(const Path& qpath, std::size_t s) {
  const std::size_t r = qpath.edge_count();
  return r >= s ? r - s + 1 : 0;
}

std::size_t core_edge_run(const Path& member, std::size_t core_vertex_count) {
  std::size_t best = 0, run = 0;
  const auto vs = member.vertices();
  for (std::size_t i = 1; i < vs.size(); ++i) {
    const bool core_edge = static_cast<std::size_t>(vs[i - 1]) < core_vertex_count &&
                           static_cast<std::size_t>(vs[i]) < core_vertex_count;
    run = core_edge ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

std::uint64_t family_window_count(const CoverFamily& family, std::size_t s, std::size_t core_vertex_count) {
  std::uint64_t total = 0;
  for (const Path& q : family.paths) {
    const std::size_t r = core_edge_run(q, core_vertex_count);
    if (r >= s) total += r - s + 1;
  }
  return total;
}

CovDistribution estimate_cov_distribution(const Instance& inst, const CoverFamily& family, std::size_t s,
                                          std::size_t trials, std::uint64_t seed, unsigned threads) {
  const WeightedGraph& core = inst.core();
  NonBacktrackingSampler sampler(core);
  if (ExtLength(static_cast<Length>(s)) >= sampler.girth()) {
    throw PreconditionError("estimate_cov_distribution needs s < girth(core)");
  }
  std::vector<ExtLength> values(trials, kInfinity);
  parallel_for(trials, resolve_threads(threads), [&](std::size_t t) {
    Rng rng(mix_seed(seed, t));
    values[t] = cov(sampler.sample(s, rng), family).value;
  });

  CovDistribution out;
  out.trials = trials;
  Length finite_sum = 0;
  std::size_t finite = 0;
  for (const ExtLength& v : values) {
    if (v.is_infinite()) {
      ++out.uncovered;
      ++out.at_least_two;
      continue;
    }
    if (v.value() >= 2) ++out.at_least_two;
    finite_sum += v.value();
    ++finite;
  }
  if (trials > 0) {
    out.fraction_at_least_two = static_cast<double>(out.at_least_two) / static_cast<double>(trials);
    out.uncovered_fraction = static_cast<double>(out.uncovered) / static_cast<double>(trials);
  }
  out.mean_finite_cov = finite > 0 ? static_cast<double>(finite_sum) / static_cast<double>(finite) : 0.0;

  const std::size_t n = core.vertex_count();
  if (core.is_regular(3) && s >= 1) {
    out.oriented_path_count = static_cast<std::uint64_t>(n) * 3 * (std::uint64_t{1} << (s - 1));
  } else {
    out.oriented_path_count = count_length_s_paths(core, s);
  }
  out.window_count = family_window_count(family, s, n);
  const double total = static_cast<double>(out.oriented_path_count);
  out.analytic_bound = 1.0 - 2.0 * static_cast<double>(out.window_count) / total;
  out.paper_form_bound = 1.0 - 4.0 * static_cast<double>(inst.terminal_count()) * inst.params().L.to_double() / total;
  const double p0 = std::clamp(out.analytic_bound, 0.0, 1.0);
  out.sigma = trials > 0 ? std::sqrt(p0 * (1.0 - p0) / static_cast<double>(trials)) : 0.0;
  return out;
}

HighCovPath find_high_cov_path(const Instance& inst, const CoverFamily& family, std::size_t m, std::uint64_t budget,
                               std::uint64_t seed) {
  const WeightedGraph& core = inst.core();
  const std::uint64_t count = count_length_s_paths(core, m);
  if (count == 0) throw ArgumentError("core has no simple path with " + std::to_string(m) + " edges");

  std::optional<HighCovPath> best;
  if (count <= budget) {
    for_each_simple_path(core, m, [&](const std::vector<Vertex>& vs) {
      Path candidate = Path::from_vertices(core, vs);
      CovResult c = cov(candidate, family);
      if (!best || c.value > best->cov.value) best = HighCovPath{std::move(candidate), std::move(c), true, count};
      // Nothing beats infinity, and enumeration is already lexicographic.
      return best->cov.value.is_finite();
    });
    return *best;
  }

  NonBacktrackingSampler sampler(core);
  for (std::uint64_t i = 0; i < budget; ++i) {
    Rng rng(mix_seed(seed, i));
    Path candidate = sampler.sample(m, rng);
    CovResult c = cov(candidate, family);
    if (!best || c.value > best->cov.value || (c.value == best->cov.value && candidate < best->path)) {
      best = HighCovPath{std::move(candidate), std::move(c), false, budget};
    }
  }
  if (!best) throw ArgumentError("find_high_cov_path needs a positive budget");
  return *best;
}

}  // namespace spr
