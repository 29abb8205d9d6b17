#include "spr/instance.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "spr/errors.hpp"
#include "spr/rng.hpp"

namespace spr {

std::string_view to_string(ParamMode mode) { return mode == ParamMode::paper ? "paper" : "custom"; }

ParamMode parse_param_mode(std::string_view text) {
  if (text == "paper") return ParamMode::paper;
  if (text == "custom") return ParamMode::custom;
  throw ArgumentError("unknown parameter mode '" + std::string(text) + "'");
}

bool InstanceParams::flag(std::string_view name) const {
  for (const auto& f : flags) {
    if (f.name == name) return f.value;
  }
  throw ArgumentError("unknown precondition flag '" + std::string(name) + "'");
}

void evaluate_flags(InstanceParams& p) {
  bool exponent_ok;
  if (p.S - 1 >= 62) {
    exponent_ok = true;
  } else if (p.S < 1) {
    exponent_ok = false;
  } else {
    exponent_ok = static_cast<double>(std::uint64_t{1} << (p.S - 1)) > p.log2_k;
  }
  p.flags = {
      {"3M < g/2", 6 * p.M < p.g},
      {"S < g", p.S < p.g},
      {"M + L < g", Rational(p.M) + p.L < Rational(p.g)},
      {"2^(S-1) > log k", exponent_ok},
  };
}

namespace {

InstanceParams paper_params(std::uint64_t k, double log2_k, Rational threshold, Length girth) {
  const double loglog = std::log2(log2_k);
  InstanceParams p;
  p.k = k;
  p.log2_k = log2_k;
  p.mode = ParamMode::paper;
  p.M = static_cast<Length>(std::floor(std::sqrt(log2_k * loglog)));
  p.S = static_cast<Length>(std::floor(10.0 * loglog));
  p.L = threshold;
  p.g = girth;
  if (p.M < 1 || p.S < 1) {
    throw ParameterError("paper-mode parameters degenerate (M=" + std::to_string(p.M) + ", S=" + std::to_string(p.S) +
                         "); k too small");
  }
  evaluate_flags(p);
  return p;
}

}  // namespace

InstanceParams derive_params(std::uint64_t k, ParamMode mode, const ParamOverrides& overrides) {
  if (mode == ParamMode::paper) {
    if (overrides.M || overrides.S || overrides.L || overrides.g) {
      throw ParameterError("paper mode does not accept overrides");
    }
    if (k < 4) throw ParameterError("paper mode needs k >= 4");
    const bool power_of_two = (k & (k - 1)) == 0;
    if (power_of_two) {
      const auto exponent = static_cast<unsigned>(std::countr_zero(k));
      auto p = derive_paper_params_pow2(exponent);
      p.k = k;
      return p;
    }
    const double log2_k = std::log2(static_cast<double>(k));
    // log k / 100 is irrational here, so no integer distance sits on the
    // boundary; a 1e-11 approximation decides every comparison correctly.
    const Rational threshold(std::llround(log2_k * 1e9), 100'000'000'000LL);
    return paper_params(k, log2_k, threshold, static_cast<Length>(std::ceil(log2_k / 10.0)));
  }

  if (k < 2) throw ParameterError("custom mode needs at least 2 terminals");
  if (!overrides.M || !overrides.S || !overrides.L || !overrides.g) {
    throw ParameterError("custom mode requires M, S, L and g");
  }
  InstanceParams p;
  p.k = k;
  p.log2_k = std::log2(static_cast<double>(k));
  p.mode = ParamMode::custom;
  p.M = *overrides.M;
  p.S = *overrides.S;
  p.L = *overrides.L;
  p.g = *overrides.g;
  if (p.M < 1) throw ParameterError("M must be >= 1");
  if (p.S < 1) throw ParameterError("S must be >= 1");
  if (p.g < 3) throw ParameterError("g must be >= 3");
  if (p.L.is_infinite() || p.L < Rational(0)) throw ParameterError("L must be a finite non-negative rational");
  evaluate_flags(p);
  return p;
}

InstanceParams derive_paper_params_pow2(unsigned exponent) {
  if (exponent < 2) throw ParameterError("paper mode needs k >= 4");
  const std::uint64_t k = exponent < 64 ? (std::uint64_t{1} << exponent) : 0;
  return paper_params(k, static_cast<double>(exponent), Rational(exponent, 100), (exponent + 9) / 10);
}

// ---------------------------------------------------------------------------
// Random cubic generation: pairing model, then edge switches that remove
// loops, parallel edges and short cycles one bad edge at a time.

namespace {

class CubicMultigraph {
 public:
  CubicMultigraph(std::size_t n, Rng& rng) : slots_(n) {
    std::vector<Vertex> points(3 * n);
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<Vertex>(i / 3);
    for (std::size_t i = points.size(); i > 1; --i) std::swap(points[i - 1], points[rng.below(i)]);
    for (std::size_t i = 0; i < points.size(); i += 2) {
      const auto id = ends_.size();
      ends_.push_back({points[i], points[i + 1]});
      slots_[points[i]].push_back(id);
      slots_[points[i + 1]].push_back(id);
    }
  }

  std::size_t edge_count() const { return ends_.size(); }
  std::size_t vertex_count() const { return slots_.size(); }
  const std::array<Vertex, 2>& ends(std::size_t e) const { return ends_[e]; }

  // Edge lies on a loop, a parallel pair or a cycle shorter than `girth`.
  bool is_bad(std::size_t e, Length girth) {
    const auto [a, b] = ends_[e];
    if (a == b) return true;
    const Length depth_limit = girth - 2;
    if (depth_limit < 1) return false;
    visited_.assign(slots_.size(), -1);
    frontier_.assign({a});
    visited_[a] = 0;
    for (Length depth = 0; depth < depth_limit && !frontier_.empty(); ++depth) {
      next_.clear();
      for (Vertex x : frontier_) {
        for (std::size_t f : slots_[x]) {
          if (f == e) continue;
          const auto& fe = ends_[f];
          Vertex y = fe[0] == x ? fe[1] : fe[0];
          if (y == b) return true;
          if (visited_[y] < 0) {
            visited_[y] = depth + 1;
            next_.push_back(y);
          }
        }
      }
      std::swap(frontier_, next_);
    }
    return false;
  }

  // Replaces edges e=(a,b), f=(c,d) by (a,c), (b,d).
  void switch_edges(std::size_t e, std::size_t f) {
    const auto [a, b] = ends_[e];
    const auto [c, d] = ends_[f];
    ends_[e] = {a, c};
    ends_[f] = {b, d};
    replace_slot(b, e, f);
    replace_slot(c, f, e);
  }

  // Inverse of switch_edges given the original endpoints.
  void undo_switch(std::size_t e, std::size_t f, std::array<Vertex, 2> old_e, std::array<Vertex, 2> old_f) {
    replace_slot(old_f[0], e, f);
    replace_slot(old_e[1], f, e);
    ends_[e] = old_e;
    ends_[f] = old_f;
  }

  void flip(std::size_t f) { std::swap(ends_[f][0], ends_[f][1]); }

  std::vector<int> components() const {
    std::vector<int> label(slots_.size(), -1);
    int next_label = 0;
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      if (label[s] >= 0) continue;
      std::vector<Vertex> stack{static_cast<Vertex>(s)};
      label[s] = next_label;
      while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (std::size_t f : slots_[x]) {
          Vertex y = ends_[f][0] == x ? ends_[f][1] : ends_[f][0];
          if (label[y] < 0) {
            label[y] = next_label;
            stack.push_back(y);
          }
        }
      }
      ++next_label;
    }
    return label;
  }

  WeightedGraph to_graph() const {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (const auto& e : ends_) edges.emplace_back(e[0], e[1]);
    return WeightedGraph::unit(slots_.size(), edges);
  }

 private:
  void replace_slot(Vertex v, std::size_t from, std::size_t to) {
    auto it = std::find(slots_[v].begin(), slots_[v].end(), from);
    if (it == slots_[v].end()) throw std::logic_error("edge switch bookkeeping out of sync");
    *it = to;
  }

  std::vector<std::array<Vertex, 2>> ends_;
  std::vector<std::vector<std::size_t>> slots_;
  std::vector<Length> visited_;
  std::vector<Vertex> frontier_, next_;
};

WeightedGraph random_repair(std::size_t n, Length g, std::uint64_t seed, std::size_t budget) {
  Rng rng(seed);
  CubicMultigraph mg(n, rng);
  const std::size_t m = mg.edge_count();

  std::vector<std::size_t> bad;
  auto collect_bad = [&] {
    bad.clear();
    for (std::size_t e = 0; e < m; ++e) {
      if (mg.is_bad(e, g)) bad.push_back(e);
    }
  };
  collect_bad();

  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    if (bad.empty()) {
      collect_bad();
      if (bad.empty()) break;
    }
    const std::size_t pick = rng.below(bad.size());
    const std::size_t e = bad[pick];
    if (!mg.is_bad(e, g)) {
      bad[pick] = bad.back();
      bad.pop_back();
      continue;
    }
    std::size_t f = rng.below(m - 1);
    if (f >= e) ++f;
    if (rng.below(2) == 1) mg.flip(f);
    const auto old_e = mg.ends(e);
    const auto old_f = mg.ends(f);
    mg.switch_edges(e, f);
    if (mg.is_bad(e, g) || mg.is_bad(f, g)) {
      mg.undo_switch(e, f, old_e, old_f);
    }
  }
  collect_bad();
  if (!bad.empty()) {
    throw GenerationError("random-repair: " + std::to_string(bad.size()) + " edges still on cycles shorter than " +
                          std::to_string(g) + " after " + std::to_string(budget) + " switch attempts (n=" +
                          std::to_string(n) + ", seed=" + std::to_string(seed) + ")");
  }

  // Joining two components by a switch cannot create a cycle shorter than g.
  for (;;) {
    auto label = mg.components();
    std::size_t e = m, f = m;
    for (std::size_t i = 0; i < m && (e == m || f == m); ++i) {
      const int c = label[mg.ends(i)[0]];
      if (c == 0 && e == m) e = i;
      if (c != 0 && f == m) f = i;
    }
    if (f == m) break;
    const auto old_e = mg.ends(e);
    const auto old_f = mg.ends(f);
    mg.switch_edges(e, f);
    if (mg.is_bad(e, g) || mg.is_bad(f, g)) {
      mg.undo_switch(e, f, old_e, old_f);
      throw GenerationError("random-repair: component merge produced a short cycle");
    }
  }

  WeightedGraph graph = mg.to_graph();
  if (!graph.is_regular(3) || girth(graph) < ExtLength(g)) {
    throw GenerationError("random-repair produced a graph failing final validation");
  }
  return graph;
}

}  // namespace

WeightedGraph generate_cubic_high_girth(std::size_t n, Length g, std::uint64_t seed, GenerationStrategy strategy,
                                        const GenerationOptions& options) {
  if (n % 2 == 1) throw HandshakeError("no 3-regular graph on an odd number of vertices (n=" + std::to_string(n) + ")");
  if (n < 4) throw ArgumentError("3-regular graph needs n >= 4");
  if (strategy == GenerationStrategy::cage) {
    for (const auto& entry : cage_catalog()) {
      if (entry.vertex_count == n && entry.girth >= g) return cage_graph(entry.name);
    }
    throw ArgumentError("no catalog cage with " + std::to_string(n) + " vertices and girth >= " + std::to_string(g));
  }
  const std::size_t budget = options.retry_budget > 0 ? options.retry_budget : 2000 * n;
  return random_repair(n, g, seed, budget);
}

// ---------------------------------------------------------------------------

std::optional<std::size_t> Instance::terminal_at(Vertex v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= terminal_of_.size() || terminal_of_[v] < 0) return std::nullopt;
  return static_cast<std::size_t>(terminal_of_[v]);
}

Instance Instance::from_parts(WeightedGraph core, WeightedGraph full, std::vector<Vertex> attachments,
                              InstanceParams params) {
  Instance inst;
  inst.core_ = std::move(core);
  inst.full_ = std::move(full);
  inst.attachments_ = std::move(attachments);
  inst.params_ = std::move(params);
  inst.terminal_of_.assign(inst.core_.vertex_count(), -1);
  for (std::size_t i = 0; i < inst.attachments_.size(); ++i) {
    const Vertex a = inst.attachments_[i];
    if (inst.core_.contains(a) && inst.terminal_of_[a] < 0) inst.terminal_of_[a] = static_cast<std::ptrdiff_t>(i);
  }
  const std::size_t k = inst.attachments_.size();
  inst.terminal_dist_.assign(k * k, kInfinity);
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex ti = inst.terminal_vertex(i);
    if (!inst.full_.contains(ti)) continue;
    auto row = distances_from(inst.full_, ti);
    for (std::size_t j = 0; j < k; ++j) {
      const Vertex tj = inst.terminal_vertex(j);
      if (inst.full_.contains(tj)) inst.terminal_dist_[i * k + j] = row[tj];
    }
  }
  inst.core_girth_ = girth(inst.core_);
  return inst;
}

namespace {

WeightedGraph attach_pendants(const WeightedGraph& core, std::span<const Vertex> attachments, Weight pendant) {
  std::vector<Edge> edges(core.edges().begin(), core.edges().end());
  const auto n = static_cast<Vertex>(core.vertex_count());
  for (std::size_t i = 0; i < attachments.size(); ++i) {
    edges.push_back({attachments[i], n + static_cast<Vertex>(i), pendant});
  }
  return WeightedGraph(core.vertex_count() + attachments.size(), std::move(edges));
}

void check_core(const WeightedGraph& core, const InstanceParams& params, std::vector<std::string>& failures) {
  if (!core.is_unit_weight()) failures.emplace_back("core is not unit-weight");
  if (!core.is_connected()) failures.emplace_back("core is disconnected");
  const ExtLength gv = girth(core);
  if (gv < ExtLength(params.g)) {
    failures.push_back("core girth " + gv.to_string() + " < required " + std::to_string(params.g));
  }
}

void raise_if(const std::vector<std::string>& failures) {
  if (failures.empty()) return;
  std::string message = "invalid core:";
  for (const auto& f : failures) message += " " + f + ";";
  throw ValidationError(message);
}

}  // namespace

Instance build_instance(const WeightedGraph& core, const InstanceParams& params) {
  std::vector<std::string> failures;
  if (!core.is_regular(3)) failures.emplace_back("core is not 3-regular");
  check_core(core, params, failures);
  if (params.k != 0 && params.k != core.vertex_count()) {
    failures.push_back("params.k=" + std::to_string(params.k) + " differs from core size " +
                       std::to_string(core.vertex_count()));
  }
  raise_if(failures);
  std::vector<Vertex> attachments(core.vertex_count());
  for (std::size_t v = 0; v < attachments.size(); ++v) attachments[v] = static_cast<Vertex>(v);
  WeightedGraph full = attach_pendants(core, attachments, params.M);
  return Instance::from_parts(core, std::move(full), std::move(attachments), params);
}

Instance build_subterminal_instance(const WeightedGraph& core, std::vector<Vertex> attachments,
                                    const InstanceParams& params) {
  std::vector<std::string> failures;
  check_core(core, params, failures);
  if (attachments.size() < 2) failures.emplace_back("need at least two terminals");
  for (std::size_t i = 0; i < attachments.size(); ++i) {
    if (!core.contains(attachments[i])) failures.push_back("attachment " + std::to_string(attachments[i]) + " out of range");
    if (i > 0 && attachments[i] <= attachments[i - 1]) failures.emplace_back("attachments not strictly increasing");
  }
  if (params.k != 0 && params.k != attachments.size()) failures.emplace_back("params.k differs from terminal count");
  raise_if(failures);
  WeightedGraph full = attach_pendants(core, attachments, params.M);
  return Instance::from_parts(core, std::move(full), std::move(attachments), params);
}

CheckReport validate_instance(const Instance& inst) {
  CheckReport report;
  const WeightedGraph& core = inst.core();
  const WeightedGraph& full = inst.full();
  const auto& params = inst.params();
  const std::size_t n = core.vertex_count();
  const std::size_t k = inst.terminal_count();

  report.add("core-unit-weight", core.is_unit_weight());
  if (inst.full_terminal()) {
    report.add("core-cubic", core.is_regular(3));
  } else {
    bool increasing = true;
    for (std::size_t i = 0; i < k; ++i) {
      if (!core.contains(inst.attachments()[i]) || (i > 0 && inst.attachments()[i] <= inst.attachments()[i - 1])) {
        increasing = false;
      }
    }
    report.add("attachments-increasing", increasing);
  }
  report.add("core-connected", core.is_connected());
  const ExtLength core_girth = girth(core);
  report.add("core-girth", core_girth >= ExtLength(params.g),
             "girth " + core_girth.to_string() + ", required " + std::to_string(params.g));
  report.add("terminal-count", params.k == 0 || params.k == k,
             "params.k=" + std::to_string(params.k) + ", terminals=" + std::to_string(k));
  report.add("full-vertex-count", full.vertex_count() == n + k,
             std::to_string(full.vertex_count()) + " vs " + std::to_string(n + k));

  bool core_preserved = true;
  std::size_t core_edges_in_full = 0;
  for (const auto& e : full.edges()) {
    if (static_cast<std::size_t>(e.v) < n) {
      ++core_edges_in_full;
      if (core.weight(e.u, e.v) != std::optional<Weight>(e.w)) core_preserved = false;
    }
  }
  report.add("full-contains-core", core_preserved && core_edges_in_full == core.edge_count());

  bool degrees_ok = full.vertex_count() >= n;
  for (std::size_t v = 0; degrees_ok && v < n; ++v) {
    const std::size_t expected = core.degree(static_cast<Vertex>(v)) + (inst.terminal_at(static_cast<Vertex>(v)) ? 1 : 0);
    if (full.degree(static_cast<Vertex>(v)) != expected) degrees_ok = false;
  }
  report.add("core-degree-in-full", degrees_ok);

  bool pendants_ok = full.vertex_count() == n + k;
  std::string pendant_detail;
  for (std::size_t i = 0; pendants_ok && i < k; ++i) {
    const Vertex t = inst.terminal_vertex(i);
    auto nbs = full.neighbors(t);
    if (nbs.size() != 1 || nbs[0].vertex != inst.attachments()[i] || nbs[0].weight != params.M) {
      pendants_ok = false;
      pendant_detail = "terminal " + std::to_string(i) + " pendant edge malformed";
    }
  }
  report.add("pendant-weight", pendants_ok, pendant_detail);
  report.add("full-edge-count", full.edge_count() == core.edge_count() + k,
             std::to_string(full.edge_count()) + " vs " + std::to_string(core.edge_count() + k));
  report.add("full-girth-equals-core", girth(full) == core_girth);
  return report;
}

}  // namespace spr
