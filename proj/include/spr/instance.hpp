#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spr/graph.hpp"
#include "spr/rational.hpp"
#include "spr/report.hpp"

namespace spr {

enum class ParamMode { paper, custom };

std::string_view to_string(ParamMode mode);
ParamMode parse_param_mode(std::string_view text);

struct ParamOverrides {
  std::optional<Length> M;
  std::optional<Length> S;
  std::optional<Rational> L;
  std::optional<Length> g;
};

struct PreconditionFlag {
  std::string name;
  bool value;
};

// Pendant weight M, block length S, short-edge threshold L (H-edges whose
// endpoints are within L in G form the cover family) and required core girth g.
struct InstanceParams {
  std::uint64_t k = 0;   // terminal count; 0 when only log2_k is representable
  double log2_k = 0.0;
  Length M = 1;
  Length S = 1;
  Rational L{1};
  Length g = 3;
  ParamMode mode = ParamMode::custom;
  // (3M < g/2), (S < g), (M + L < g), (2^(S-1) > log k), in that order.
  std::vector<PreconditionFlag> flags;

  bool flag(std::string_view name) const;
};

// Paper mode applies the closed forms (log base 2) and rejects overrides;
// custom mode requires all four overrides. Throws ParameterError.
InstanceParams derive_params(std::uint64_t k, ParamMode mode, const ParamOverrides& overrides = {});
// Paper-mode parameters for k = 2^exponent, for k beyond 64 bits.
InstanceParams derive_paper_params_pow2(unsigned exponent);
// Re-evaluates the precondition flags from the numeric fields.
void evaluate_flags(InstanceParams& params);

struct CageEntry {
  std::string name;
  std::size_t vertex_count;
  Length girth;
};

std::span<const CageEntry> cage_catalog();
// Unit-weight cage by name (petersen, heawood, mcgee, tutte-coxeter, harries).
WeightedGraph cage_graph(std::string_view name);

enum class GenerationStrategy { cage, random_repair };

struct GenerationOptions {
  // Edge-switch attempts before giving up; 0 selects 2000 * n.
  std::size_t retry_budget = 0;
};

// 3-regular unit-weight graph on n vertices with girth >= g.
WeightedGraph generate_cubic_high_girth(std::size_t n, Length g, std::uint64_t seed, GenerationStrategy strategy,
                                        const GenerationOptions& options = {});

// Core G', full graph G = G' plus one pendant terminal per attachment vertex,
// and the cached terminal distance table. Core vertices keep their indices in
// G; terminal i is vertex core.vertex_count() + i.
class Instance {
 public:
  // Assembles without validating; use validate_instance on the result.
  static Instance from_parts(WeightedGraph core, WeightedGraph full, std::vector<Vertex> attachments,
                             InstanceParams params);

  const WeightedGraph& core() const { return core_; }
  const WeightedGraph& full() const { return full_; }
  const InstanceParams& params() const { return params_; }
  std::span<const Vertex> attachments() const { return attachments_; }
  std::size_t terminal_count() const { return attachments_.size(); }
  Vertex terminal_vertex(std::size_t i) const { return static_cast<Vertex>(core_.vertex_count() + i); }
  // Every core vertex carries a terminal, as in the lower-bound construction.
  bool full_terminal() const { return attachments_.size() == core_.vertex_count(); }
  // Terminal index attached to core vertex v, if any.
  std::optional<std::size_t> terminal_at(Vertex v) const;

  // dist_G between terminals i and j.
  ExtLength terminal_distance(std::size_t i, std::size_t j) const { return terminal_dist_[i * terminal_count() + j]; }
  ExtLength core_girth() const { return core_girth_; }

 private:
  Instance() = default;

  WeightedGraph core_;
  WeightedGraph full_;
  std::vector<Vertex> attachments_;
  std::vector<std::ptrdiff_t> terminal_of_;
  InstanceParams params_;
  std::vector<ExtLength> terminal_dist_;
  ExtLength core_girth_ = kInfinity;
};

// Paper-faithful instance: every core vertex receives a pendant terminal of
// weight M. Core must be connected, 3-regular, unit-weight, girth >= g and
// params.k must equal its vertex count. Throws ValidationError.
Instance build_instance(const WeightedGraph& core, const InstanceParams& params);

// Terminals on a strictly increasing subset of core vertices. Core must be
// connected, unit-weight and girth >= g; any degree allowed.
Instance build_subterminal_instance(const WeightedGraph& core, std::vector<Vertex> attachments,
                                    const InstanceParams& params);

CheckReport validate_instance(const Instance& inst);

}  // namespace spr
