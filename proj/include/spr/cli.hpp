#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spr/certifier.hpp"
#include "spr/graph.hpp"
#include "spr/instance.hpp"

namespace spr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitPreconditions = 2;
inline constexpr int kExitUsage = 64;

// How to turn a core graph into an instance. In custom mode missing values
// default to M = 1, S = 1, L = 2M + 1 and g = girth(core). Without
// `terminals` every core vertex gets a pendant terminal.
struct InstanceSpec {
  ParamMode mode = ParamMode::custom;
  ParamOverrides overrides;
  std::optional<std::vector<Vertex>> terminals;
};

std::shared_ptr<const Instance> make_instance(const WeightedGraph& core, const InstanceSpec& spec);

// Reads a sweep description:
//   seed, path_budget, brute_force_budget, solvers = [...]
//   [[instance]] name, one of cage / random (+ girth, seed) / file,
//                mode, M, S, L, g, terminals
// Relative `file` entries resolve against the config's directory.
struct SweepConfig {
  std::vector<SweepInstance> instances;
  std::vector<std::string> solvers;
  SweepOptions options;
};

SweepConfig load_sweep_config(const std::filesystem::path& path);

// Entry point behind the spr-lab executable; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spr::cli
