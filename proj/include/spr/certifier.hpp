#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "spr/cover.hpp"
#include "spr/graph.hpp"
#include "spr/instance.hpp"
#include "spr/rational.hpp"
#include "spr/solution.hpp"

namespace spr {

enum class CertificateCase { detour, long_edge, many_edges, preconditions_unmet, disconnected };

std::string_view to_string(CertificateCase c);

// Replay of the lower-bound case analysis on a concrete (instance, solution).
// P is a length-M core path maximising cov, P' = (t_u, P, t_v), Q_H the
// canonical h-shortest t_u-t_v path and R its image path in G.
struct Certificate {
  std::pair<std::size_t, std::size_t> witness_terminals{0, 0};
  Path p;
  Length p_prime_length = 0;
  ExtLength cov = kInfinity;
  Path q_h;
  Path r;
  ExtLength girth = kInfinity;
  CertificateCase kind = CertificateCase::preconditions_unmet;
  // Lower bound on dist_H(t_u, t_v) established by the case.
  Rational length_bound{0};
  Rational ratio_bound{1};
  Rational exact_ratio{1};
  std::vector<PreconditionFlag> preconditions;
  std::string note;
};

struct CertifyOptions {
  ValidationOptions validation;
  std::uint64_t path_budget = 200000;
  std::uint64_t seed = 0;
};

// Throws ValidationError if the solution fails validate_solution.
Certificate certify(const Instance& inst, const SprSolution& sol, const CertifyOptions& options = {});

struct SweepInstance {
  std::string name;
  std::shared_ptr<const Instance> instance;
};

struct SweepOptions {
  std::uint64_t seed = 0;
  std::uint64_t path_budget = 200000;
  std::size_t brute_force_budget = 1'000'000;
  unsigned threads = 0;
  // Wall-clock column; off by default so reruns stay byte-identical.
  bool timing = false;
};

// Solver names: voronoi, brute, mst, metric.
SprSolution solve(const std::shared_ptr<const Instance>& inst, std::string_view method, std::size_t brute_budget);

// One CSV row per (instance, solver) in input order; a failing row records
// its error and the sweep continues.
void sweep(std::span<const SweepInstance> instances, std::span<const std::string> solvers, const SweepOptions& options,
           std::ostream& out);

}  // namespace spr
